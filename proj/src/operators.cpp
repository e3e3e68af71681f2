#include "grushin/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "grushin/rng.hpp"

namespace grushin {

std::vector<double> grushin_gradient(const ScalarField& phi, const Point& p,
                                     const GrushinParams& params) {
    const int m = params.m, k = params.k;
    std::vector<double> out(m + k);
    const std::vector<double> gx = phi.grad_x(p);
    const std::vector<double> gy = phi.grad_y(p);
    const double xg = std::pow(norm2(p.x), params.gamma);
    for (int j = 0; j < m; ++j) out[j] = gx[j];
    for (int j = 0; j < k; ++j) out[m + j] = xg * gy[j];
    return out;
}

double grushin_laplacian(const ScalarField& phi, const Point& p, const GrushinParams& params) {
    const double r = norm2(p.x);
    return phi.lap_x(p) + std::pow(r, 2.0 * params.gamma) * phi.lap_y(p);
}

double radial_laplacian_reduced(const RadialProfile& f, double r, double s,
                                const GrushinParams& params) {
    const double rho = gauge_reduced(r, s, params);
    if (rho == 0.0) throw std::domain_error("radial_laplacian: undefined at the origin");
    const double w = gauge_gradient_norm_reduced(r, s, params);
    return w * w * (f.d2f(rho) + (params.Q - 1.0) * f.df(rho) / rho);
}

double radial_laplacian(const RadialProfile& f, const Point& p, const GrushinParams& params) {
    return radial_laplacian_reduced(f, norm2(p.x), norm2(p.y), params);
}

namespace {

double scaled_residual(double lhs, double rhs) {
    return std::fabs(lhs - rhs) / (1.0 + std::max(std::fabs(lhs), std::fabs(rhs)));
}

}  // namespace

ResidualReport verify_gauge_power_laplacian(const GrushinParams& params, double alpha,
                                    const std::vector<Point>& points, const FdConfig& cfg) {
    ResidualReport rep{"gauge_power_laplacian_fd", 0.0, static_cast<int>(points.size())};
    const PointFn field = [&](const Point& z) {
        return std::pow(gauge(z, params), alpha - 2.0);
    };
    for (const Point& p : points) {
        const double lhs = fd_grushin_laplacian(field, p, params, cfg);
        const double rho = gauge(p, params);
        const double w = gauge_gradient_norm(p, params);
        const double rhs = (params.Q + alpha - 4.0) * (alpha - 2.0) * std::pow(rho, alpha - 4.0) * w * w;
        rep.max_scaled_residual = std::max(rep.max_scaled_residual, scaled_residual(lhs, rhs));
    }
    return rep;
}

ResidualReport verify_gauge_power_laplacian_closed(const GrushinParams& params, double alpha,
                                           const std::vector<Point>& points) {
    ResidualReport rep{"gauge_power_laplacian_closed", 0.0, static_cast<int>(points.size())};
    RadialProfile pw;
    pw.f = [alpha](double rho) { return std::pow(rho, alpha - 2.0); };
    pw.df = [alpha](double rho) { return (alpha - 2.0) * std::pow(rho, alpha - 3.0); };
    pw.d2f = [alpha](double rho) { return (alpha - 2.0) * (alpha - 3.0) * std::pow(rho, alpha - 4.0); };
    for (const Point& p : points) {
        const double lhs = radial_laplacian(pw, p, params);
        const double rho = gauge(p, params);
        const double w = gauge_gradient_norm(p, params);
        const double rhs = (params.Q + alpha - 4.0) * (alpha - 2.0) * std::pow(rho, alpha - 4.0) * w * w;
        rep.max_scaled_residual = std::max(rep.max_scaled_residual, scaled_residual(lhs, rhs));
    }
    return rep;
}

ResidualReport verify_orthogonality(const GrushinParams& params, const std::vector<Point>& points,
                                    const FdConfig& cfg) {
    ResidualReport rep{"orthogonality", 0.0, static_cast<int>(points.size())};
    const PointFn w_field = [&](const Point& z) { return gauge_gradient_norm(z, params); };
    for (const Point& p : points) {
        const std::vector<double> gw = fd_grushin_gradient(w_field, p, params, cfg);
        const std::vector<double> gr = gauge_gradient(p, params);
        double dot = 0.0;
        for (size_t i = 0; i < gw.size(); ++i) dot += gw[i] * gr[i];
        const double scale = norm2(gw) * norm2(gr);
        rep.max_scaled_residual = std::max(rep.max_scaled_residual, std::fabs(dot) / (1.0 + scale));
    }
    return rep;
}

ResidualReport verify_divergence_identity(const GrushinParams& params, double a, double t,
                                          const std::vector<Point>& points, const FdConfig& cfg) {
    ResidualReport rep{"divergence", 0.0, static_cast<int>(points.size())};
    const int m = params.m, k = params.k;
    // component i of V = rho^a |grad rho|^t grad_g rho
    const auto component = [&](const Point& z, int i) {
        const double rho = gauge(z, params);
        const double w = gauge_gradient_norm(z, params);
        return std::pow(rho, a) * std::pow(w, t) * gauge_gradient(z, params)[i];
    };
    for (const Point& p : points) {
        // frame divergence: sum_j d/dx_j V_j + |x|^g sum_j d/dy_j V_{m+j}
        double div = 0.0;
        const double xg = std::pow(norm2(p.x), params.gamma);
        for (int j = 0; j < m; ++j) {
            const PointFn comp = [&, j](const Point& z) { return component(z, j); };
            div += fd_partial(comp, p, j, params, cfg);
        }
        for (int j = 0; j < k; ++j) {
            const PointFn comp = [&, j](const Point& z) { return component(z, m + j); };
            div += xg * fd_partial(comp, p, m + j, params, cfg);
        }
        const double rho = gauge(p, params);
        const double w = gauge_gradient_norm(p, params);
        const double rhs = (params.Q + a - 1.0) * std::pow(rho, a - 1.0) * std::pow(w, t + 2.0);
        rep.max_scaled_residual = std::max(rep.max_scaled_residual, scaled_residual(div, rhs));
    }
    return rep;
}

std::vector<Point> sample_annulus_points(const GrushinParams& params, int n, std::uint64_t seed) {
    std::vector<Point> pts;
    pts.reserve(static_cast<size_t>(std::max(n, 0)));
    const int m = params.m, k = params.k;
    for (int i = 0; i < n; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        Point p;
        p.x.resize(m);
        p.y.resize(k);
        for (int attempt = 0; attempt < 1000; ++attempt) {
            for (double& c : p.x) c = rng.uniform(-1.0, 1.0);
            for (double& c : p.y) c = rng.uniform(-1.0, 1.0);
            const double rho0 = gauge(p, params);
            if (rho0 <= 0.0) continue;
            // rescale onto a random gauge sphere in [0.1, 10]
            const double target = rng.uniform(0.1, 10.0);
            const Point q = dilate(p, target / rho0, params);
            if (norm2(q.x) >= 0.05 * target) {
                p = q;
                break;
            }
        }
        pts.push_back(p);
    }
    return pts;
}

}  // namespace grushin
