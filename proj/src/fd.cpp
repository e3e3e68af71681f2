#include "grushin/fd.hpp"

#include <cmath>
#include <stdexcept>

namespace grushin {

namespace {

double& coord_ref(Point& p, int coord, const GrushinParams& params) {
    if (coord < params.m) return p.x[coord];
    return p.y[coord - params.m];
}

double coord_val(const Point& p, int coord, const GrushinParams& params) {
    if (coord < params.m) return p.x[coord];
    return p.y[coord - params.m];
}

double central1(const PointFn& f, const Point& p, int coord, const GrushinParams& params, double h) {
    Point q = p;
    double& c = coord_ref(q, coord, params);
    const double c0 = c;
    c = c0 + h;
    const double fp = f(q);
    c = c0 - h;
    const double fm = f(q);
    return (fp - fm) / (2.0 * h);
}

double central2(const PointFn& f, const Point& p, int coord, const GrushinParams& params, double h) {
    Point q = p;
    double& c = coord_ref(q, coord, params);
    const double c0 = c;
    c = c0 + h;
    const double fp = f(q);
    c = c0;
    const double f0 = f(q);
    c = c0 - h;
    const double fm = f(q);
    return (fp - 2.0 * f0 + fm) / (h * h);
}

double step_scale(const Point& p, int coord, const GrushinParams& params, const FdConfig& cfg) {
    const double c = std::fabs(coord_val(p, coord, params));
    if (!cfg.gauge_scaled) return std::max(1.0, c);
    const double rho = gauge(p, params);
    const double base = coord < params.m ? rho : std::pow(rho, 1.0 + params.gamma);
    const double s = std::max(base, c);
    return s > 0.0 ? s : 1.0;
}

}  // namespace

double fd_partial(const PointFn& f, const Point& p, int coord, const GrushinParams& params,
                  const FdConfig& cfg) {
    const double h = cfg.eta1 * step_scale(p, coord, params, cfg);
    const double d1 = central1(f, p, coord, params, h);
    if (!cfg.richardson) return d1;
    const double d2 = central1(f, p, coord, params, h / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

double fd_second_partial(const PointFn& f, const Point& p, int coord, const GrushinParams& params,
                         const FdConfig& cfg) {
    const double h = cfg.eta2 * step_scale(p, coord, params, cfg);
    const double d1 = central2(f, p, coord, params, h);
    if (!cfg.richardson) return d1;
    const double d2 = central2(f, p, coord, params, h / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

std::vector<double> fd_grushin_gradient(const PointFn& f, const Point& p,
                                        const GrushinParams& params, const FdConfig& cfg) {
    const int m = params.m, k = params.k;
    std::vector<double> out(m + k);
    const double xg = std::pow(norm2(p.x), params.gamma);
    for (int j = 0; j < m; ++j) out[j] = fd_partial(f, p, j, params, cfg);
    for (int j = 0; j < k; ++j) out[m + j] = xg * fd_partial(f, p, m + j, params, cfg);
    return out;
}

double fd_grushin_laplacian(const PointFn& f, const Point& p, const GrushinParams& params,
                            const FdConfig& cfg) {
    double lx = 0.0, ly = 0.0;
    for (int j = 0; j < params.m; ++j) lx += fd_second_partial(f, p, j, params, cfg);
    for (int j = 0; j < params.k; ++j) ly += fd_second_partial(f, p, params.m + j, params, cfg);
    const double r = norm2(p.x);
    return lx + std::pow(r, 2.0 * params.gamma) * ly;
}

}  // namespace grushin
