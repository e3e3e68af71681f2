#include "grushin/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace grushin {

GrushinParams GrushinParams::create(int m, int k, double gamma) {
    if (m < 1 || k < 1) throw std::invalid_argument("GrushinParams: m and k must be >= 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("GrushinParams: gamma must be > 0");
    GrushinParams p;
    p.m = m;
    p.k = k;
    p.gamma = gamma;
    p.Q = m + (1.0 + gamma) * k;
    return p;
}

double homogeneous_dimension(const GrushinParams& params) {
    return params.m + (1.0 + params.gamma) * params.k;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

double gauge_reduced(double r, double s, const GrushinParams& params) {
    if (r < kDegenerateEps) r = 0.0;
    const double g = params.gamma;
    const double e = 2.0 * (1.0 + g);
    const double a = (r > 0.0 ? std::pow(r, e) : 0.0) + (1.0 + g) * (1.0 + g) * s * s;
    return a > 0.0 ? std::pow(a, 1.0 / e) : 0.0;
}

double gauge(const Point& p, const GrushinParams& params) {
    return gauge_reduced(norm2(p.x), norm2(p.y), params);
}

double gauge_gradient_norm_reduced(double r, double s, const GrushinParams& params) {
    const double rho = gauge_reduced(r, s, params);
    if (rho == 0.0) throw std::domain_error("gauge_gradient_norm: undefined at the origin");
    if (r < kDegenerateEps) return 0.0;
    return std::pow(r / rho, params.gamma);
}

double gauge_gradient_norm(const Point& p, const GrushinParams& params) {
    return gauge_gradient_norm_reduced(norm2(p.x), norm2(p.y), params);
}

std::vector<double> gauge_gradient(const Point& p, const GrushinParams& params) {
    const double r = norm2(p.x);
    const double s = norm2(p.y);
    const double rho = gauge_reduced(r, s, params);
    if (rho == 0.0) throw std::domain_error("gauge_gradient: undefined at the origin");
    const int m = params.m, k = params.k;
    std::vector<double> out(m + k, 0.0);
    if (r < kDegenerateEps) return out;  // both blocks carry a |x|^gamma factor
    const double g = params.gamma;
    // X_j rho = |x|^{2g} x_j / rho^{1+2g},  Y_j rho = |x|^g (1+g) y_j / rho^{1+2g}
    const double common = std::pow(r / rho, 2.0 * g) / rho;
    for (int j = 0; j < m; ++j) out[j] = common * p.x[j];
    const double yc = std::pow(r / rho, g) * (1.0 + g) / (rho * std::pow(rho, g));
    for (int j = 0; j < k; ++j) out[m + j] = yc * p.y[j];
    return out;
}

Point dilate(const Point& p, double lambda, const GrushinParams& params) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be > 0");
    Point q = p;
    const double ly = std::pow(lambda, 1.0 + params.gamma);
    for (double& c : q.x) c *= lambda;
    for (double& c : q.y) c *= ly;
    return q;
}

bool in_rho_ball(const Point& p, double radius, const GrushinParams& params) {
    if (!(radius > 0.0)) throw std::invalid_argument("in_rho_ball: radius must be > 0");
    return gauge(p, params) < radius;
}

}  // namespace grushin
