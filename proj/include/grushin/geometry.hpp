#pragma once

#include <vector>

namespace grushin {

// Ambient structure of the Baouendi-Grushin setting: x-block dimension m,
// y-block dimension k, degeneracy exponent gamma, and the homogeneous
// dimension Q = m + (1+gamma)k.
struct GrushinParams {
    int m = 1;
    int k = 1;
    double gamma = 1.0;
    double Q = 3.0;

    static GrushinParams create(int m, int k, double gamma);
};

struct Point {
    std::vector<double> x;
    std::vector<double> y;
};

// Symmetry-reduced coordinates r = |x|, s = |y|.
struct ReducedPoint {
    double r = 0.0;
    double s = 0.0;
};

double homogeneous_dimension(const GrushinParams& params);

// Anisotropic gauge rho(z) = (|x|^{2(1+g)} + (1+g)^2 |y|^2)^{1/(2(1+g))}.
double gauge(const Point& p, const GrushinParams& params);
double gauge_reduced(double r, double s, const GrushinParams& params);

// |grad_gamma rho| = |x|^gamma / rho^gamma; zero on the degenerate set
// x = 0 (off the origin), throws std::domain_error at the origin.
double gauge_gradient_norm(const Point& p, const GrushinParams& params);
double gauge_gradient_norm_reduced(double r, double s, const GrushinParams& params);

// Componentwise frame gradient (X_1 rho, ..., X_m rho, Y_1 rho, ..., Y_k rho).
std::vector<double> gauge_gradient(const Point& p, const GrushinParams& params);

// delta_lambda(z) = (lambda x, lambda^{1+gamma} y).
Point dilate(const Point& p, double lambda, const GrushinParams& params);

bool in_rho_ball(const Point& p, double radius, const GrushinParams& params);

double norm2(const std::vector<double>& v);

// Coordinates below this magnitude are treated as exactly zero so that
// |x|^gamma cannot underflow/overflow for extreme gamma.
inline constexpr double kDegenerateEps = 1e-300;

}  // namespace grushin
