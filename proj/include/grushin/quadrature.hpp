#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>

#include "grushin/geometry.hpp"

namespace grushin {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    long evaluations = 0;
    bool converged = false;
    bool divergent = false;
};

// Caller-supplied integrand majorant used to truncate whole-space domains
// with a certified tail bound.
struct DecayCertificate {
    enum class Kind { PowerLaw, Gaussian };
    Kind kind = Kind::PowerLaw;
    double rate = 0.0;   // |F| <= scale * rho^-rate  (rate > Q), or scale * exp(-rate rho^2)
    double scale = 1.0;
};

struct QuadratureDomain {
    enum class Kind { RhoAnnulus, ReducedRectangle, WholeSpace };
    Kind kind = Kind::ReducedRectangle;
    GrushinParams params;
    double a = 0.0, b = 0.0;                        // annulus gauge radii
    double r_lo = 0.0, r_hi = 0.0, s_lo = 0.0, s_hi = 0.0;  // reduced rectangle
    std::optional<DecayCertificate> decay;

    static QuadratureDomain rho_annulus(const GrushinParams& p, double a, double b);
    static QuadratureDomain reduced_rectangle(const GrushinParams& p, double r_lo, double r_hi,
                                              double s_lo, double s_hi);
    static QuadratureDomain whole_space(const GrushinParams& p, const DecayCertificate& cert);
};

struct QuadratureConfig {
    double tol = 1e-7;
    long max_cells = 400000;
    int max_depth = 60;
};

// Surface measure of the unit sphere in d dimensions (sigma_1 = 2).
double sphere_surface(int d);

// Integrates F(|x|,|y|) over the domain via the symmetry reduction
//   int F(|x|,|y|) dz = sigma_m sigma_k  int int F(r,s) r^{m-1} s^{k-1} dr ds.
QuadratureResult integrate_reduced(const std::function<double(double, double)>& F,
                                   const QuadratureDomain& dom, double tol,
                                   const QuadratureConfig& cfg = {});

// Independent Monte Carlo oracle over the full (x,y) space, rejection
// sampled in a bounding box. abs_error is one standard error.
QuadratureResult integrate_mc(const std::function<double(const Point&)>& F,
                              const QuadratureDomain& dom, long n, std::uint64_t seed);

// Polar constant kappa(m,k,gamma,s):
//   int g(rho) |grad_g rho|^s dz = kappa_s int g(rho) rho^{Q-1} drho.
// kappa() is the s=2 constant with a three-window consistency check.
double kappa(const GrushinParams& params, double tol = 1e-6);
double kappa_weighted(const GrushinParams& params, double grad_exponent, double tol = 1e-6);

// int_{rho>1} rho^{-Q-2 eps} |grad_g rho|^2 dz = kappa / (2 eps)
double tail_integral(const GrushinParams& params, double eps);

// Adaptive 1D quadrature (used by the radial reductions).
QuadratureResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                              double tol, int max_depth = 60);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace grushin
