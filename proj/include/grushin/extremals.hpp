#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "grushin/operators.hpp"

namespace grushin {

// Parameters for the near-extremal radial families: a slope perturbation
// epsilon and the half-width delta of the corner mollification at rho = 1.
struct ExtremalSpec {
    double epsilon = 0.1;
    double delta = 0.05;
    double alpha = 0.0;
    GrushinParams params;
};

// phi(rho) = lam (rho - 1) + 1 on [0, 1-delta], rho^-lam on [1+delta, inf),
// lam = (Q+alpha-4)/2 + epsilon; cubic Hermite blend across [1-delta, 1+delta]
// matching values and first derivatives of both branches.
RadialProfile rellich_extremal(const ExtremalSpec& spec);

// First-order analogue: 1 on [0, 1-delta], rho^-mu beyond 1+delta with
// mu = (Q+alpha-2)/2 + epsilon, same Hermite blend.
RadialProfile hardy_extremal(const ExtremalSpec& spec);

// One term c r^{2i} s^{2j} exp(-a r^2 - b s^2), r = |x|, s = |y|.
struct Atom {
    int i = 0, j = 0;
    double a = 1.0, b = 1.0, c = 1.0;
};

struct RadialCutoff {
    double r_in = 1.0, r_out = 2.0;  // 1 for rho <= r_in, 0 for rho >= r_out
};

struct AtomSum {
    std::vector<Atom> atoms;
    std::optional<RadialCutoff> cutoff;
};

// Closed-form ScalarField for an atom sum (block gradients and Laplacians
// assembled from second-order jets in (|x|^2, |y|^2)).
ScalarField atom_field(const AtomSum& sum, const GrushinParams& params);

struct BumpConfig {
    int max_atoms = 5;
    int max_power = 2;      // i, j drawn from 0..max_power
    double rate_lo = 0.3;   // gaussian rates a, b
    double rate_hi = 2.0;
    double coef_range = 1.0;  // c in [-coef_range, coef_range]
    std::optional<RadialCutoff> cutoff = RadialCutoff{1.0, 2.0};
};

AtomSum random_atoms(std::uint64_t seed, const BumpConfig& config);

ScalarField random_bump(std::uint64_t seed, const BumpConfig& config,
                        const GrushinParams& params);

// C2 profile f(rho) = S(ln rho) on [knots.front(), knots.back()], 0 outside;
// S is a clamped cubic B-spline over the log-radius knots. The first two and
// last two coefficients are forced to zero so the value and first derivative
// vanish at both support ends. coeffs.size() must equal knots.size() + 2.
RadialProfile spline_profile(const std::vector<double>& knots, const std::vector<double>& coeffs);

// Representative rho position (Greville abscissa, exponentiated) of each
// spline coefficient; used to seed optimizers with shaped profiles.
std::vector<double> spline_parameter_positions(const std::vector<double>& knots);

}  // namespace grushin
