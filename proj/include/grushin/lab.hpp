#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grushin/extremals.hpp"
#include "grushin/functionals.hpp"

namespace grushin {

struct IdentityCheck {
    ResidualReport residual;
    double tol = 0.0;
    bool pass = true;
};

struct IdentitySuiteReport {
    GrushinParams params;
    int n_points = 0;
    std::uint64_t seed = 0;
    bool vacuous = false;  // n_points == 0: every check passes with no evidence
    bool pass = true;
    std::vector<IdentityCheck> checks;
};

// Cross-checks the closed-form differential identities against finite
// differences at n_points random points away from the degenerate set.
// tol applies to the finite-difference-backed checks; the two closed-form
// comparisons use fixed tighter tolerances (1e-7 gradient norm, 1e-8
// gauge-power Laplacian).
IdentitySuiteReport run_identity_suite(const GrushinParams& params, int n_points,
                                       std::uint64_t seed, double tol = 1e-5);

struct FuzzReport {
    CaseId id = CaseId::H_BASE;
    long samples = 0;
    double min_normalized_gap = 0.0;  // min over conclusive samples of gap/(1+LHS)
    long violations = 0;              // normalized gap < -1e-6
    long divergent_lhs = 0;
    long inconclusive = 0;  // quadrature failure; excluded from the minimum
    std::uint64_t seed = 0;
};

// Evaluates the inequality gap on n_samples random test functions: 90%
// cutoff atom-sum fields, 10% radial spline profiles. Deterministic for a
// fixed (case, n_samples, seed); per-sample RNG streams are derived from
// (seed, sample index) and results are folded in index order.
FuzzReport fuzz_inequality(const InequalityCase& c, long n_samples, std::uint64_t seed);

struct SweepRow {
    double epsilon = 0.0;
    double delta = 0.0;
    double quotient = 0.0;
};

struct SweepReport {
    CaseId id = CaseId::H_BASE;
    double alpha = 0.0;
    GrushinParams params;
    std::vector<SweepRow> rows;
    double extrapolated_limit = 0.0;  // quadratic-in-epsilon fit at epsilon=0
    double target = 0.0;              // the explicit sharp constant
    double relative_gap = 0.0;        // |limit - target| / target
};

// Rayleigh quotients of the near-extremal family for decreasing epsilon.
// The bounded inner parts are integrated once per (alpha, delta) and
// recombined with the epsilon-dependent slope; the tail beyond 1+delta is
// summed in closed form. Supported cases: H_LP_33 (p=2), R1_41, R2_45.
// Throws std::invalid_argument for a non-decreasing eps_list or fewer than
// three values.
SweepReport sharpness_sweep(const InequalityCase& c, const std::vector<double>& eps_list,
                            const std::vector<double>& delta_list);

struct SplineFamilyConfig {
    int n_knots = 12;      // 8..16 gauge knots, log-uniform
    double rho_lo = 1e-9;  // support [rho_lo, rho_hi]
    double rho_hi = 1e9;
};

struct SimplexConfig {
    int restarts = 3;
    long budget = 2000;  // objective evaluations per restart
    double tol = 1e-10;  // simplex spread stop
};

struct EstimateReport {
    CaseId id = CaseId::H_BASE;
    std::string label;
    double best_value = 0.0;
    bool converged = true;       // false on optimizer stagnation
    long evaluations = 0;
    double seed_value = 0.0;     // objective at the shaped seed profile
    std::uint64_t seed = 0;
};

// Downhill-simplex minimization of the Rayleigh quotient over the interior
// spline coefficients; an upper confirmation of the sharp constant.
EstimateReport minimize_quotient(const InequalityCase& c, const SplineFamilyConfig& family,
                                 const SimplexConfig& optimizer, std::uint64_t seed);

// For the existence-type remainders (H_IMPROVED_31, H_CKN_34, R1_BALL_42,
// R1_CKN_44, R2_BALL_46): minimizes (LHS - explicit terms) / remainder term
// over the spline family, an empirical estimate of the unknown coefficient.
// Candidates with a vanishing remainder term are skipped.
EstimateReport estimate_remainder_constant(const InequalityCase& c,
                                           const SplineFamilyConfig& family,
                                           const SimplexConfig& optimizer, std::uint64_t seed);

}  // namespace grushin
