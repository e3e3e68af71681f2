#include "grushin/lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grushin/parallel.hpp"
#include "grushin/quadrature.hpp"
#include "grushin/rng.hpp"

namespace grushin {

namespace {

double scaled_residual(double lhs, double rhs) {
    return std::fabs(lhs - rhs) / (1.0 + std::max(std::fabs(lhs), std::fabs(rhs)));
}

}  // namespace

IdentitySuiteReport run_identity_suite(const GrushinParams& params, int n_points,
                                       std::uint64_t seed, double tol) {
    if (n_points < 0) throw std::invalid_argument("run_identity_suite: n_points must be >= 0");
    IdentitySuiteReport rep;
    rep.params = params;
    rep.n_points = n_points;
    rep.seed = seed;
    rep.vacuous = (n_points == 0);

    const std::vector<Point> pts = sample_annulus_points(params, n_points, seed);
    FdConfig cfg;
    cfg.richardson = true;   // plain central differences leave ~1e-5 residuals
    cfg.gauge_scaled = true;  // keeps steps inside the anisotropic feature scale
    cfg.eta2 = 3e-4;

    // |grad_g rho| from the closed form against finite differences of the gauge
    ResidualReport grad_norm{"gradient_norm", 0.0, static_cast<int>(pts.size())};
    const PointFn gauge_fn = [&](const Point& z) { return gauge(z, params); };
    for (const Point& p : pts) {
        const double fd = norm2(fd_grushin_gradient(gauge_fn, p, params, cfg));
        grad_norm.max_scaled_residual =
            std::max(grad_norm.max_scaled_residual,
                     scaled_residual(fd, gauge_gradient_norm(p, params)));
    }

    // Delta_g f(rho) = |grad_g rho|^2 (f'' + (Q-1) f'/rho) on a smooth profile
    ResidualReport radial{"radial_laplacian", 0.0, static_cast<int>(pts.size())};
    RadialProfile prof;
    prof.f = [](double r) { return 1.0 / (1.0 + r * r); };
    prof.df = [](double r) {
        const double d = 1.0 + r * r;
        return -2.0 * r / (d * d);
    };
    prof.d2f = [](double r) {
        const double d = 1.0 + r * r;
        return (6.0 * r * r - 2.0) / (d * d * d);
    };
    const PointFn composed = [&](const Point& z) { return prof.f(gauge(z, params)); };
    for (const Point& p : pts) {
        const double fd = fd_grushin_laplacian(composed, p, params, cfg);
        radial.max_scaled_residual = std::max(radial.max_scaled_residual,
                                              scaled_residual(fd, radial_laplacian(prof, p, params)));
    }

    const double alpha = 3.0;
    rep.checks = {
        {grad_norm, 1e-7, true},
        {radial, tol, true},
        {verify_gauge_power_laplacian(params, alpha, pts, cfg), tol, true},
        {verify_gauge_power_laplacian_closed(params, alpha, pts), 1e-8, true},
        {verify_orthogonality(params, pts, cfg), tol, true},
        {verify_divergence_identity(params, 2.0, 1.0, pts, cfg), tol, true},
    };
    for (IdentityCheck& ch : rep.checks) {
        ch.pass = ch.residual.max_scaled_residual <= ch.tol;
        rep.pass = rep.pass && ch.pass;
    }
    return rep;
}

namespace {

// A term value counts as trustworthy when the quadrature either met its
// tolerance or reports an error bound far below the violation threshold.
bool conclusive(const FunctionalValue& v) {
    if (v.infinite) return true;  // divergence is a definite outcome
    return v.quadrature.converged ||
           v.quadrature.abs_error <= 1e-6 * (1.0 + std::fabs(v.value));
}

struct GapSample {
    double normalized_gap = 0.0;
    bool violation = false;
    bool divergent_lhs = false;
    bool inconclusive = false;
};

template <typename Phi>
GapSample gap_sample(const InequalityCase& c, const Phi& phi) {
    GapSample out;
    try {
        const FunctionalValue L = evaluate_term(c, Term::Lhs, phi);
        const FunctionalValue P = evaluate_term(c, Term::Principal, phi);
        double rhs = sharp_constant(c) * P.value;
        bool rhs_infinite = P.infinite;
        bool ok = conclusive(L) && conclusive(P);
        if (has_remainder(c.id)) {
            if (const auto rc = remainder_constant(c)) {
                const FunctionalValue R = evaluate_term(c, Term::Remainder, phi);
                rhs += *rc * R.value;
                rhs_infinite = rhs_infinite || R.infinite;
                ok = ok && conclusive(R);
            }
        }
        if (!ok) {
            out.inconclusive = true;
            return out;
        }
        if (L.infinite) {
            out.divergent_lhs = true;
            return out;
        }
        if (rhs_infinite) {
            // finite left side dominated by an infinite right side
            out.normalized_gap = -kInfinity;
            out.violation = true;
            return out;
        }
        const double gap = L.value - rhs;
        out.normalized_gap = gap / (1.0 + L.value);
        out.violation = out.normalized_gap < -1e-6;
    } catch (const std::exception&) {
        out.inconclusive = true;
    }
    return out;
}

}  // namespace

FuzzReport fuzz_inequality(const InequalityCase& c, long n_samples, std::uint64_t seed) {
    c.validate();
    if (n_samples < 0) throw std::invalid_argument("fuzz_inequality: n_samples must be >= 0");
    FuzzReport rep;
    rep.id = c.id;
    rep.samples = n_samples;
    rep.seed = seed;

    const bool ball = c.domain.kind == Support::Kind::RhoBall;
    const double R = ball ? c.domain.radius : kInfinity;
    // keep supports strictly inside the domain (and away from the log
    // singularity at rho = R for the logarithmic remainders)
    const double outer = ball ? 0.9 * R : 2.0;

    std::vector<GapSample> samples(static_cast<size_t>(n_samples));
    parallel_for(n_samples, [&](long i) {
        const std::uint64_t sample_seed = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i) + 1));
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        if (rng.next_double() < 0.1) {
            // radial spline candidate
            const int n_knots = 8;
            const double lo = outer / 50.0;
            std::vector<double> knots(n_knots);
            for (int j = 0; j < n_knots; ++j)
                knots[j] = lo * std::pow(outer / lo, static_cast<double>(j) / (n_knots - 1));
            std::vector<double> coeffs(n_knots + 2, 0.0);
            for (int j = 2; j + 2 < static_cast<int>(coeffs.size()); ++j)
                coeffs[j] = rng.uniform(-1.0, 1.0);
            try {
                samples[static_cast<size_t>(i)] = gap_sample(c, spline_profile(knots, coeffs));
            } catch (const std::exception&) {
                samples[static_cast<size_t>(i)].inconclusive = true;
            }
        } else {
            BumpConfig bc;
            bc.cutoff = RadialCutoff{0.5 * outer, outer};
            samples[static_cast<size_t>(i)] = gap_sample(c, random_bump(sample_seed, bc, c.params));
        }
    });

    double min_gap = kInfinity;
    bool any = false;
    for (const GapSample& s : samples) {
        if (s.inconclusive) {
            ++rep.inconclusive;
            continue;
        }
        if (s.divergent_lhs) {
            ++rep.divergent_lhs;
            continue;
        }
        if (s.violation) ++rep.violations;
        if (!any || s.normalized_gap < min_gap) min_gap = s.normalized_gap;
        any = true;
    }
    rep.min_normalized_gap = any ? min_gap : 0.0;
    return rep;
}

namespace {

// least-squares fit of q(eps) = L + c1 eps + c2 eps^2; returns L
double quadratic_extrapolation(const std::vector<double>& eps, const std::vector<double>& q) {
    const size_t n = eps.size();
    double s[5] = {0, 0, 0, 0, 0};
    double b[3] = {0, 0, 0};
    for (size_t i = 0; i < n; ++i) {
        double p = 1.0;
        for (int j = 0; j < 5; ++j) {
            s[j] += p;
            if (j < 3) b[j] += p * q[i];
            p *= eps[i];
        }
    }
    double a[3][4] = {{s[0], s[1], s[2], b[0]}, {s[1], s[2], s[3], b[1]}, {s[2], s[3], s[4], b[2]}};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int cc = col; cc < 4; ++cc) a[r][cc] -= f * a[col][cc];
        }
    }
    return a[0][3] / a[0][0];
}

}  // namespace

SweepReport sharpness_sweep(const InequalityCase& c, const std::vector<double>& eps_list,
                            const std::vector<double>& delta_list) {
    c.validate();
    if (c.id != CaseId::H_LP_33 && c.id != CaseId::R1_41 && c.id != CaseId::R2_45)
        throw std::invalid_argument("sharpness_sweep: supported cases are H-LP (p=2), R1, R2");
    if (c.id == CaseId::H_LP_33 && c.p != 2.0)
        throw std::invalid_argument("sharpness_sweep: the Hardy sweep requires p = 2");
    if (eps_list.size() < 3)
        throw std::invalid_argument("sharpness_sweep: need at least three epsilon values");
    for (size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("sharpness_sweep: epsilon list must be strictly decreasing");
    if (delta_list.empty()) throw std::invalid_argument("sharpness_sweep: empty delta list");

    const double Q = c.params.Q;
    const double a = c.alpha;
    const bool rellich = c.id != CaseId::H_LP_33;
    const bool second_order_principal = c.id == CaseId::R2_45;
    const double quad_tol = 1e-10;

    SweepReport rep;
    rep.id = c.id;
    rep.alpha = a;
    rep.params = c.params;
    rep.target = sharp_constant(c);

    for (double delta : delta_list) {
        if (!(delta > 0.0 && delta < 1.0))
            throw std::invalid_argument("sharpness_sweep: delta must lie in (0, 1)");

        // bounded inner parts on [0, 1-delta]; the slope enters polynomially
        // and is reapplied per epsilon below
        double a_hat = 0.0;  // numerator / lambda^2 on the linear branch
        double m0 = 0.0, m1 = 0.0, m2 = 0.0;
        if (rellich) {
            a_hat = (Q - 1.0) * (Q - 1.0) *
                    integrate_1d([&](double r) { return std::pow(r, a + Q - 3.0); }, 0.0,
                                 1.0 - delta, quad_tol)
                        .value;
            if (second_order_principal) {
                m2 = integrate_1d([&](double r) { return std::pow(r, a + Q - 3.0); }, 0.0,
                                  1.0 - delta, quad_tol)
                         .value;
            } else {
                const auto mom = [&](int j) {
                    return integrate_1d(
                               [&](double r) {
                                   return std::pow(r, a + Q - 5.0) * std::pow(r - 1.0, j);
                               },
                               0.0, 1.0 - delta, quad_tol)
                        .value;
                };
                m0 = mom(0);
                m1 = mom(1);
                m2 = mom(2);
            }
        } else {
            m0 = integrate_1d([&](double r) { return std::pow(r, a + Q - 3.0); }, 0.0,
                              1.0 - delta, quad_tol)
                     .value;
        }

        for (double eps : eps_list) {
            ExtremalSpec spec{eps, delta, a, c.params};
            const RadialProfile phi = rellich ? rellich_extremal(spec) : hardy_extremal(spec);
            const double lam = rellich ? (Q + a - 4.0) / 2.0 + eps : (Q + a - 2.0) / 2.0 + eps;

            const auto blend_num = [&](double r) {
                if (rellich) {
                    const double d = phi.d2f(r) + (Q - 1.0) * phi.df(r) / r;
                    return std::pow(r, a + Q - 1.0) * d * d;
                }
                const double d = phi.df(r);
                return std::pow(r, a + Q - 1.0) * d * d;
            };
            const auto blend_den = [&](double r) {
                if (second_order_principal) {
                    const double d = phi.df(r);
                    return std::pow(r, a + Q - 3.0) * d * d;
                }
                const double v = phi.f(r);
                const double e = rellich ? a + Q - 5.0 : a + Q - 3.0;
                return std::pow(r, e) * v * v;
            };
            const double bn = integrate_1d(blend_num, 1.0 - delta, 1.0 + delta, quad_tol).value;
            const double bd = integrate_1d(blend_den, 1.0 - delta, 1.0 + delta, quad_tol).value;

            double num_inner, den_inner;
            if (rellich) {
                num_inner = lam * lam * a_hat + bn;
                den_inner = second_order_principal ? lam * lam * m2 + bd
                                                   : m0 + 2.0 * lam * m1 + lam * lam * m2 + bd;
            } else {
                num_inner = bn;  // the inner plateau has zero gradient
                den_inner = m0 + bd;
            }

            // beyond 1+delta the profile is exactly rho^-lam; the polar
            // constant is common to both sides and cancels in the quotient
            const double tail = std::pow(1.0 + delta, -2.0 * eps) / (2.0 * eps);
            const double b_fac = rellich ? lam * lam * std::pow((Q - a) / 2.0 - eps, 2)
                                         : lam * lam;
            const double den_fac = second_order_principal ? lam * lam : 1.0;
            const double quotient = (num_inner + b_fac * tail) / (den_inner + den_fac * tail);
            rep.rows.push_back({eps, delta, quotient});
        }
    }

    // extrapolate along the smallest mollification width
    const double best_delta = *std::min_element(delta_list.begin(), delta_list.end());
    std::vector<double> es, qs;
    for (const SweepRow& row : rep.rows)
        if (row.delta == best_delta) {
            es.push_back(row.epsilon);
            qs.push_back(row.quotient);
        }
    rep.extrapolated_limit = quadratic_extrapolation(es, qs);
    rep.relative_gap = std::fabs(rep.extrapolated_limit - rep.target) / std::fabs(rep.target);
    return rep;
}

namespace {

struct SimplexResult {
    std::vector<double> x;
    double f = kInfinity;
    long evaluations = 0;
    bool converged = false;
};

// Nelder-Mead downhill simplex with standard coefficients.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x0, double step, long budget, double tol) {
    const size_t n = x0.size();
    SimplexResult res;
    std::vector<std::vector<double>> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    for (size_t i = 1; i <= n; ++i)
        xs[i][i - 1] += step * std::max(1.0, std::fabs(x0[i - 1]));
    for (size_t i = 0; i <= n; ++i) {
        fs[i] = f(xs[i]);
        ++res.evaluations;
    }
    while (res.evaluations < budget) {
        // order
        std::vector<size_t> idx(n + 1);
        for (size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return fs[a] < fs[b]; });
        const size_t lo = idx[0], hi = idx[n], nh = idx[n - 1];
        if (std::fabs(fs[hi] - fs[lo]) <= tol * (1.0 + std::fabs(fs[lo]))) {
            res.converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i <= n; ++i) {
            if (i == hi) continue;
            for (size_t j = 0; j < n; ++j) centroid[j] += xs[i][j] / static_cast<double>(n);
        }
        const auto at = [&](double coef) {
            std::vector<double> x(n);
            for (size_t j = 0; j < n; ++j) x[j] = centroid[j] + coef * (xs[hi][j] - centroid[j]);
            return x;
        };
        const std::vector<double> xr = at(-1.0);
        const double fr = f(xr);
        ++res.evaluations;
        if (fr < fs[idx[0]]) {
            const std::vector<double> xe = at(-2.0);
            const double fe = f(xe);
            ++res.evaluations;
            if (fe < fr) {
                xs[hi] = xe;
                fs[hi] = fe;
            } else {
                xs[hi] = xr;
                fs[hi] = fr;
            }
        } else if (fr < fs[nh]) {
            xs[hi] = xr;
            fs[hi] = fr;
        } else {
            const std::vector<double> xc = at(fr < fs[hi] ? -0.5 : 0.5);
            const double fc = f(xc);
            ++res.evaluations;
            if (fc < std::min(fr, fs[hi])) {
                xs[hi] = xc;
                fs[hi] = fc;
            } else {
                for (size_t i = 0; i <= n; ++i) {
                    if (i == lo) continue;
                    for (size_t j = 0; j < n; ++j) xs[i][j] = 0.5 * (xs[i][j] + xs[lo][j]);
                    fs[i] = f(xs[i]);
                    ++res.evaluations;
                }
            }
        }
    }
    size_t best = 0;
    for (size_t i = 1; i <= n; ++i)
        if (fs[i] < fs[best]) best = i;
    res.x = xs[best];
    res.f = fs[best];
    return res;
}

std::vector<double> make_knots(const SplineFamilyConfig& family, const InequalityCase& c) {
    if (family.n_knots < 8 || family.n_knots > 16)
        throw std::invalid_argument("spline family: knot count must lie in [8, 16]");
    double hi = family.rho_hi;
    if (c.domain.kind == Support::Kind::RhoBall) hi = std::min(hi, 0.95 * c.domain.radius);
    const double lo = std::min(family.rho_lo, hi / 100.0);
    std::vector<double> knots(static_cast<size_t>(family.n_knots));
    for (int j = 0; j < family.n_knots; ++j)
        knots[static_cast<size_t>(j)] =
            lo * std::pow(hi / lo, static_cast<double>(j) / (family.n_knots - 1));
    return knots;
}

// shaped seed: a half-period sine in log radius damped by the power-law
// decay of the near-extremal family
std::vector<double> seed_coefficients(const std::vector<double>& knots, double decay) {
    const std::vector<double> pos = spline_parameter_positions(knots);
    const double t_lo = std::log(knots.front()), t_hi = std::log(knots.back());
    const double t_mid = 0.5 * (t_lo + t_hi);
    std::vector<double> coeffs(pos.size(), 0.0);
    for (size_t i = 2; i + 2 < coeffs.size(); ++i) {
        const double tau = std::log(pos[i]);
        coeffs[i] = std::exp(-decay * (tau - t_mid)) *
                    std::sin(3.14159265358979323846 * (tau - t_lo) / (t_hi - t_lo));
    }
    return coeffs;
}

EstimateReport minimize_objective(
    const InequalityCase& c, const SplineFamilyConfig& family, const SimplexConfig& optimizer,
    std::uint64_t seed, const std::string& label, double decay,
    const std::function<double(const RadialProfile&)>& objective) {
    const std::vector<double> knots = make_knots(family, c);
    const std::vector<double> seed_coeffs = seed_coefficients(knots, decay);
    const size_t n_coeffs = seed_coeffs.size();
    const size_t n_free = n_coeffs - 4;

    const auto unpack = [&](const std::vector<double>& x) {
        std::vector<double> coeffs(n_coeffs, 0.0);
        for (size_t i = 0; i < n_free; ++i) coeffs[i + 2] = x[i];
        return coeffs;
    };
    long evals = 0;
    const auto f = [&](const std::vector<double>& x) {
        ++evals;
        try {
            const double v = objective(spline_profile(knots, unpack(x)));
            return std::isfinite(v) ? v : 1e12;
        } catch (const std::exception&) {
            return 1e12;
        }
    };

    std::vector<double> x0(n_free);
    for (size_t i = 0; i < n_free; ++i) x0[i] = seed_coeffs[i + 2];
    const double scale = *std::max_element(
        x0.begin(), x0.end(), [](double u, double v) { return std::fabs(u) < std::fabs(v); });

    EstimateReport rep;
    rep.id = c.id;
    rep.label = label;
    rep.seed = seed;
    rep.seed_value = f(x0);
    rep.best_value = rep.seed_value;
    rep.converged = false;
    std::vector<double> best_x = x0;
    for (int r = 0; r < optimizer.restarts; ++r) {
        std::vector<double> start = best_x;
        if (r > 0) {
            CounterRng rng(seed, static_cast<std::uint64_t>(r));
            for (double& v : start)
                v += 0.05 * std::fabs(scale) * rng.uniform(-1.0, 1.0);
        }
        const SimplexResult res =
            nelder_mead(f, start, 0.1, optimizer.budget, optimizer.tol);
        if (res.f < rep.best_value) {
            rep.best_value = res.f;
            best_x = res.x;
        }
        rep.converged = rep.converged || res.converged;
    }
    rep.evaluations = evals;
    return rep;
}

}  // namespace

EstimateReport minimize_quotient(const InequalityCase& c, const SplineFamilyConfig& family,
                                 const SimplexConfig& optimizer, std::uint64_t seed) {
    c.validate();
    const double Q = c.params.Q;
    const bool rellich =
        c.id == CaseId::R1_41 || c.id == CaseId::R1_BALL_42 || c.id == CaseId::R1_LOG_43 ||
        c.id == CaseId::R1_CKN_44 || c.id == CaseId::R2_45 || c.id == CaseId::R2_BALL_46 ||
        c.id == CaseId::R2_LOG_47;
    const double decay = rellich ? (Q + c.alpha - 4.0) / 2.0 : (Q + c.alpha - 2.0) / 2.0;
    return minimize_objective(c, family, optimizer, seed, "rayleigh_quotient", decay,
                              [&](const RadialProfile& phi) {
                                  return rayleigh_quotient(c, phi);
                              });
}

EstimateReport estimate_remainder_constant(const InequalityCase& c,
                                           const SplineFamilyConfig& family,
                                           const SimplexConfig& optimizer, std::uint64_t seed) {
    c.validate();
    switch (c.id) {
        case CaseId::H_IMPROVED_31:
        case CaseId::H_CKN_34:
        case CaseId::R1_BALL_42:
        case CaseId::R1_CKN_44:
        case CaseId::R2_BALL_46:
            break;
        default:
            throw std::invalid_argument(
                "estimate_remainder_constant: case has no unknown remainder coefficient");
    }
    const double Q = c.params.Q;
    const bool rellich = c.id == CaseId::R1_BALL_42 || c.id == CaseId::R1_CKN_44 ||
                         c.id == CaseId::R2_BALL_46;
    const double decay = rellich ? (Q + c.alpha - 4.0) / 2.0 : (Q + c.alpha - 2.0) / 2.0;
    return minimize_objective(
        c, family, optimizer, seed, case_name(c.id) + ".remainder", decay,
        [&](const RadialProfile& phi) {
            const FunctionalValue G = principal_gap(c, phi);
            const FunctionalValue R = evaluate_term(c, Term::Remainder, phi);
            if (G.infinite || R.infinite) return 1e12;
            if (!(R.value > 1e-300)) return 1e12;  // vanishing remainder: skip
            return G.value / R.value;
        });
}

}  // namespace grushin
