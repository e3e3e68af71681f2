#include "grushin/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace grushin {

std::string case_name(CaseId id) {
    switch (id) {
        case CaseId::H_BASE: return "H_BASE";
        case CaseId::H_IMPROVED_31: return "H_IMPROVED_31";
        case CaseId::H_LOG_32: return "H_LOG_32";
        case CaseId::H_LP_33: return "H_LP_33";
        case CaseId::H_CKN_34: return "H_CKN_34";
        case CaseId::R1_41: return "R1_41";
        case CaseId::R1_BALL_42: return "R1_BALL_42";
        case CaseId::R1_LOG_43: return "R1_LOG_43";
        case CaseId::R1_CKN_44: return "R1_CKN_44";
        case CaseId::R2_45: return "R2_45";
        case CaseId::R2_BALL_46: return "R2_BALL_46";
        case CaseId::R2_LOG_47: return "R2_LOG_47";
    }
    throw std::logic_error("case_name: unknown id");
}

std::optional<CaseId> case_from_name(const std::string& name) {
    for (CaseId id : {CaseId::H_BASE, CaseId::H_IMPROVED_31, CaseId::H_LOG_32, CaseId::H_LP_33,
                      CaseId::H_CKN_34, CaseId::R1_41, CaseId::R1_BALL_42, CaseId::R1_LOG_43,
                      CaseId::R1_CKN_44, CaseId::R2_45, CaseId::R2_BALL_46, CaseId::R2_LOG_47})
        if (case_name(id) == name) return id;
    return std::nullopt;
}

namespace {

bool requires_ball(CaseId id) {
    switch (id) {
        case CaseId::H_IMPROVED_31:
        case CaseId::H_LOG_32:
        case CaseId::H_CKN_34:
        case CaseId::R1_BALL_42:
        case CaseId::R1_LOG_43:
        case CaseId::R1_CKN_44:
        case CaseId::R2_BALL_46:
        case CaseId::R2_LOG_47:
            return true;
        default:
            return false;
    }
}

bool is_rellich(CaseId id) {
    switch (id) {
        case CaseId::R1_41:
        case CaseId::R1_BALL_42:
        case CaseId::R1_LOG_43:
        case CaseId::R1_CKN_44:
        case CaseId::R2_45:
        case CaseId::R2_BALL_46:
        case CaseId::R2_LOG_47:
            return true;
        default:
            return false;
    }
}

bool is_rellich2(CaseId id) {
    return id == CaseId::R2_45 || id == CaseId::R2_BALL_46 || id == CaseId::R2_LOG_47;
}

[[noreturn]] void hypothesis_error(const InequalityCase& c, const std::string& what) {
    throw std::invalid_argument(case_name(c.id) + ": " + what);
}

}  // namespace

void InequalityCase::validate() const {
    const double Q = params.Q;
    if (requires_ball(id)) {
        if (domain.kind != Support::Kind::RhoBall || !(domain.radius > 0.0))
            hypothesis_error(*this, "stated on a rho-ball; a positive ball radius is required");
    }
    switch (id) {
        case CaseId::H_BASE:
            if (alpha != 0.0 || t != 0.0 || p != 2.0)
                hypothesis_error(*this, "base Hardy case fixes alpha = t = 0, p = 2");
            if (!(Q - 2.0 > 0.0)) hypothesis_error(*this, "requires Q - 2 > 0");
            break;
        case CaseId::H_IMPROVED_31: {
            const double g = params.gamma;
            if (!(g == std::floor(g)) || std::fmod(g, 2.0) != 0.0 || g <= 0.0)
                hypothesis_error(*this, "requires gamma to be an even positive integer");
            if (!(-params.m / g < t && t < params.m / g))
                hypothesis_error(*this, "requires -m/gamma < t < m/gamma");
            if (!(Q + alpha - 2.0 > 0.0)) hypothesis_error(*this, "requires Q + alpha - 2 > 0");
            break;
        }
        case CaseId::H_LOG_32:
            if (!(Q + alpha - 2.0 > 0.0)) hypothesis_error(*this, "requires Q + alpha - 2 > 0");
            break;
        case CaseId::H_LP_33:
            if (!(p >= 1.0)) hypothesis_error(*this, "requires p >= 1");
            if (!(Q + alpha - p > 0.0)) hypothesis_error(*this, "requires Q + alpha - p > 0");
            break;
        case CaseId::H_CKN_34:
            if (!(q > 1.0 && q < 2.0)) hypothesis_error(*this, "requires 1 < q < 2");
            if (!(Q + alpha - 2.0 > 0.0)) hypothesis_error(*this, "requires Q + alpha - 2 > 0");
            break;
        case CaseId::R1_41:
            if (!(alpha > 2.0)) hypothesis_error(*this, "requires alpha > 2");
            break;
        case CaseId::R1_BALL_42:
        case CaseId::R1_LOG_43:
        case CaseId::R1_CKN_44:
            if (!(4.0 - Q < alpha && alpha < Q))
                hypothesis_error(*this, "requires 4 - Q < alpha < Q");
            if (id == CaseId::R1_CKN_44 && !(q > 1.0 && q < 2.0))
                hypothesis_error(*this, "requires 1 < q < 2");
            break;
        case CaseId::R2_45:
        case CaseId::R2_BALL_46:
        case CaseId::R2_LOG_47:
            if (!(2.0 < alpha && alpha < Q)) hypothesis_error(*this, "requires 2 < alpha < Q");
            break;
    }
}

InequalityCase make_case(CaseId id, const GrushinParams& params, double alpha, double t, double p,
                         double q, Support domain) {
    InequalityCase c;
    c.id = id;
    c.params = params;
    c.alpha = alpha;
    c.t = t;
    c.p = p;
    c.q = q;
    c.domain = domain;
    if (requires_ball(id) && domain.kind == Support::Kind::WholeSpace)
        c.domain = Support::rho_ball(1.0);
    c.validate();
    return c;
}

double sharp_constant(const InequalityCase& c) {
    const double Q = c.params.Q, a = c.alpha;
    switch (c.id) {
        case CaseId::H_BASE:
            return (Q - 2.0) * (Q - 2.0) / 4.0;
        case CaseId::H_IMPROVED_31:
        case CaseId::H_LOG_32:
        case CaseId::H_CKN_34:
            return (Q + a - 2.0) * (Q + a - 2.0) / 4.0;
        case CaseId::H_LP_33:
            return std::pow((Q + a - c.p) / c.p, c.p);
        case CaseId::R1_41:
        case CaseId::R1_BALL_42:
        case CaseId::R1_LOG_43:
        case CaseId::R1_CKN_44: {
            const double u = Q + a - 4.0, v = Q - a;
            return u * u * v * v / 16.0;
        }
        case CaseId::R2_45:
        case CaseId::R2_BALL_46:
        case CaseId::R2_LOG_47:
            return (Q - a) * (Q - a) / 4.0;
    }
    throw std::logic_error("sharp_constant: unknown id");
}

std::optional<double> remainder_constant(const InequalityCase& c) {
    const double Q = c.params.Q, a = c.alpha;
    switch (c.id) {
        case CaseId::H_LOG_32:
            return 0.25;
        case CaseId::R1_LOG_43:
            return (Q + a - 4.0) * (Q - a) / 8.0;
        case CaseId::R2_LOG_47:
            return (Q - a) * (Q + 3.0 * a - 8.0) / 16.0;
        default:
            return std::nullopt;  // existence-type remainder, constant unknown
    }
}

bool has_remainder(CaseId id) {
    switch (id) {
        case CaseId::H_BASE:
        case CaseId::H_LP_33:
        case CaseId::R1_41:
        case CaseId::R2_45:
            return false;
        default:
            return true;
    }
}

namespace {

// One term as [ int quantity(phi) rho^rho_exp |grad rho|^w_exp dz ]^outer_power.
// w_exp is the explicit weight exponent of the display; for radial profiles
// the quantity itself contributes further |grad rho| powers (p from the
// gradient, 4 from the squared radial Laplacian), so the polar-reduction
// kappa exponent is w_exp plus that contribution.
enum class Quantity { ValueP, GradP, Lap2, ValueLog2 };

struct TermSpec {
    Quantity quantity;
    double power;      // exponent p for ValueP / GradP (2 for Lap2, ValueLog2)
    double rho_exp;    // weight rho^rho_exp
    double w_exp;      // explicit weight |grad rho|^w_exp
    double outer_power = 1.0;

    double kappa_exponent() const {
        if (quantity == Quantity::GradP) return w_exp + power;
        if (quantity == Quantity::Lap2) return w_exp + 4.0;
        return w_exp;
    }
};

TermSpec term_spec(const InequalityCase& c, Term term) {
    const CaseId id = c.id;
    const double a = c.alpha, t = c.t;
    if (!is_rellich(id)) {
        const double p = (id == CaseId::H_LP_33) ? c.p : 2.0;
        switch (term) {
            case Term::Lhs:
                return {Quantity::GradP, p, a, t};
            case Term::Principal:
                return {Quantity::ValueP, p, a - p, t + p};
            case Term::Remainder:
                switch (id) {
                    case CaseId::H_IMPROVED_31:
                        return {Quantity::ValueP, 2.0, a, t};
                    case CaseId::H_LOG_32:
                        return {Quantity::ValueLog2, 2.0, a - 2.0, t + 2.0};
                    case CaseId::H_CKN_34:
                        return {Quantity::GradP, c.q, c.q * a / 2.0, c.q * t / 2.0, 2.0 / c.q};
                    default:
                        throw std::invalid_argument(case_name(id) + ": case has no remainder term");
                }
        }
    }
    switch (term) {
        case Term::Lhs:
            return {Quantity::Lap2, 2.0, a, -2.0};
        case Term::Principal:
            if (is_rellich2(id)) return {Quantity::GradP, 2.0, a - 2.0, 0.0};
            return {Quantity::ValueP, 2.0, a - 4.0, 2.0};
        case Term::Remainder:
            switch (id) {
                case CaseId::R1_BALL_42:
                case CaseId::R2_BALL_46:
                    return {Quantity::ValueP, 2.0, a - 2.0, 0.0};
                case CaseId::R1_LOG_43:
                case CaseId::R2_LOG_47:
                    return {Quantity::ValueLog2, 2.0, a - 4.0, 2.0};
                case CaseId::R1_CKN_44:
                    return {Quantity::GradP, c.q, c.q * a / 2.0, 0.0, 2.0 / c.q};
                default:
                    throw std::invalid_argument(case_name(id) + ": case has no remainder term");
            }
    }
    throw std::logic_error("term_spec: unreachable");
}

std::string term_name(const InequalityCase& c, Term term) {
    switch (term) {
        case Term::Lhs: return case_name(c.id) + ".lhs";
        case Term::Principal: return case_name(c.id) + ".principal";
        case Term::Remainder: return case_name(c.id) + ".remainder";
    }
    return "?";
}

double ball_radius(const InequalityCase& c) {
    return c.domain.kind == Support::Kind::RhoBall ? c.domain.radius : kInfinity;
}

// 1D quadrature on [lo, hi]; hi may be infinite, in which case panels over
// doubling intervals are summed until the geometric tail estimate is below
// tolerance.
QuadratureResult integrate_radial(const std::function<double(double)>& g, double lo, double hi,
                                  double tol) {
    if (std::isfinite(hi)) return integrate_1d(g, lo, hi, tol);
    QuadratureResult out;
    double a = lo, b = std::max(2.0 * std::max(lo, 0.5), 1.0);
    double prev = 0.0;
    bool have_prev = false;
    for (int j = 0; j < 200; ++j) {
        const QuadratureResult panel = integrate_1d(g, a, b, tol);
        out.value += panel.value;
        out.abs_error += panel.abs_error;
        out.evaluations += panel.evaluations;
        if (std::fabs(out.value) > 1e100) {
            out.divergent = true;
            return out;
        }
        const double pv = std::fabs(panel.value);
        if (have_prev && prev > 0.0) {
            const double ratio = pv / prev;
            if (ratio < 0.97) {
                const double tail = pv * ratio / (1.0 - ratio);
                if (tail < tol * (1.0 + std::fabs(out.value))) {
                    out.abs_error += tail;
                    out.converged = true;
                    return out;
                }
            }
            if (ratio > 1.0 && j > 8) {
                out.divergent = true;  // panels growing over doubling scales
                return out;
            }
        }
        if (pv == 0.0 && have_prev && prev == 0.0) {
            out.converged = true;
            return out;
        }
        have_prev = true;
        prev = pv;
        a = b;
        b *= 2.0;
    }
    out.converged = false;
    return out;
}

FunctionalValue finish(const InequalityCase& c, Term term, double base, QuadratureResult q,
                       double outer_power) {
    FunctionalValue out;
    out.name = term_name(c, term);
    out.quadrature = q;
    out.infinite = q.divergent;
    out.value = out.infinite ? kInfinity
                             : (outer_power == 1.0 ? base : std::pow(base, outer_power));
    return out;
}

}  // namespace

FunctionalValue evaluate_term(const InequalityCase& c, Term term, const RadialProfile& phi,
                              double tol) {
    c.validate();
    const TermSpec spec = term_spec(c, term);
    const double R = ball_radius(c);
    if (phi.support_hi > R * (1.0 + 1e-12))
        throw std::invalid_argument(term_name(c, term) +
                                    ": profile support extends beyond the case domain");
    const double Q = c.params.Q;
    const double lo = std::max(phi.support_lo, 0.0);
    const double hi = std::min(phi.support_hi, R);

    const auto g = [&](double rho) -> double {
        double core = 0.0;
        switch (spec.quantity) {
            case Quantity::ValueP:
                core = std::pow(std::fabs(phi.f(rho)), spec.power);
                break;
            case Quantity::GradP:
                core = std::pow(std::fabs(phi.df(rho)), spec.power);
                break;
            case Quantity::Lap2: {
                const double lap = phi.d2f(rho) + (Q - 1.0) * phi.df(rho) / rho;
                core = lap * lap;
                break;
            }
            case Quantity::ValueLog2: {
                const double v = phi.f(rho);
                const double lg = std::log(R / rho);
                core = v * v / (lg * lg);
                break;
            }
        }
        return core * std::pow(rho, spec.rho_exp + Q - 1.0);
    };

    QuadratureResult q = integrate_radial(g, lo, hi, tol);
    const double kap = kappa_weighted(c.params, spec.kappa_exponent());
    q.value *= kap;
    q.abs_error *= kap;
    return finish(c, term, q.value, q, spec.outer_power);
}

FunctionalValue principal_gap(const InequalityCase& c, const RadialProfile& phi, double tol) {
    c.validate();
    const TermSpec lhs = term_spec(c, Term::Lhs);
    const TermSpec pri = term_spec(c, Term::Principal);
    if (lhs.kappa_exponent() != pri.kappa_exponent() || lhs.outer_power != 1.0 ||
        pri.outer_power != 1.0)
        throw std::invalid_argument("principal_gap: terms do not share a polar constant");
    const double R = ball_radius(c);
    if (phi.support_hi > R * (1.0 + 1e-12))
        throw std::invalid_argument("principal_gap: profile support extends beyond the case domain");
    const double Q = c.params.Q;
    const double lo = std::max(phi.support_lo, 0.0);
    const double hi = std::min(phi.support_hi, R);
    const double sharp = sharp_constant(c);

    // pointwise difference of the two integrands: near the extremal family
    // both sides blow up while their difference stays bounded, so separate
    // quadratures would cancel catastrophically
    const auto g = [&](double rho) -> double {
        double num;
        if (lhs.quantity == Quantity::Lap2) {
            const double lap = phi.d2f(rho) + (Q - 1.0) * phi.df(rho) / rho;
            num = lap * lap;
        } else {
            num = std::pow(std::fabs(phi.df(rho)), lhs.power);
        }
        double den;
        if (pri.quantity == Quantity::GradP)
            den = std::pow(std::fabs(phi.df(rho)), pri.power);
        else
            den = std::pow(std::fabs(phi.f(rho)), pri.power);
        return num * std::pow(rho, lhs.rho_exp + Q - 1.0) -
               sharp * den * std::pow(rho, pri.rho_exp + Q - 1.0);
    };

    QuadratureResult q = integrate_radial(g, lo, hi, tol);
    const double kap = kappa_weighted(c.params, lhs.kappa_exponent());
    q.value *= kap;
    q.abs_error *= kap;
    FunctionalValue out;
    out.name = case_name(c.id) + ".principal_gap";
    out.quadrature = q;
    out.infinite = q.divergent;
    out.value = out.infinite ? kInfinity : q.value;
    return out;
}

FunctionalValue evaluate_term(const InequalityCase& c, Term term, const ScalarField& phi,
                              double tol) {
    c.validate();
    const TermSpec spec = term_spec(c, term);
    const double R = ball_radius(c);
    double cut = kInfinity;
    if (phi.support.kind == Support::Kind::RhoBall) cut = phi.support.radius;
    if (cut > R * (1.0 + 1e-12))
        throw std::invalid_argument(term_name(c, term) +
                                    ": field support extends beyond the case domain");
    const double outer = std::min(cut, R);
    if (!std::isfinite(outer))
        throw std::invalid_argument(term_name(c, term) +
                                    ": field evaluation requires bounded support");

    const GrushinParams params = c.params;
    const int m = params.m, k = params.k;
    const auto F = [&, spec, R](double r, double s) -> double {
        Point z;
        z.x.assign(static_cast<size_t>(m), 0.0);
        z.y.assign(static_cast<size_t>(k), 0.0);
        z.x[0] = r;
        z.y[0] = s;
        const double rho = gauge_reduced(r, s, params);
        if (rho <= 0.0) return 0.0;
        const double w = gauge_gradient_norm_reduced(r, s, params);
        double core = 0.0;
        switch (spec.quantity) {
            case Quantity::ValueP:
                core = std::pow(std::fabs(phi.value(z)), spec.power);
                break;
            case Quantity::GradP: {
                const std::vector<double> gx = phi.grad_x(z);
                const std::vector<double> gy = phi.grad_y(z);
                double g2 = 0.0;
                for (double v : gx) g2 += v * v;
                double gy2 = 0.0;
                for (double v : gy) gy2 += v * v;
                g2 += std::pow(r, 2.0 * params.gamma) * gy2;
                core = std::pow(g2, spec.power / 2.0);
                break;
            }
            case Quantity::Lap2: {
                const double lap = phi.lap_x(z) + std::pow(r, 2.0 * params.gamma) * phi.lap_y(z);
                core = lap * lap;
                break;
            }
            case Quantity::ValueLog2: {
                const double v = phi.value(z);
                const double lg = std::log(R / rho);
                core = v * v / (lg * lg);
                break;
            }
        }
        return core * std::pow(rho, spec.rho_exp) * std::pow(w, spec.w_exp);
    };

    const QuadratureResult q =
        integrate_reduced(F, QuadratureDomain::rho_annulus(params, 0.0, outer), tol);
    return finish(c, term, q.value, q, spec.outer_power);
}

namespace {

template <typename Phi>
double gap_impl(const InequalityCase& c, const Phi& phi, double tol) {
    const FunctionalValue lhs = evaluate_term(c, Term::Lhs, phi, tol);
    const std::optional<double> rem_c = remainder_constant(c);
    const FunctionalValue principal = evaluate_term(c, Term::Principal, phi, tol);
    FunctionalValue rem;
    if (rem_c) rem = evaluate_term(c, Term::Remainder, phi, tol);
    const bool rhs_infinite = principal.infinite || (rem_c && rem.infinite);
    if (lhs.infinite) return kInfinity;  // inequality holds trivially
    if (rhs_infinite)
        throw std::runtime_error(case_name(c.id) +
                                 ": right side diverges with finite left side "
                                 "(inequality-violation candidate)");
    double rhs = sharp_constant(c) * principal.value;
    if (rem_c) rhs += *rem_c * rem.value;
    return lhs.value - rhs;
}

template <typename Phi>
double quotient_impl(const InequalityCase& c, const Phi& phi, double tol) {
    const FunctionalValue principal = evaluate_term(c, Term::Principal, phi, tol);
    if (principal.infinite || !(principal.value > 0.0))
        throw std::invalid_argument(case_name(c.id) +
                                    ": principal term must be finite and positive");
    const FunctionalValue lhs = evaluate_term(c, Term::Lhs, phi, tol);
    if (lhs.infinite) return kInfinity;
    return lhs.value / principal.value;
}

}  // namespace

double gap(const InequalityCase& c, const RadialProfile& phi, double tol) {
    return gap_impl(c, phi, tol);
}
double gap(const InequalityCase& c, const ScalarField& phi, double tol) {
    return gap_impl(c, phi, tol);
}
double rayleigh_quotient(const InequalityCase& c, const RadialProfile& phi, double tol) {
    return quotient_impl(c, phi, tol);
}
double rayleigh_quotient(const InequalityCase& c, const ScalarField& phi, double tol) {
    return quotient_impl(c, phi, tol);
}

}  // namespace grushin
