#include "grushin/extremals.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "grushin/rng.hpp"

namespace grushin {

namespace {

void validate_spec(const ExtremalSpec& spec) {
    if (!(spec.epsilon > 0.0)) throw std::invalid_argument("extremal: epsilon must be positive");
    if (!(spec.delta > 0.0 && spec.delta < 0.5))
        throw std::invalid_argument("extremal: delta must lie in (0, 0.5)");
}

// Cubic Hermite blend on [l, r] matching values and first derivatives.
struct HermiteBlend {
    double l, h, v0, d0, v1, d1;

    double f(double x) const {
        const double t = (x - l) / h;
        const double t2 = t * t, t3 = t2 * t;
        return v0 * (2 * t3 - 3 * t2 + 1) + h * d0 * (t3 - 2 * t2 + t) + v1 * (-2 * t3 + 3 * t2) +
               h * d1 * (t3 - t2);
    }
    double df(double x) const {
        const double t = (x - l) / h;
        const double t2 = t * t;
        return (v0 * (6 * t2 - 6 * t) + h * d0 * (3 * t2 - 4 * t + 1) + v1 * (-6 * t2 + 6 * t) +
                h * d1 * (3 * t2 - 2 * t)) /
               h;
    }
    double d2f(double x) const {
        const double t = (x - l) / h;
        return (v0 * (12 * t - 6) + h * d0 * (6 * t - 4) + v1 * (-12 * t + 6) +
                h * d1 * (6 * t - 2)) /
               (h * h);
    }
};

// inner branch (value, slope at any rho) must be supplied with its
// derivative; outer branch is rho^-lam
RadialProfile mollified_power_profile(double lam, double delta,
                                      const std::function<double(double)>& inner,
                                      const std::function<double(double)>& inner_d) {
    const double l = 1.0 - delta, r = 1.0 + delta;
    HermiteBlend blend{l,
                       2.0 * delta,
                       inner(l),
                       inner_d(l),
                       std::pow(r, -lam),
                       -lam * std::pow(r, -lam - 1.0)};
    RadialProfile out;
    out.f = [=](double rho) {
        if (rho <= l) return inner(rho);
        if (rho >= r) return std::pow(rho, -lam);
        return blend.f(rho);
    };
    out.df = [=](double rho) {
        if (rho <= l) return inner_d(rho);
        if (rho >= r) return -lam * std::pow(rho, -lam - 1.0);
        return blend.df(rho);
    };
    out.d2f = [=](double rho) {
        if (rho <= l) return 0.0;
        if (rho >= r) return lam * (lam + 1.0) * std::pow(rho, -lam - 2.0);
        return blend.d2f(rho);
    };
    return out;
}

}  // namespace

RadialProfile rellich_extremal(const ExtremalSpec& spec) {
    validate_spec(spec);
    const double base = spec.params.Q + spec.alpha - 4.0;
    if (!(base > 0.0)) throw std::invalid_argument("rellich_extremal: requires Q + alpha - 4 > 0");
    const double lam = base / 2.0 + spec.epsilon;
    return mollified_power_profile(
        lam, spec.delta, [lam](double rho) { return lam * (rho - 1.0) + 1.0; },
        [lam](double) { return lam; });
}

RadialProfile hardy_extremal(const ExtremalSpec& spec) {
    validate_spec(spec);
    const double base = spec.params.Q + spec.alpha - 2.0;
    if (!(base > 0.0)) throw std::invalid_argument("hardy_extremal: requires Q + alpha - 2 > 0");
    const double mu = base / 2.0 + spec.epsilon;
    return mollified_power_profile(
        mu, spec.delta, [](double) { return 1.0; }, [](double) { return 0.0; });
}

namespace {

// Second-order jet in the two variables u = |x|^2, v = |y|^2.
struct Jet {
    double v = 0, du = 0, dv = 0, duu = 0, duv = 0, dvv = 0;

    static Jet constant(double c) { return Jet{c, 0, 0, 0, 0, 0}; }

    Jet operator+(const Jet& o) const {
        return {v + o.v, du + o.du, dv + o.dv, duu + o.duu, duv + o.duv, dvv + o.dvv};
    }
    Jet operator*(const Jet& o) const {
        return {v * o.v,
                du * o.v + v * o.du,
                dv * o.v + v * o.dv,
                duu * o.v + 2 * du * o.du + v * o.duu,
                duv * o.v + du * o.dv + dv * o.du + v * o.duv,
                dvv * o.v + 2 * dv * o.dv + v * o.dvv};
    }
};

// f applied to a jet, given f(g), f'(g), f''(g)
Jet compose(double f0, double f1, double f2, const Jet& g) {
    return {f0,
            f1 * g.du,
            f1 * g.dv,
            f2 * g.du * g.du + f1 * g.duu,
            f2 * g.du * g.dv + f1 * g.duv,
            f2 * g.dv * g.dv + f1 * g.dvv};
}

double ipow(double u, int n) {
    if (n < 0) return 0.0;  // only reached with a zero multiplier
    double out = 1.0;
    for (int i = 0; i < n; ++i) out *= u;
    return out;
}

// u^i e^{-au} with two derivatives
void gauss_poly(double u, int i, double a, double& g0, double& g1, double& g2) {
    const double e = std::exp(-a * u);
    const double p0 = ipow(u, i);
    const double p1 = i * ipow(u, i - 1);
    const double p2 = static_cast<double>(i) * (i - 1) * ipow(u, i - 2);
    g0 = p0 * e;
    g1 = (p1 - a * p0) * e;
    g2 = (p2 - 2.0 * a * p1 + a * a * p0) * e;
}

Jet atom_jet(const Atom& at, double u, double v) {
    double x0, x1, x2, y0, y1, y2;
    gauss_poly(u, at.i, at.a, x0, x1, x2);
    gauss_poly(v, at.j, at.b, y0, y1, y2);
    return {at.c * x0 * y0, at.c * x1 * y0, at.c * x0 * y1,
            at.c * x2 * y0, at.c * x1 * y1, at.c * x0 * y2};
}

Jet cutoff_jet(const RadialCutoff& cut, double u, double v, const GrushinParams& params) {
    const double g = params.gamma;
    const double P0 = std::pow(u, 1.0 + g) + (1.0 + g) * (1.0 + g) * v;
    const double beta = 1.0 / (2.0 * (1.0 + g));
    const double rho = std::pow(P0, beta);
    if (rho <= cut.r_in) return Jet::constant(1.0);
    if (rho >= cut.r_out) return Jet::constant(0.0);

    Jet P;
    P.v = P0;
    P.du = (1.0 + g) * std::pow(u, g);
    P.duu = (1.0 + g) * g * std::pow(u, g - 1.0);
    P.dv = (1.0 + g) * (1.0 + g);
    const Jet rj = compose(rho, beta * std::pow(P0, beta - 1.0),
                           beta * (beta - 1.0) * std::pow(P0, beta - 2.0), P);

    const double w = cut.r_out - cut.r_in;
    const double t = (rho - cut.r_in) / w;
    const double S0 = t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
    const double S1 = 30.0 * t * t * (1.0 - t) * (1.0 - t);
    const double S2 = 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
    return compose(1.0 - S0, -S1 / w, -S2 / (w * w), rj);
}

Jet field_jet(const AtomSum& sum, double u, double v, const GrushinParams& params) {
    Jet total;
    for (const Atom& at : sum.atoms) total = total + atom_jet(at, u, v);
    if (sum.cutoff) total = total * cutoff_jet(*sum.cutoff, u, v, params);
    return total;
}

}  // namespace

ScalarField atom_field(const AtomSum& sum, const GrushinParams& params) {
    ScalarField field;
    const int m = params.m, k = params.k;
    const auto jet_at = [sum, params](const Point& p) {
        const double r = norm2(p.x), s = norm2(p.y);
        return field_jet(sum, r * r, s * s, params);
    };
    field.value = [jet_at](const Point& p) { return jet_at(p).v; };
    field.grad_x = [jet_at, m](const Point& p) {
        const Jet j = jet_at(p);
        std::vector<double> out(m);
        for (int l = 0; l < m; ++l) out[l] = 2.0 * p.x[l] * j.du;
        return out;
    };
    field.grad_y = [jet_at, k](const Point& p) {
        const Jet j = jet_at(p);
        std::vector<double> out(k);
        for (int l = 0; l < k; ++l) out[l] = 2.0 * p.y[l] * j.dv;
        return out;
    };
    field.lap_x = [jet_at, m](const Point& p) {
        const Jet j = jet_at(p);
        const double u = norm2(p.x) * norm2(p.x);
        return 4.0 * u * j.duu + 2.0 * m * j.du;
    };
    field.lap_y = [jet_at, k](const Point& p) {
        const Jet j = jet_at(p);
        const double v = norm2(p.y) * norm2(p.y);
        return 4.0 * v * j.dvv + 2.0 * k * j.dv;
    };
    field.support = sum.cutoff ? Support::rho_ball(sum.cutoff->r_out) : Support::whole_space();
    return field;
}

AtomSum random_atoms(std::uint64_t seed, const BumpConfig& config) {
    if (!(config.rate_lo > 0.0 && config.rate_hi >= config.rate_lo))
        throw std::invalid_argument("random_atoms: rates must be positive and ordered");
    CounterRng rng(seed, 0);
    AtomSum sum;
    const int n = rng.uniform_int(1, std::max(1, config.max_atoms));
    sum.atoms.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Atom at;
        at.i = rng.uniform_int(0, config.max_power);
        at.j = rng.uniform_int(0, config.max_power);
        at.a = rng.uniform(config.rate_lo, config.rate_hi);
        at.b = rng.uniform(config.rate_lo, config.rate_hi);
        at.c = rng.uniform(-config.coef_range, config.coef_range);
        sum.atoms.push_back(at);
    }
    sum.cutoff = config.cutoff;
    return sum;
}

ScalarField random_bump(std::uint64_t seed, const BumpConfig& config,
                        const GrushinParams& params) {
    return atom_field(random_atoms(seed, config), params);
}

namespace {

// Clamped cubic B-spline over log-radius knots.
struct LogSpline {
    std::vector<double> T;  // padded knot vector, size N + 4
    std::vector<double> c;  // N coefficients

    int count() const { return static_cast<int>(c.size()); }

    // S, S', S'' at tau inside [T[3], T[N]]
    void eval(double tau, double& s0, double& s1, double& s2) const {
        const int N = count();
        int k = 3;
        while (k < N - 1 && tau >= T[k + 1]) ++k;

        // nonzero basis values of orders 1..4 at the span, B[p-1][i-(k-p+1)]
        double B2[2] = {0, 0}, B3[3] = {0, 0, 0}, B4[4] = {0, 0, 0, 0};
        const auto ratio = [&](double num, double den) { return den > 0.0 ? num / den : 0.0; };
        // order 2 from B_{k,1} = 1
        B2[0] = ratio(T[k + 1] - tau, T[k + 1] - T[k]);
        B2[1] = ratio(tau - T[k], T[k + 1] - T[k]);
        // order 3, i = k-2..k
        for (int i = k - 2; i <= k; ++i) {
            const double left = (i >= k - 1) ? B2[i - (k - 1)] : 0.0;
            const double right = (i + 1 >= k - 1 && i + 1 <= k) ? B2[i + 1 - (k - 1)] : 0.0;
            B3[i - (k - 2)] =
                ratio(tau - T[i], T[i + 2] - T[i]) * left + ratio(T[i + 3] - tau, T[i + 3] - T[i + 1]) * right;
        }
        // order 4, i = k-3..k
        for (int i = k - 3; i <= k; ++i) {
            const double left = (i >= k - 2) ? B3[i - (k - 2)] : 0.0;
            const double right = (i + 1 <= k) ? B3[i + 1 - (k - 2)] : 0.0;
            B4[i - (k - 3)] =
                ratio(tau - T[i], T[i + 3] - T[i]) * left + ratio(T[i + 4] - tau, T[i + 4] - T[i + 1]) * right;
        }

        // derivative bases: B'_{i,4} = 3(B_{i,3}/(T_{i+3}-T_i) - B_{i+1,3}/(T_{i+4}-T_{i+1}))
        const auto b3 = [&](int i) {
            return (i >= k - 2 && i <= k) ? B3[i - (k - 2)] : 0.0;
        };
        const auto b2 = [&](int i) {
            return (i >= k - 1 && i <= k) ? B2[i - (k - 1)] : 0.0;
        };
        const auto db3 = [&](int i) {
            return 2.0 * (ratio(b2(i), T[i + 2] - T[i]) - ratio(b2(i + 1), T[i + 3] - T[i + 1]));
        };
        s0 = s1 = s2 = 0.0;
        for (int i = k - 3; i <= k; ++i) {
            const double d1 =
                3.0 * (ratio(b3(i), T[i + 3] - T[i]) - ratio(b3(i + 1), T[i + 4] - T[i + 1]));
            const double d2 =
                3.0 * (ratio(db3(i), T[i + 3] - T[i]) - ratio(db3(i + 1), T[i + 4] - T[i + 1]));
            s0 += c[static_cast<size_t>(i)] * B4[i - (k - 3)];
            s1 += c[static_cast<size_t>(i)] * d1;
            s2 += c[static_cast<size_t>(i)] * d2;
        }
    }
};

}  // namespace

RadialProfile spline_profile(const std::vector<double>& knots, const std::vector<double>& coeffs) {
    const int n = static_cast<int>(knots.size());
    if (n < 4) throw std::invalid_argument("spline_profile: need at least 4 knots");
    for (int i = 0; i < n; ++i) {
        if (!(knots[static_cast<size_t>(i)] > 0.0))
            throw std::invalid_argument("spline_profile: knots must be positive");
        if (i > 0 && !(knots[static_cast<size_t>(i)] > knots[static_cast<size_t>(i - 1)]))
            throw std::invalid_argument("spline_profile: knots must be strictly increasing");
    }
    if (static_cast<int>(coeffs.size()) != n + 2)
        throw std::invalid_argument("spline_profile: need knots.size() + 2 coefficients");

    auto sp = std::make_shared<LogSpline>();
    sp->T.assign(3, std::log(knots.front()));
    for (double x : knots) sp->T.push_back(std::log(x));
    sp->T.insert(sp->T.end(), 3, std::log(knots.back()));
    sp->c = coeffs;
    // clamp: zero value and first derivative at both support ends
    sp->c[0] = sp->c[1] = 0.0;
    sp->c[coeffs.size() - 1] = sp->c[coeffs.size() - 2] = 0.0;

    const double lo = knots.front(), hi = knots.back();
    RadialProfile out;
    out.support_lo = lo;
    out.support_hi = hi;
    out.f = [sp, lo, hi](double rho) {
        if (rho <= lo || rho >= hi) return 0.0;
        double s0, s1, s2;
        sp->eval(std::log(rho), s0, s1, s2);
        return s0;
    };
    out.df = [sp, lo, hi](double rho) {
        if (rho <= lo || rho >= hi) return 0.0;
        double s0, s1, s2;
        sp->eval(std::log(rho), s0, s1, s2);
        return s1 / rho;
    };
    out.d2f = [sp, lo, hi](double rho) {
        if (rho <= lo || rho >= hi) return 0.0;
        double s0, s1, s2;
        sp->eval(std::log(rho), s0, s1, s2);
        return (s2 - s1) / (rho * rho);
    };
    return out;
}

std::vector<double> spline_parameter_positions(const std::vector<double>& knots) {
    const int n = static_cast<int>(knots.size());
    if (n < 4) throw std::invalid_argument("spline_parameter_positions: need at least 4 knots");
    std::vector<double> T;
    T.assign(3, std::log(knots.front()));
    for (double x : knots) T.push_back(std::log(x));
    T.insert(T.end(), 3, std::log(knots.back()));
    std::vector<double> out;
    const int N = n + 2;
    out.reserve(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i)
        out.push_back(std::exp((T[static_cast<size_t>(i + 1)] + T[static_cast<size_t>(i + 2)] +
                                T[static_cast<size_t>(i + 3)]) /
                               3.0));
    return out;
}

}  // namespace grushin
