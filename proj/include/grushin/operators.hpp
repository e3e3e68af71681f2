#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "grushin/fd.hpp"
#include "grushin/geometry.hpp"

namespace grushin {

struct Support {
    enum class Kind { WholeSpace, RhoBall };
    Kind kind = Kind::WholeSpace;
    double radius = std::numeric_limits<double>::infinity();

    static Support whole_space() { return {}; }
    static Support rho_ball(double r) { return {Kind::RhoBall, r}; }
};

// A test function with closed-form evaluators for its value, block
// gradients and block (Euclidean) Laplacians.
struct ScalarField {
    std::function<double(const Point&)> value;
    std::function<std::vector<double>(const Point&)> grad_x;  // m components
    std::function<std::vector<double>(const Point&)> grad_y;  // k components
    std::function<double(const Point&)> lap_x;
    std::function<double(const Point&)> lap_y;
    Support support;
};

// A function of the gauge with first and second derivative evaluators.
struct RadialProfile {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;
    double support_lo = 0.0;
    double support_hi = std::numeric_limits<double>::infinity();
};

// (d phi/dx_1, ..., d phi/dx_m, |x|^g d phi/dy_1, ..., |x|^g d phi/dy_k)
std::vector<double> grushin_gradient(const ScalarField& phi, const Point& p,
                                     const GrushinParams& params);

// Delta_x phi + |x|^{2g} Delta_y phi
double grushin_laplacian(const ScalarField& phi, const Point& p, const GrushinParams& params);

// (|x|^{2g}/rho^{2g}) (f'' + (Q-1) f' / rho); throws at the origin.
double radial_laplacian(const RadialProfile& f, const Point& p, const GrushinParams& params);
double radial_laplacian_reduced(const RadialProfile& f, double r, double s,
                                const GrushinParams& params);

struct ResidualReport {
    std::string name;
    double max_scaled_residual = 0.0;
    int points = 0;
    bool vacuous() const { return points == 0; }
};

// Delta_g rho^{a-2} = (Q+a-4)(a-2) rho^{a-4} |grad_g rho|^2, left side by
// finite differences of the composed field.
ResidualReport verify_gauge_power_laplacian(const GrushinParams& params, double alpha,
                                    const std::vector<Point>& points, const FdConfig& cfg = {});

// Closed forms on both sides of the same identity.
ResidualReport verify_gauge_power_laplacian_closed(const GrushinParams& params, double alpha,
                                           const std::vector<Point>& points);

// grad_g(|grad_g rho|) . grad_g rho = 0
ResidualReport verify_orthogonality(const GrushinParams& params, const std::vector<Point>& points,
                                    const FdConfig& cfg = {});

// div_g(rho^a |grad_g rho|^t grad_g rho) = (Q+a-1) rho^{a-1} |grad_g rho|^{t+2}
ResidualReport verify_divergence_identity(const GrushinParams& params, double a, double t,
                                          const std::vector<Point>& points,
                                          const FdConfig& cfg = {});

// Random points in the annulus 0.1 <= rho <= 10 with |x| >= 0.05 rho,
// keeping identity checks away from the degenerate set.
std::vector<Point> sample_annulus_points(const GrushinParams& params, int n, std::uint64_t seed);

}  // namespace grushin
