#pragma once

#include <functional>

#include "grushin/geometry.hpp"

namespace grushin {

// Central finite differences on functions of a Point. Coordinates are
// indexed 0..m-1 for the x-block and m..m+k-1 for the y-block.
struct FdConfig {
    double eta1 = 1e-5;       // step factor for first derivatives
    double eta2 = 1e-4;       // step factor for second derivatives
    bool richardson = false;  // one extrapolation level
    // Steps follow the anisotropic dilations: x-steps scale with the gauge,
    // y-steps with gauge^{1+gamma}. Functions of the gauge keep a uniform
    // relative feature scale under this choice; without it the y-features
    // near the degenerate set are smaller than the default step.
    bool gauge_scaled = false;
};

using PointFn = std::function<double(const Point&)>;

double fd_partial(const PointFn& f, const Point& p, int coord, const GrushinParams& params,
                  const FdConfig& cfg = {});

double fd_second_partial(const PointFn& f, const Point& p, int coord, const GrushinParams& params,
                         const FdConfig& cfg = {});

// Finite-difference frame gradient (X_1 f, ..., X_m f, Y_1 f, ..., Y_k f).
std::vector<double> fd_grushin_gradient(const PointFn& f, const Point& p,
                                        const GrushinParams& params, const FdConfig& cfg = {});

// Finite-difference Grushin Laplacian Delta_x f + |x|^{2 gamma} Delta_y f.
double fd_grushin_laplacian(const PointFn& f, const Point& p, const GrushinParams& params,
                            const FdConfig& cfg = {});

}  // namespace grushin
