#pragma once

#include "pmsearch/optim/param_space.hpp"

namespace pmsearch::optim {

/// 20-dimensional mixed space: x0..x7 binary, c0..c3 categorical over
/// {a, b, c}, u0..u7 numeric in [0, 1].
ParamSpace planted_space();

/// Planted objective on planted_space() with values in [0, 1] and a unique
/// maximum of 1 at planted_optimum(). Additive per-parameter terms plus
/// pairwise interactions, so coordinate-wise search is informative but not
/// sufficient.
double planted_objective(const Configuration& config);

Configuration planted_optimum();

}  // namespace pmsearch::optim
