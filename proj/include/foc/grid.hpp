#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace foc {

/// Dense row-major pixel grid. Row index = y, column index = x.
template <typename Scalar>
using Grid = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Grid8 = Grid<std::uint8_t>;
using GridF = Grid<double>;

}  // namespace foc
