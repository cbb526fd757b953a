#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ppeflow {

using Index = std::int64_t;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Triplet = Eigen::Triplet<double>;
using SpMat = Eigen::SparseMatrix<double>;

/// Geometric tolerance for point-in-triangle and boundary classification
/// (nondimensional; far below any mesh scale used).
inline constexpr double kGeomEps = 1e-10;

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidArgument : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

struct NotFound : Error {
  using Error::Error;
};

}  // namespace ppeflow
