#pragma once

#include <cstdint>
#include <random>

#include "softnls/operator.hpp"
#include "softnls/random.hpp"

namespace softnls::testing {

/// Lifted entries i.i.d. N(0, 1).
inline SoftLinearOperator random_operator(std::size_t out_dim, std::size_t in_dim, Engine& g) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(out_dim + 1), static_cast<Eigen::Index>(in_dim + 1));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = nd(g);
  }
  return SoftLinearOperator::from_lifted(m);
}

/// Strictly upper-triangular lifted matrix with nonzero superdiagonal.
inline SoftLinearOperator nilpotent_operator(std::size_t n, Engine& g) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  const auto d = static_cast<Eigen::Index>(n + 1);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) m(i, j) = u(g);
  }
  return SoftLinearOperator::from_lifted(m);
}

}  // namespace softnls::testing
