#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "nlsg/function_space.hpp"

namespace nlsg::detail {

/// Stiffness and consistent mass matrices restricted to free (non-Dirichlet) dofs.
struct Operators {
  std::vector<long> free_of;
  std::vector<std::size_t> dofs;
  Eigen::SparseMatrix<double> K;
  Eigen::SparseMatrix<double> M;

  Eigen::VectorXd restrict(const std::vector<double>& full) const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(dofs.size()));
    for (std::size_t k = 0; k < dofs.size(); ++k) v[static_cast<Eigen::Index>(k)] = full[dofs[k]];
    return v;
  }
};

Operators assemble(const Discretization& d);

}  // namespace nlsg::detail
