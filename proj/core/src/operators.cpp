#include "operators.hpp"

namespace nlsg::detail {

Operators assemble(const Discretization& d) {
  Operators op;
  op.free_of.assign(d.num_dofs(), -1);
  for (std::size_t j = 0; j < d.num_dofs(); ++j)
    if (!d.is_dirichlet(j)) {
      op.free_of[j] = static_cast<long>(op.dofs.size());
      op.dofs.push_back(j);
    }
  const auto n = static_cast<Eigen::Index>(op.dofs.size());
  std::vector<Eigen::Triplet<double>> tk, tm;
  const auto& g = d.graph();
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const double h = d.spacing(e);
    for (std::size_t i = 0; i < d.segments(e); ++i) {
      const long ia = op.free_of[d.node(e, i)], ib = op.free_of[d.node(e, i + 1)];
      const long idx[2] = {ia, ib};
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          if (idx[r] < 0 || idx[c] < 0) continue;
          tk.emplace_back(idx[r], idx[c], (r == c ? 1.0 : -1.0) / h);
          tm.emplace_back(idx[r], idx[c], (r == c ? 2.0 : 1.0) * h / 6.0);
        }
    }
  }
  op.K.resize(n, n);
  op.M.resize(n, n);
  op.K.setFromTriplets(tk.begin(), tk.end());
  op.M.setFromTriplets(tm.begin(), tm.end());
  return op;
}

}  // namespace nlsg::detail
