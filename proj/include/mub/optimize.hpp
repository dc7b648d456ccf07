// Small nonlinear conjugate-gradient minimizer (Polak-Ribière+ with Armijo
// backtracking) over flat real parameter vectors. Both desk-scale searches
// (MU vectors, product-basis extension) run on top of it.
#pragma once

#include <functional>
#include <vector>

namespace mub {

struct CgOptions {
  int max_iters = 800;
  double grad_tol = 1e-13;  // stop when ‖g‖ falls below
  double f_stop = -1.0;     // stop when f falls below (disabled if < 0)
};

struct CgResult {
  std::vector<double> x;
  double f = 0.0;
  int iters = 0;
};

CgResult cg_minimize(const std::function<double(const std::vector<double>&)>& f,
                     const std::function<std::vector<double>(
                         const std::vector<double>&)>& grad,
                     std::vector<double> x0, const CgOptions& opts = {});

}  // namespace mub
