#include "mub/optimize.hpp"

#include <algorithm>
#include <cmath>

namespace mub {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

CgResult cg_minimize(const std::function<double(const std::vector<double>&)>& f,
                     const std::function<std::vector<double>(
                         const std::vector<double>&)>& grad,
                     std::vector<double> x0, const CgOptions& opts) {
  std::vector<double> x = std::move(x0);
  double fx = f(x);
  std::vector<double> g = grad(x);
  std::vector<double> dir(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) dir[i] = -g[i];

  double step = 1.0;
  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    const double gnorm = std::sqrt(dot(g, g));
    if (gnorm < opts.grad_tol) break;
    if (opts.f_stop >= 0.0 && fx < opts.f_stop) break;

    double slope = dot(g, dir);
    if (slope >= 0.0) {  // not a descent direction: restart on -g
      for (std::size_t i = 0; i < x.size(); ++i) dir[i] = -g[i];
      slope = -gnorm * gnorm;
    }

    // Armijo backtracking from an adaptively grown trial step.
    double t = step;
    std::vector<double> xt(x.size());
    double ft = fx;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      for (std::size_t i = 0; i < x.size(); ++i) xt[i] = x[i] + t * dir[i];
      ft = f(xt);
      if (ft <= fx + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // no progress at any step length

    step = std::min(t * 2.0, 1.0e6);
    x = xt;
    const double f_prev = fx;
    fx = ft;
    std::vector<double> g_new = grad(x);

    // Polak-Ribière+ with automatic reset.
    double beta = 0.0;
    const double denom = dot(g, g);
    if (denom > 0.0) {
      double num = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) num += g_new[i] * (g_new[i] - g[i]);
      beta = std::max(0.0, num / denom);
    }
    for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = -g_new[i] + beta * dir[i];
    g = std::move(g_new);

    if (std::abs(f_prev - fx) < 1e-22 && fx < 1e-20) break;
  }
  return CgResult{std::move(x), fx, iter};
}

}  // namespace mub
