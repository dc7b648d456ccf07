#include "mub/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>

#include "mub/constructions.hpp"
#include "mub/equivalence.hpp"
#include "mub/mucheck.hpp"
#include "mub/random.hpp"

namespace mub {

namespace {

// --- semi-direct parameterization -------------------------------------------
//
// A candidate product basis is generated by a tree of unitaries: the root
// node carries U ∈ U(d_s) for one subsystem; branch j (one per column)
// recursively parameterizes a basis of the remaining subsystems. Leaves of
// the walk enumerate the d basis vectors. Every tree materializes to an
// exactly orthonormal product basis, direct or indirect depending on how
// the branch unitaries differ.

struct TreeNode {
  int subsystem = 0;
  CMatrix u;
  std::vector<std::unique_ptr<TreeNode>> branch;  // one per column; empty at leaf
};

using TreePtr = std::unique_ptr<TreeNode>;

TreePtr build_tree(const std::vector<int>& remaining,
                   const DimensionSignature& sig, int rotation, Rng& rng) {
  auto node = std::make_unique<TreeNode>();
  const int pick = rotation % static_cast<int>(remaining.size());
  node->subsystem = remaining[static_cast<std::size_t>(pick)];
  const int ds = sig.dims[static_cast<std::size_t>(node->subsystem)];
  node->u = haar_unitary(ds, rng);

  std::vector<int> rest = remaining;
  rest.erase(rest.begin() + pick);
  if (!rest.empty())
    for (int j = 0; j < ds; ++j)
      node->branch.push_back(build_tree(rest, sig, rotation, rng));
  return node;
}

TreePtr copy_tree(const TreeNode& node) {
  auto out = std::make_unique<TreeNode>();
  out->subsystem = node.subsystem;
  out->u = node.u;
  for (const TreePtr& child : node.branch) out->branch.push_back(copy_tree(*child));
  return out;
}

void collect_nodes(TreeNode* node, std::vector<TreeNode*>& out) {
  out.push_back(node);
  for (TreePtr& child : node->branch) collect_nodes(child.get(), out);
}

// Materialized candidate: factor table plus (node, column) provenance used
// to push factor gradients back onto the generating unitaries.
struct Candidate {
  int n = 0;
  std::vector<std::vector<Ket>> factors;                        // [vec][subsystem]
  std::vector<std::vector<std::pair<TreeNode*, int>>> sources;  // [vec][subsystem]
};

void walk_tree(TreeNode* node, std::vector<std::pair<TreeNode*, int>>& path,
               Candidate& out) {
  const int cols = node->u.cols;
  for (int j = 0; j < cols; ++j) {
    path.emplace_back(node, j);
    if (node->branch.empty()) {
      std::vector<Ket> factors(static_cast<std::size_t>(out.n));
      std::vector<std::pair<TreeNode*, int>> sources(
          static_cast<std::size_t>(out.n), {nullptr, -1});
      for (const auto& [pnode, col] : path) {
        factors[static_cast<std::size_t>(pnode->subsystem)] = pnode->u.column(col);
        sources[static_cast<std::size_t>(pnode->subsystem)] = {pnode, col};
      }
      out.factors.push_back(std::move(factors));
      out.sources.push_back(std::move(sources));
    } else {
      walk_tree(node->branch[static_cast<std::size_t>(j)].get(), path, out);
    }
    path.pop_back();
  }
}

Candidate materialize(TreeNode* root, int n) {
  Candidate cand;
  cand.n = n;
  std::vector<std::pair<TreeNode*, int>> path;
  walk_tree(root, path, cand);
  return cand;
}

ProductBasis to_basis(const Candidate& cand, const DimensionSignature& sig) {
  ProductBasis b;
  b.sig = sig;
  for (const auto& row : cand.factors) b.vectors.push_back(ProductKet(row));
  return b;
}

Candidate candidate_from_basis(const ProductBasis& b) {
  Candidate cand;
  cand.n = b.sig.n();
  for (const ProductKet& v : b.vectors) {
    cand.factors.push_back(v.factors);
    cand.sources.emplace_back(static_cast<std::size_t>(cand.n),
                              std::pair<TreeNode*, int>{nullptr, -1});
  }
  return cand;
}

// --- objective and factor gradients ------------------------------------------

struct Eval {
  double f = 0.0;
  std::vector<std::vector<std::vector<Complex>>> fgrad;  // [vec][subsystem][coord]
};

inline void coeff_accumulate(Complex& target, const Complex& coeff,
                             const Complex& x) {
  target += coeff * x;
}

// Products of the factor overlaps excluding one position.
void excluded_products(const std::vector<Complex>& f, std::vector<Complex>& out) {
  const std::size_t n = f.size();
  out.assign(n, Complex{1.0, 0.0});
  Complex prefix{1.0, 0.0};
  for (std::size_t r = 0; r < n; ++r) {
    out[r] = prefix;
    prefix *= f[r];
  }
  Complex suffix{1.0, 0.0};
  for (std::size_t r = n; r-- > 0;) {
    out[r] *= suffix;
    suffix *= f[r];
  }
}

Eval eval_candidate(const Candidate& cand,
                    const std::vector<const ProductBasis*>& against,
                    double inv_d, bool want_grad) {
  const int n = cand.n;
  const int dvec = static_cast<int>(cand.factors.size());
  Eval ev;
  if (want_grad) {
    ev.fgrad.resize(static_cast<std::size_t>(dvec));
    for (int i = 0; i < dvec; ++i) {
      ev.fgrad[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n));
      for (int r = 0; r < n; ++r)
        ev.fgrad[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)].assign(
            cand.factors[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]
                .coords.size(),
            Complex{0.0, 0.0});
    }
  }

  std::vector<Complex> f(static_cast<std::size_t>(n)), excl;

  // MU deviation against every fixed basis.
  for (const ProductBasis* basis : against)
    for (int i = 0; i < dvec; ++i)
      for (const ProductKet& psi : basis->vectors) {
        Complex o{1.0, 0.0};
        for (int r = 0; r < n; ++r) {
          f[static_cast<std::size_t>(r)] =
              inner(cand.factors[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)],
                    psi.factors[static_cast<std::size_t>(r)]);
          o *= f[static_cast<std::size_t>(r)];
        }
        const double e = std::norm(o) - inv_d;
        ev.f += e * e;
        if (!want_grad) continue;
        excluded_products(f, excl);
        for (int r = 0; r < n; ++r) {
          const Complex coeff = 2.0 * e * std::conj(o) * excl[static_cast<std::size_t>(r)];
          const Ket& br = psi.factors[static_cast<std::size_t>(r)];
          auto& g = ev.fgrad[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
          for (std::size_t k = 0; k < g.size(); ++k) coeff_accumulate(g[k], coeff, br.coords[k]);
        }
      }

  // Orthonormality penalty of the candidate itself (identically ~0 on the
  // unitary manifold; kept so the objective is meaningful for any basis).
  for (int i = 0; i < dvec; ++i)
    for (int j = i + 1; j < dvec; ++j) {
      Complex o{1.0, 0.0};
      for (int r = 0; r < n; ++r) {
        f[static_cast<std::size_t>(r)] =
            inner(cand.factors[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)],
                  cand.factors[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)]);
        o *= f[static_cast<std::size_t>(r)];
      }
      ev.f += std::norm(o);
      if (!want_grad) continue;
      excluded_products(f, excl);
      for (int r = 0; r < n; ++r) {
        const Complex ci = std::conj(o) * excl[static_cast<std::size_t>(r)];
        const Complex cj = o * std::conj(excl[static_cast<std::size_t>(r)]);
        auto& gi = ev.fgrad[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
        auto& gj = ev.fgrad[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
        const Ket& fi = cand.factors[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
        const Ket& fj = cand.factors[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
        for (std::size_t k = 0; k < gi.size(); ++k) {
          coeff_accumulate(gi[k], ci, fj.coords[k]);
          coeff_accumulate(gj[k], cj, fi.coords[k]);
        }
      }
    }

  // Norm penalty per candidate vector.
  for (int i = 0; i < dvec; ++i) {
    std::vector<double> norms(static_cast<std::size_t>(n));
    double prod = 1.0;
    for (int r = 0; r < n; ++r) {
      norms[static_cast<std::size_t>(r)] =
          cand.factors[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)].norm_sq();
      prod *= norms[static_cast<std::size_t>(r)];
    }
    const double e = prod - 1.0;
    ev.f += e * e;
    if (!want_grad) continue;
    for (int r = 0; r < n; ++r) {
      double rest = 1.0;
      for (int r2 = 0; r2 < n; ++r2)
        if (r2 != r) rest *= norms[static_cast<std::size_t>(r2)];
      const double coeff = 2.0 * e * rest;
      auto& g = ev.fgrad[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
      const Ket& fi = cand.factors[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
      for (std::size_t k = 0; k < g.size(); ++k) g[k] += coeff * fi.coords[k];
    }
  }
  return ev;
}

// --- Riemannian descent over the product of unitary groups -------------------

using Tangent = std::vector<CMatrix>;  // anti-Hermitian, aligned with node list

double tangent_dot(const Tangent& a, const Tangent& b) {
  double s = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t)
    for (std::size_t k = 0; k < a[t].a.size(); ++k)
      s += a[t].a[k].real() * b[t].a[k].real() +
           a[t].a[k].imag() * b[t].a[k].imag();
  return s;
}

// Riemannian gradient per node: Ω = K − K† with K = U†G, G the Euclidean
// gradient ∂F/∂Ū accumulated column-wise from the factor gradients.
Tangent riemannian_gradient(const std::vector<TreeNode*>& nodes,
                            const Candidate& cand, const Eval& ev) {
  std::vector<CMatrix> euclid(nodes.size());
  for (std::size_t t = 0; t < nodes.size(); ++t)
    euclid[t] = CMatrix(nodes[t]->u.rows, nodes[t]->u.cols);

  for (std::size_t i = 0; i < cand.sources.size(); ++i)
    for (std::size_t r = 0; r < cand.sources[i].size(); ++r) {
      const auto& [node, col] = cand.sources[i][r];
      if (node == nullptr) continue;
      const std::size_t t = static_cast<std::size_t>(
          std::find(nodes.begin(), nodes.end(), node) - nodes.begin());
      const auto& g = ev.fgrad[i][r];
      for (std::size_t row = 0; row < g.size(); ++row)
        euclid[t](static_cast<int>(row), col) += g[row];
    }

  Tangent grad(nodes.size());
  for (std::size_t t = 0; t < nodes.size(); ++t) {
    const CMatrix k = matmul(adjoint(nodes[t]->u), euclid[t]);
    CMatrix omega = k;
    const CMatrix kh = adjoint(k);
    for (std::size_t idx = 0; idx < omega.a.size(); ++idx) omega.a[idx] -= kh.a[idx];
    grad[t] = std::move(omega);
  }
  return grad;
}

void retract(std::vector<TreeNode*>& nodes, const Tangent& dir, double t) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const CMatrix step = expm_antihermitian(scale(dir[i], Complex{t, 0.0}));
    nodes[i]->u = orthonormalize_columns(matmul(nodes[i]->u, step));
  }
}

struct OptimizeOptions {
  int max_iters = 1200;
  double grad_tol = 1e-12;
  double f_stop = -1.0;
};

double optimize_tree(TreeNode* root, const DimensionSignature& sig,
                     const std::vector<const ProductBasis*>& against,
                     const OptimizeOptions& opts) {
  const double inv_d = 1.0 / sig.total();
  std::vector<TreeNode*> nodes;
  collect_nodes(root, nodes);

  Candidate cand = materialize(root, sig.n());
  Eval ev = eval_candidate(cand, against, inv_d, true);
  Tangent g = riemannian_gradient(nodes, cand, ev);
  Tangent dir(g.size());
  for (std::size_t t = 0; t < g.size(); ++t) dir[t] = scale(g[t], Complex{-1.0, 0.0});

  double step = 0.5;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    const double gnorm = std::sqrt(tangent_dot(g, g));
    if (gnorm < opts.grad_tol) break;
    if (opts.f_stop >= 0.0 && ev.f < opts.f_stop) break;

    double slope = tangent_dot(g, dir);
    if (slope >= 0.0) {
      for (std::size_t t = 0; t < g.size(); ++t)
        dir[t] = scale(g[t], Complex{-1.0, 0.0});
      slope = -gnorm * gnorm;
    }

    // Armijo backtracking on a trial copy of the tree.
    double t_step = step;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      TreePtr trial = copy_tree(*root);
      std::vector<TreeNode*> trial_nodes;
      collect_nodes(trial.get(), trial_nodes);
      retract(trial_nodes, dir, t_step);
      Candidate tc = materialize(trial.get(), sig.n());
      const double ft = eval_candidate(tc, against, inv_d, false).f;
      if (ft <= ev.f + 1e-4 * t_step * slope) {
        root->u = trial->u;
        root->branch = std::move(trial->branch);
        accepted = true;
        break;
      }
      t_step *= 0.5;
    }
    if (!accepted) break;
    step = std::min(t_step * 2.0, 64.0);

    nodes.clear();
    collect_nodes(root, nodes);
    cand = materialize(root, sig.n());
    const double f_prev = ev.f;
    ev = eval_candidate(cand, against, inv_d, true);
    Tangent g_new = riemannian_gradient(nodes, cand, ev);

    // Polak-Ribière+ on the left-translated tangent coordinates.
    double beta = 0.0;
    const double denom = tangent_dot(g, g);
    if (denom > 0.0) {
      Tangent diff(g_new.size());
      for (std::size_t t = 0; t < g_new.size(); ++t) {
        diff[t] = g_new[t];
        for (std::size_t k = 0; k < diff[t].a.size(); ++k) diff[t].a[k] -= g[t].a[k];
      }
      beta = std::max(0.0, tangent_dot(g_new, diff) / denom);
    }
    for (std::size_t t = 0; t < dir.size(); ++t) {
      dir[t] = scale(dir[t], Complex{beta, 0.0});
      for (std::size_t k = 0; k < dir[t].a.size(); ++k) dir[t].a[k] -= g_new[t].a[k];
    }
    g = std::move(g_new);

    if (std::abs(f_prev - ev.f) < 1e-24 && ev.f < 1e-20) break;
  }
  return ev.f;
}

double pairwise_set_objective(const std::vector<ProductBasis>& bases,
                              double inv_d) {
  double total = 0.0;
  for (std::size_t t = 0; t < bases.size(); ++t) {
    Candidate cand = candidate_from_basis(bases[t]);
    std::vector<const ProductBasis*> later;
    for (std::size_t t2 = t + 1; t2 < bases.size(); ++t2)
      later.push_back(&bases[t2]);
    total += eval_candidate(cand, later, inv_d, false).f;
  }
  return total;
}

}  // namespace

double product_extension_objective(const MubSet& s,
                                   const ProductBasis& candidate) {
  if (!(s.sig == candidate.sig))
    throw std::invalid_argument(
        "product_extension_objective: signature mismatch");
  Candidate cand = candidate_from_basis(candidate);
  std::vector<const ProductBasis*> against;
  for (const ProductBasis& b : s.bases) against.push_back(&b);
  return eval_candidate(cand, against, 1.0 / s.dim(), false).f;
}

SearchReport extend_set(const MubSet& s, int restarts, double tol,
                        std::uint64_t seed) {
  for (int a = 0; a < s.size(); ++a)
    for (int b = a + 1; b < s.size(); ++b)
      if (!are_bases_mu(s.bases[static_cast<std::size_t>(a)],
                        s.bases[static_cast<std::size_t>(b)], tol)
               .pass)
        throw std::invalid_argument("extend_set: input set is not pairwise MU");

  const auto t0 = std::chrono::steady_clock::now();
  SearchReport report;
  report.signature = s.sig;
  report.target = "extend-set";
  report.seed = seed;
  report.restarts = restarts;
  report.best_objective = std::numeric_limits<double>::infinity();

  std::vector<const ProductBasis*> against;
  for (const ProductBasis& b : s.bases) against.push_back(&b);
  std::vector<int> all_subsystems;
  for (int r = 0; r < s.sig.n(); ++r) all_subsystems.push_back(r);

  const double found_threshold = tol * tol;
  std::vector<Fingerprint> found_prints;

  for (int restart = 0; restart < restarts; ++restart) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
    TreePtr tree = build_tree(all_subsystems, s.sig, restart, rng);

    OptimizeOptions opts;
    opts.f_stop = found_threshold * 1e-4;
    const double f = optimize_tree(tree.get(), s.sig, against, opts);
    report.best_objective = std::min(report.best_objective, f);
    if (f >= found_threshold) continue;

    const ProductBasis candidate = to_basis(materialize(tree.get(), s.sig.n()), s.sig);
    std::vector<Ket> flat;
    for (const ProductKet& v : candidate.vectors) flat.push_back(flatten(v));
    if (!validate_orthonormal(flat, tol).pass) continue;
    bool mu_ok = true;
    for (const ProductBasis& b : s.bases)
      if (!are_bases_mu(candidate, b, tol).pass) {
        mu_ok = false;
        break;
      }
    if (!mu_ok) continue;

    MubSet extended = s;
    extended.bases.push_back(candidate);
    extended.provenance = s.provenance + " + found extension";
    extended.seed = seed;
    extended.tol = tol;
    const Fingerprint print = fingerprint(extended);
    bool duplicate = false;
    for (const Fingerprint& prev : found_prints)
      if (prev == print) {
        duplicate = true;
        break;
      }
    if (!duplicate) {
      found_prints.push_back(print);
      report.found.push_back(std::move(extended));
    }
  }

  report.best_residual = std::sqrt(report.best_objective);
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

SearchReport conjecture1_probe(const DimensionSignature& sig, int restarts,
                               double tol, std::uint64_t seed) {
  const int min_dim = *std::min_element(sig.dims.begin(), sig.dims.end());
  if (min_dim < 4)
    throw std::invalid_argument(
        "conjecture1_probe: min(dims) must be >= 4 (the proven bound applies; "
        "use extend_set)");

  const auto t0 = std::chrono::steady_clock::now();
  const int target = mu_product_bound(sig).bound + 1;
  const double inv_d = 1.0 / sig.total();
  const double found_threshold = tol * tol;

  SearchReport report;
  report.signature = sig;
  report.target = "conjecture1";
  report.seed = seed;
  report.restarts = restarts;
  report.best_objective = std::numeric_limits<double>::infinity();

  std::vector<int> all_subsystems;
  for (int r = 0; r < sig.n(); ++r) all_subsystems.push_back(r);

  for (int restart = 0; restart < restarts; ++restart) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
    std::vector<TreePtr> trees;
    for (int t = 0; t < target; ++t)
      trees.push_back(build_tree(all_subsystems, sig, restart + t, rng));

    double total = std::numeric_limits<double>::infinity();
    // Alternating optimization: each basis against the others held fixed.
    for (int sweep = 0; sweep < 8; ++sweep) {
      for (int t = 0; t < target; ++t) {
        std::vector<ProductBasis> others;
        for (int t2 = 0; t2 < target; ++t2)
          if (t2 != t)
            others.push_back(
                to_basis(materialize(trees[static_cast<std::size_t>(t2)].get(), sig.n()), sig));
        std::vector<const ProductBasis*> against;
        for (const ProductBasis& b : others) against.push_back(&b);
        OptimizeOptions opts;
        opts.max_iters = 150;
        optimize_tree(trees[static_cast<std::size_t>(t)].get(), sig, against, opts);
      }
      std::vector<ProductBasis> bases;
      for (int t = 0; t < target; ++t)
        bases.push_back(to_basis(materialize(trees[static_cast<std::size_t>(t)].get(), sig.n()), sig));
      const double now = pairwise_set_objective(bases, inv_d);
      if (now + 1e-14 > total) {
        total = std::min(total, now);
        break;
      }
      total = now;
      if (total < found_threshold) break;
    }
    report.best_objective = std::min(report.best_objective, total);

    if (total < found_threshold) {
      MubSet found;
      found.sig = sig;
      found.provenance = "conjecture1 probe witness";
      found.seed = seed;
      found.tol = tol;
      bool valid = true;
      for (int t = 0; t < target && valid; ++t) {
        ProductBasis b =
            to_basis(materialize(trees[static_cast<std::size_t>(t)].get(), sig.n()), sig);
        std::vector<Ket> flat;
        for (const ProductKet& v : b.vectors) flat.push_back(flatten(v));
        if (!validate_orthonormal(flat, tol).pass) valid = false;
        found.bases.push_back(std::move(b));
      }
      for (int a = 0; a < target && valid; ++a)
        for (int b = a + 1; b < target; ++b)
          if (!are_bases_mu(found.bases[static_cast<std::size_t>(a)],
                            found.bases[static_cast<std::size_t>(b)], tol)
                   .pass) {
            valid = false;
            break;
          }
      if (valid) {
        report.conjecture_violation = true;
        report.found.push_back(std::move(found));
      }
    }
  }

  report.best_residual = std::sqrt(report.best_objective);
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

std::vector<MubSet> enumerate_structured_sets(
    const DimensionSignature& sig, int p, int k,
    const std::vector<ProductBasis>& pool, double tol) {
  if (pool.empty())
    throw std::invalid_argument("enumerate_structured_sets: empty pool");
  const int n_sets = p + 1;
  int labels = 1;
  for (int r = 0; r < k; ++r) labels *= p;
  const int slots = n_sets * labels;
  const int pool_size = static_cast<int>(pool.size());

  // Pairwise MU table over the pool.
  std::vector<std::vector<bool>> mu(static_cast<std::size_t>(pool_size),
                                    std::vector<bool>(static_cast<std::size_t>(pool_size), false));
  for (int a = 0; a < pool_size; ++a)
    for (int b = a + 1; b < pool_size; ++b) {
      const bool ok = are_bases_mu(pool[static_cast<std::size_t>(a)],
                                   pool[static_cast<std::size_t>(b)], tol)
                          .pass;
      mu[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = ok;
      mu[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = ok;
    }

  std::vector<MubSet> out;
  std::vector<int> assignment(static_cast<std::size_t>(slots), -1);
  long nodes = 0;

  std::function<void(int)> dfs = [&](int slot) {
    if (++nodes > 5'000'000)
      throw std::runtime_error("enumerate_structured_sets: search too large");
    if (slot == slots) {
      BasisAssignment ba;
      ba.choice.resize(static_cast<std::size_t>(n_sets));
      for (int b = 0; b < n_sets; ++b)
        for (int j = 0; j < labels; ++j)
          ba.choice[static_cast<std::size_t>(b)].push_back(
              pool[static_cast<std::size_t>(assignment[static_cast<std::size_t>(b * labels + j)])]);
      out.push_back(assemble_corollary_set(sig, p, k, ba, tol));
      return;
    }
    const int b = slot / labels;
    for (int q = 0; q < pool_size; ++q) {
      bool ok = true;
      for (int prev = 0; prev < slot && ok; ++prev) {
        const int pb = prev / labels;
        if (pb != b &&
            !mu[static_cast<std::size_t>(q)][static_cast<std::size_t>(assignment[static_cast<std::size_t>(prev)])])
          ok = false;
      }
      if (!ok) continue;
      assignment[static_cast<std::size_t>(slot)] = q;
      dfs(slot + 1);
      assignment[static_cast<std::size_t>(slot)] = -1;
    }
  };
  dfs(0);
  return out;
}

}  // namespace mub
