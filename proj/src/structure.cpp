#include "mub/structure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace mub {

namespace {

void require_bipartite(const ProductBasis& b, const char* who) {
  if (b.sig.n() != 2)
    throw std::invalid_argument(std::string(who) +
                                ": bipartite signature required");
}

void require_index(int i, int d, const char* who) {
  if (i < 0 || i >= d)
    throw std::invalid_argument(std::string(who) + ": index out of range");
}

}  // namespace

bool r_orthogonal(const ProductKet& v, const ProductKet& w, int r,
                  double tol) {
  if (!(v.signature() == w.signature()))
    throw std::invalid_argument("r_orthogonal: signature mismatch");
  require_index(r, v.n(), "r_orthogonal");
  return std::abs(factor_inner(v, w, r)) <= tol;
}

PartitionResult partition(const ProductBasis& b, int kappa,
                          std::optional<int> lambda, double tol) {
  require_bipartite(b, "partition");
  const int d = b.dim();
  if (static_cast<int>(b.vectors.size()) != d)
    throw std::invalid_argument("partition: basis size != dimension");
  require_index(kappa, d, "partition");
  const int d1 = b.sig.dims[0];

  PartitionResult res;
  res.kappa = kappa;
  const ProductKet& anchor = b.vectors[static_cast<std::size_t>(kappa)];
  for (int i = 0; i < d; ++i) {
    if (i == kappa) continue;
    const double o2 =
        std::abs(factor_inner(anchor, b.vectors[static_cast<std::size_t>(i)], 1));
    (o2 > tol ? res.i_kappa : res.i_kappa_bar).push_back(i);
  }
  if (static_cast<int>(res.i_kappa.size()) < d1 - 1)
    throw StructuralViolation(
        "partition: |I_kappa| < d_1 - 1; input basis is not an orthonormal "
        "product basis");

  if (lambda.has_value()) {
    const int l = *lambda;
    if (std::find(res.i_kappa.begin(), res.i_kappa.end(), l) ==
        res.i_kappa.end())
      throw std::invalid_argument("partition: lambda not in I_kappa");
    res.lambda = l;
    const ProductKet& second = b.vectors[static_cast<std::size_t>(l)];
    for (int i = 0; i < d; ++i) {
      if (i == kappa || i == l) continue;
      const ProductKet& vi = b.vectors[static_cast<std::size_t>(i)];
      // ⟨b_κ|b_i⟩⟨b_λ|b_i⟩ ≠ 0 iff both factors are nonzero.
      const bool nonzero = std::abs(factor_inner(anchor, vi, 1)) > tol &&
                           std::abs(factor_inner(second, vi, 1)) > tol;
      (nonzero ? res.i_kappa_lambda : res.i_kappa_lambda_bar).push_back(i);
    }
    if (static_cast<int>(res.i_kappa_lambda.size()) < d1 - 2)
      throw StructuralViolation(
          "partition: |I_kappa_lambda| < d_1 - 2; input basis is not an "
          "orthonormal product basis");
  }
  return res;
}

OrthoSubset extract_ortho_subset(const ProductBasis& b, int r, int kappa,
                                 double tol) {
  require_index(r, b.sig.n(), "extract_ortho_subset");
  const int dr = b.sig.dims[static_cast<std::size_t>(r)];
  if (dr != 2 && dr != 3)
    throw std::invalid_argument("extract_ortho_subset: d_r must be 2 or 3");
  require_index(kappa, b.dim(), "extract_ortho_subset");

  const ProductBasis bip = (b.sig.n() == 2 && r == 0)
                               ? b
                               : regroup_bipartite(b, r);
  const auto first = [&](int i) -> const Ket& {
    return bip.vectors[static_cast<std::size_t>(i)].factors[0];
  };

  const PartitionResult step1 = partition(bip, kappa, std::nullopt, tol);
  OrthoSubset out;
  out.subsystem = r;

  if (dr == 2) {
    // Every member of A_κ is 1-orthogonal to the anchor; pick the cleanest.
    int best = -1;
    double best_dev = 2.0;
    for (int i : step1.i_kappa) {
      const double dev = std::abs(inner(first(kappa), first(i)));
      if (dev < best_dev) {
        best_dev = dev;
        best = i;
      }
    }
    if (best < 0 || best_dev > tol)
      throw StructuralViolation(
          "extract_ortho_subset: no 1-orthogonal partner found");
    out.indices = {kappa, best};
    return out;
  }

  // d_r = 3: any λ ∈ I_κ works in exact arithmetic; scan for the candidate
  // triple with the smallest pairwise deviation.
  double best_dev = 2.0;
  std::vector<int> best_triple;
  for (int l : step1.i_kappa) {
    PartitionResult step2;
    try {
      step2 = partition(bip, kappa, l, tol);
    } catch (const StructuralViolation&) {
      continue;
    }
    for (int m : step2.i_kappa_lambda) {
      const double dev = std::max(
          {std::abs(inner(first(kappa), first(l))),
           std::abs(inner(first(kappa), first(m))),
           std::abs(inner(first(l), first(m)))});
      if (dev < best_dev) {
        best_dev = dev;
        best_triple = {kappa, l, m};
      }
    }
  }
  if (best_triple.empty() || best_dev > tol)
    throw StructuralViolation(
        "extract_ortho_subset: no orthonormal triple found; input is not an "
        "orthonormal product basis");
  out.indices = best_triple;
  return out;
}

std::optional<std::vector<int>> orthonormal_subset_indices(
    const std::vector<Ket>& factors, int want, double tol) {
  std::vector<int> chosen;
  std::function<bool(int)> dfs = [&](int next) -> bool {
    if (static_cast<int>(chosen.size()) == want) return true;
    for (int i = next; i < static_cast<int>(factors.size()); ++i) {
      bool ok = true;
      for (int j : chosen)
        if (std::abs(inner(factors[static_cast<std::size_t>(j)],
                           factors[static_cast<std::size_t>(i)])) > tol) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(i);
      if (dfs(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (dfs(0)) return chosen;
  return std::nullopt;
}

namespace {

// Cluster the r-th factors into rays; returns per-vector cluster ids and the
// representative kets. Two factors share a ray iff 1 − |⟨a|b⟩| ≤ tol.
std::pair<std::vector<int>, std::vector<Ket>> cluster_rays(
    const ProductBasis& b, int r, double tol) {
  std::vector<int> id(b.vectors.size(), -1);
  std::vector<Ket> reps;
  for (std::size_t i = 0; i < b.vectors.size(); ++i) {
    const Ket& f = b.vectors[i].factors[static_cast<std::size_t>(r)];
    for (std::size_t c = 0; c < reps.size(); ++c)
      if (1.0 - std::abs(inner(reps[c], f)) <= tol) {
        id[i] = static_cast<int>(c);
        break;
      }
    if (id[i] < 0) {
      id[i] = static_cast<int>(reps.size());
      reps.push_back(f);
    }
  }
  return {id, reps};
}

// Exact-cover backtracking: partition indices 0…d−1 into groups of size
// `group_size` whose r-th factors are pairwise orthogonal. Returns the
// lexicographically first cover.
std::optional<std::vector<std::vector<int>>> group_factors(
    const ProductBasis& b, int r, double tol) {
  const int d = static_cast<int>(b.vectors.size());
  const int group_size = b.sig.dims[static_cast<std::size_t>(r)];
  const int n_groups = d / group_size;

  std::vector<std::vector<int>> groups;
  std::vector<bool> used(static_cast<std::size_t>(d), false);
  const auto factor = [&](int i) -> const Ket& {
    return b.vectors[static_cast<std::size_t>(i)].factors[static_cast<std::size_t>(r)];
  };

  std::function<bool()> dfs = [&]() -> bool {
    int pivot = -1;
    for (int i = 0; i < d; ++i)
      if (!used[static_cast<std::size_t>(i)]) {
        pivot = i;
        break;
      }
    if (pivot < 0) return true;

    // The pivot either joins an open group or opens a new one.
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (static_cast<int>(groups[g].size()) == group_size) continue;
      bool ok = true;
      for (int j : groups[g])
        if (std::abs(inner(factor(j), factor(pivot))) > tol) {
          ok = false;
          break;
        }
      if (!ok) continue;
      groups[g].push_back(pivot);
      used[static_cast<std::size_t>(pivot)] = true;
      if (dfs()) return true;
      used[static_cast<std::size_t>(pivot)] = false;
      groups[g].pop_back();
    }
    if (static_cast<int>(groups.size()) < n_groups) {
      groups.push_back({pivot});
      used[static_cast<std::size_t>(pivot)] = true;
      if (dfs()) return true;
      used[static_cast<std::size_t>(pivot)] = false;
      groups.pop_back();
    }
    return false;
  };

  if (dfs()) return groups;
  return std::nullopt;
}

}  // namespace

BasisClass classify(const ProductBasis& b, double tol) {
  BasisClass cls;
  cls.per_subsystem_basis_count.reserve(static_cast<std::size_t>(b.sig.n()));
  for (int r = 0; r < b.sig.n(); ++r) {
    const int dr = b.sig.dims[static_cast<std::size_t>(r)];
    auto [ids, reps] = cluster_rays(b, r, tol);

    // One fixed basis per subsystem: exactly d_r rays, pairwise orthogonal.
    bool single = static_cast<int>(reps.size()) == dr;
    if (single)
      for (std::size_t i = 0; i < reps.size() && single; ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
          if (std::abs(inner(reps[i], reps[j])) > tol) {
            single = false;
            break;
          }
    if (single) {
      cls.per_subsystem_basis_count.push_back(1);
      continue;
    }

    // Count distinct bases through the index grouping; groups compare as
    // sets of ray ids (the same ray may occur in several bases).
    auto grouping = group_factors(b, r, tol);
    if (!grouping.has_value()) {
      cls.grouping_found = false;
      cls.per_subsystem_basis_count.push_back(static_cast<int>(reps.size()));
      continue;
    }
    std::vector<std::vector<int>> keys;
    for (const auto& g : *grouping) {
      std::vector<int> key;
      for (int i : g) key.push_back(ids[static_cast<std::size_t>(i)]);
      std::sort(key.begin(), key.end());
      keys.push_back(std::move(key));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    cls.per_subsystem_basis_count.push_back(static_cast<int>(keys.size()));
  }

  cls.kind = BasisKind::Direct;
  for (int c : cls.per_subsystem_basis_count)
    if (c != 1) cls.kind = BasisKind::Indirect;
  return cls;
}

namespace {

bool is_prime_power(int d) {
  for (int p = 2; p <= d; ++p) {
    if (d % p != 0) continue;
    int m = d;
    while (m % p == 0) m /= p;
    return m == 1;
  }
  return false;
}

int smallest_prime_power_factor(int d) {
  // p^k for the smallest prime p dividing d, with full multiplicity.
  for (int p = 2; p <= d; ++p) {
    if (d % p != 0) continue;
    int q = 1;
    while (d % p == 0) {
      d /= p;
      q *= p;
    }
    return q;
  }
  return d;
}

// Assumed number of MU bases in C^d: exact d+1 for prime powers, otherwise
// the classical lower bound q+1 with q the smallest prime-power factor.
std::pair<int, bool> mu_basis_count(int d) {
  if (is_prime_power(d)) return {d + 1, true};
  return {smallest_prime_power_factor(d) + 1, false};
}

}  // namespace

BoundResult mu_product_bound(const DimensionSignature& sig) {
  BoundResult res;
  for (int d : sig.dims) {
    auto [count, exact] = mu_basis_count(d);
    res.assumed_counts.push_back(count);
    res.count_exact.push_back(exact);
  }

  const int min_dim = *std::min_element(sig.dims.begin(), sig.dims.end());
  if (min_dim == 2 || min_dim == 3) {
    res.bound = min_dim + 1;
    res.status = BoundStatus::Proven;
    res.limiting_subsystem = static_cast<int>(
        std::min_element(sig.dims.begin(), sig.dims.end()) - sig.dims.begin());
    return res;
  }

  int m = 0;
  for (int r = 1; r < sig.n(); ++r)
    if (res.assumed_counts[static_cast<std::size_t>(r)] <
        res.assumed_counts[static_cast<std::size_t>(m)])
      m = r;
  res.limiting_subsystem = m;
  res.bound = res.assumed_counts[static_cast<std::size_t>(m)];
  res.status = BoundStatus::Conjectured;
  return res;
}

GroupingResult conjecture2_grouping(const ProductBasis& b, double tol) {
  require_bipartite(b, "conjecture2_grouping");
  GroupingResult res;
  auto g1 = group_factors(b, 0, tol);
  auto g2 = group_factors(b, 1, tol);
  res.ok_first = g1.has_value();
  res.ok_second = g2.has_value();
  if (g1) res.groups_first = *g1;
  if (g2) res.groups_second = *g2;
  res.pass = res.ok_first && res.ok_second;
  return res;
}

ProductBasis random_product_basis(const DimensionSignature& sig, Rng& rng) {
  const int n = sig.n();
  if (n == 1) {
    const CMatrix u = haar_unitary(sig.dims[0], rng);
    ProductBasis b;
    b.sig = sig;
    for (int j = 0; j < sig.dims[0]; ++j)
      b.vectors.push_back(ProductKet({u.column(j)}));
    return b;
  }

  const int root = rng.uniform_int(0, n - 1);
  const int dr = sig.dims[static_cast<std::size_t>(root)];
  const CMatrix u = haar_unitary(dr, rng);

  std::vector<int> rest_dims;
  for (int s = 0; s < n; ++s)
    if (s != root) rest_dims.push_back(sig.dims[static_cast<std::size_t>(s)]);
  const DimensionSignature rest_sig(rest_dims);

  ProductBasis b;
  b.sig = sig;
  for (int j = 0; j < dr; ++j) {
    const Ket branch = u.column(j);
    const ProductBasis sub = random_product_basis(rest_sig, rng);
    for (const ProductKet& w : sub.vectors) {
      ProductKet v;
      v.factors.resize(static_cast<std::size_t>(n));
      v.factors[static_cast<std::size_t>(root)] = branch;
      int t = 0;
      for (int s = 0; s < n; ++s)
        if (s != root)
          v.factors[static_cast<std::size_t>(s)] =
              w.factors[static_cast<std::size_t>(t++)];
      b.vectors.push_back(std::move(v));
    }
  }
  return b;
}

}  // namespace mub
