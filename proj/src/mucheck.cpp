#include "mub/mucheck.hpp"

#include <cmath>

namespace mub {

bool is_mu_pair(const Ket& a, const Ket& b, double tol) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("is_mu_pair: dimension mismatch");
  const double target = 1.0 / a.dim();
  return std::abs(std::norm(inner(a, b)) - target) <= tol;
}

MuReport are_bases_mu(const std::vector<Ket>& b1, const std::vector<Ket>& b2,
                      double tol) {
  if (b1.empty() || b2.empty())
    throw std::invalid_argument("are_bases_mu: empty basis");
  const int d = b1[0].dim();
  if (b2[0].dim() != d)
    throw std::invalid_argument("are_bases_mu: dimension mismatch");
  if (static_cast<int>(b1.size()) != d || static_cast<int>(b2.size()) != d)
    throw std::invalid_argument("are_bases_mu: basis size != dimension");

  MuReport rep;
  rep.tol = tol;
  const double target = 1.0 / d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double dev =
          std::abs(std::norm(inner(b1[static_cast<std::size_t>(i)],
                                   b2[static_cast<std::size_t>(j)])) -
                   target);
      if (dev > rep.max_deviation) {
        rep.max_deviation = dev;
        rep.worst_pair = {i, j};
      }
    }
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

MuReport are_bases_mu(const ProductBasis& b1, const ProductBasis& b2,
                      double tol) {
  if (!(b1.sig == b2.sig))
    throw std::invalid_argument("are_bases_mu: signature mismatch");
  std::vector<Ket> f1, f2;
  f1.reserve(b1.vectors.size());
  f2.reserve(b2.vectors.size());
  for (const ProductKet& v : b1.vectors) f1.push_back(flatten(v));
  for (const ProductKet& v : b2.vectors) f2.push_back(flatten(v));
  return are_bases_mu(f1, f2, tol);
}

MuReport vector_vs_basis_mu(const Ket& v, const std::vector<Ket>& basis,
                            double tol) {
  if (basis.empty())
    throw std::invalid_argument("vector_vs_basis_mu: empty basis");
  const int d = v.dim();
  MuReport rep;
  rep.tol = tol;
  const double target = 1.0 / d;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double dev = std::abs(std::norm(inner(basis[i], v)) - target);
    if (dev > rep.max_deviation) {
      rep.max_deviation = dev;
      rep.worst_pair = {static_cast<int>(i), 0};
    }
  }
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

FactorwiseReport factorwise_mu(const ProductKet& mu, const ProductBasis& b,
                               double tol) {
  if (!(mu.signature() == b.sig))
    throw std::invalid_argument("factorwise_mu: signature mismatch");
  const int n = b.sig.n();
  const int d = b.dim();

  FactorwiseReport rep;
  rep.tol = tol;
  rep.per_subsystem.assign(static_cast<std::size_t>(n), {});
  // One bipartition r | r̄ per subsystem; side r of each bipartition yields
  // the per-factor deviation list.
  for (int r = 0; r < n; ++r) {
    const double target = 1.0 / b.sig.dims[static_cast<std::size_t>(r)];
    auto& devs = rep.per_subsystem[static_cast<std::size_t>(r)];
    devs.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      const Complex o =
          factor_inner(b.vectors[static_cast<std::size_t>(i)], mu, r);
      const double dev = std::abs(std::norm(o) - target);
      devs.push_back(dev);
      if (dev > rep.max_deviation) {
        rep.max_deviation = dev;
        rep.worst = {r, i};
      }
    }
  }
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

bool global_mu_oracle(const ProductKet& mu, const ProductBasis& b,
                      double tol) {
  if (!(mu.signature() == b.sig))
    throw std::invalid_argument("global_mu_oracle: signature mismatch");
  const Ket flat_mu = flatten(mu);
  const double target = 1.0 / b.dim();
  for (const ProductKet& psi : b.vectors) {
    const Ket flat_psi = flatten(psi);
    if (std::abs(std::norm(inner(flat_psi, flat_mu)) - target) > tol)
      return false;
  }
  return true;
}

std::pair<double, double> trace_identities(const ProductKet& mu,
                                           const ProductBasis& b) {
  if (b.sig.n() != 2)
    throw std::invalid_argument(
        "trace_identities: bipartite signature required (regroup first)");
  if (!(mu.signature() == b.sig))
    throw std::invalid_argument("trace_identities: signature mismatch");
  double s1 = 0.0, s2 = 0.0;
  for (const ProductKet& psi : b.vectors) {
    s1 += std::norm(factor_inner(psi, mu, 0));
    s2 += std::norm(factor_inner(psi, mu, 1));
  }
  return {s1, s2};
}

}  // namespace mub
