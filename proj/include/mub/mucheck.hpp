// Mutual-unbiasedness predicates: vector-vector, basis-basis, the n-partite
// factor-wise criterion and its brute-force global oracle, plus the trace
// identities satisfied by every orthonormal product basis.
#pragma once

#include "mub/linalg.hpp"
#include "mub/types.hpp"

namespace mub {

// Result of an all-pairs MU check between two bases.
struct MuReport {
  bool pass = false;
  double max_deviation = 0.0;  // max over pairs of | |⟨a_i|b_j⟩|² − 1/d |
  std::pair<int, int> worst_pair{-1, -1};
  double tol = kDefaultTol;
};

// Per-subsystem deviations | |⟨ψ_i^r|μ^r⟩|² − 1/d_r | over i = 1…d.
struct FactorwiseReport {
  std::vector<std::vector<double>> per_subsystem;
  bool pass = false;
  double max_deviation = 0.0;
  std::pair<int, int> worst{-1, -1};  // (subsystem, basis-vector index)
  double tol = kDefaultTol;
};

// | |⟨a|b⟩|² − 1/d | ≤ tol. Tolerance applies to the squared overlap.
bool is_mu_pair(const Ket& a, const Ket& b, double tol = kDefaultTol);

MuReport are_bases_mu(const std::vector<Ket>& b1, const std::vector<Ket>& b2,
                      double tol = kDefaultTol);
MuReport are_bases_mu(const ProductBasis& b1, const ProductBasis& b2,
                      double tol = kDefaultTol);

// One vector against all members of one basis.
MuReport vector_vs_basis_mu(const Ket& v, const std::vector<Ket>& basis,
                            double tol = kDefaultTol);

// Factor-wise criterion: μ is MU to B iff for each subsystem r the factor
// μ^r is MU to ψ_i^r for all i. Checked through the n bipartitions r | r̄.
FactorwiseReport factorwise_mu(const ProductKet& mu, const ProductBasis& b,
                               double tol = kDefaultTol);

// Independent check: flatten μ and test | |⟨ψ_i|μ⟩|² − 1/d | ≤ tol directly.
bool global_mu_oracle(const ProductKet& mu, const ProductBasis& b,
                      double tol = kDefaultTol);

// (s1, s2) with s1 = Σ_i |⟨ψ_i^1|μ^1⟩|², s2 = Σ_i |⟨ψ_i^2|μ^2⟩|².
// For any orthonormal product basis: s1 = d_2 and s2 = d_1.
std::pair<double, double> trace_identities(const ProductKet& mu,
                                           const ProductBasis& b);

}  // namespace mub
