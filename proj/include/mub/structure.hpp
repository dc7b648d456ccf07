// Structural analysis of product bases: r-orthogonality, the two-step
// partition of a basis around an anchor vector, orthonormal-subset
// extraction in subsystems of dimension 2 or 3, direct/indirect
// classification, the product-set bound, and the bipartite grouping check.
#pragma once

#include <optional>

#include "mub/linalg.hpp"
#include "mub/random.hpp"
#include "mub/types.hpp"

namespace mub {

// Index sets from the two-step partition of a bipartite product basis
// around anchor κ (and optionally λ):
//   I_κ  = {i ≠ κ : ⟨b_κ|b_i⟩ ≠ 0}      (not 2-orthogonal to the anchor)
//   I_κ̄  = {i : ⟨b_κ|b_i⟩ = 0}
//   I_κλ = {i ≠ κ,λ : ⟨b_κ|b_i⟩⟨b_λ|b_i⟩ ≠ 0} ⊆ I_κ
struct PartitionResult {
  int kappa = -1;
  std::vector<int> i_kappa;
  std::vector<int> i_kappa_bar;
  std::optional<int> lambda;
  std::vector<int> i_kappa_lambda;
  std::vector<int> i_kappa_lambda_bar;
};

// d_r basis-vector indices whose r-th factors are pairwise orthogonal.
struct OrthoSubset {
  int subsystem = -1;
  std::vector<int> indices;
};

enum class BasisKind { Direct, Indirect };

struct BasisClass {
  BasisKind kind = BasisKind::Direct;
  // Number of distinct orthonormal bases of C^{d_r} among the r-th factors.
  std::vector<int> per_subsystem_basis_count;
  bool grouping_found = true;
};

enum class BoundStatus { Proven, Conjectured };

struct BoundResult {
  int bound = 0;
  BoundStatus status = BoundStatus::Proven;
  // Assumed count N(d_r) of MU bases per subsystem and whether each value
  // is exact (prime power) or a best-known lower bound.
  std::vector<int> assumed_counts;
  std::vector<bool> count_exact;
  int limiting_subsystem = 0;
};

struct GroupingResult {
  bool pass = false;
  bool ok_first = false;
  bool ok_second = false;
  // groups_first: d_2 groups of d_1 indices whose first factors are
  // orthonormal bases of C^{d_1}; groups_second analogously.
  std::vector<std::vector<int>> groups_first;
  std::vector<std::vector<int>> groups_second;
};

// |⟨v^r|w^r⟩| ≤ tol.
bool r_orthogonal(const ProductKet& v, const ProductKet& w, int r,
                  double tol = kDefaultTol);

// Two-step partition of a bipartite orthonormal product basis. Guarantees
// |I_κ| ≥ d_1 − 1 and, when λ is given, |I_κλ| ≥ d_1 − 2; a shortfall
// signals a non-orthonormal input and raises StructuralViolation.
PartitionResult partition(const ProductBasis& bipartite, int kappa,
                          std::optional<int> lambda = std::nullopt,
                          double tol = kDefaultTol);

// Finds κ plus further basis indices whose r-th factors form an orthonormal
// basis of C^{d_r}; requires d_r ∈ {2, 3}. Succeeds for every orthonormal
// product basis; failure raises StructuralViolation.
OrthoSubset extract_ortho_subset(const ProductBasis& b, int r, int kappa,
                                 double tol = kDefaultTol);

// Exhaustive search for `want` pairwise-orthogonal vectors among `factors`
// (used as the hypothesis check for subsystems of dimension ≥ 4).
std::optional<std::vector<int>> orthonormal_subset_indices(
    const std::vector<Ket>& factors, int want, double tol = kDefaultTol);

BasisClass classify(const ProductBasis& b, double tol = kDefaultTol);

// Upper bound on the number of MU product bases for a signature. Proven
// (d_m + 1, d_m = min dim) when some subsystem has dimension 2 or 3;
// otherwise the conjectured bound N(d_m) where d_m is the subsystem with
// the least assumed number of MU bases.
BoundResult mu_product_bound(const DimensionSignature& sig);

// Attempts the exact-cover grouping of a bipartite product basis: first
// factors into d_2 orthonormal bases of C^{d_1} and second factors into
// d_1 orthonormal bases of C^{d_2}.
GroupingResult conjecture2_grouping(const ProductBasis& bipartite,
                                    double tol = kDefaultTol);

// Semi-direct random product basis: a Haar-random basis of one subsystem
// and, per branch vector, an independently generated basis of the
// complement (recursing on multipartite complements).
ProductBasis random_product_basis(const DimensionSignature& sig, Rng& rng);

}  // namespace mub
