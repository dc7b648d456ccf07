// Desk-scale experiments: enumeration of corollary-structured MU product
// sets, numerical extension attempts beyond known sets, and probes of the
// conjectured bound for signatures without a small subsystem.
#pragma once

#include <cstdint>

#include "mub/structure.hpp"
#include "mub/types.hpp"

namespace mub {

struct SearchReport {
  DimensionSignature signature;
  std::string target;  // "extend-set" | "find-triple" | "conjecture1"
  std::uint64_t seed = 0;
  int restarts = 0;
  double best_objective = 0.0;
  double best_residual = 0.0;  // sqrt(best_objective)
  std::vector<MubSet> found;
  double wall_time_s = 0.0;
  bool conjecture_violation = false;
};

// Total squared MU deviation of `candidate` against every basis of S plus
// the orthonormality penalty of the candidate itself. Zero (to rounding)
// exactly when candidate is an orthonormal product basis MU to all of S.
double product_extension_objective(const MubSet& s,
                                   const ProductBasis& candidate);

// Multistart Riemannian search over semi-direct product bases (per-branch
// unitaries on each subsystem) for one more basis MU to every member of S.
// A restart counts as found when the objective drops below tol².
SearchReport extend_set(const MubSet& s, int restarts,
                        double tol = kDefaultTol, std::uint64_t seed = 0);

// Attempts to build mu_product_bound(sig).bound + 1 pairwise-MU product
// bases by alternating optimization; requires min(dims) ≥ 4. Success is
// flagged as a conjecture violation and carried in `found`.
SearchReport conjecture1_probe(const DimensionSignature& sig, int restarts,
                               double tol = kDefaultTol,
                               std::uint64_t seed = 0);

// All assignments of pool bases to small-block eigenstate labels whose
// cross-sets are mutually unbiased, each materialized as a validated
// MubSet; emitted once per assignment (distinct assignments give distinct
// sets). The pool holds orthonormal bases of the complement space.
std::vector<MubSet> enumerate_structured_sets(
    const DimensionSignature& sig, int p, int k,
    const std::vector<ProductBasis>& pool, double tol = kDefaultTol);

}  // namespace mub
