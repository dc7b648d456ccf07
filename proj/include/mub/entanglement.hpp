// Entanglement audits of vectors mutually unbiased to product bases:
// reduced states, maximal-mixedness tests, and the numerical search for
// vectors MU to a whole set of bases.
#pragma once

#include <cstdint>

#include "mub/linalg.hpp"
#include "mub/types.hpp"

namespace mub {

// Raised when the audited vector is not MU to every basis of the set.
class NotMutuallyUnbiased : public std::runtime_error {
 public:
  NotMutuallyUnbiased(std::string msg, int basis, int index, double deviation)
      : std::runtime_error(std::move(msg)),
        basis(basis),
        index(index),
        deviation(deviation) {}
  int basis;
  int index;
  double deviation;
};

struct EntanglementAudit {
  int subsystem = -1;
  DensityMatrix reduced;
  double mixedness_deviation = 0.0;  // ‖ρ_r − I/d_r‖_F
  // p_b^v = ⟨v_b|ρ_r|v_b⟩ for the orthonormal factor bases extracted from
  // the first d_r+1 members of the set (empty when the hypothesis fails).
  std::vector<std::vector<double>> probabilities;
  bool hypothesis_ok = false;
  bool maximally_mixed = false;
};

// ρ_r = tr_complement |v⟩⟨v|; true iff ‖ρ_r − I/d_r‖_F ≤ tol.
std::pair<bool, double> is_maximally_entangled(const Ket& v,
                                               const DimensionSignature& sig,
                                               int r, double tol = kDefaultTol);

// Checks v is MU to every basis of S (throws NotMutuallyUnbiased with the
// worst pair otherwise), then audits each subsystem where S supplies
// d_r + 1 orthonormal factor bases.
std::vector<EntanglementAudit> audit_mu_vector(const Ket& v, const MubSet& s,
                                               double tol = kDefaultTol);

// F(v) = Σ_{b,i} (|⟨ψ_i^{(b)}|v⟩|² − 1/d)² over unit vectors v, with v
// parameterized by 2d reals (renormalized inside). Exposed for the
// finite-difference gradient check.
struct MuVectorObjective {
  std::vector<Ket> states;  // all flattened basis vectors of the set
  int d = 0;

  explicit MuVectorObjective(const MubSet& s);

  double evaluate(const std::vector<double>& params) const;
  std::vector<double> gradient(const std::vector<double>& params) const;

  static Ket to_ket(const std::vector<double>& params);
  static std::vector<double> to_params(const Ket& v);
};

struct MuVectorSearchResult {
  std::vector<Ket> vectors;  // local minima with F < tol², deduped by ray
  double best_objective = 0.0;
  double best_residual = 0.0;  // sqrt of best objective
  int restarts = 0;
  std::uint64_t seed = 0;
};

// Multistart minimization of F; every returned vector re-passes the direct
// MU check at tol. An empty result with residual statistics is a valid
// outcome ("none found", never "none exists").
MuVectorSearchResult find_mu_vectors(const MubSet& s, int restarts,
                                     double tol = kDefaultTol,
                                     std::uint64_t seed = 0);

// ρ rebuilt from its diagonals in a complete MU set: Σ_b Σ_v p_b^v
// |v_b⟩⟨v_b| − I. Used by the reconstruction-identity tests.
DensityMatrix reconstruct_from_mu_diagonals(
    const DensityMatrix& rho, const std::vector<std::vector<Ket>>& complete_set);

}  // namespace mub
