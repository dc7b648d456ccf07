// The equivalence-transformation group on sets of MU product bases (local
// unitaries, per-vector phases, permutations within a basis, local complex
// conjugation, reordering of bases), invariant fingerprints, and a
// best-effort equivalence decider with replayable witnesses.
#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "mub/linalg.hpp"
#include "mub/random.hpp"
#include "mub/types.hpp"

namespace mub {

struct LocalUnitaryMove {
  std::vector<CMatrix> unitaries;  // one per subsystem, applied to all bases
};

struct PerVectorPhaseMove {
  int basis = 0;
  std::vector<double> phases;  // radians, one per vector
};

struct PermuteWithinBasisMove {
  int basis = 0;
  std::vector<int> perm;  // new[i] = old[perm[i]]
};

struct LocalConjugateMove {
  int subsystem = 0;
};

struct ReorderBasesMove {
  std::vector<int> perm;  // new[k] = old[perm[k]]
};

using EquivalenceMove =
    std::variant<LocalUnitaryMove, PerVectorPhaseMove, PermuteWithinBasisMove,
                 LocalConjugateMove, ReorderBasesMove>;

MubSet apply_move(const MubSet& s, const EquivalenceMove& m);
MubSet apply_moves(const MubSet& s, const std::vector<EquivalenceMove>& moves);

// Equivalence-invariant summary: per unordered basis pair the sorted
// multiset of d² squared overlaps (quantized to grid q = 1e-6), and per
// basis the per-subsystem distinct-factor-ray counts; both collections
// sorted so reordering bases cannot matter.
struct Fingerprint {
  std::vector<std::vector<std::int64_t>> pair_overlaps;
  std::vector<std::vector<int>> factor_counts;

  bool operator==(const Fingerprint&) const = default;
};

inline constexpr double kFingerprintGrid = 1e-6;

Fingerprint fingerprint(const MubSet& s);

// Human-readable description of the first differing component (empty when
// the fingerprints are equal).
std::string fingerprint_difference(const Fingerprint& a, const Fingerprint& b);

enum class VerdictKind { Equivalent, Inequivalent, Unknown };

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::vector<EquivalenceMove> witness;      // Equivalent: replays A onto B
  std::string separating_invariant;          // Inequivalent: which component
  long trials_used = 0;
};

struct EquivalenceBudget {
  long max_trials = 200000;
  std::uint64_t seed = 0;
};

// Never wrong in either direction: Inequivalent only on a fingerprint
// separation, Equivalent only with a verified witness, Unknown otherwise.
Verdict equivalent(const MubSet& a, const MubSet& b,
                   const EquivalenceBudget& budget = {});

// Seeded random move, and a scrambler applying `count` of them.
EquivalenceMove random_move(const MubSet& s, Rng& rng);
MubSet scramble(const MubSet& s, int count, Rng& rng,
                std::vector<EquivalenceMove>* record = nullptr);

// True iff the witness, replayed on `a`, matches `b` vector-by-vector up to
// per-vector phase (|⟨·|·⟩| = 1 within tol at every position).
bool verify_witness(const MubSet& a, const MubSet& b,
                    const std::vector<EquivalenceMove>& witness,
                    double tol = 1e-6);

}  // namespace mub
