#include <cmath>

#include "doctest.h"
#include "mub/constructions.hpp"
#include "mub/equivalence.hpp"
#include "mub/io.hpp"
#include "support.hpp"

using namespace mub;
using namespace mub::test;

namespace {

bool same_basis_as_set(const std::vector<Ket>& a, const std::vector<Ket>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const Ket& va : a) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(inner(va, b[j])) > 1.0 - 1e-10) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

std::vector<Ket> basis_of(const MubSet& s, int k) {
  std::vector<Ket> out;
  for (const ProductKet& v : s.bases[static_cast<std::size_t>(k)].vectors)
    out.push_back(flatten(v));
  return out;
}

}  // namespace

TEST_CASE("identity local unitary leaves a set unchanged") {
  const MubSet s = canonical_qubit_triple(2);
  LocalUnitaryMove id;
  id.unitaries = {CMatrix::identity(2), CMatrix::identity(2)};
  const MubSet t = apply_move(s, id);
  for (int k = 0; k < s.size(); ++k)
    for (std::size_t i = 0; i < s.bases[static_cast<std::size_t>(k)].vectors.size(); ++i)
      CHECK(std::abs(inner(
                flatten(s.bases[static_cast<std::size_t>(k)].vectors[i]),
                flatten(t.bases[static_cast<std::size_t>(k)].vectors[i]))) >
            1.0 - 1e-14);
}

TEST_CASE("apply_move rejects a non-unitary matrix") {
  const MubSet s = canonical_qubit_triple(1);
  LocalUnitaryMove bad;
  bad.unitaries = {CMatrix(2, 2)};  // zero matrix
  CHECK_THROWS_AS(apply_move(s, bad), std::invalid_argument);
  CHECK_THROWS_AS(apply_move(s, LocalConjugateMove{5}), std::invalid_argument);
}

TEST_CASE("local conjugation in d=3 swaps the last two eigenbases as sets") {
  const auto quad = weyl_quadruple_d3();
  const MubSet s = as_unipartite_set(quad, "weyl quadruple");
  const MubSet conj = apply_move(s, LocalConjugateMove{0});

  CHECK(same_basis_as_set(basis_of(conj, 0), basis_of(s, 0)));
  CHECK(same_basis_as_set(basis_of(conj, 1), basis_of(s, 1)));
  CHECK(same_basis_as_set(basis_of(conj, 2), basis_of(s, 3)));
  CHECK(same_basis_as_set(basis_of(conj, 3), basis_of(s, 2)));
}

TEST_CASE("the rotation diag(1, i) exchanges the x and y eigenbases") {
  const auto triple = pauli_triple();
  const MubSet s = as_unipartite_set(triple, "pauli triple");
  CMatrix rot(2, 2);
  rot(0, 0) = Complex{1.0, 0.0};
  rot(1, 1) = Complex{0.0, 1.0};
  LocalUnitaryMove mv;
  mv.unitaries = {rot};
  const MubSet t = apply_move(s, mv);
  CHECK(same_basis_as_set(basis_of(t, 0), basis_of(s, 0)));  // z fixed as set
  CHECK(same_basis_as_set(basis_of(t, 1), basis_of(s, 2)));  // x -> y
}

TEST_CASE("fingerprint invariance under 500 random move sequences") {
  const std::vector<MubSet> corpus = {canonical_qubit_triple(2),
                                      canonical_qutrit_quadruple(1),
                                      two_five_triple_indirect()};
  for (const MubSet& s : corpus) {
    const Fingerprint base = fingerprint(s);
    Rng rng(500);
    const int sequences = 500 / static_cast<int>(corpus.size()) + 1;
    for (int t = 0; t < sequences; ++t) {
      const MubSet scrambled = scramble(s, 6, rng);
      CHECK(fingerprint(scrambled) == base);
    }
  }
}

TEST_CASE("fingerprint separates the direct and indirect 2x5 triples") {
  const Fingerprint fd = fingerprint(two_five_triple_direct());
  const Fingerprint fi = fingerprint(two_five_triple_indirect());
  CHECK_FALSE(fd == fi);
  CHECK_FALSE(fingerprint_difference(fd, fi).empty());
}

TEST_CASE("fingerprint ignores basis reordering") {
  const MubSet s = canonical_qubit_triple(2);
  const MubSet r = apply_move(s, ReorderBasesMove{{2, 0, 1}});
  CHECK(fingerprint(s) == fingerprint(r));
}

TEST_CASE("equivalent: identity witness for A = B") {
  const MubSet s = canonical_qubit_triple(2);
  const Verdict v = equivalent(s, s, {.max_trials = 100000, .seed = 1});
  CHECK(v.kind == VerdictKind::Equivalent);
  CHECK(verify_witness(s, s, v.witness));
}

TEST_CASE("equivalent: scrambles of canonical sets are recognized") {
  const std::vector<MubSet> sets = {canonical_qubit_triple(2),
                                    canonical_qutrit_quadruple(1)};
  for (const MubSet& s : sets) {
    Rng rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
      const MubSet scrambled = scramble(s, 20, rng);
      const Verdict v = equivalent(s, scrambled, {.max_trials = 400000, .seed = 7});
      REQUIRE(v.kind == VerdictKind::Equivalent);
      CHECK(verify_witness(s, scrambled, v.witness));
    }
  }
}

TEST_CASE("equivalent: direct vs all-distinct 2x5 triples are inequivalent") {
  const Verdict v = equivalent(two_five_triple_direct(), two_five_triple_indirect());
  CHECK(v.kind == VerdictKind::Inequivalent);
  CHECK_FALSE(v.separating_invariant.empty());
}

TEST_CASE("equivalent rejects mismatched signatures") {
  CHECK_THROWS_AS(equivalent(canonical_qubit_triple(1), canonical_qutrit_quadruple(1)),
                  std::invalid_argument);
}

TEST_CASE("witness round-trips through serialization and replays") {
  const MubSet s = canonical_qubit_triple(2);
  Rng rng(99);
  const MubSet scrambled = scramble(s, 12, rng);
  const Verdict v = equivalent(s, scrambled, {.max_trials = 400000, .seed = 3});
  REQUIRE(v.kind == VerdictKind::Equivalent);

  const std::string text = moves_to_json_text(v.witness);
  const std::vector<EquivalenceMove> replayed = moves_from_json_text(text);
  CHECK(verify_witness(s, scrambled, replayed));
}
