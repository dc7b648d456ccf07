#include <cmath>

#include "doctest.h"
#include "mub/constructions.hpp"
#include "mub/equivalence.hpp"
#include "mub/io.hpp"
#include "mub/mucheck.hpp"
#include "mub/search.hpp"
#include "support.hpp"

using namespace mub;
using namespace mub::test;

TEST_CASE("objective vanishes on a canonical member re-checked against the rest") {
  const MubSet triple = canonical_qubit_triple(2);
  for (int hold_out = 0; hold_out < 3; ++hold_out) {
    MubSet rest;
    rest.sig = triple.sig;
    for (int b = 0; b < 3; ++b)
      if (b != hold_out)
        rest.bases.push_back(triple.bases[static_cast<std::size_t>(b)]);
    const double f = product_extension_objective(
        rest, triple.bases[static_cast<std::size_t>(hold_out)]);
    CHECK(f < 1e-18);
  }

  // objective is positive for a wrong candidate
  const double bad = product_extension_objective(
      canonical_qubit_triple(2),
      standard_product_basis(DimensionSignature({2, 2})));
  CHECK(bad > 1e-3);
}

TEST_CASE("extend_set recovers the third canonical basis from the first two") {
  const MubSet full = canonical_qubit_triple(2);
  MubSet pair;
  pair.sig = full.sig;
  pair.bases = {full.bases[0], full.bases[1]};

  const SearchReport report = extend_set(pair, 30, 1e-9, 0);
  CHECK(report.best_objective < 1e-18);
  REQUIRE_FALSE(report.found.empty());

  for (const MubSet& found : report.found) {
    REQUIRE(found.size() == 3);
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        CHECK(are_bases_mu(found.bases[static_cast<std::size_t>(a)],
                           found.bases[static_cast<std::size_t>(b)], 1e-9)
                  .pass);
    // uniqueness smoke test: the completed triple is the canonical one
    const Verdict v = equivalent(found, full, {.max_trials = 400000, .seed = 5});
    CHECK(v.kind == VerdictKind::Equivalent);
  }
}

TEST_CASE("extend_set on the full triple finds nothing") {
  const SearchReport report = extend_set(canonical_qubit_triple(2), 25, 1e-9, 0);
  CHECK(report.found.empty());
  CHECK(report.best_residual > 1e-3);
}

TEST_CASE("extend_set demands a pairwise-MU input") {
  MubSet bad;
  bad.sig = DimensionSignature({2, 2});
  bad.bases = {standard_product_basis(bad.sig), standard_product_basis(bad.sig)};
  CHECK_THROWS_AS(extend_set(bad, 1, 1e-9, 0), std::invalid_argument);
}

TEST_CASE("search reports are deterministic in seed and budget") {
  const MubSet full = canonical_qubit_triple(2);
  MubSet pair;
  pair.sig = full.sig;
  pair.bases = {full.bases[0], full.bases[1]};

  const SearchReport a = extend_set(pair, 8, 1e-9, 42);
  const SearchReport b = extend_set(pair, 8, 1e-9, 42);
  CHECK(a.best_objective == b.best_objective);
  REQUIRE(a.found.size() == b.found.size());
  for (std::size_t i = 0; i < a.found.size(); ++i)
    CHECK(fingerprint(a.found[i]) == fingerprint(b.found[i]));

  const SearchReport c = extend_set(pair, 8, 1e-9, 43);
  CHECK(c.seed != a.seed);
}

TEST_CASE("found sets re-validate from their serialized form alone") {
  const MubSet full = canonical_qubit_triple(2);
  MubSet pair;
  pair.sig = full.sig;
  pair.bases = {full.bases[0], full.bases[1]};
  const SearchReport report = extend_set(pair, 10, 1e-9, 0);
  REQUIRE_FALSE(report.found.empty());

  const MubSet reloaded =
      mubset_from_json_text(mubset_to_json_text(report.found.front()));
  for (int a = 0; a < reloaded.size(); ++a) {
    std::vector<Ket> flat;
    for (const ProductKet& v : reloaded.bases[static_cast<std::size_t>(a)].vectors)
      flat.push_back(flatten(v));
    CHECK(validate_orthonormal(flat, 1e-9).pass);
    for (int b = a + 1; b < reloaded.size(); ++b)
      CHECK(are_bases_mu(reloaded.bases[static_cast<std::size_t>(a)],
                         reloaded.bases[static_cast<std::size_t>(b)], 1e-9)
                .pass);
  }
}

TEST_CASE("conjecture1_probe rejects small signatures and runs on (4,4)") {
  CHECK_THROWS_AS(conjecture1_probe(DimensionSignature({2, 2}), 1, 1e-9, 0),
                  std::invalid_argument);

  const SearchReport probe = conjecture1_probe(DimensionSignature({4, 4}), 1, 1e-9, 0);
  CHECK(probe.target == "conjecture1");
  CHECK_FALSE(probe.conjecture_violation);
  CHECK(probe.found.empty());
  CHECK(probe.best_objective > 0.0);

  const SearchReport again = conjecture1_probe(DimensionSignature({4, 4}), 1, 1e-9, 0);
  CHECK(again.best_objective == probe.best_objective);
}

TEST_CASE("enumerate_structured_sets over the pauli pool in 2x2") {
  const auto triple = pauli_triple();
  std::vector<ProductBasis> pool;
  for (const auto& basis : triple) {
    ProductBasis pb;
    pb.sig = DimensionSignature({2});
    for (const Ket& v : basis) pb.vectors.push_back(ProductKet({v}));
    pool.push_back(std::move(pb));
  }
  const auto sets =
      enumerate_structured_sets(DimensionSignature({2, 2}), 2, 1, pool);
  CHECK(sets.size() == 6);  // ordered choices of 3 distinct pool bases

  const MubSet canonical = canonical_qubit_triple(2);
  for (const MubSet& s : sets) {
    REQUIRE(s.size() == 3);
    const Verdict v = equivalent(s, canonical, {.max_trials = 400000, .seed = 9});
    CHECK(v.kind == VerdictKind::Equivalent);
  }
}

TEST_CASE("extend_set finds no fifth basis beyond the 3x3 quadruple") {
  const SearchReport report = extend_set(canonical_qutrit_quadruple(2), 6, 1e-9, 0);
  CHECK(report.found.empty());
  CHECK(report.best_residual > 1e-3);
}

TEST_CASE("enumerate_structured_sets over the weyl pool in 3x3") {
  const auto quad = weyl_quadruple_d3();
  std::vector<ProductBasis> pool;
  for (const auto& basis : quad) {
    ProductBasis pb;
    pb.sig = DimensionSignature({3});
    for (const Ket& v : basis) pb.vectors.push_back(ProductKet({v}));
    pool.push_back(std::move(pb));
  }
  const auto sets =
      enumerate_structured_sets(DimensionSignature({3, 3}), 3, 1, pool);
  // disjoint cross-sets force a constant assignment per set: 4! quadruples
  CHECK(sets.size() == 24);

  const MubSet canonical = canonical_qutrit_quadruple(2);
  int checked = 0;
  for (std::size_t i = 0; i < sets.size(); i += 4) {
    const Verdict v =
        equivalent(sets[i], canonical, {.max_trials = 600000, .seed = 13});
    CHECK(v.kind == VerdictKind::Equivalent);
    ++checked;
  }
  CHECK(checked == 6);
}

TEST_CASE("enumerate_structured_sets counts direct 2x5 triples") {
  const auto set5 = complete_set_prime(5);
  std::vector<ProductBasis> pool;
  for (const auto& basis : set5) {
    ProductBasis pb;
    pb.sig = DimensionSignature({5});
    for (const Ket& v : basis) pb.vectors.push_back(ProductKet({v}));
    pool.push_back(std::move(pb));
  }
  const auto sets =
      enumerate_structured_sets(DimensionSignature({2, 5}), 2, 1, pool);
  CHECK_FALSE(sets.empty());

  int direct_count = 0;
  for (const MubSet& s : sets) {
    bool all_direct = true;
    for (const ProductBasis& b : s.bases)
      if (classify(b).kind != BasisKind::Direct) all_direct = false;
    if (all_direct) ++direct_count;
  }
  // G(0_b) = G(1_b) per b with three distinct MU pool members: 6·5·4
  CHECK(direct_count == 120);

  std::vector<ProductBasis> empty_pool;
  CHECK_THROWS_AS(
      enumerate_structured_sets(DimensionSignature({2, 5}), 2, 1, empty_pool),
      std::invalid_argument);
}
