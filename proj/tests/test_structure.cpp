#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "mub/constructions.hpp"
#include "mub/structure.hpp"
#include "support.hpp"

using namespace mub;
using namespace mub::test;

namespace {

int index_of(const ProductBasis& b, const ProductKet& target) {
  for (std::size_t i = 0; i < b.vectors.size(); ++i)
    if (std::abs(product_inner(b.vectors[i], target)) > 1.0 - 1e-9)
      return static_cast<int>(i);
  return -1;
}

// Brute-force oracle: all index triples whose first factors are pairwise
// orthogonal.
std::vector<std::vector<int>> all_ortho_triples(const ProductBasis& b, int r,
                                                double tol) {
  std::vector<std::vector<int>> out;
  const int d = static_cast<int>(b.vectors.size());
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        const Ket& fi = b.vectors[static_cast<std::size_t>(i)].factors[static_cast<std::size_t>(r)];
        const Ket& fj = b.vectors[static_cast<std::size_t>(j)].factors[static_cast<std::size_t>(r)];
        const Ket& fk = b.vectors[static_cast<std::size_t>(k)].factors[static_cast<std::size_t>(r)];
        if (std::abs(inner(fi, fj)) <= tol && std::abs(inner(fi, fk)) <= tol &&
            std::abs(inner(fj, fk)) <= tol)
          out.push_back({i, j, k});
      }
  return out;
}

}  // namespace

TEST_CASE("r_orthogonal on the qubit-pair examples") {
  const Ket k0 = Ket::basis_state(2, 0), k1 = Ket::basis_state(2, 1);
  const ProductKet v1p({k1, plus()});
  const ProductKet v00({k0, k0});
  const ProductKet v11({k1, k1});

  CHECK(r_orthogonal(v1p, v00, 0));
  CHECK_FALSE(r_orthogonal(v1p, v00, 1));
  CHECK(r_orthogonal(v11, v00, 0));
  CHECK(r_orthogonal(v11, v00, 1));
  CHECK_FALSE(r_orthogonal(v00, v00, 0));
  CHECK_FALSE(r_orthogonal(v00, v00, 1));
}

TEST_CASE("partition of the indirect d=4 basis") {
  const ProductBasis ind = indirect_d4_basis();
  const int kappa = index_of(ind, ProductKet({Ket::basis_state(2, 1), plus()}));
  REQUIRE(kappa >= 0);
  const PartitionResult res = partition(ind, kappa);

  const int i00 = index_of(ind, ProductKet({Ket::basis_state(2, 0), Ket::basis_state(2, 0)}));
  const int i01 = index_of(ind, ProductKet({Ket::basis_state(2, 0), Ket::basis_state(2, 1)}));
  const int i1m = index_of(ind, ProductKet({Ket::basis_state(2, 1), minus()}));

  std::vector<int> expect_k{i00, i01};
  std::sort(expect_k.begin(), expect_k.end());
  std::vector<int> got_k = res.i_kappa;
  std::sort(got_k.begin(), got_k.end());
  CHECK(got_k == expect_k);
  CHECK(res.i_kappa_bar == std::vector<int>{i1m});
}

TEST_CASE("partition of the standard 2x2 basis") {
  const ProductBasis std22 = standard_product_basis(DimensionSignature({2, 2}));
  const PartitionResult res = partition(std22, 0);  // κ = |0,0⟩
  // only |1,0⟩ shares the second factor
  CHECK(res.i_kappa == std::vector<int>{2});
  std::vector<int> bar = res.i_kappa_bar;
  std::sort(bar.begin(), bar.end());
  CHECK(bar == std::vector<int>{1, 3});
  CHECK(static_cast<int>(res.i_kappa.size()) >= std22.sig.dims[0] - 1);
}

TEST_CASE("two-step partition of the domino basis") {
  const ProductBasis domino = domino_basis_3x3();
  const int kappa = 0;  // |1,1⟩ by construction
  const PartitionResult step1 = partition(domino, kappa);
  CHECK(static_cast<int>(step1.i_kappa.size()) >= 2);

  for (int lambda : step1.i_kappa) {
    const PartitionResult res = partition(domino, kappa, lambda);
    CHECK(static_cast<int>(res.i_kappa_lambda.size()) >= 1);
    for (int i : res.i_kappa_lambda) {
      const bool in_step1 =
          std::find(step1.i_kappa.begin(), step1.i_kappa.end(), i) !=
          step1.i_kappa.end();
      CHECK(in_step1);  // I_κλ ⊆ I_κ
    }
  }

  CHECK_THROWS_AS(partition(domino, kappa, step1.i_kappa_bar.front()),
                  std::invalid_argument);
}

TEST_CASE("extraction on the indirect d=4 basis") {
  const ProductBasis ind = indirect_d4_basis();
  const int kappa = index_of(ind, ProductKet({Ket::basis_state(2, 1), plus()}));
  const OrthoSubset sub = extract_ortho_subset(ind, 0, kappa);
  REQUIRE(sub.indices.size() == 2);
  CHECK(sub.indices[0] == kappa);
  // the partner's first factor is |0⟩
  const Ket& partner =
      ind.vectors[static_cast<std::size_t>(sub.indices[1])].factors[0];
  CHECK(std::abs(inner(partner, Ket::basis_state(2, 0))) > 1.0 - 1e-12);
}

TEST_CASE("extraction on a direct 3x3 basis") {
  const ProductBasis std33 = standard_product_basis(DimensionSignature({3, 3}));
  const OrthoSubset sub = extract_ortho_subset(std33, 0, 0);
  REQUIRE(sub.indices.size() == 3);
  std::vector<Ket> firsts;
  for (int i : sub.indices)
    firsts.push_back(std33.vectors[static_cast<std::size_t>(i)].factors[0]);
  CHECK(validate_orthonormal(firsts, 1e-12).pass);
}

TEST_CASE("extraction on the domino basis agrees with the brute-force oracle") {
  const ProductBasis domino = domino_basis_3x3();
  const auto oracle = all_ortho_triples(domino, 0, 1e-9);
  CHECK_FALSE(oracle.empty());
  for (int kappa = 0; kappa < 9; ++kappa) {
    const OrthoSubset sub = extract_ortho_subset(domino, 0, kappa);
    std::vector<int> sorted = sub.indices;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::find(oracle.begin(), oracle.end(), sorted) != oracle.end());
    CHECK(std::find(sub.indices.begin(), sub.indices.end(), kappa) !=
          sub.indices.end());
  }
}

TEST_CASE("extraction succeeds for every anchor on every corpus basis") {
  for (const auto& nb : fixture_corpus()) {
    CAPTURE(nb.name);
    for (int r = 0; r < nb.basis.sig.n(); ++r) {
      const int dr = nb.basis.sig.dims[static_cast<std::size_t>(r)];
      if (dr != 2 && dr != 3) continue;
      for (int kappa = 0; kappa < nb.basis.dim(); ++kappa) {
        const OrthoSubset sub = extract_ortho_subset(nb.basis, r, kappa);
        REQUIRE(static_cast<int>(sub.indices.size()) == dr);
        std::vector<Ket> factors;
        for (int i : sub.indices)
          factors.push_back(nb.basis.vectors[static_cast<std::size_t>(i)]
                                .factors[static_cast<std::size_t>(r)]);
        CHECK(validate_orthonormal(factors, 1e-9).pass);
      }
    }
  }
}

TEST_CASE("extraction and cardinalities hold on generated bases") {
  const std::vector<DimensionSignature> sigs = {
      DimensionSignature({2, 2}), DimensionSignature({2, 3}),
      DimensionSignature({3, 3}), DimensionSignature({2, 2, 3})};
  for (std::size_t s = 0; s < sigs.size(); ++s) {
    Rng rng(900 + s);
    for (int trial = 0; trial < 60; ++trial) {
      const ProductBasis basis = random_product_basis(sigs[s], rng);
      for (int r = 0; r < basis.sig.n(); ++r) {
        const int dr = basis.sig.dims[static_cast<std::size_t>(r)];
        if (dr != 2 && dr != 3) continue;
        const ProductBasis bip =
            basis.sig.n() == 2 && r == 0 ? basis : regroup_bipartite(basis, r);
        for (int kappa = 0; kappa < basis.dim(); ++kappa) {
          const PartitionResult step1 = partition(bip, kappa);
          CHECK(static_cast<int>(step1.i_kappa.size()) >= dr - 1);
          const OrthoSubset sub = extract_ortho_subset(basis, r, kappa);
          std::vector<Ket> factors;
          for (int i : sub.indices)
            factors.push_back(basis.vectors[static_cast<std::size_t>(i)]
                                  .factors[static_cast<std::size_t>(r)]);
          CHECK(validate_orthonormal(factors, 1e-9).pass);
        }
      }
    }
  }
}

TEST_CASE("classify: direct, indirect, counts") {
  CHECK(classify(standard_product_basis(DimensionSignature({2, 3}))).kind ==
        BasisKind::Direct);

  const BasisClass ind = classify(indirect_d4_basis());
  CHECK(ind.kind == BasisKind::Indirect);
  CHECK(ind.per_subsystem_basis_count == std::vector<int>{1, 2});

  const BasisClass dom = classify(domino_basis_3x3());
  CHECK(dom.kind == BasisKind::Indirect);
  CHECK(dom.per_subsystem_basis_count == std::vector<int>{3, 3});
}

TEST_CASE("classify is invariant under phases and reordering") {
  Rng rng(77);
  const ProductBasis base = indirect_d4_basis();
  ProductBasis scrambled = base;
  std::vector<int> order{2, 0, 3, 1};
  std::vector<ProductKet> vs;
  for (int i : order) vs.push_back(base.vectors[static_cast<std::size_t>(i)]);
  scrambled.vectors = vs;
  for (ProductKet& v : scrambled.vectors) {
    const double phi = rng.uniform() * 6.28;
    for (Complex& c : v.factors[0].coords) c *= Complex{std::cos(phi), std::sin(phi)};
  }
  const BasisClass a = classify(base);
  const BasisClass b = classify(scrambled);
  CHECK(a.kind == b.kind);
  CHECK(a.per_subsystem_basis_count == b.per_subsystem_basis_count);
}

TEST_CASE("mu_product_bound") {
  const BoundResult b25 = mu_product_bound(DimensionSignature({2, 5}));
  CHECK(b25.bound == 3);
  CHECK(b25.status == BoundStatus::Proven);

  const BoundResult b333 = mu_product_bound(DimensionSignature({3, 3, 3}));
  CHECK(b333.bound == 4);
  CHECK(b333.status == BoundStatus::Proven);

  const BoundResult b45 = mu_product_bound(DimensionSignature({4, 5}));
  CHECK(b45.bound == 5);
  CHECK(b45.status == BoundStatus::Conjectured);
  CHECK(b45.assumed_counts == std::vector<int>{5, 6});
  CHECK(b45.count_exact == std::vector<bool>{true, true});
  CHECK(b45.limiting_subsystem == 0);

  // non-prime-power subsystem: the assumed count is a flagged lower bound
  const BoundResult b67 = mu_product_bound(DimensionSignature({6, 7}));
  CHECK(b67.bound == 3);
  CHECK(b67.status == BoundStatus::Conjectured);
  CHECK(b67.assumed_counts[0] == 3);
  CHECK_FALSE(b67.count_exact[0]);

  // a subsystem of dimension 2 or 3 always pins the proven bound
  CHECK(mu_product_bound(DimensionSignature({2, 7, 11})).bound == 3);
  CHECK(mu_product_bound(DimensionSignature({3, 9})).bound == 4);
  CHECK(mu_product_bound(DimensionSignature({3, 9})).status ==
        BoundStatus::Proven);
}

TEST_CASE("conjecture2_grouping on the examples") {
  const GroupingResult ind = conjecture2_grouping(indirect_d4_basis());
  CHECK(ind.pass);
  CHECK(ind.groups_first.size() == 2);
  CHECK(ind.groups_second.size() == 2);

  const GroupingResult dir =
      conjecture2_grouping(standard_product_basis(DimensionSignature({2, 3})));
  CHECK(dir.pass);
  CHECK(dir.groups_first.size() == 3);
  CHECK(dir.groups_second.size() == 2);

  const ProductBasis domino = domino_basis_3x3();
  const GroupingResult dom = conjecture2_grouping(domino);
  CHECK(dom.pass);
  // every group's factors must be orthonormal bases
  for (int side = 0; side < 2; ++side) {
    const auto& groups = side == 0 ? dom.groups_first : dom.groups_second;
    for (const auto& g : groups) {
      std::vector<Ket> factors;
      for (int i : g)
        factors.push_back(domino.vectors[static_cast<std::size_t>(i)]
                              .factors[static_cast<std::size_t>(side)]);
      CHECK(validate_orthonormal(factors, 1e-9).pass);
    }
  }
}

TEST_CASE("grouping succeeds on generated bipartite bases") {
  const std::vector<DimensionSignature> sigs = {
      DimensionSignature({2, 2}), DimensionSignature({2, 3}),
      DimensionSignature({3, 3}), DimensionSignature({2, 5})};
  for (std::size_t s = 0; s < sigs.size(); ++s) {
    Rng rng(1300 + s);
    for (int trial = 0; trial < 40; ++trial) {
      const ProductBasis basis = random_product_basis(sigs[s], rng);
      CHECK(conjecture2_grouping(basis).pass);
    }
  }
}

TEST_CASE("random_product_basis generates orthonormal product bases") {
  const std::vector<DimensionSignature> sigs = {
      DimensionSignature({2, 2}), DimensionSignature({3, 4}),
      DimensionSignature({2, 2, 3})};
  for (std::size_t s = 0; s < sigs.size(); ++s) {
    Rng rng(40 + s);
    int indirect_seen = 0;
    for (int trial = 0; trial < 30; ++trial) {
      const ProductBasis b = random_product_basis(sigs[s], rng);
      REQUIRE(static_cast<int>(b.vectors.size()) == b.dim());
      std::vector<Ket> flat;
      for (const ProductKet& v : b.vectors) flat.push_back(flatten(v));
      CHECK(validate_orthonormal(flat, 1e-10).pass);
      if (classify(b).kind == BasisKind::Indirect) ++indirect_seen;
    }
    CHECK(indirect_seen > 0);  // the family covers indirect bases
  }
}

TEST_CASE("orthonormal_subset_indices exhaustive helper") {
  const ProductBasis domino = domino_basis_3x3();
  std::vector<Ket> firsts;
  for (const ProductKet& v : domino.vectors) firsts.push_back(v.factors[0]);
  const auto found = orthonormal_subset_indices(firsts, 3, 1e-9);
  REQUIRE(found.has_value());
  std::vector<Ket> sub;
  for (int i : *found) sub.push_back(firsts[static_cast<std::size_t>(i)]);
  CHECK(validate_orthonormal(sub, 1e-9).pass);

  // no 3 pairwise-orthogonal vectors among {|0>, |1>, |+>}
  std::vector<Ket> bad{Ket::basis_state(2, 0), Ket::basis_state(2, 1), plus()};
  CHECK_FALSE(orthonormal_subset_indices(bad, 3, 1e-9).has_value());
}
