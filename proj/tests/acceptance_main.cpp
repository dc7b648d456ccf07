// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Thresholds and budgets are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mub/constructions.hpp"
#include "mub/entanglement.hpp"
#include "mub/equivalence.hpp"
#include "mub/io.hpp"
#include "mub/mucheck.hpp"
#include "mub/search.hpp"
#include "mub/structure.hpp"

using namespace mub;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct NamedBasis {
  std::string name;
  ProductBasis basis;
};

std::vector<NamedBasis> corpus() {
  std::vector<NamedBasis> out;
  out.push_back({"standard 2x2", standard_product_basis(DimensionSignature({2, 2}))});
  out.push_back({"standard 2x3", standard_product_basis(DimensionSignature({2, 3}))});
  out.push_back({"standard 3x3", standard_product_basis(DimensionSignature({3, 3}))});
  out.push_back({"standard 2x2x3", standard_product_basis(DimensionSignature({2, 2, 3}))});
  out.push_back({"indirect 2x2", indirect_d4_basis()});
  out.push_back({"domino 3x3", domino_basis_3x3()});
  const MubSet qt = canonical_qubit_triple(2);
  for (int b = 0; b < 3; ++b)
    out.push_back({"qubit-triple(2) basis " + std::to_string(b),
                   qt.bases[static_cast<std::size_t>(b)]});
  const MubSet qq = canonical_qutrit_quadruple(2);
  for (int b = 0; b < 2; ++b)
    out.push_back({"qutrit-quadruple(2) basis " + std::to_string(b),
                   qq.bases[static_cast<std::size_t>(b)]});
  const MubSet tf = two_five_triple_indirect();
  out.push_back({"2x5 indirect triple basis 0", tf.bases[0]});
  return out;
}

std::vector<NamedBasis> bipartite_corpus() {
  std::vector<NamedBasis> out;
  for (const NamedBasis& nb : corpus()) {
    if (nb.basis.sig.n() == 2) {
      out.push_back(nb);
    } else {
      for (int r = 0; r < nb.basis.sig.n(); ++r)
        out.push_back({nb.name + " cut " + std::to_string(r),
                       regroup_bipartite(nb.basis, r)});
    }
  }
  return out;
}

// 1. Canonical constructions exact: pairwise MU deviation < 1e-12.
Outcome criterion1() {
  double worst = 0.0;
  std::vector<MubSet> sets;
  for (int n = 1; n <= 3; ++n) sets.push_back(canonical_qubit_triple(n));
  for (int n = 1; n <= 2; ++n) sets.push_back(canonical_qutrit_quadruple(n));
  for (const MubSet& s : sets)
    for (int a = 0; a < s.size(); ++a)
      for (int b = a + 1; b < s.size(); ++b)
        worst = std::max(worst,
                         are_bases_mu(s.bases[static_cast<std::size_t>(a)],
                                      s.bases[static_cast<std::size_t>(b)], 1e-12)
                             .max_deviation);
  std::ostringstream os;
  os << "max | |overlap|^2 - 1/d | = " << worst;
  return {worst < 1e-12, os.str()};
}

// 2. Factor-wise criterion agrees with the global oracle on >= 1000 seeded
// instances per signature; zero disagreements at tol 1e-9.
Outcome criterion2() {
  const std::vector<DimensionSignature> sigs = {
      DimensionSignature({2, 2}), DimensionSignature({2, 3}),
      DimensionSignature({3, 3}), DimensionSignature({2, 2, 3})};
  long checked = 0, disagreements = 0;
  for (std::size_t s = 0; s < sigs.size(); ++s) {
    std::vector<ProductBasis> fixtures;
    fixtures.push_back(standard_product_basis(sigs[s]));
    if (sigs[s] == DimensionSignature({2, 2})) {
      fixtures.push_back(indirect_d4_basis());
      for (const ProductBasis& b : canonical_qubit_triple(2).bases)
        fixtures.push_back(b);
    }
    if (sigs[s] == DimensionSignature({3, 3})) {
      fixtures.push_back(domino_basis_3x3());
      fixtures.push_back(canonical_qutrit_quadruple(2).bases[1]);
    }

    Rng rng(1000 + s);
    for (int trial = 0; trial < 1000; ++trial) {
      const ProductBasis basis =
          (trial % 5 == 0)
              ? fixtures[static_cast<std::size_t>(trial / 5) % fixtures.size()]
              : random_product_basis(sigs[s], rng);
      const ProductKet mu = haar_product_ket(sigs[s], rng);
      ++checked;
      if (factorwise_mu(mu, basis, 1e-9).pass != global_mu_oracle(mu, basis, 1e-9))
        ++disagreements;
    }

    // engineered MU-positive instances exercise the both-true branch
    const ProductBasis std_basis = standard_product_basis(sigs[s]);
    ProductKet fourier;
    for (int dim : sigs[s].dims) {
      std::vector<Complex> c;
      for (int l = 0; l < dim; ++l)
        c.push_back(root_of_unity(dim, l) / std::sqrt(static_cast<double>(dim)));
      fourier.factors.push_back(Ket(std::move(c)));
    }
    ++checked;
    const bool fw = factorwise_mu(fourier, std_basis, 1e-9).pass;
    const bool gl = global_mu_oracle(fourier, std_basis, 1e-9);
    if (fw != gl || !fw) ++disagreements;
  }
  std::ostringstream os;
  os << checked << " instances, " << disagreements << " disagreements";
  return {disagreements == 0, os.str()};
}

// 3. Trace identities s1 = d2, s2 = d1 within 1e-9.
Outcome criterion3() {
  double worst = 0.0;
  long checked = 0;
  const auto check_basis = [&](const ProductBasis& b, Rng& rng) {
    for (int trial = 0; trial < 100; ++trial) {
      const ProductKet mu = haar_product_ket(b.sig, rng);
      const auto [s1, s2] = trace_identities(mu, b);
      worst = std::max({worst, std::abs(s1 - b.sig.dims[1]),
                        std::abs(s2 - b.sig.dims[0])});
      ++checked;
    }
  };
  Rng rng(33);
  for (const NamedBasis& nb : bipartite_corpus()) check_basis(nb.basis, rng);
  const std::vector<DimensionSignature> sigs = {
      DimensionSignature({2, 2}), DimensionSignature({2, 3}),
      DimensionSignature({3, 3}), DimensionSignature({2, 5}),
      DimensionSignature({3, 4})};
  for (std::size_t s = 0; s < sigs.size(); ++s) {
    Rng gen(44 + s);
    for (int i = 0; i < 20; ++i) check_basis(random_product_basis(sigs[s], gen), gen);
  }
  std::ostringstream os;
  os << checked << " (basis, mu) pairs, worst deviation " << worst;
  return {worst < 1e-9, os.str()};
}

// 4. Orthonormal-subset extraction succeeds for every anchor; the partition
// cardinalities hold throughout.
Outcome criterion4() {
  long bases_checked = 0, extractions = 0;
  const auto exercise = [&](const ProductBasis& basis) -> bool {
    ++bases_checked;
    for (int r = 0; r < basis.sig.n(); ++r) {
      const int dr = basis.sig.dims[static_cast<std::size_t>(r)];
      if (dr != 2 && dr != 3) continue;
      const ProductBasis bip =
          (basis.sig.n() == 2 && r == 0) ? basis : regroup_bipartite(basis, r);
      for (int kappa = 0; kappa < basis.dim(); ++kappa) {
        PartitionResult step1;
        try {
          step1 = partition(bip, kappa);
        } catch (const StructuralViolation&) {
          return false;
        }
        if (static_cast<int>(step1.i_kappa.size()) < dr - 1) return false;
        if (dr == 3)
          for (int lambda : step1.i_kappa) {
            try {
              const PartitionResult step2 = partition(bip, kappa, lambda);
              if (static_cast<int>(step2.i_kappa_lambda.size()) < dr - 2)
                return false;
            } catch (const StructuralViolation&) {
              return false;
            }
          }
        try {
          const OrthoSubset sub = extract_ortho_subset(basis, r, kappa);
          std::vector<Ket> factors;
          for (int i : sub.indices)
            factors.push_back(basis.vectors[static_cast<std::size_t>(i)]
                                  .factors[static_cast<std::size_t>(r)]);
          if (!validate_orthonormal(factors, 1e-9).pass) return false;
          ++extractions;
        } catch (const StructuralViolation&) {
          return false;
        }
      }
    }
    return true;
  };

  for (const NamedBasis& nb : corpus())
    if (!exercise(nb.basis)) return {false, "corpus basis failed: " + nb.name};

  const std::vector<DimensionSignature> sigs = {
      DimensionSignature({2, 2}), DimensionSignature({2, 3}),
      DimensionSignature({3, 3}), DimensionSignature({2, 2, 3})};
  for (std::size_t s = 0; s < sigs.size(); ++s) {
    Rng rng(77 + s);
    for (int i = 0; i < 250; ++i)
      if (!exercise(random_product_basis(sigs[s], rng)))
        return {false, "generated basis failed at signature " + sigs[s].to_string()};
  }
  std::ostringstream os;
  os << bases_checked << " bases, " << extractions << " extractions";
  return {true, os.str()};
}

// 5. Bound tightness probe: no 4th basis beyond the canonical d=4 triple;
// the third is recovered from the first two with objective < 1e-18.
Outcome criterion5() {
  const MubSet triple = canonical_qubit_triple(2);
  const SearchReport full = extend_set(triple, 200, 1e-9, 0);
  if (!full.found.empty())
    return {false, "a 4th MU product basis was reported (objective " +
                       std::to_string(full.best_objective) + ")"};
  if (!(full.best_residual > 1e-3)) {
    std::ostringstream os;
    os << "best residual " << full.best_residual << " not > 1e-3";
    return {false, os.str()};
  }

  MubSet pair;
  pair.sig = triple.sig;
  pair.bases = {triple.bases[0], triple.bases[1]};
  const SearchReport partial = extend_set(pair, 200, 1e-9, 0);
  std::ostringstream os;
  os << "no 4th (residual " << full.best_residual << "); third recovered with objective "
     << partial.best_objective;
  if (partial.found.empty() || !(partial.best_objective < 1e-18))
    return {false, os.str()};
  return {true, os.str()};
}

// 6. Vectors MU to the canonical d=4 triple are maximally entangled on both
// cuts; a 2x3 triple admits no MU vector across 200 restarts.
Outcome criterion6() {
  const MubSet triple = canonical_qubit_triple(2);
  const MuVectorSearchResult found = find_mu_vectors(triple, 200, 1e-9, 0);
  if (found.vectors.empty()) return {false, "no MU vectors found in d=4"};
  double worst = 0.0;
  for (const Ket& v : found.vectors)
    for (int r = 0; r < 2; ++r)
      worst = std::max(worst,
                       is_maximally_entangled(v, triple.sig, r, 1e-8).second);
  if (!(worst < 1e-8)) {
    std::ostringstream os;
    os << "mixedness deviation " << worst << " not < 1e-8";
    return {false, os.str()};
  }

  const MubSet d6 = direct_triple_2x3();
  const MuVectorSearchResult none = find_mu_vectors(d6, 200, 1e-9, 0);
  std::ostringstream os;
  os << found.vectors.size() << " vectors in d=4, worst mixedness " << worst
     << "; d=6 best residual " << none.best_residual;
  if (!none.vectors.empty() || !(none.best_residual > 1e-3))
    return {false, os.str()};
  return {true, os.str()};
}

// 7. Equivalence soundness: 100 scrambles recognized with replayable
// witnesses; the two 2x5 triples separated; no Unknown verdicts.
Outcome criterion7() {
  struct Case {
    MubSet base;
    int count;
  };
  const std::vector<Case> cases = {{canonical_qubit_triple(2), 40},
                                   {canonical_qubit_triple(3), 30},
                                   {canonical_qutrit_quadruple(1), 30}};
  int done = 0;
  Rng rng(2026);
  for (const Case& c : cases)
    for (int i = 0; i < c.count; ++i) {
      const MubSet scrambled = scramble(c.base, 20, rng);
      const Verdict v =
          equivalent(c.base, scrambled, {.max_trials = 1000000, .seed = 17});
      if (v.kind != VerdictKind::Equivalent)
        return {false, "scramble #" + std::to_string(done) + " not recognized"};
      if (!verify_witness(c.base, scrambled, v.witness))
        return {false, "witness replay failed on scramble #" + std::to_string(done)};
      ++done;
    }

  const Verdict sep = equivalent(two_five_triple_direct(), two_five_triple_indirect());
  if (sep.kind != VerdictKind::Inequivalent)
    return {false, "2x5 direct vs indirect not separated"};
  std::ostringstream os;
  os << done << " scrambles equivalent with verified witnesses; 2x5 triples separated by "
     << sep.separating_invariant;
  return {true, os.str()};
}

// 8. Conjecture-2 grouping succeeds on every corpus and generated bipartite
// basis; a failure is persisted and fails the suite.
Outcome criterion8() {
  long checked = 0;
  const auto check = [&](const ProductBasis& b, const std::string& name) -> bool {
    ++checked;
    const GroupingResult res = conjecture2_grouping(b);
    if (res.pass) return true;
    MubSet witness;
    witness.sig = b.sig;
    witness.bases = {b};
    witness.provenance = "conjecture2 counterexample: " + name;
    save_mubset(witness, "conjecture2_counterexample.mub.json");
    return false;
  };

  for (const NamedBasis& nb : bipartite_corpus())
    if (!check(nb.basis, nb.name))
      return {false, nb.name + " failed; counterexample persisted"};
  const std::vector<DimensionSignature> sigs = {
      DimensionSignature({2, 2}), DimensionSignature({2, 3}),
      DimensionSignature({3, 3}), DimensionSignature({2, 5}),
      DimensionSignature({3, 4})};
  for (std::size_t s = 0; s < sigs.size(); ++s) {
    Rng rng(55 + s);
    for (int i = 0; i < 200; ++i)
      if (!check(random_product_basis(sigs[s], rng),
                 "generated " + sigs[s].to_string() + " #" + std::to_string(i)))
        return {false, "generated basis failed; counterexample persisted"};
  }
  std::ostringstream os;
  os << checked << " bipartite bases grouped";
  return {true, os.str()};
}

// 9. Analytic gradient of the MU objective vs central differences.
Outcome criterion9() {
  const MubSet sets[] = {canonical_qubit_triple(2), direct_triple_2x3()};
  double worst_rel = 0.0;
  int points = 0;
  for (const MubSet& s : sets) {
    const MuVectorObjective obj(s);
    Rng rng(321);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> z(static_cast<std::size_t>(2 * obj.d));
      for (double& x : z) x = rng.gaussian();
      const std::vector<double> g = obj.gradient(z);
      const double h = 1e-6;
      double num = 0.0, den = 0.0;
      for (std::size_t k = 0; k < z.size(); ++k) {
        std::vector<double> zp = z, zm = z;
        zp[k] += h;
        zm[k] -= h;
        const double fd = (obj.evaluate(zp) - obj.evaluate(zm)) / (2.0 * h);
        num += (fd - g[k]) * (fd - g[k]);
        den += g[k] * g[k];
      }
      worst_rel = std::max(worst_rel, std::sqrt(num) / std::max(1e-12, std::sqrt(den)));
      ++points;
    }
  }
  std::ostringstream os;
  os << points << " points, worst relative error " << worst_rel;
  return {worst_rel < 1e-5, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    double time_limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1. canonical constructions exact (< 1e-12)", 1.0, criterion1},
      {"2. factor-wise criterion vs global oracle (0 disagreements)", 30.0, criterion2},
      {"3. trace identities s1=d2, s2=d1 (< 1e-9)", 10.0, criterion3},
      {"4. orthonormal-subset extraction and cardinalities", 30.0, criterion4},
      {"5. bound tightness probe in d=4", 300.0, criterion5},
      {"6. MU vectors maximally entangled; none in 2x3", 300.0, criterion6},
      {"7. equivalence soundness on scrambles and 2x5 triples", 120.0, criterion7},
      {"8. bipartite grouping on corpus and generated bases", 30.0, criterion8},
      {"9. analytic gradient vs central differences (< 1e-5)", 10.0, criterion9},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.time_limit_s;
    const bool pass = outcome.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %s: %s [%.2f s%s]\n", pass ? "PASS" : "FAIL", c.label,
                outcome.detail.c_str(), secs, in_time ? "" : ", over limit");
    std::fflush(stdout);
  }
  return failures;
}
