#include "mub/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace mub {

namespace {

constexpr double kMatchTol = 1e-6;  // ray-identification threshold

void check_perm(const std::vector<int>& perm, int size, const char* who) {
  if (static_cast<int>(perm.size()) != size)
    throw std::invalid_argument(std::string(who) + ": permutation size mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(size), false);
  for (int p : perm) {
    if (p < 0 || p >= size || seen[static_cast<std::size_t>(p)])
      throw std::invalid_argument(std::string(who) + ": not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }
}

}  // namespace

MubSet apply_move(const MubSet& s, const EquivalenceMove& m) {
  MubSet out = s;
  const int n = s.sig.n();

  if (const auto* lu = std::get_if<LocalUnitaryMove>(&m)) {
    if (static_cast<int>(lu->unitaries.size()) != n)
      throw std::invalid_argument("apply_move: need one unitary per subsystem");
    for (int r = 0; r < n; ++r) {
      const CMatrix& u = lu->unitaries[static_cast<std::size_t>(r)];
      if (u.rows != s.sig.dims[static_cast<std::size_t>(r)] || u.rows != u.cols)
        throw std::invalid_argument("apply_move: unitary shape mismatch");
      if (unitarity_deviation(u) > 1e-9)
        throw std::invalid_argument("apply_move: non-unitary matrix supplied");
    }
    for (ProductBasis& b : out.bases)
      for (ProductKet& v : b.vectors)
        for (int r = 0; r < n; ++r)
          v.factors[static_cast<std::size_t>(r)] =
              apply(lu->unitaries[static_cast<std::size_t>(r)],
                    v.factors[static_cast<std::size_t>(r)]);
    return out;
  }

  if (const auto* pv = std::get_if<PerVectorPhaseMove>(&m)) {
    if (pv->basis < 0 || pv->basis >= s.size())
      throw std::invalid_argument("apply_move: basis index out of range");
    ProductBasis& b = out.bases[static_cast<std::size_t>(pv->basis)];
    if (pv->phases.size() != b.vectors.size())
      throw std::invalid_argument("apply_move: one phase per vector required");
    for (std::size_t i = 0; i < b.vectors.size(); ++i) {
      const Complex ph{std::cos(pv->phases[i]), std::sin(pv->phases[i])};
      for (Complex& c : b.vectors[i].factors[0].coords) c *= ph;
    }
    return out;
  }

  if (const auto* pb = std::get_if<PermuteWithinBasisMove>(&m)) {
    if (pb->basis < 0 || pb->basis >= s.size())
      throw std::invalid_argument("apply_move: basis index out of range");
    ProductBasis& b = out.bases[static_cast<std::size_t>(pb->basis)];
    check_perm(pb->perm, static_cast<int>(b.vectors.size()), "apply_move");
    std::vector<ProductKet> reordered;
    reordered.reserve(b.vectors.size());
    for (int p : pb->perm) reordered.push_back(b.vectors[static_cast<std::size_t>(p)]);
    b.vectors = std::move(reordered);
    return out;
  }

  if (const auto* lc = std::get_if<LocalConjugateMove>(&m)) {
    if (lc->subsystem < 0 || lc->subsystem >= n)
      throw std::invalid_argument("apply_move: bad subsystem index");
    for (ProductBasis& b : out.bases)
      for (ProductKet& v : b.vectors)
        for (Complex& c : v.factors[static_cast<std::size_t>(lc->subsystem)].coords)
          c = std::conj(c);
    return out;
  }

  const auto& rb = std::get<ReorderBasesMove>(m);
  check_perm(rb.perm, s.size(), "apply_move");
  std::vector<ProductBasis> reordered;
  reordered.reserve(out.bases.size());
  for (int p : rb.perm) reordered.push_back(out.bases[static_cast<std::size_t>(p)]);
  out.bases = std::move(reordered);
  return out;
}

MubSet apply_moves(const MubSet& s, const std::vector<EquivalenceMove>& moves) {
  MubSet cur = s;
  for (const EquivalenceMove& m : moves) cur = apply_move(cur, m);
  return cur;
}

namespace {

std::vector<Ket> flatten_basis(const ProductBasis& b) {
  std::vector<Ket> out;
  out.reserve(b.vectors.size());
  for (const ProductKet& v : b.vectors) out.push_back(flatten(v));
  return out;
}

// Per-subsystem distinct-ray counts of one basis.
std::vector<int> factor_count_row(const ProductBasis& b, double ray_tol) {
  std::vector<int> row;
  row.reserve(static_cast<std::size_t>(b.sig.n()));
  for (int r = 0; r < b.sig.n(); ++r) {
    std::vector<const Ket*> reps;
    for (const ProductKet& v : b.vectors) {
      const Ket& f = v.factors[static_cast<std::size_t>(r)];
      bool found = false;
      for (const Ket* rep : reps)
        if (1.0 - std::abs(inner(*rep, f)) <= ray_tol) {
          found = true;
          break;
        }
      if (!found) reps.push_back(&f);
    }
    row.push_back(static_cast<int>(reps.size()));
  }
  return row;
}

}  // namespace

Fingerprint fingerprint(const MubSet& s) {
  Fingerprint fp;
  std::vector<std::vector<Ket>> flat;
  flat.reserve(s.bases.size());
  for (const ProductBasis& b : s.bases) flat.push_back(flatten_basis(b));

  for (std::size_t k = 0; k < s.bases.size(); ++k)
    for (std::size_t l = k + 1; l < s.bases.size(); ++l) {
      std::vector<std::int64_t> overlaps;
      overlaps.reserve(flat[k].size() * flat[l].size());
      for (const Ket& a : flat[k])
        for (const Ket& b : flat[l])
          overlaps.push_back(
              std::llround(std::norm(inner(a, b)) / kFingerprintGrid));
      std::sort(overlaps.begin(), overlaps.end());
      fp.pair_overlaps.push_back(std::move(overlaps));
    }
  std::sort(fp.pair_overlaps.begin(), fp.pair_overlaps.end());

  for (const ProductBasis& b : s.bases)
    fp.factor_counts.push_back(factor_count_row(b, kFingerprintGrid));
  std::sort(fp.factor_counts.begin(), fp.factor_counts.end());
  return fp;
}

std::string fingerprint_difference(const Fingerprint& a, const Fingerprint& b) {
  if (a.factor_counts != b.factor_counts)
    return "per-basis distinct-factor counts differ";
  if (a.pair_overlaps.size() != b.pair_overlaps.size())
    return "number of basis pairs differs";
  for (std::size_t i = 0; i < a.pair_overlaps.size(); ++i)
    if (a.pair_overlaps[i] != b.pair_overlaps[i])
      return "squared-overlap multiset of basis pair #" + std::to_string(i) +
             " differs";
  return {};
}

namespace {

// Distinct factor rays of subsystem r, in first-occurrence order. Returns
// nothing unless they form an orthonormal basis of C^{d_r} (direct basis).
std::optional<std::vector<Ket>> direct_factor_basis(const ProductBasis& b,
                                                    int r) {
  const int dr = b.sig.dims[static_cast<std::size_t>(r)];
  std::vector<Ket> reps;
  for (const ProductKet& v : b.vectors) {
    const Ket& f = v.factors[static_cast<std::size_t>(r)];
    bool found = false;
    for (const Ket& rep : reps)
      if (1.0 - std::abs(inner(rep, f)) <= kMatchTol) {
        found = true;
        break;
      }
    if (!found) {
      if (static_cast<int>(reps.size()) == dr) return std::nullopt;
      reps.push_back(f);
    }
  }
  if (static_cast<int>(reps.size()) != dr) return std::nullopt;
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j)
      if (std::abs(inner(reps[i], reps[j])) > kMatchTol) return std::nullopt;
  return reps;
}

std::optional<std::vector<std::vector<Ket>>> direct_factor_bases(
    const ProductBasis& b) {
  std::vector<std::vector<Ket>> out;
  for (int r = 0; r < b.sig.n(); ++r) {
    auto reps = direct_factor_basis(b, r);
    if (!reps) return std::nullopt;
    out.push_back(std::move(*reps));
  }
  return out;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Unitaries U with U·FA[j] ∝ FB[τ(j)] and U·GA[k] ∝ GB[σ(k)] for some τ, σ.
// The anchor pair (FA, GA) pins the diagonal phase freedom left by aligning
// FA alone; candidates are deduped up to a global phase.
std::vector<CMatrix> align_pair_candidates(const std::vector<Ket>& fa,
                                           const std::vector<Ket>& ga,
                                           const std::vector<Ket>& fb,
                                           const std::vector<Ket>& gb) {
  const int d = static_cast<int>(fa.size());
  std::vector<CMatrix> candidates;

  for (const std::vector<int>& tau : all_permutations(d)) {
    // ⟨FB[τ(j)]|U0|GA[0]⟩ = ⟨FA[j]|GA[0]⟩ for U0 = Σ_j |FB[τ(j)]⟩⟨FA[j]|.
    std::vector<Complex> c(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
      c[static_cast<std::size_t>(j)] = inner(fa[static_cast<std::size_t>(j)], ga[0]);

    for (int t = 0; t < d; ++t) {
      std::vector<Complex> w(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j)
        w[static_cast<std::size_t>(j)] =
            inner(fb[static_cast<std::size_t>(tau[static_cast<std::size_t>(j)])],
                  gb[static_cast<std::size_t>(t)]);

      bool moduli_ok = true;
      int ref = -1;
      double ref_mod = 0.0;
      for (int j = 0; j < d; ++j) {
        const double cm = std::abs(c[static_cast<std::size_t>(j)]);
        const double wm = std::abs(w[static_cast<std::size_t>(j)]);
        if (std::abs(cm - wm) > kMatchTol) {
          moduli_ok = false;
          break;
        }
        if (wm > ref_mod) {
          ref_mod = wm;
          ref = j;
        }
      }
      if (!moduli_ok || ref < 0 || ref_mod < 1e-9) continue;

      Complex lambda = c[static_cast<std::size_t>(ref)] / w[static_cast<std::size_t>(ref)];
      lambda /= std::abs(lambda);

      // U = Σ_j e^{iθ_j}|FB[τ(j)]⟩⟨FA[j]| with e^{iθ_j} = λ w_j / c_j.
      CMatrix u(d, d);
      bool ok = true;
      for (int j = 0; j < d && ok; ++j) {
        Complex phase{1.0, 0.0};
        const Complex cj = c[static_cast<std::size_t>(j)];
        if (std::abs(cj) > 1e-9) {
          phase = lambda * w[static_cast<std::size_t>(j)] / cj;
          const double mod = std::abs(phase);
          if (std::abs(mod - 1.0) > 1e-3) {
            ok = false;
            break;
          }
          phase /= mod;
        }
        const Ket& target = fb[static_cast<std::size_t>(tau[static_cast<std::size_t>(j)])];
        const Ket& source = fa[static_cast<std::size_t>(j)];
        for (int row = 0; row < d; ++row)
          for (int col = 0; col < d; ++col)
            u(row, col) += phase * target.coords[static_cast<std::size_t>(row)] *
                           std::conj(source.coords[static_cast<std::size_t>(col)]);
      }
      if (!ok) continue;

      // Verify the second basis maps member-to-member.
      std::vector<bool> taken(static_cast<std::size_t>(d), false);
      for (int k = 0; k < d && ok; ++k) {
        const Ket mapped = apply(u, ga[static_cast<std::size_t>(k)]);
        int match = -1;
        for (int j = 0; j < d; ++j) {
          if (taken[static_cast<std::size_t>(j)]) continue;
          if (std::abs(inner(gb[static_cast<std::size_t>(j)], mapped)) >=
              1.0 - kMatchTol) {
            match = j;
            break;
          }
        }
        if (match < 0)
          ok = false;
        else
          taken[static_cast<std::size_t>(match)] = true;
      }
      if (!ok) continue;

      bool duplicate = false;
      for (const CMatrix& prev : candidates)
        if (std::abs(trace(matmul(adjoint(prev), u))) > d - kMatchTol) {
          duplicate = true;
          break;
        }
      if (!duplicate) candidates.push_back(std::move(u));
    }
  }
  return candidates;
}

// Match every mapped vector of `mapped` to a unique vector of `target` with
// |overlap| = 1; returns (perm, phases) for the within-basis moves, where
// perm[j] is the mapped-vector index placed at position j.
std::optional<std::pair<std::vector<int>, std::vector<double>>> match_basis(
    const std::vector<Ket>& mapped, const std::vector<Ket>& target) {
  const int d = static_cast<int>(mapped.size());
  std::vector<int> perm(static_cast<std::size_t>(d), -1);
  std::vector<double> phases(static_cast<std::size_t>(d), 0.0);
  std::vector<bool> taken(static_cast<std::size_t>(d), false);
  for (int j = 0; j < d; ++j) {
    int found = -1;
    for (int i = 0; i < d; ++i) {
      if (taken[static_cast<std::size_t>(i)]) continue;
      const Complex o = inner(mapped[static_cast<std::size_t>(i)],
                              target[static_cast<std::size_t>(j)]);
      if (std::abs(o) >= 1.0 - kMatchTol) {
        found = i;
        phases[static_cast<std::size_t>(j)] = std::arg(o);
        break;
      }
    }
    if (found < 0) return std::nullopt;
    taken[static_cast<std::size_t>(found)] = true;
    perm[static_cast<std::size_t>(j)] = found;
  }
  return std::make_pair(perm, phases);
}

}  // namespace

Verdict equivalent(const MubSet& a, const MubSet& b,
                   const EquivalenceBudget& budget) {
  if (!(a.sig == b.sig))
    throw std::invalid_argument("equivalent: signature mismatch");

  Verdict verdict;
  if (a.size() != b.size()) {
    verdict.kind = VerdictKind::Inequivalent;
    verdict.separating_invariant = "number of bases differs";
    return verdict;
  }

  const Fingerprint fa = fingerprint(a);
  const Fingerprint fb = fingerprint(b);
  if (!(fa == fb)) {
    verdict.kind = VerdictKind::Inequivalent;
    verdict.separating_invariant = fingerprint_difference(fa, fb);
    return verdict;
  }

  const int n = a.sig.n();
  const int m = a.size();
  if (m > 6) return verdict;  // witness search not attempted at this size

  Rng rng(budget.seed);
  long trials = 0;

  // Anchors: the first two direct bases of B (one suffices for m = 1).
  std::vector<std::optional<std::vector<std::vector<Ket>>>> dir_b;
  for (const ProductBasis& pb : b.bases) dir_b.push_back(direct_factor_bases(pb));
  int anchor_p = -1, anchor_q = -1;
  for (int k = 0; k < m; ++k) {
    if (!dir_b[static_cast<std::size_t>(k)]) continue;
    if (anchor_p < 0)
      anchor_p = k;
    else if (anchor_q < 0) {
      anchor_q = k;
      break;
    }
  }
  if (anchor_p < 0 || (m > 1 && anchor_q < 0)) return verdict;  // Unknown

  std::vector<std::vector<Ket>> flat_b;
  for (const ProductBasis& pb : b.bases) flat_b.push_back(flatten_basis(pb));

  std::vector<int> masks(static_cast<std::size_t>(1) << n);
  for (std::size_t i = 0; i < masks.size(); ++i) masks[i] = static_cast<int>(i);
  rng.shuffle(masks);
  std::vector<std::vector<int>> pairings = all_permutations(m);
  rng.shuffle(pairings);

  for (int mask : masks) {
    MubSet ac = a;
    for (int s = 0; s < n; ++s)
      if (mask & (1 << s)) ac = apply_move(ac, LocalConjugateMove{s});

    for (const std::vector<int>& pi : pairings) {
      if (++trials > budget.max_trials) {
        verdict.trials_used = trials;
        return verdict;
      }
      MubSet a2 = apply_move(ac, ReorderBasesMove{pi});

      auto dir_ap = direct_factor_bases(a2.bases[static_cast<std::size_t>(anchor_p)]);
      if (!dir_ap) continue;
      std::optional<std::vector<std::vector<Ket>>> dir_aq;
      if (m > 1) {
        dir_aq = direct_factor_bases(a2.bases[static_cast<std::size_t>(anchor_q)]);
        if (!dir_aq) continue;
      }

      // Per-subsystem unitary candidates from the anchor alignment.
      std::vector<std::vector<CMatrix>> cands(static_cast<std::size_t>(n));
      bool feasible = true;
      for (int r = 0; r < n && feasible; ++r) {
        if (m == 1) {
          const auto& fa_r = (*dir_ap)[static_cast<std::size_t>(r)];
          const auto& fb_r =
              (*dir_b[static_cast<std::size_t>(anchor_p)])[static_cast<std::size_t>(r)];
          const int d = static_cast<int>(fa_r.size());
          CMatrix u(d, d);
          for (int j = 0; j < d; ++j)
            for (int row = 0; row < d; ++row)
              for (int col = 0; col < d; ++col)
                u(row, col) += fb_r[static_cast<std::size_t>(j)]
                                   .coords[static_cast<std::size_t>(row)] *
                               std::conj(fa_r[static_cast<std::size_t>(j)]
                                             .coords[static_cast<std::size_t>(col)]);
          cands[static_cast<std::size_t>(r)].push_back(std::move(u));
          continue;
        }
        cands[static_cast<std::size_t>(r)] = align_pair_candidates(
            (*dir_ap)[static_cast<std::size_t>(r)],
            (*dir_aq)[static_cast<std::size_t>(r)],
            (*dir_b[static_cast<std::size_t>(anchor_p)])[static_cast<std::size_t>(r)],
            (*dir_b[static_cast<std::size_t>(anchor_q)])[static_cast<std::size_t>(r)]);
        if (cands[static_cast<std::size_t>(r)].empty()) feasible = false;
      }
      if (!feasible) continue;

      // Walk the cartesian product of per-subsystem candidates.
      std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
      while (true) {
        if (++trials > budget.max_trials) {
          verdict.trials_used = trials;
          return verdict;
        }
        LocalUnitaryMove lu;
        for (int r = 0; r < n; ++r)
          lu.unitaries.push_back(
              cands[static_cast<std::size_t>(r)][pick[static_cast<std::size_t>(r)]]);
        MubSet a3 = apply_move(a2, lu);

        bool all_match = true;
        std::vector<EquivalenceMove> tail;
        for (int k = 0; k < m && all_match; ++k) {
          auto match = match_basis(flatten_basis(a3.bases[static_cast<std::size_t>(k)]),
                                   flat_b[static_cast<std::size_t>(k)]);
          if (!match) {
            all_match = false;
            break;
          }
          tail.push_back(PermuteWithinBasisMove{k, match->first});
          tail.push_back(PerVectorPhaseMove{k, match->second});
        }
        if (all_match) {
          std::vector<EquivalenceMove> witness;
          for (int s = 0; s < n; ++s)
            if (mask & (1 << s)) witness.push_back(LocalConjugateMove{s});
          witness.push_back(ReorderBasesMove{pi});
          witness.push_back(lu);
          for (EquivalenceMove& mv : tail) witness.push_back(std::move(mv));
          if (verify_witness(a, b, witness)) {
            verdict.kind = VerdictKind::Equivalent;
            verdict.witness = std::move(witness);
            verdict.trials_used = trials;
            return verdict;
          }
        }

        int pos = n - 1;
        while (pos >= 0) {
          if (++pick[static_cast<std::size_t>(pos)] <
              cands[static_cast<std::size_t>(pos)].size())
            break;
          pick[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
  }
  verdict.trials_used = trials;
  return verdict;
}

EquivalenceMove random_move(const MubSet& s, Rng& rng) {
  const int n = s.sig.n();
  const int d = s.dim();
  const int m = s.size();
  switch (rng.uniform_int(0, 4)) {
    case 0: {
      LocalUnitaryMove mv;
      for (int r = 0; r < n; ++r)
        mv.unitaries.push_back(haar_unitary(s.sig.dims[static_cast<std::size_t>(r)], rng));
      return mv;
    }
    case 1: {
      PerVectorPhaseMove mv;
      mv.basis = rng.uniform_int(0, m - 1);
      for (int i = 0; i < d; ++i)
        mv.phases.push_back(rng.uniform() * 2.0 * std::numbers::pi);
      return mv;
    }
    case 2: {
      PermuteWithinBasisMove mv;
      mv.basis = rng.uniform_int(0, m - 1);
      for (int i = 0; i < d; ++i) mv.perm.push_back(i);
      rng.shuffle(mv.perm);
      return mv;
    }
    case 3:
      return LocalConjugateMove{rng.uniform_int(0, n - 1)};
    default: {
      ReorderBasesMove mv;
      for (int i = 0; i < m; ++i) mv.perm.push_back(i);
      rng.shuffle(mv.perm);
      return mv;
    }
  }
}

MubSet scramble(const MubSet& s, int count, Rng& rng,
                std::vector<EquivalenceMove>* record) {
  MubSet cur = s;
  for (int i = 0; i < count; ++i) {
    EquivalenceMove mv = random_move(cur, rng);
    cur = apply_move(cur, mv);
    if (record) record->push_back(std::move(mv));
  }
  return cur;
}

bool verify_witness(const MubSet& a, const MubSet& b,
                    const std::vector<EquivalenceMove>& witness, double tol) {
  MubSet mapped = apply_moves(a, witness);
  if (mapped.size() != b.size()) return false;
  for (int k = 0; k < b.size(); ++k) {
    const ProductBasis& mb = mapped.bases[static_cast<std::size_t>(k)];
    const ProductBasis& tb = b.bases[static_cast<std::size_t>(k)];
    if (mb.vectors.size() != tb.vectors.size()) return false;
    for (std::size_t j = 0; j < tb.vectors.size(); ++j)
      if (std::abs(inner(flatten(mb.vectors[j]), flatten(tb.vectors[j]))) <
          1.0 - tol)
        return false;
  }
  return true;
}

}  // namespace mub
