#include "mub/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mub/mucheck.hpp"
#include "mub/optimize.hpp"
#include "mub/random.hpp"
#include "mub/structure.hpp"

namespace mub {

std::pair<bool, double> is_maximally_entangled(const Ket& v,
                                               const DimensionSignature& sig,
                                               int r, double tol) {
  if (v.dim() != sig.total())
    throw std::invalid_argument("is_maximally_entangled: dimension mismatch");
  const DensityMatrix rho = partial_trace(v, sig, r);
  const double dev = mixedness_deviation(rho);
  return {dev <= tol, dev};
}

std::vector<EntanglementAudit> audit_mu_vector(const Ket& v, const MubSet& s,
                                               double tol) {
  const int d = s.dim();
  if (v.dim() != d)
    throw std::invalid_argument("audit_mu_vector: dimension mismatch");
  if (std::abs(v.norm() - 1.0) > kNormRejectTol)
    throw std::invalid_argument("audit_mu_vector: vector is not normalized");

  // Precondition: v MU to every basis of the set.
  const double target = 1.0 / d;
  for (int b = 0; b < s.size(); ++b) {
    const ProductBasis& basis = s.bases[static_cast<std::size_t>(b)];
    for (int i = 0; i < d; ++i) {
      const double dev = std::abs(
          std::norm(inner(flatten(basis.vectors[static_cast<std::size_t>(i)]), v)) -
          target);
      if (dev > tol)
        throw NotMutuallyUnbiased(
            "audit_mu_vector: vector is not MU to basis " + std::to_string(b) +
                ", vector " + std::to_string(i) + " (deviation " +
                std::to_string(dev) + ")",
            b, i, dev);
    }
  }

  std::vector<EntanglementAudit> audits;
  for (int r = 0; r < s.sig.n(); ++r) {
    const int dr = s.sig.dims[static_cast<std::size_t>(r)];
    EntanglementAudit audit;
    audit.subsystem = r;
    audit.reduced = partial_trace(v, s.sig, r);
    audit.mixedness_deviation = mixedness_deviation(audit.reduced);

    // Hypothesis: the set supplies d_r + 1 orthonormal factor bases in
    // subsystem r (guaranteed for d_r ∈ {2,3}; checked, not assumed, for
    // larger d_r).
    std::vector<std::vector<Ket>> factor_bases;
    if (s.size() >= dr + 1) {
      for (int b = 0; b < dr + 1; ++b) {
        const ProductBasis& basis = s.bases[static_cast<std::size_t>(b)];
        std::vector<int> idx;
        if (dr == 2 || dr == 3) {
          try {
            idx = extract_ortho_subset(basis, r, 0, tol).indices;
          } catch (const StructuralViolation&) {
            idx.clear();
          }
        } else {
          std::vector<Ket> factors;
          for (const ProductKet& pv : basis.vectors)
            factors.push_back(pv.factors[static_cast<std::size_t>(r)]);
          if (auto found = orthonormal_subset_indices(factors, dr, tol))
            idx = *found;
        }
        if (idx.empty()) break;
        std::vector<Ket> fb;
        for (int i : idx)
          fb.push_back(basis.vectors[static_cast<std::size_t>(i)]
                           .factors[static_cast<std::size_t>(r)]);
        factor_bases.push_back(std::move(fb));
      }
    }
    bool hypothesis = static_cast<int>(factor_bases.size()) == dr + 1;
    // Extracted bases must be pairwise MU to span a complete set.
    for (std::size_t x = 0; x < factor_bases.size() && hypothesis; ++x)
      for (std::size_t y = x + 1; y < factor_bases.size(); ++y)
        if (!are_bases_mu(factor_bases[x], factor_bases[y], std::max(tol, 1e-6))
                 .pass) {
          hypothesis = false;
          break;
        }

    audit.hypothesis_ok = hypothesis;
    if (hypothesis) {
      for (const auto& fb : factor_bases) {
        std::vector<double> row;
        for (const Ket& vb : fb) row.push_back(expectation(audit.reduced, vb));
        audit.probabilities.push_back(std::move(row));
      }
      audit.maximally_mixed = audit.mixedness_deviation <= tol;
    }
    audits.push_back(std::move(audit));
  }
  return audits;
}

MuVectorObjective::MuVectorObjective(const MubSet& s) : d(s.dim()) {
  for (const ProductBasis& b : s.bases)
    for (const ProductKet& v : b.vectors) states.push_back(flatten(v));
}

Ket MuVectorObjective::to_ket(const std::vector<double>& params) {
  Ket v;
  v.coords.resize(params.size() / 2);
  for (std::size_t k = 0; k < v.coords.size(); ++k)
    v.coords[k] = Complex{params[2 * k], params[2 * k + 1]};
  return v;
}

std::vector<double> MuVectorObjective::to_params(const Ket& v) {
  std::vector<double> p(static_cast<std::size_t>(2 * v.dim()));
  for (int k = 0; k < v.dim(); ++k) {
    p[static_cast<std::size_t>(2 * k)] = v.coords[static_cast<std::size_t>(k)].real();
    p[static_cast<std::size_t>(2 * k + 1)] = v.coords[static_cast<std::size_t>(k)].imag();
  }
  return p;
}

double MuVectorObjective::evaluate(const std::vector<double>& params) const {
  const Ket v = to_ket(params).normalized();
  const double target = 1.0 / d;
  double f = 0.0;
  for (const Ket& psi : states) {
    const double e = std::norm(inner(psi, v)) - target;
    f += e * e;
  }
  return f;
}

std::vector<double> MuVectorObjective::gradient(
    const std::vector<double>& params) const {
  const Ket z = to_ket(params);
  const double r = z.norm();
  Ket v = z;
  for (Complex& c : v.coords) c /= r;
  const double target = 1.0 / d;

  // Wirtinger gradient of G(v) = Σ (|⟨ψ|v⟩|² − 1/d)²:  ∂G/∂v̄ = Σ 2e·o·ψ.
  std::vector<Complex> g(static_cast<std::size_t>(d), Complex{0.0, 0.0});
  for (const Ket& psi : states) {
    const Complex o = inner(psi, v);
    const double e = std::norm(o) - target;
    for (int k = 0; k < d; ++k)
      g[static_cast<std::size_t>(k)] +=
          2.0 * e * o * psi.coords[static_cast<std::size_t>(k)];
  }

  // Real gradient on the unit sphere, chained through v = z/‖z‖.
  std::vector<double> h(params.size());
  for (int k = 0; k < d; ++k) {
    h[static_cast<std::size_t>(2 * k)] = 2.0 * g[static_cast<std::size_t>(k)].real();
    h[static_cast<std::size_t>(2 * k + 1)] = 2.0 * g[static_cast<std::size_t>(k)].imag();
  }
  std::vector<double> w = to_params(v);
  double hw = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) hw += h[i] * w[i];
  std::vector<double> out(params.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = (h[i] - hw * w[i]) / r;
  return out;
}

MuVectorSearchResult find_mu_vectors(const MubSet& s, int restarts, double tol,
                                     std::uint64_t seed) {
  const MuVectorObjective obj(s);
  const double found_threshold = tol * tol;

  MuVectorSearchResult result;
  result.restarts = restarts;
  result.seed = seed;
  result.best_objective = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < restarts; ++restart) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
    std::vector<double> x0 = MuVectorObjective::to_params(haar_ket(obj.d, rng));

    CgOptions opts;
    opts.max_iters = 600;
    opts.f_stop = found_threshold * 1e-6;
    const CgResult cg = cg_minimize(
        [&](const std::vector<double>& x) { return obj.evaluate(x); },
        [&](const std::vector<double>& x) { return obj.gradient(x); },
        std::move(x0), opts);

    result.best_objective = std::min(result.best_objective, cg.f);
    if (cg.f >= found_threshold) continue;

    const Ket v = canonical_phase(MuVectorObjective::to_ket(cg.x).normalized());
    // Never emit a vector that fails the direct MU check.
    bool valid = true;
    const double target = 1.0 / obj.d;
    for (const Ket& psi : obj.states)
      if (std::abs(std::norm(inner(psi, v)) - target) > tol) {
        valid = false;
        break;
      }
    if (!valid) continue;

    bool duplicate = false;
    for (const Ket& w : result.vectors)
      if (std::abs(inner(w, v)) > 1.0 - 1e-6) {
        duplicate = true;
        break;
      }
    if (!duplicate) result.vectors.push_back(v);
  }

  result.best_residual = std::sqrt(result.best_objective);
  return result;
}

DensityMatrix reconstruct_from_mu_diagonals(
    const DensityMatrix& rho,
    const std::vector<std::vector<Ket>>& complete_set) {
  const int d = rho.dim();
  DensityMatrix out;
  out.entries = CMatrix(d, d);
  for (const auto& basis : complete_set)
    for (const Ket& vb : basis) {
      const double p = expectation(rho, vb);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          out.entries(i, j) += p * vb.coords[static_cast<std::size_t>(i)] *
                               std::conj(vb.coords[static_cast<std::size_t>(j)]);
    }
  for (int i = 0; i < d; ++i) out.entries(i, i) -= Complex{1.0, 0.0};
  return out;
}

}  // namespace mub
