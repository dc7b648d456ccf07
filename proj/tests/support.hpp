// Shared fixtures and helpers for the test suites.
#pragma once

#include <string>
#include <vector>

#include "mub/constructions.hpp"
#include "mub/linalg.hpp"
#include "mub/types.hpp"

namespace mub::test {

inline Ket ket2(Complex a, Complex b) { return Ket({a, b}); }

inline Ket plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return ket2(s, s);
}

inline Ket minus() {
  const double s = 1.0 / std::sqrt(2.0);
  return ket2(s, -s);
}

inline Ket plus_i() {
  const double s = 1.0 / std::sqrt(2.0);
  return ket2(s, Complex{0.0, s});
}

inline Ket minus_i() {
  const double s = 1.0 / std::sqrt(2.0);
  return ket2(s, Complex{0.0, -s});
}

struct NamedBasis {
  std::string name;
  ProductBasis basis;
};

// Curated fixture corpus: direct standard bases, the indirect example in
// 2x2, the 3x3 domino basis, and the canonical tensor-power bases.
inline std::vector<NamedBasis> fixture_corpus() {
  std::vector<NamedBasis> corpus;
  corpus.push_back({"standard 2x2", standard_product_basis(DimensionSignature({2, 2}))});
  corpus.push_back({"standard 2x3", standard_product_basis(DimensionSignature({2, 3}))});
  corpus.push_back({"standard 3x3", standard_product_basis(DimensionSignature({3, 3}))});
  corpus.push_back({"standard 2x2x3", standard_product_basis(DimensionSignature({2, 2, 3}))});
  corpus.push_back({"indirect 2x2", indirect_d4_basis()});
  corpus.push_back({"domino 3x3", domino_basis_3x3()});
  const MubSet qt = canonical_qubit_triple(2);
  for (int b = 0; b < qt.size(); ++b)
    corpus.push_back({"qubit-triple(2) basis " + std::to_string(b),
                      qt.bases[static_cast<std::size_t>(b)]});
  const MubSet qq = canonical_qutrit_quadruple(1);
  // unipartite members are not product fixtures; use the 3x3 quadruple
  const MubSet qq2 = canonical_qutrit_quadruple(2);
  for (int b = 0; b < 2; ++b)
    corpus.push_back({"qutrit-quadruple(2) basis " + std::to_string(b),
                      qq2.bases[static_cast<std::size_t>(b)]});
  (void)qq;
  return corpus;
}

// Bipartite members of the corpus (for partition / grouping suites),
// multipartite ones regrouped along each cut.
inline std::vector<NamedBasis> bipartite_corpus() {
  std::vector<NamedBasis> out;
  for (const NamedBasis& nb : fixture_corpus()) {
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

}  // namespace mub::test
