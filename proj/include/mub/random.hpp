// Seeded randomness: Haar-random kets and unitaries, reproducible
// per-restart seed derivation.
#pragma once

#include <cstdint>
#include <random>

#include "mub/linalg.hpp"
#include "mub/types.hpp"

namespace mub {

// splitmix64 step; used to derive independent per-restart seeds from a
// master seed so restarts stay reproducible under any execution order.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double gaussian() { return normal_(eng_); }
  double uniform() { return uniform_(eng_); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(eng_);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[static_cast<std::size_t>(uniform_int(0, static_cast<int>(i) - 1))]);
  }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

inline Ket haar_ket(int dim, Rng& rng) {
  Ket v;
  v.coords.resize(static_cast<std::size_t>(dim));
  for (Complex& c : v.coords) c = Complex{rng.gaussian(), rng.gaussian()};
  return v.normalized();
}

// Ginibre ensemble + Gram-Schmidt with positive-diagonal phase fix.
inline CMatrix haar_unitary(int dim, Rng& rng) {
  CMatrix g(dim, dim);
  for (Complex& c : g.a) c = Complex{rng.gaussian(), rng.gaussian()};
  CMatrix q = orthonormalize_columns(g);
  for (int j = 0; j < dim; ++j) {
    // fix residual phase so the map Ginibre -> Q is measurable & Haar
    Complex diag{0.0, 0.0};
    for (int i = 0; i < dim; ++i) diag += std::conj(q(i, j)) * g(i, j);
    if (std::abs(diag) > 1e-300) {
      const Complex ph = std::conj(diag) / std::abs(diag);
      for (int i = 0; i < dim; ++i) q(i, j) *= ph;
    }
  }
  return q;
}

inline ProductKet haar_product_ket(const DimensionSignature& sig, Rng& rng) {
  ProductKet v;
  v.factors.reserve(static_cast<std::size_t>(sig.n()));
  for (int d : sig.dims) v.factors.push_back(haar_ket(d, rng));
  return v;
}

}  // namespace mub
