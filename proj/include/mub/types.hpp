// Core value types for multi-qudit product-basis analysis: dimension
// signatures, kets, product kets/bases, MU basis sets and dense matrices.
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mub {

using Complex = std::complex<double>;

// Default thresholds: pass/fail predicates at 1e-9, self-consistency checks
// at 1e-12, input-norm rejection at 1e-6. All overridable per call.
inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kSelfCheckTol = 1e-12;
inline constexpr double kNormRejectTol = 1e-6;

// Raised when an input promised to be an orthonormal product basis turns out
// not to be one (cardinality or extraction guarantees fail).
class StructuralViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Subsystem dimensions d_1 … d_n, total d = d_1·…·d_n.
struct DimensionSignature {
  std::vector<int> dims;

  DimensionSignature() = default;
  explicit DimensionSignature(std::vector<int> d) : dims(std::move(d)) {
    if (dims.empty())
      throw std::invalid_argument("signature: need at least one subsystem");
    for (int x : dims)
      if (x < 2)
        throw std::invalid_argument(
            "signature: subsystem dimensions must be >= 2");
  }

  int n() const { return static_cast<int>(dims.size()); }

  int total() const {
    int t = 1;
    for (int x : dims) t *= x;
    return t;
  }

  // d_r̄ = d / d_r, dimension of the complement of subsystem r.
  int complement_dim(int r) const { return total() / dims.at(r); }

  std::string to_string() const {
    std::string s;
    for (int i = 0; i < n(); ++i) {
      if (i) s += "x";
      s += std::to_string(dims[i]);
    }
    return s;
  }

  bool operator==(const DimensionSignature&) const = default;
};

// Dense vector in C^d.
struct Ket {
  std::vector<Complex> coords;

  Ket() = default;
  explicit Ket(std::vector<Complex> c) : coords(std::move(c)) {}

  static Ket basis_state(int dim, int k) {
    Ket v;
    v.coords.assign(static_cast<std::size_t>(dim), Complex{0.0, 0.0});
    v.coords.at(static_cast<std::size_t>(k)) = Complex{1.0, 0.0};
    return v;
  }

  int dim() const { return static_cast<int>(coords.size()); }

  double norm_sq() const {
    double s = 0.0;
    for (const Complex& c : coords) s += std::norm(c);
    return s;
  }

  double norm() const { return std::sqrt(norm_sq()); }

  Ket normalized() const {
    double n = norm();
    if (n < 1e-300) throw std::invalid_argument("ket: cannot normalize zero vector");
    Ket out = *this;
    for (Complex& c : out.coords) c /= n;
    return out;
  }
};

// Dense complex matrix, row-major.
struct CMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Complex> a;

  CMatrix() = default;
  CMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  Complex& operator()(int i, int j) {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
  const Complex& operator()(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }

  static CMatrix identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Complex{1.0, 0.0};
    return m;
  }

  Ket column(int j) const {
    Ket v;
    v.coords.resize(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i) v.coords[static_cast<std::size_t>(i)] = (*this)(i, j);
    return v;
  }

  void set_column(int j, const Ket& v) {
    for (int i = 0; i < rows; ++i) (*this)(i, j) = v.coords[static_cast<std::size_t>(i)];
  }
};

// |ψ⟩ = |ψ^1⟩ ⊗ … ⊗ |ψ^n⟩, one factor per subsystem.
struct ProductKet {
  std::vector<Ket> factors;

  ProductKet() = default;
  explicit ProductKet(std::vector<Ket> f) : factors(std::move(f)) {}

  int n() const { return static_cast<int>(factors.size()); }

  DimensionSignature signature() const {
    std::vector<int> dims;
    dims.reserve(factors.size());
    for (const Ket& f : factors) dims.push_back(f.dim());
    return DimensionSignature(dims);
  }
};

// Orthonormal basis of C^d whose every vector is a product ket.
struct ProductBasis {
  DimensionSignature sig;
  std::vector<ProductKet> vectors;

  int dim() const { return sig.total(); }
};

// Ordered collection of pairwise-MU product bases plus provenance metadata.
struct MubSet {
  DimensionSignature sig;
  std::vector<ProductBasis> bases;
  std::string provenance;
  double tol = kDefaultTol;
  std::uint64_t seed = 0;

  int dim() const { return sig.total(); }
  int size() const { return static_cast<int>(bases.size()); }
};

// Reduced state ρ on one subsystem.
struct DensityMatrix {
  CMatrix entries;

  int dim() const { return entries.rows; }
};

// Outcome of an orthonormality check: max |⟨b_i|b_j⟩ − δ_ij| over all pairs.
struct ValidationReport {
  bool pass = false;
  double max_deviation = 0.0;
  std::pair<int, int> worst_pair{-1, -1};
  bool size_ok = false;
  double tol = kDefaultTol;
};

}  // namespace mub
