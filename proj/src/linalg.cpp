#include "mub/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace mub {

Complex inner(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("inner: dimension mismatch");
  Complex s{0.0, 0.0};
  for (int k = 0; k < a.dim(); ++k)
    s += std::conj(a.coords[static_cast<std::size_t>(k)]) *
         b.coords[static_cast<std::size_t>(k)];
  return s;
}

Ket tensor(std::span<const Ket> factors) {
  if (factors.empty())
    throw std::invalid_argument("tensor: empty factor list");
  Ket out = factors[0];
  for (std::size_t r = 1; r < factors.size(); ++r) out = tensor(out, factors[r]);
  return out;
}

Ket tensor(const Ket& a, const Ket& b) {
  Ket out;
  out.coords.resize(static_cast<std::size_t>(a.dim()) * b.dim());
  // first factor slowest
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      out.coords[static_cast<std::size_t>(i) * b.dim() + j] =
          a.coords[static_cast<std::size_t>(i)] *
          b.coords[static_cast<std::size_t>(j)];
  return out;
}

Ket flatten(const ProductKet& v) { return tensor(std::span(v.factors)); }

Complex product_inner(const ProductKet& a, const ProductKet& b) {
  if (a.n() != b.n())
    throw std::invalid_argument("product_inner: factor count mismatch");
  Complex s{1.0, 0.0};
  for (int r = 0; r < a.n(); ++r) s *= inner(a.factors[static_cast<std::size_t>(r)],
                                             b.factors[static_cast<std::size_t>(r)]);
  return s;
}

Complex factor_inner(const ProductKet& a, const ProductKet& b, int r) {
  return inner(a.factors.at(static_cast<std::size_t>(r)),
               b.factors.at(static_cast<std::size_t>(r)));
}

DensityMatrix partial_trace(const Ket& v, const DimensionSignature& sig,
                            int keep) {
  if (v.dim() != sig.total())
    throw std::invalid_argument("partial_trace: dimension mismatch");
  if (keep < 0 || keep >= sig.n())
    throw std::invalid_argument("partial_trace: invalid subsystem index");
  const int dk = sig.dims[static_cast<std::size_t>(keep)];
  int left = 1, right = 1;
  for (int s = 0; s < keep; ++s) left *= sig.dims[static_cast<std::size_t>(s)];
  for (int s = keep + 1; s < sig.n(); ++s) right *= sig.dims[static_cast<std::size_t>(s)];

  DensityMatrix rho;
  rho.entries = CMatrix(dk, dk);
  for (int l = 0; l < left; ++l)
    for (int m = 0; m < right; ++m)
      for (int k = 0; k < dk; ++k) {
        const Complex vk =
            v.coords[static_cast<std::size_t>((l * dk + k)) * right + m];
        if (vk == Complex{0.0, 0.0}) continue;
        for (int k2 = 0; k2 < dk; ++k2)
          rho.entries(k, k2) +=
              vk * std::conj(v.coords[static_cast<std::size_t>((l * dk + k2)) * right + m]);
      }
  return rho;
}

ValidationReport validate_orthonormal(const std::vector<Ket>& basis,
                                      double tol) {
  if (basis.empty())
    throw std::invalid_argument("validate_orthonormal: empty basis");
  const int d = basis[0].dim();
  for (const Ket& b : basis)
    if (b.dim() != d)
      throw std::invalid_argument("validate_orthonormal: dimension mismatch");

  ValidationReport rep;
  rep.tol = tol;
  rep.size_ok = static_cast<int>(basis.size()) == d;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j) {
      const double target = (i == j) ? 1.0 : 0.0;
      const double dev = std::abs(inner(basis[i], basis[j]) - target);
      if (dev > rep.max_deviation) {
        rep.max_deviation = dev;
        rep.worst_pair = {static_cast<int>(i), static_cast<int>(j)};
      }
    }
  rep.pass = rep.size_ok && rep.max_deviation <= tol;
  return rep;
}

ProductKet regroup_bipartite(const ProductKet& v, int r) {
  const int n = v.n();
  if (n < 2)
    throw std::invalid_argument("regroup_bipartite: need at least 2 subsystems");
  if (r < 0 || r >= n)
    throw std::invalid_argument("regroup_bipartite: invalid subsystem index");
  std::vector<Ket> rest;
  rest.reserve(static_cast<std::size_t>(n) - 1);
  for (int s = 0; s < n; ++s)
    if (s != r) rest.push_back(v.factors[static_cast<std::size_t>(s)]);
  ProductKet out;
  out.factors = {v.factors[static_cast<std::size_t>(r)], tensor(std::span(rest))};
  return out;
}

ProductBasis regroup_bipartite(const ProductBasis& b, int r) {
  ProductBasis out;
  out.sig = DimensionSignature(
      {b.sig.dims.at(static_cast<std::size_t>(r)), b.sig.complement_dim(r)});
  out.vectors.reserve(b.vectors.size());
  for (const ProductKet& v : b.vectors) out.vectors.push_back(regroup_bipartite(v, r));
  return out;
}

Ket canonical_phase(const Ket& v) {
  for (const Complex& c : v.coords) {
    if (std::abs(c) > 1e-12) {
      Complex ph = std::conj(c) / std::abs(c);
      Ket out = v;
      for (Complex& x : out.coords) x *= ph;
      return out;
    }
  }
  return v;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: shape mismatch");
  CMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (int j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

CMatrix adjoint(const CMatrix& m) {
  CMatrix out(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

CMatrix conjugate(const CMatrix& m) {
  CMatrix out = m;
  for (Complex& c : out.a) c = std::conj(c);
  return out;
}

Ket apply(const CMatrix& m, const Ket& v) {
  if (m.cols != v.dim()) throw std::invalid_argument("apply: shape mismatch");
  Ket out;
  out.coords.assign(static_cast<std::size_t>(m.rows), Complex{0.0, 0.0});
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      out.coords[static_cast<std::size_t>(i)] += m(i, j) * v.coords[static_cast<std::size_t>(j)];
  return out;
}

CMatrix scale(const CMatrix& m, Complex s) {
  CMatrix out = m;
  for (Complex& c : out.a) c *= s;
  return out;
}

CMatrix add(const CMatrix& a, const CMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("add: shape mismatch");
  CMatrix out = a;
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += b.a[i];
  return out;
}

Complex trace(const CMatrix& m) {
  Complex t{0.0, 0.0};
  for (int i = 0; i < std::min(m.rows, m.cols); ++i) t += m(i, i);
  return t;
}

double frobenius_norm(const CMatrix& m) {
  double s = 0.0;
  for (const Complex& c : m.a) s += std::norm(c);
  return std::sqrt(s);
}

double unitarity_deviation(const CMatrix& m) {
  if (m.rows != m.cols) return 1.0;
  double worst = 0.0;
  for (int i = 0; i < m.cols; ++i)
    for (int j = 0; j < m.cols; ++j) {
      Complex s{0.0, 0.0};
      for (int k = 0; k < m.rows; ++k) s += std::conj(m(k, i)) * m(k, j);
      const double target = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(s - target));
    }
  return worst;
}

CMatrix expm_antihermitian(const CMatrix& a) {
  if (a.rows != a.cols) throw std::invalid_argument("expm: not square");
  int squarings = 0;
  double nrm = frobenius_norm(a);
  while (nrm > 0.5) {
    nrm /= 2.0;
    ++squarings;
  }
  CMatrix s = scale(a, Complex{1.0 / std::ldexp(1.0, squarings), 0.0});
  CMatrix result = CMatrix::identity(a.rows);
  CMatrix term = CMatrix::identity(a.rows);
  for (int k = 1; k <= 32; ++k) {
    term = scale(matmul(term, s), Complex{1.0 / k, 0.0});
    result = add(result, term);
    if (frobenius_norm(term) < 1e-18) break;
  }
  for (int k = 0; k < squarings; ++k) result = matmul(result, result);
  return result;
}

CMatrix orthonormalize_columns(const CMatrix& m) {
  CMatrix out = m;
  for (int j = 0; j < m.cols; ++j) {
    Ket v = out.column(j);
    for (int k = 0; k < j; ++k) {
      Ket u = out.column(k);
      Complex c = inner(u, v);
      for (int i = 0; i < m.rows; ++i)
        v.coords[static_cast<std::size_t>(i)] -= c * u.coords[static_cast<std::size_t>(i)];
    }
    const double n = v.norm();
    if (n < 1e-12)
      throw std::invalid_argument("orthonormalize_columns: rank deficient");
    for (Complex& c : v.coords) c /= n;
    out.set_column(j, v);
  }
  return out;
}

double hermiticity_deviation(const DensityMatrix& rho) {
  double worst = 0.0;
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j)
      worst = std::max(worst,
                       std::abs(rho.entries(i, j) - std::conj(rho.entries(j, i))));
  return worst;
}

double mixedness_deviation(const DensityMatrix& rho) {
  const int d = rho.dim();
  double s = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Complex x = rho.entries(i, j);
      if (i == j) x -= Complex{1.0 / d, 0.0};
      s += std::norm(x);
    }
  return std::sqrt(s);
}

double projector_deviation(const DensityMatrix& rho) {
  CMatrix diff = matmul(rho.entries, rho.entries);
  for (std::size_t i = 0; i < diff.a.size(); ++i) diff.a[i] -= rho.entries.a[i];
  return frobenius_norm(diff);
}

bool eigenvalues_at_least(const DensityMatrix& rho, double tol) {
  // Cholesky of ρ + tol·I succeeds iff λ_min(ρ) > −tol (up to rounding).
  const int d = rho.dim();
  CMatrix m = rho.entries;
  for (int i = 0; i < d; ++i) m(i, i) += Complex{tol, 0.0};
  CMatrix l(d, d);
  for (int j = 0; j < d; ++j) {
    Complex diag = m(j, j);
    for (int k = 0; k < j; ++k) diag -= l(j, k) * std::conj(l(j, k));
    const double dj = diag.real();
    if (dj <= 0.0) return false;
    l(j, j) = Complex{std::sqrt(dj), 0.0};
    for (int i = j + 1; i < d; ++i) {
      Complex s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / l(j, j);
    }
  }
  return true;
}

double expectation(const DensityMatrix& rho, const Ket& v) {
  if (v.dim() != rho.dim())
    throw std::invalid_argument("expectation: dimension mismatch");
  Complex s{0.0, 0.0};
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j)
      s += std::conj(v.coords[static_cast<std::size_t>(i)]) * rho.entries(i, j) *
           v.coords[static_cast<std::size_t>(j)];
  return s.real();
}

}  // namespace mub
