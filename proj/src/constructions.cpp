#include "mub/constructions.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "mub/mucheck.hpp"

namespace mub {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

Ket make_ket(std::vector<Complex> c) { return Ket(std::move(c)); }

// All index tuples of a signature in row-major order (first factor slowest).
void for_each_tuple(const std::vector<int>& dims,
                    const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(dims.size(), 0);
  while (true) {
    fn(idx);
    int pos = static_cast<int>(dims.size()) - 1;
    while (pos >= 0) {
      if (++idx[static_cast<std::size_t>(pos)] <
          dims[static_cast<std::size_t>(pos)])
        break;
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

// Tensor-power direct basis: one fixed single-qudit basis per subsystem.
ProductBasis tensor_power_basis(const std::vector<Ket>& single, int n) {
  const int p = single[0].dim();
  ProductBasis b;
  b.sig = DimensionSignature(std::vector<int>(static_cast<std::size_t>(n), p));
  for_each_tuple(b.sig.dims, [&](const std::vector<int>& idx) {
    ProductKet v;
    v.factors.reserve(idx.size());
    for (int j : idx) v.factors.push_back(single[static_cast<std::size_t>(j)]);
    b.vectors.push_back(std::move(v));
  });
  return b;
}

}  // namespace

Complex root_of_unity(int p, int power) {
  const double angle = 2.0 * std::numbers::pi * power / p;
  return Complex{std::cos(angle), std::sin(angle)};
}

WeylOps weyl_ops(int p) {
  if (p < 2) throw std::invalid_argument("weyl_ops: p must be >= 2");
  WeylOps ops;
  ops.p = p;
  ops.omega = root_of_unity(p, 1);
  ops.z = CMatrix(p, p);
  ops.x = CMatrix(p, p);
  for (int l = 0; l < p; ++l) {
    ops.z(l, l) = root_of_unity(p, l);
    ops.x((l + 1) % p, l) = Complex{1.0, 0.0};
  }
  ops.xz = matmul(ops.x, ops.z);
  ops.xz2 = matmul(ops.xz, ops.z);
  return ops;
}

bool is_eigenbasis(const CMatrix& op, const std::vector<Ket>& basis,
                   double tol) {
  for (const Ket& v : basis) {
    const Ket w = apply(op, v);
    Complex lambda{0.0, 0.0};
    for (int i = 0; i < v.dim(); ++i)
      lambda += std::conj(v.coords[static_cast<std::size_t>(i)]) *
                w.coords[static_cast<std::size_t>(i)];
    double resid = 0.0;
    for (int i = 0; i < v.dim(); ++i)
      resid += std::norm(w.coords[static_cast<std::size_t>(i)] -
                         lambda * v.coords[static_cast<std::size_t>(i)]);
    if (std::sqrt(resid) > tol) return false;
  }
  return true;
}

std::vector<std::vector<Ket>> pauli_triple() {
  const Complex i{0.0, 1.0};
  std::vector<std::vector<Ket>> t(3);
  t[0] = {make_ket({1.0, 0.0}), make_ket({0.0, 1.0})};
  t[1] = {make_ket({kInvSqrt2, kInvSqrt2}), make_ket({kInvSqrt2, -kInvSqrt2})};
  t[2] = {make_ket({kInvSqrt2, i * kInvSqrt2}),
          make_ket({kInvSqrt2, -i * kInvSqrt2})};
  return t;
}

std::vector<std::vector<Ket>> weyl_quadruple_d3() {
  const Complex w = root_of_unity(3, 1);
  const Complex w2 = root_of_unity(3, 2);
  const Complex one{1.0, 0.0};
  auto col = [&](Complex a, Complex b, Complex c) {
    return make_ket({a * kInvSqrt3, b * kInvSqrt3, c * kInvSqrt3});
  };
  std::vector<std::vector<Ket>> q(4);
  q[0] = {make_ket({1.0, 0.0, 0.0}), make_ket({0.0, 1.0, 0.0}),
          make_ket({0.0, 0.0, 1.0})};
  q[1] = {col(one, one, one), col(one, w, w2), col(one, w2, w)};
  q[2] = {col(one, w, w), col(one, w2, one), col(one, one, w2)};
  q[3] = {col(one, w2, w2), col(one, one, w), col(one, w, one)};
  return q;
}

std::vector<std::vector<Ket>> complete_set_prime(int p) {
  if (p == 2) {
    auto t = pauli_triple();
    return t;
  }
  if (p < 3 || p % 2 == 0)
    throw std::invalid_argument("complete_set_prime: odd prime required");
  for (int f = 3; f * f <= p; f += 2)
    if (p % f == 0)
      throw std::invalid_argument("complete_set_prime: odd prime required");

  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  const int inv2 = (p + 1) / 2;
  std::vector<std::vector<Ket>> bases;
  bases.reserve(static_cast<std::size_t>(p) + 1);

  std::vector<Ket> standard;
  for (int j = 0; j < p; ++j) standard.push_back(Ket::basis_state(p, j));
  bases.push_back(std::move(standard));

  // Eigenbasis of X·Z^k: v_l = ω^{αl² + βl}/√p with α = k/2 mod p; the
  // column with eigenvalue ω^j has β = α − k − j mod p.
  for (int k = 0; k < p; ++k) {
    const int alpha = (inv2 * k) % p;
    std::vector<Ket> basis;
    for (int j = 0; j < p; ++j) {
      const int beta = ((alpha - k - j) % p + p) % p;
      std::vector<Complex> c(static_cast<std::size_t>(p));
      for (int l = 0; l < p; ++l)
        c[static_cast<std::size_t>(l)] =
            root_of_unity(p, (alpha * l * l + beta * l) % p) * scale;
      basis.push_back(make_ket(std::move(c)));
    }
    bases.push_back(std::move(basis));
  }
  return bases;
}

MubSet canonical_qubit_triple(int n) {
  if (n < 1) throw std::invalid_argument("canonical_qubit_triple: n >= 1");
  const auto triple = pauli_triple();
  MubSet s;
  s.sig = DimensionSignature(std::vector<int>(static_cast<std::size_t>(n), 2));
  for (const auto& basis : triple)
    s.bases.push_back(tensor_power_basis(basis, n));
  s.provenance = "canonical qubit triple, n=" + std::to_string(n);
  return s;
}

MubSet canonical_qutrit_quadruple(int n) {
  if (n < 1) throw std::invalid_argument("canonical_qutrit_quadruple: n >= 1");
  const auto quad = weyl_quadruple_d3();
  MubSet s;
  s.sig = DimensionSignature(std::vector<int>(static_cast<std::size_t>(n), 3));
  for (const auto& basis : quad) s.bases.push_back(tensor_power_basis(basis, n));
  s.provenance = "canonical qutrit quadruple, n=" + std::to_string(n);
  return s;
}

MubSet assemble_corollary_set(const DimensionSignature& sig, int p, int k,
                              const BasisAssignment& assignment, double tol) {
  if (p != 2 && p != 3)
    throw std::invalid_argument("assemble_corollary_set: p must be 2 or 3");
  if (k < 1 || k >= sig.n() + 1)
    throw std::invalid_argument("assemble_corollary_set: invalid block size");
  if (k >= sig.n())
    throw std::invalid_argument(
        "assemble_corollary_set: complement must be nonempty");
  for (int r = 0; r < k; ++r)
    if (sig.dims[static_cast<std::size_t>(r)] != p)
      throw std::invalid_argument(
          "assemble_corollary_set: first k subsystems must have dimension p");

  DimensionSignature comp_sig(
      std::vector<int>(sig.dims.begin() + k, sig.dims.end()));
  const int n_sets = p + 1;
  int labels = 1;
  for (int r = 0; r < k; ++r) labels *= p;

  if (static_cast<int>(assignment.choice.size()) != n_sets)
    throw std::invalid_argument("assemble_corollary_set: need p+1 label maps");
  for (const auto& per_b : assignment.choice)
    if (static_cast<int>(per_b.size()) != labels)
      throw std::invalid_argument(
          "assemble_corollary_set: need one complement basis per label");

  // Validate every G(j_b): right signature, orthonormal.
  for (int b = 0; b < n_sets; ++b)
    for (int j = 0; j < labels; ++j) {
      const ProductBasis& g =
          assignment.choice[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)];
      if (!(g.sig == comp_sig))
        throw std::invalid_argument(
            "assemble_corollary_set: complement signature mismatch");
      std::vector<Ket> flat;
      for (const ProductKet& v : g.vectors) flat.push_back(flatten(v));
      if (!validate_orthonormal(flat, tol).pass)
        throw std::invalid_argument(
            "assemble_corollary_set: non-orthonormal complement basis");
    }

  // Cross-set MU condition: G(j_b) MU to G(j'_b') whenever b ≠ b'.
  for (int b = 0; b < n_sets; ++b)
    for (int b2 = b + 1; b2 < n_sets; ++b2)
      for (int j = 0; j < labels; ++j)
        for (int j2 = 0; j2 < labels; ++j2) {
          const MuReport rep = are_bases_mu(
              assignment.choice[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)],
              assignment.choice[static_cast<std::size_t>(b2)][static_cast<std::size_t>(j2)],
              tol);
          if (!rep.pass)
            throw std::invalid_argument(
                "assemble_corollary_set: assignment violates the cross-set "
                "MU condition (deviation " +
                std::to_string(rep.max_deviation) + ")");
        }

  // Small-block eigenbases: tensor powers of the complete set in C^p.
  const auto single = (p == 2) ? pauli_triple() : weyl_quadruple_d3();

  MubSet out;
  out.sig = sig;
  out.tol = tol;
  out.provenance = "corollary assembly, p=" + std::to_string(p) +
                   ", block=" + std::to_string(k);
  for (int b = 0; b < n_sets; ++b) {
    ProductBasis block =
        tensor_power_basis(single[static_cast<std::size_t>(b)], k);
    ProductBasis full;
    full.sig = sig;
    for (int j = 0; j < labels; ++j) {
      const ProductBasis& g =
          assignment.choice[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)];
      for (const ProductKet& gv : g.vectors) {
        ProductKet v;
        v.factors = block.vectors[static_cast<std::size_t>(j)].factors;
        for (const Ket& f : gv.factors) v.factors.push_back(f);
        full.vectors.push_back(std::move(v));
      }
    }
    std::vector<Ket> flat;
    for (const ProductKet& v : full.vectors) flat.push_back(flatten(v));
    if (!validate_orthonormal(flat, tol).pass)
      throw std::invalid_argument(
          "assemble_corollary_set: assembled basis is not orthonormal");
    out.bases.push_back(std::move(full));
  }

  for (int b = 0; b < n_sets; ++b)
    for (int b2 = b + 1; b2 < n_sets; ++b2)
      if (!are_bases_mu(out.bases[static_cast<std::size_t>(b)],
                        out.bases[static_cast<std::size_t>(b2)], tol)
               .pass)
        throw std::invalid_argument(
            "assemble_corollary_set: assembled bases are not pairwise MU");
  return out;
}

ProductBasis standard_product_basis(const DimensionSignature& sig) {
  ProductBasis b;
  b.sig = sig;
  for_each_tuple(sig.dims, [&](const std::vector<int>& idx) {
    ProductKet v;
    for (int r = 0; r < sig.n(); ++r)
      v.factors.push_back(Ket::basis_state(sig.dims[static_cast<std::size_t>(r)],
                                           idx[static_cast<std::size_t>(r)]));
    b.vectors.push_back(std::move(v));
  });
  return b;
}

ProductBasis indirect_d4_basis() {
  const Ket zero = Ket::basis_state(2, 0);
  const Ket one = Ket::basis_state(2, 1);
  const Ket plus = make_ket({kInvSqrt2, kInvSqrt2});
  const Ket minus = make_ket({kInvSqrt2, -kInvSqrt2});
  ProductBasis b;
  b.sig = DimensionSignature({2, 2});
  b.vectors = {ProductKet({zero, zero}), ProductKet({zero, one}),
               ProductKet({one, plus}), ProductKet({one, minus})};
  return b;
}

ProductBasis domino_basis_3x3() {
  const Ket k0 = Ket::basis_state(3, 0);
  const Ket k1 = Ket::basis_state(3, 1);
  const Ket k2 = Ket::basis_state(3, 2);
  const Ket p01 = make_ket({kInvSqrt2, kInvSqrt2, 0.0});
  const Ket m01 = make_ket({kInvSqrt2, -kInvSqrt2, 0.0});
  const Ket p12 = make_ket({0.0, kInvSqrt2, kInvSqrt2});
  const Ket m12 = make_ket({0.0, kInvSqrt2, -kInvSqrt2});
  ProductBasis b;
  b.sig = DimensionSignature({3, 3});
  b.vectors = {ProductKet({k1, k1}),  ProductKet({k0, p01}),
               ProductKet({k0, m01}), ProductKet({k2, p12}),
               ProductKet({k2, m12}), ProductKet({p01, k2}),
               ProductKet({m01, k2}), ProductKet({p12, k0}),
               ProductKet({m12, k0})};
  return b;
}

namespace {

ProductBasis as_unipartite_basis(const std::vector<Ket>& basis) {
  ProductBasis b;
  b.sig = DimensionSignature({basis[0].dim()});
  for (const Ket& v : basis) b.vectors.push_back(ProductKet({v}));
  return b;
}

// Constant-per-set or per-label assignments over a pool of C^m bases.
BasisAssignment assignment_from_indices(
    const std::vector<std::vector<Ket>>& pool,
    const std::vector<std::vector<int>>& idx) {
  BasisAssignment a;
  for (const auto& row : idx) {
    std::vector<ProductBasis> per_b;
    for (int i : row)
      per_b.push_back(as_unipartite_basis(pool[static_cast<std::size_t>(i)]));
    a.choice.push_back(std::move(per_b));
  }
  return a;
}

}  // namespace

MubSet direct_triple_2x3() {
  const auto quad = weyl_quadruple_d3();
  BasisAssignment a =
      assignment_from_indices(quad, {{0, 0}, {1, 1}, {2, 2}});
  MubSet s = assemble_corollary_set(DimensionSignature({2, 3}), 2, 1, a);
  s.provenance = "direct MU product triple in 2x3";
  return s;
}

MubSet two_five_triple_direct() {
  const auto pool = complete_set_prime(5);
  BasisAssignment a =
      assignment_from_indices(pool, {{0, 0}, {1, 1}, {2, 2}});
  MubSet s = assemble_corollary_set(DimensionSignature({2, 5}), 2, 1, a);
  s.provenance = "direct MU product triple in 2x5";
  return s;
}

MubSet two_five_triple_indirect() {
  const auto pool = complete_set_prime(5);
  BasisAssignment a =
      assignment_from_indices(pool, {{0, 1}, {2, 3}, {4, 5}});
  MubSet s = assemble_corollary_set(DimensionSignature({2, 5}), 2, 1, a);
  s.provenance = "indirect MU product triple in 2x5 (all six bases distinct)";
  return s;
}

MubSet as_unipartite_set(const std::vector<std::vector<Ket>>& bases,
                         std::string provenance) {
  MubSet s;
  s.sig = DimensionSignature({bases.at(0)[0].dim()});
  for (const auto& b : bases) s.bases.push_back(as_unipartite_basis(b));
  s.provenance = std::move(provenance);
  return s;
}

}  // namespace mub
