// Dense complex kernel for small dimensions: tensor products, inner
// products, partial trace, orthonormality validation, matrix helpers.
//
// Index convention, fixed globally: tensor coordinates are row-major with
// the FIRST factor slowest, i.e. index(i_1,…,i_n) = ((i_1·d_2 + i_2)·d_3 + …).
#pragma once

#include <span>

#include "mub/types.hpp"

namespace mub {

// ⟨a|b⟩ with conjugation on a.
Complex inner(const Ket& a, const Ket& b);

Ket tensor(std::span<const Ket> factors);
Ket tensor(const Ket& a, const Ket& b);

// Flatten |ψ^1⟩⊗…⊗|ψ^n⟩ to a single ket in C^d.
Ket flatten(const ProductKet& v);

// Π_r ⟨a^r|b^r⟩; equals ⟨flatten(a)|flatten(b)⟩ for matching signatures.
Complex product_inner(const ProductKet& a, const ProductKet& b);

// ⟨a^r|b^r⟩ for a single subsystem.
Complex factor_inner(const ProductKet& a, const ProductKet& b, int r);

// tr over the complement of subsystem `keep` of |v⟩⟨v|.
DensityMatrix partial_trace(const Ket& v, const DimensionSignature& sig,
                            int keep);

ValidationReport validate_orthonormal(const std::vector<Ket>& basis,
                                      double tol = kDefaultTol);

// Regroup an n-partite product ket/basis as bipartite (subsystem r, rest).
// The complement factor is the tensor of the remaining factors in their
// original order; signature becomes (d_r, d/d_r).
ProductKet regroup_bipartite(const ProductKet& v, int r);
ProductBasis regroup_bipartite(const ProductBasis& b, int r);

// Multiply by a unit phase so the first coordinate of modulus > 1e-12
// becomes real positive.
Ket canonical_phase(const Ket& v);

// --- matrix helpers -------------------------------------------------------

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& m);
CMatrix conjugate(const CMatrix& m);
Ket apply(const CMatrix& m, const Ket& v);
CMatrix scale(const CMatrix& m, Complex s);
CMatrix add(const CMatrix& a, const CMatrix& b);
Complex trace(const CMatrix& m);
double frobenius_norm(const CMatrix& m);

// max |(M†M)_ij − δ_ij|.
double unitarity_deviation(const CMatrix& m);

// exp(A) for anti-Hermitian A via scaling and squaring of the series.
CMatrix expm_antihermitian(const CMatrix& a);

// Modified Gram-Schmidt on the columns; throws if rank-deficient.
CMatrix orthonormalize_columns(const CMatrix& m);

// --- density-matrix helpers -----------------------------------------------

double hermiticity_deviation(const DensityMatrix& rho);
// ‖ρ − I/d‖_F.
double mixedness_deviation(const DensityMatrix& rho);
// ‖ρ² − ρ‖_F.
double projector_deviation(const DensityMatrix& rho);
// True iff all eigenvalues ≥ −tol (checked via Cholesky of ρ + tol·I).
bool eigenvalues_at_least(const DensityMatrix& rho, double tol);
// ⟨v|ρ|v⟩, real part (Hermitian quadratic form).
double expectation(const DensityMatrix& rho, const Ket& v);

}  // namespace mub
