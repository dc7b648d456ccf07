// Factories for canonical objects: Pauli eigenbases of C², the d=3
// Heisenberg-Weyl quadruple, Weyl shift/phase operators, complete MU sets
// in prime dimensions, the maximal product-set assemblies, and the fixture
// bases used throughout the test corpus.
#pragma once

#include "mub/linalg.hpp"
#include "mub/types.hpp"

namespace mub {

// ω_p^power = exp(2πi·power/p).
Complex root_of_unity(int p, int power);

// Heisenberg-Weyl pair in C^p with Z|l⟩ = ω^l|l⟩, X|l⟩ = |l+1 mod p⟩,
// so that ZX = ω·XZ; plus the products XZ and XZ².
struct WeylOps {
  int p = 0;
  Complex omega;
  CMatrix z, x, xz, xz2;
};

WeylOps weyl_ops(int p);

// True iff every basis column satisfies ‖op·v − ⟨v|op|v⟩·v‖ ≤ tol.
bool is_eigenbasis(const CMatrix& op, const std::vector<Ket>& basis,
                   double tol = kSelfCheckTol);

// The unique MU triple of C²: eigenbases of σ_z, σ_x, σ_y.
std::vector<std::vector<Ket>> pauli_triple();

// The unique MU quadruple of C³ (normalized columns of the four standard
// matrices, in their conventional printed order).
std::vector<std::vector<Ket>> weyl_quadruple_d3();

// Complete set of p+1 MU bases of C^p for an odd prime p: the standard
// basis followed by the eigenbases of X·Z^k, k = 0…p−1, with columns
// ordered by eigenvalue ω^0, ω^1, …, ω^{p−1}.
std::vector<std::vector<Ket>> complete_set_prime(int p);

// B_0 = z⊗…⊗z, B_1 = x⊗…⊗x, B_2 = y⊗…⊗y eigenstates for n qubits (d = 2^n).
MubSet canonical_qubit_triple(int n);

// Four tensor-power bases for n qutrits (d = 3^n).
MubSet canonical_qutrit_quadruple(int n);

// Choice of a complement basis G(j_b) for every small-block eigenstate
// label: choice[b][j] is an orthonormal product basis of the complement.
struct BasisAssignment {
  std::vector<std::vector<ProductBasis>> choice;
};

// Builds the (p+1) product bases {|j_b⟩ ⊗ G(j_b)} for a signature whose
// first k subsystems have dimension p ∈ {2,3}. Validates that each G is
// orthonormal and that the p+1 cross-sets are mutually unbiased (bases
// within one set are not required to be MU). Throws on violations.
MubSet assemble_corollary_set(const DimensionSignature& sig, int p, int k,
                              const BasisAssignment& assignment,
                              double tol = kDefaultTol);

// --- fixtures ---------------------------------------------------------------

ProductBasis standard_product_basis(const DimensionSignature& sig);

// {|0,0⟩, |0,1⟩, |1,+⟩, |1,−⟩}: the smallest indirect product basis.
ProductBasis indirect_d4_basis();

// The 3×3 domino basis: an indirect product basis outside the semi-direct
// family (both subsystems host three distinct factor bases).
ProductBasis domino_basis_3x3();

// Direct MU product triple in 2×3 assembled from Pauli pairs and three MU
// bases of C³.
MubSet direct_triple_2x3();

// MU product triples in 2×5 from the complete set of six MU bases of C⁵:
// one with G(0_b) = G(1_b) (direct members) and one with all six bases
// distinct (indirect members).
MubSet two_five_triple_direct();
MubSet two_five_triple_indirect();

// Wrap plain C^d bases into a unipartite MubSet (convenience for tests/CLI).
MubSet as_unipartite_set(const std::vector<std::vector<Ket>>& bases,
                         std::string provenance);

}  // namespace mub
