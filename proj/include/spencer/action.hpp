#pragma once

#include "spencer/algebra.hpp"
#include "spencer/sparse_matrix.hpp"

#include <string>
#include <vector>

namespace spencer {

// Generators of the maximal reductive subalgebra a of the even part of g_0,
// with a Cartan/raising/lowering split when a is (an extension of) sl_n.
struct ReductiveActionSpec {
    std::string label;
    std::vector<SuperPolynomial> generators; // every generator, degree 0, Lie-even
    std::vector<SuperPolynomial> cartan;     // ad-diagonal on monomials
    std::vector<SuperPolynomial> raising;
    std::vector<SuperPolynomial> lowering;
    std::vector<SuperPolynomial> center;     // Phi / tau+beta*Phi for gl-type
    bool has_weights = false;                // cartan weights available
};

// The subalgebra the family decomposes under: sl_n, gl_n or sp x so.
ReductiveActionSpec reductive_action(const GradedAlgebra& A);

// Matrix of ad(a) on component(j) in the component basis.
SparseRationalMatrix action_matrix(const GradedAlgebra& A, const SuperPolynomial& a, int j);

// Cartan weight of a weight-homogeneous vector (throws if not an eigenvector).
std::vector<Rational> cartan_weight(const GradedAlgebra& A, const ReductiveActionSpec& act,
                                    const SuperPolynomial& v);

// Basis of the joint kernel of all generators on component(j), in coordinates.
std::vector<std::vector<Rational>> invariant_vectors(const GradedAlgebra& A,
                                                     const ReductiveActionSpec& act, int j);

struct WeightVector {
    std::vector<Rational> weight;
    int parity;
    std::vector<Rational> coords;
};

// Highest weight vectors of component(j): joint kernel of the raising
// operators, refined into Cartan eigenvectors. Requires has_weights.
std::vector<WeightVector> highest_weight_vectors(const GradedAlgebra& A,
                                                 const ReductiveActionSpec& act, int j);

// Dimension of the irreducible sl_n module with highest weight sum k_i pi_i.
unsigned long weyl_dim_sl(const std::vector<Rational>& weight);

using ModuleLabel = std::pair<std::vector<Rational>, int>; // (weight, parity)

// Hom_a(U, V) = 0 for completely reducible U, V described by their highest
// weight labels: true iff no label occurs on both sides.
bool hom_vanishes(const std::vector<ModuleLabel>& U, const std::vector<ModuleLabel>& V);

} // namespace spencer
