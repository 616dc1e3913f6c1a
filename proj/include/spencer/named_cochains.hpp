#pragma once

#include "spencer/cochain.hpp"

namespace spencer {
namespace named {

// Invariant 2-cochains built from products of coordinate duals of g_-.
// Products translate into the evaluation basis (words evaluate to 1 on their
// own canonical argument tuple) by: distinct pairs of odd duals carry 1/2,
// squares of odd duals carry 1, even-dual pairs are det-normalized, and
// mixed even/odd pairs carry 1. The combinations below are calibrated so
// that the standard cocycle identities hold exactly.

// Appends coeff * (dual a)(dual b) (x) target to c; a, b are g_- basis elements.
void add_dual_pair(Cochain& c, const SuperPolynomial& a, const SuperPolynomial& b,
                   const Rational& coeff, const SuperPolynomial& target);
// Appends coeff * (dual a) (x) target to a 1-cochain.
void add_dual_single(Cochain& c, const SuperPolynomial& a, const Rational& coeff,
                     const SuperPolynomial& target);

// SHO'(2,2), degree 2: span of the even sl_2-invariant 2-cochains.
Cochain sho22_c1(const GradedAlgebra& A);
Cochain sho22_c2(const GradedAlgebra& A);
Cochain sho22_c3(const GradedAlgebra& A);

// HO(n,n): the ff-type invariant with targets x_i x_j Phi in g_2.
Cochain ho_c1_g2(const GradedAlgebra& A);

// hat SHO(n,n) / hat SHO'(n,n), degree n.
Cochain hat_c1(const GradedAlgebra& A); // sum f_i f_j (x) x_i xi_j^*
Cochain hat_c2(const GradedAlgebra& A); // sum f_i theta_i (x) xi_1..xi_n (hat SHO' only)
Cochain hat_c3(const GradedAlgebra& A); // sum 1^* f_i (x) xi_i^*
Cochain hat_b(const GradedAlgebra& A);  // 1-cochain: b(1) = xi_1..xi_n, b(g_{-1}) = 0

// H(2n,m), degrees 2 and m-2.
Cochain ham_c0(const GradedAlgebra& A);
Cochain ham_c1(const GradedAlgebra& A);
Cochain ham_c2(const GradedAlgebra& A);
Cochain ham_c3(const GradedAlgebra& A);
Cochain ham_b(const GradedAlgebra& A); // 1-cochain with db in Lambda^2 (x) g_{m-2}

// SKO(n,n+1;beta), degree 4: the six sl_n-invariant cochains.
std::vector<Cochain> sko_deg4(const GradedAlgebra& A);

} // namespace named
} // namespace spencer
