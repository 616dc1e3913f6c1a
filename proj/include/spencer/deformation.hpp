#pragma once

#include "spencer/cochain.hpp"

#include <memory>
#include <string>
#include <vector>

namespace spencer {

enum class DeformVariant {
    SHO_HAT_EPS,   // mu_n(f,g) = [xi_1..xi_n, fg] on hat SHO / hat SHO'
    SHO_PRIME_EPS, // the induced bracket on SHO'(n,n)
    SKO_EPS,       // mu_{n+2}(f,g) = [tau xi_1..xi_n, fg] + 2 fg xi_1..xi_n
};

std::string variant_name(DeformVariant v);
DeformVariant parse_variant(const std::string& s); // names or "5.1"/"5.9"/"5.10"

struct JacobiReport {
    std::size_t checked_triples = 0;
    struct Violation {
        std::string h, f, g;
        std::string residual;
    };
    std::vector<Violation> violations; // capped listing
    std::size_t violation_count = 0;
    bool passed() const { return violation_count == 0; }
};

struct CocycleCheck {
    bool is_2cocycle = false;
    bool a_invariant = false;
    bool even = false;
    bool class_nontrivial = false;
};

class Deformation {
public:
    // base is consulted only for SHO_HAT_EPS (hat SHO vs hat SHO').
    Deformation(DeformVariant variant, int n, Family base = Family::SHO_HAT);

    const GradedAlgebra& algebra() const { return *A_; }
    DeformVariant variant() const { return variant_; }
    int mu_degree() const;

    // The degree-raising term; bilinear, zero outside the defining clause.
    SuperPolynomial mu(const SuperPolynomial& f, const SuperPolynomial& g) const;
    // Deformed bracket at epsilon = 1.
    SuperPolynomial bracket_eps(const SuperPolynomial& f, const SuperPolynomial& g) const;

    JacobiReport jacobi_verify(int cap) const;
    CocycleCheck cocycle_and_invariance_check() const;

    // mu restricted to g_- x g_- as a 2-cochain of degree mu_degree().
    Cochain mu_cochain() const;

private:
    DeformVariant variant_;
    int n_;
    std::unique_ptr<GradedAlgebra> A_;

    SuperPolynomial scalar_free_part(const SuperPolynomial& f) const; // xi-,tau-free part
};

// rho: hat SHO(n,n)_eps -> SHO'(n,n)_eps, identity on polynomials and
// 1 -> xi_1..xi_n, checked to intertwine the deformed brackets.
bool rho_check(int n, int cap);

// 1 - xi_1..xi_n is central in hat SHO'(n,n)_eps.
bool central_shift_check(int n, int cap);

} // namespace spencer
