#pragma once

#include "spencer/super_poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spencer {

enum class Family {
    HO,
    SHO_PRIME,
    SHO,
    HO_HAT,
    SHO_PRIME_HAT,
    SHO_HAT,
    KO,
    SKO_PRIME,
    SKO,
    HAM,
    SHO_PLUS_PHI,
    SHO_PRIME_PLUS_PHI,
    SHO_HAT_PLUS_PHI,
    SHO_PRIME_HAT_PLUS_PHI,
};

std::string family_name(Family f);

struct AlgebraSpec {
    Family family = Family::HO;
    int n = 0;              // odd-variable rank (HAM: sp rank)
    int m = 0;              // HAM only: number of odd variables
    Rational beta{0};       // SKO families only

    bool parity_reversed() const { return family != Family::HAM; }
    bool is_hat() const;
    bool is_contact() const;       // KO/SKO families (tau present)
    bool is_sho_like() const;      // any SHO/SHO' variant
    bool contains_constants() const; // constant monomial is an element
    int depth() const;
    VariableSet vars() const;

    // "SHO'(3,3)", "^SHO(2,2)", "SKO(3,4;5/3)", "H(2,3)", "SHO+Phi(3,3)", ...
    static AlgebraSpec parse(const std::string& text);
    std::string str() const;
};

// A cached graded basis of one degree, in reduced-echelon form over the
// monomial slice: each vector owns a distinguished monomial with unit
// coefficient that occurs in no other basis vector.
struct DegreeBasis {
    std::vector<SuperPolynomial> vectors;
    std::vector<SuperMonomial> free_monomials;
    std::size_t dim() const { return vectors.size(); }
};

class GradedAlgebra {
public:
    explicit GradedAlgebra(const AlgebraSpec& spec, int degree_cap = 24);

    const AlgebraSpec& spec() const { return spec_; }
    const VariableSet& vars() const { return vs_; }
    int depth() const { return spec_.depth(); }
    int degree_cap() const { return cap_; }

    // Lie degree of a weight-homogeneous element: Lambda weight - 2.
    int lie_degree(const SuperPolynomial& f) const;
    int lie_parity(const SuperMonomial& m) const;
    // -1 for zero or mixed parity.
    int lie_parity(const SuperPolynomial& f) const;

    const DegreeBasis& component(int j) const; // graded_component

    // Coordinates of f in component(j); nullopt if f does not lie in it.
    std::optional<std::vector<Rational>> coordinates(int j, const SuperPolynomial& f) const;
    bool contains(const SuperPolynomial& f) const; // graded pieces all members

    // Family Lie bracket, with the quotient-by-constants applied where the
    // family requires it. Hat-family central coefficient = constant term.
    SuperPolynomial bracket(const SuperPolynomial& a, const SuperPolynomial& b) const;

    // Basis of g cap (C[x] tensor Lambda_j), weights up to weight_cap.
    std::vector<SuperPolynomial> odd_degree_component(int j, int weight_cap) const;

    SuperPolynomial phi() const;           // sum x_i xi_i
    SuperPolynomial tau_beta_phi() const;  // tau + beta*Phi (SKO/KO)

private:
    AlgebraSpec spec_;
    VariableSet vs_;
    int cap_;
    mutable std::map<int, DegreeBasis> bases_;

    DegreeBasis build_component(int j) const;
};

// Raw brackets on Lambda; p(f) is the Lambda-parity of each term of f.
SuperPolynomial buttin_bracket(const SuperPolynomial& f, const SuperPolynomial& g);
SuperPolynomial contact_bracket(const SuperPolynomial& f, const SuperPolynomial& g);
SuperPolynomial poisson_bracket(const SuperPolynomial& f, const SuperPolynomial& g);

// The image of f in W(n,n) as summands (coefficient, variable name).
std::vector<std::pair<SuperPolynomial, std::string>> to_vector_field(const SuperPolynomial& f);

// Commutator of two vector fields given as summand lists (for cross-checks).
std::vector<std::pair<SuperPolynomial, std::string>> vf_commutator(
    const VariableSet& vs,
    const std::vector<std::pair<SuperPolynomial, std::string>>& a,
    const std::vector<std::pair<SuperPolynomial, std::string>>& b);

// Monomials of the given Lambda weight in canonical order.
std::vector<SuperMonomial> monomials_of_weight(const VariableSet& vs, int w);

} // namespace spencer
