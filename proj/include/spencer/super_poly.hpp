#pragma once

#include "spencer/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace spencer {

// Variable layout of a polynomial Grassmann algebra C[even vars] (x) Lambda(odd vars),
// optionally with the extra odd variable tau of weight 2. Two naming shapes:
//   XXi : even x1..xm, odd xi1..xin (+ tau)
//   PQXi: even p1..pn,q1..qn, odd xi1..xim  (Hamiltonian layout)
class VariableSet {
public:
    enum class Shape { XXi, PQXi };

    VariableSet() : shape_(Shape::XXi), n_even_(0), n_odd_(0), tau_(false) {}
    VariableSet(Shape shape, int n_even, int n_odd, bool has_tau);

    Shape shape() const { return shape_; }
    int even_count() const { return n_even_; }
    int odd_count() const { return n_odd_; }
    bool has_tau() const { return tau_; }

    std::string even_name(int i) const;
    std::string odd_name(int i) const;

    // -1 if the name is not a variable of this set; tau reported via is_tau.
    bool lookup(const std::string& name, bool& is_even, bool& is_tau, int& index) const;

    bool operator==(const VariableSet& o) const
    {
        return shape_ == o.shape_ && n_even_ == o.n_even_ && n_odd_ == o.n_odd_ && tau_ == o.tau_;
    }
    bool operator!=(const VariableSet& o) const { return !(*this == o); }

private:
    Shape shape_;
    int n_even_, n_odd_;
    bool tau_;
};

// One basis word, packed into a single 64-bit key so that the canonical
// graded-lexicographic order is one integer comparison. Layout (low to
// high): tau bit [0], odd mask [1,10), even exponents [10,58) with 6 bits
// per variable and variable 0 in the highest field, total weight [58,64).
// Canonical odd order is tau < xi1 < xi2 < ...
struct SuperMonomial {
    std::uint64_t bits = 0;

    static constexpr int kMaxEven = 8;
    static constexpr int kMaxOdd = 9;
    static constexpr unsigned kMaxExponent = 63;
    static constexpr std::uint64_t kExpFlip = ((std::uint64_t(1) << 48) - 1) << 10;

    static SuperMonomial one() { return SuperMonomial{}; }

    static constexpr int exp_shift(int i) { return 10 + 6 * (kMaxEven - 1 - i); }

    unsigned exponent(int i) const { return (bits >> exp_shift(i)) & 0x3f; }
    void set_exponent(int i, unsigned e);
    std::uint32_t odd_mask() const { return (bits >> 1) & 0x1ff; }
    void set_odd_mask(std::uint32_t m);
    bool tau() const { return bits & 1; }
    void set_tau(bool t);

    bool has_odd(int i) const { return (odd_mask() >> i) & 1; }

    int weight() const { return static_cast<int>(bits >> 58); }
    int even_degree(const VariableSet& vs) const;
    int odd_degree() const;                  // number of xi factors (tau not counted)
    int weight(const VariableSet&) const { return weight(); }
    int lambda_parity() const;               // (odd_degree + tau) mod 2

    bool is_constant() const { return bits == 0; }

    bool operator==(const SuperMonomial& o) const { return bits == o.bits; }
    bool operator!=(const SuperMonomial& o) const { return bits != o.bits; }
};

// Graded lexicographic order: (total weight, even exponents x1-major
// descending, odd mask, tau bit); a single masked integer comparison.
struct MonomialLess {
    VariableSet vs; // layout tag only; the order is intrinsic to the key
    bool operator()(const SuperMonomial& a, const SuperMonomial& b) const
    {
        return (a.bits ^ SuperMonomial::kExpFlip) < (b.bits ^ SuperMonomial::kExpFlip);
    }
};

// Sparse exact-coefficient element of Lambda(m,n); no zero terms stored.
class SuperPolynomial {
public:
    SuperPolynomial() = default;
    explicit SuperPolynomial(const VariableSet& vs) : vs_(vs), terms_(MonomialLess{vs}) {}

    const VariableSet& vars() const { return vs_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    using TermMap = std::map<SuperMonomial, Rational, MonomialLess>;
    const TermMap& terms() const { return terms_; }

    Rational coeff(const SuperMonomial& m) const;
    Rational constant_term() const { return coeff(SuperMonomial::one()); }
    void add_term(const SuperMonomial& m, const Rational& c);

    SuperPolynomial& operator+=(const SuperPolynomial& g);
    SuperPolynomial& operator-=(const SuperPolynomial& g);
    SuperPolynomial& operator*=(const Rational& c);

    friend SuperPolynomial operator+(SuperPolynomial f, const SuperPolynomial& g) { return f += g; }
    friend SuperPolynomial operator-(SuperPolynomial f, const SuperPolynomial& g) { return f -= g; }
    friend SuperPolynomial operator*(SuperPolynomial f, const Rational& c) { return f *= c; }
    friend SuperPolynomial operator*(const Rational& c, SuperPolynomial f) { return f *= c; }
    friend SuperPolynomial operator-(SuperPolynomial f) { return f *= Rational(-1); }

    bool operator==(const SuperPolynomial& g) const;
    bool operator!=(const SuperPolynomial& g) const { return !(*this == g); }

    // -1 for zero/mixed, else 0/1. All operators here preserve homogeneity.
    int lambda_parity() const;
    bool weight_homogeneous(int* weight_out = nullptr) const;

private:
    VariableSet vs_;
    TermMap terms_{MonomialLess{}};
};

// Monomial and polynomial construction helpers.
SuperPolynomial make_monomial(const VariableSet& vs, const SuperMonomial& m,
                              const Rational& c = Rational(1));
SuperPolynomial make_even(const VariableSet& vs, int i, unsigned power = 1);   // x_i^power
SuperPolynomial make_odd(const VariableSet& vs, int i);                        // xi_i
SuperPolynomial make_tau(const VariableSet& vs);
SuperPolynomial make_const(const VariableSet& vs, const Rational& c);

// Associative supercommutative product; odd variables square to zero.
SuperPolynomial multiply(const SuperPolynomial& f, const SuperPolynomial& g);

// Left (super-)derivations.
SuperPolynomial partial_even(const SuperPolynomial& f, int i);
SuperPolynomial partial_odd(const SuperPolynomial& f, int i);
SuperPolynomial partial_tau(const SuperPolynomial& f);
SuperPolynomial partial(const SuperPolynomial& f, const std::string& var_name);

// E f = sum_i x_i df/dx_i + sum_i xi_i df/dxi_i; tau is not counted.
SuperPolynomial euler(const SuperPolynomial& f);

// Delta = sum_i d^2/(dx_i dxi_i); requires equally many x's and xi's.
SuperPolynomial odd_laplacian(const SuperPolynomial& f);

// div_beta f = 2 (-1)^{p(f)} (Delta f + (E - n*beta) df/dtau), termwise in f.
SuperPolynomial divergence_beta(const SuperPolynomial& f, const Rational& beta);

// Divergence of a vector field given as summands (coefficient, variable name).
SuperPolynomial vf_divergence(const VariableSet& vs,
                              const std::vector<std::pair<SuperPolynomial, std::string>>& field);

// Signed monomial xi_i^* with xi_i * xi_i^* = xi_1 ... xi_n. Index is 0-based.
SuperPolynomial hodge_dual(const VariableSet& vs, int i);

// Product xi_1 xi_2 ... xi_n (and tau * xi_1 ... xi_n).
SuperPolynomial full_odd_monomial(const VariableSet& vs);
SuperPolynomial tau_full_odd_monomial(const VariableSet& vs);

// Text form, e.g. "x1^2*xi1*xi3", "tau*xi2", "-2/3*x1 + xi2".
std::string render(const VariableSet& vs, const SuperMonomial& m);
std::string render(const SuperPolynomial& f);
SuperPolynomial parse_poly(const VariableSet& vs, const std::string& text);

} // namespace spencer
