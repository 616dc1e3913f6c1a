#include "spencer/named_cochains.hpp"

#include <stdexcept>

namespace spencer {
namespace named {

namespace {

struct DualRef {
    bool is_even;
    int index;
};

DualRef find_dual(const CochainSpace& S, const SuperPolynomial& a)
{
    const GMinus& gm = S.gminus();
    for (std::size_t i = 0; i < gm.evens.size(); ++i)
        if (gm.evens[i].value == a)
            return {true, static_cast<int>(i)};
    for (std::size_t i = 0; i < gm.odds.size(); ++i)
        if (gm.odds[i].value == a)
            return {false, static_cast<int>(i)};
    throw std::invalid_argument("find_dual: not a g_- basis element: " + render(a));
}

void add_word(Cochain& c, std::vector<int> evens, std::vector<int> odds, const Rational& coeff,
              const SuperPolynomial& target)
{
    const CochainSpace& S = *c.space;
    const GradedAlgebra& A = S.algebra();
    int w = S.word_index(evens, odds);
    if (w < 0)
        throw std::invalid_argument("add_word: no such word in this cochain space");
    const auto& info = S.words()[w];
    auto co = A.coordinates(info.target_degree, target);
    if (!co)
        throw std::invalid_argument("add_word: target not in the algebra");
    for (std::size_t t = 0; t < info.target_dim; ++t)
        c.coef[info.offset + t] += coeff * (*co)[t];
}

} // namespace

void add_dual_pair(Cochain& c, const SuperPolynomial& a, const SuperPolynomial& b,
                   const Rational& coeff, const SuperPolynomial& target)
{
    const CochainSpace& S = *c.space;
    DualRef ra = find_dual(S, a), rb = find_dual(S, b);
    if (ra.is_even && rb.is_even) {
        if (ra.index == rb.index)
            return; // even duals square to zero
        Rational cf = coeff;
        int i = ra.index, j = rb.index;
        if (i > j) {
            std::swap(i, j);
            cf = -cf;
        }
        add_word(c, {i, j}, {}, cf, target);
    } else if (!ra.is_even && !rb.is_even) {
        int i = std::min(ra.index, rb.index), j = std::max(ra.index, rb.index);
        Rational cf = coeff * (i == j ? Rational(1) : rat(1, 2));
        add_word(c, {}, {i, j}, cf, target);
    } else {
        int e = ra.is_even ? ra.index : rb.index;
        int o = ra.is_even ? rb.index : ra.index;
        add_word(c, {e}, {o}, coeff, target);
    }
}

void add_dual_single(Cochain& c, const SuperPolynomial& a, const Rational& coeff,
                     const SuperPolynomial& target)
{
    DualRef ra = find_dual(*c.space, a);
    if (ra.is_even)
        add_word(c, {ra.index}, {}, coeff, target);
    else
        add_word(c, {}, {ra.index}, coeff, target);
}

Cochain sho22_c1(const GradedAlgebra& A)
{
    const VariableSet& vs = A.vars();
    Cochain c(make_cochain_space(A, 2, 2));
    auto x1 = make_even(vs, 0), x2 = make_even(vs, 1);
    auto P = [&](const char* s) { return parse_poly(vs, s); };
    add_dual_pair(c, x1, x2, Rational(1), P("x1*xi1 - x2*xi2"));
    add_dual_pair(c, x1, x1, Rational(-1), P("x1*xi2"));
    add_dual_pair(c, x2, x2, Rational(1), P("x2*xi1"));
    return c;
}

Cochain sho22_c2(const GradedAlgebra& A)
{
    const VariableSet& vs = A.vars();
    Cochain c(make_cochain_space(A, 2, 2));
    auto x1 = make_even(vs, 0), x2 = make_even(vs, 1);
    auto xi1 = make_odd(vs, 0), xi2 = make_odd(vs, 1);
    auto P = [&](const char* s) { return parse_poly(vs, s); };
    add_dual_pair(c, x1, xi1, Rational(1), P("x1*x2"));
    add_dual_pair(c, x2, xi2, Rational(-1), P("x1*x2"));
    add_dual_pair(c, x1, xi2, Rational(-1), P("x1^2"));
    add_dual_pair(c, x2, xi1, Rational(1), P("x2^2"));
    return c;
}

Cochain sho22_c3(const GradedAlgebra& A)
{
    const VariableSet& vs = A.vars();
    Cochain c(make_cochain_space(A, 2, 2));
    auto x1 = make_even(vs, 0), x2 = make_even(vs, 1);
    auto xi1 = make_odd(vs, 0), xi2 = make_odd(vs, 1);
    auto P = [&](const char* s) { return parse_poly(vs, s); };
    // calibrated so that c1 - 2 c3 is the Spencer cocycle in span{c1,c2,c3}
    add_dual_pair(c, x1, xi1, rat(-1, 4), P("xi1*xi2"));
    add_dual_pair(c, x2, xi2, rat(-1, 4), P("xi1*xi2"));
    return c;
}

Cochain ho_c1_g2(const GradedAlgebra& A)
{
    const VariableSet& vs = A.vars();
    int n = vs.even_count();
    Cochain c(make_cochain_space(A, 2, 4)); // targets in g_2
    SuperPolynomial phi = A.phi();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SuperPolynomial target =
                multiply(multiply(make_even(vs, i), make_even(vs, j)), phi);
            add_dual_pair(c, make_even(vs, i), make_even(vs, j), Rational(1), target);
        }
    return c;
}

Cochain hat_c1(const GradedAlgebra& A)
{
    const VariableSet& vs = A.vars();
    int n = vs.even_count();
    Cochain c(make_cochain_space(A, 2, n));
    // the (i,j) and (j,i) targets are combined so each word's target is
    // trace-free and hence lies in the algebra
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            SuperPolynomial target = multiply(make_even(vs, i), hodge_dual(vs, j));
            if (j != i)
                target += multiply(make_even(vs, j), hodge_dual(vs, i));
            add_dual_pair(c, make_even(vs, i), make_even(vs, j), Rational(1), target);
        }
    return c;
}

Cochain hat_c2(const GradedAlgebra& A)
{
    const VariableSet& vs = A.vars();
    int n = vs.even_count();
    Cochain c(make_cochain_space(A, 2, n));
    SuperPolynomial top = full_odd_monomial(vs);
    // calibrated so that c1 + c2 is a Spencer cocycle for hat SHO'(n,n)
    for (int i = 0; i < n; ++i)
        add_dual_pair(c, make_even(vs, i), make_odd(vs, i), rat(-1, 2), top);
    return c;
}

Cochain hat_c3(const GradedAlgebra& A)
{
    const VariableSet& vs = A.vars();
    int n = vs.even_count();
    Cochain c(make_cochain_space(A, 2, n));
    SuperPolynomial one = make_const(vs, 1);
    for (int i = 0; i < n; ++i)
        add_dual_pair(c, one, make_even(vs, i), Rational(1), hodge_dual(vs, i));
    return c;
}

Cochain hat_b(const GradedAlgebra& A)
{
    const VariableSet& vs = A.vars();
    Cochain b(make_cochain_space(A, 1, vs.even_count()));
    add_dual_single(b, make_const(vs, 1), Rational(1), full_odd_monomial(vs));
    return b;
}

Cochain ham_c0(const GradedAlgebra& A)
{
    const VariableSet& vs = A.vars();
    int n = vs.even_count() / 2, m = vs.odd_count();
    Cochain c(make_cochain_space(A, 2, 2));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            add_dual_pair(c, make_even(vs, i), make_odd(vs, j), Rational(1),
                          multiply(make_even(vs, i), make_odd(vs, j)));
            add_dual_pair(c, make_even(vs, n + i), make_odd(vs, j), Rational(1),
                          multiply(make_even(vs, n + i), make_odd(vs, j)));
        }
    return c;
}

Cochain ham_c1(const GradedAlgebra& A)
{
    const VariableSet& vs = A.vars();
    int n = vs.even_count() / 2, m = vs.odd_count();
    Cochain c(make_cochain_space(A, 2, m));
    SuperPolynomial top = full_odd_monomial(vs);
    for (int i = 0; i < n; ++i)
        add_dual_pair(c, make_even(vs, i), make_even(vs, n + i), Rational(1), top);
    return c;
}

Cochain ham_c2(const GradedAlgebra& A)
{
    const VariableSet& vs = A.vars();
    int m = vs.odd_count();
    Cochain c(make_cochain_space(A, 2, m));
    SuperPolynomial top = full_odd_monomial(vs);
    for (int i = 0; i < m; ++i)
        add_dual_pair(c, make_odd(vs, i), make_odd(vs, i), Rational(1), top);
    return c;
}

Cochain ham_c3(const GradedAlgebra& A)
{
    const VariableSet& vs = A.vars();
    int n = vs.even_count() / 2, m = vs.odd_count();
    Cochain c(make_cochain_space(A, 2, m));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            add_dual_pair(c, make_even(vs, i), make_odd(vs, j), Rational(1),
                          multiply(make_even(vs, i), hodge_dual(vs, j)));
            add_dual_pair(c, make_even(vs, n + i), make_odd(vs, j), Rational(1),
                          multiply(make_even(vs, n + i), hodge_dual(vs, j)));
        }
    return c;
}

Cochain ham_b(const GradedAlgebra& A)
{
    const VariableSet& vs = A.vars();
    int n = vs.even_count() / 2, m = vs.odd_count();
    Cochain b(make_cochain_space(A, 1, m)); // db lands in Lambda^2 (x) g_{m-2}
    SuperPolynomial top = full_odd_monomial(vs);
    for (int i = 0; i < n; ++i) {
        add_dual_single(b, make_even(vs, i), Rational(1), multiply(make_even(vs, i), top));
        add_dual_single(b, make_even(vs, n + i), Rational(1),
                        multiply(make_even(vs, n + i), top));
    }
    return b;
}

std::vector<Cochain> sko_deg4(const GradedAlgebra& A)
{
    const VariableSet& vs = A.vars();
    int n = vs.even_count();
    Rational beta = A.spec().beta;
    auto tau_c_phi = [&](const Rational& num, const Rational& den) {
        return make_tau(vs) + (num / den) * A.phi();
    };
    Rational bn = Rational(n) * beta;

    std::vector<Cochain> cs;
    auto fresh = [&] { return Cochain(make_cochain_space(A, 2, 4)); };

    Cochain c1 = fresh();
    {
        SuperPolynomial t0 = tau_c_phi(bn - 2, Rational(n + 2));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                add_dual_pair(c1, make_even(vs, i), make_even(vs, j), Rational(1),
                              multiply(multiply(make_even(vs, i), make_even(vs, j)), t0));
    }
    cs.push_back(std::move(c1));

    Cochain c2 = fresh();
    {
        // the traceless projector: f_i theta_j (x) (x_i xi_j - delta_ij Phi/n) t0
        SuperPolynomial t0 = tau_c_phi(bn - 2, Rational(n));
        SuperPolynomial phi_over_n = rat(1, n) * A.phi();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                SuperPolynomial target = multiply(make_even(vs, i), make_odd(vs, j));
                if (i == j)
                    target -= phi_over_n;
                add_dual_pair(c2, make_even(vs, i), make_odd(vs, j), Rational(1),
                              multiply(target, t0));
            }
    }
    cs.push_back(std::move(c2));

    Cochain c3 = fresh();
    {
        SuperPolynomial t0 = tau_c_phi(bn - 2, Rational(n - 2));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                add_dual_pair(c3, make_odd(vs, i), make_odd(vs, j), Rational(1),
                              multiply(multiply(make_odd(vs, i), make_odd(vs, j)), t0));
    }
    cs.push_back(std::move(c3));

    SuperPolynomial one = make_const(vs, 1);
    Cochain c4 = fresh();
    {
        SuperPolynomial t0 = tau_c_phi(bn - 1, Rational(n + 1));
        for (int i = 0; i < n; ++i)
            add_dual_pair(c4, one, make_even(vs, i), Rational(1),
                          multiply(make_even(vs, i), t0));
    }
    cs.push_back(std::move(c4));

    Cochain c5 = fresh();
    {
        SuperPolynomial t0 = tau_c_phi(bn - 1, Rational(n - 1));
        for (int i = 0; i < n; ++i)
            add_dual_pair(c5, one, make_odd(vs, i), Rational(1),
                          multiply(make_odd(vs, i), t0));
    }
    cs.push_back(std::move(c5));

    Cochain c6 = fresh();
    add_dual_pair(c6, one, one, Rational(1), A.tau_beta_phi());
    cs.push_back(std::move(c6));

    return cs;
}

} // namespace named
} // namespace spencer
