#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spencer/super_poly.hpp"

#include <random>

using namespace spencer;

namespace {

const VariableSet L22(VariableSet::Shape::XXi, 2, 2, false);
const VariableSet L33(VariableSet::Shape::XXi, 3, 3, false);
const VariableSet K23(VariableSet::Shape::XXi, 2, 2, true); // Lambda(2,3) with tau

SuperPolynomial rand_poly(std::mt19937& rng, const VariableSet& vs, int max_terms = 4)
{
    std::uniform_int_distribution<int> coef(-3, 3), expo(0, 2);
    SuperPolynomial f(vs);
    int terms = 1 + static_cast<int>(rng() % max_terms);
    for (int t = 0; t < terms; ++t) {
        SuperMonomial m;
        for (int i = 0; i < vs.even_count(); ++i)
            m.set_exponent(i, expo(rng));
        m.set_odd_mask(rng() % (1u << vs.odd_count()));
        if (vs.has_tau())
            m.set_tau(rng() % 2);
        int c = coef(rng);
        if (c != 0)
            f.add_term(m, Rational(c));
    }
    return f;
}

SuperPolynomial rand_homog(std::mt19937& rng, const VariableSet& vs)
{
    // homogeneous in Lambda-parity (not weight)
    for (;;) {
        SuperPolynomial f = rand_poly(rng, vs);
        if (f.lambda_parity() >= 0 && !f.is_zero())
            return f;
    }
}

} // namespace

TEST_CASE("multiplication signs")
{
    auto xi1 = make_odd(L22, 0), xi2 = make_odd(L22, 1);
    auto x1 = make_even(L22, 0), x2 = make_even(L22, 1);

    CHECK(multiply(xi1, xi1).is_zero());
    CHECK(multiply(xi2, xi1) == -multiply(xi1, xi2));
    // (x1 xi2)(x2 xi1) = -x1 x2 xi1 xi2
    auto lhs = multiply(multiply(x1, xi2), multiply(x2, xi1));
    auto rhs = -multiply(multiply(x1, x2), multiply(xi1, xi2));
    CHECK(lhs == rhs);

    auto tau = make_tau(K23);
    CHECK(multiply(tau, tau).is_zero());
}

TEST_CASE("partial derivatives")
{
    auto x1sq_xi2 = parse_poly(L33, "x1^2*xi3");
    CHECK(partial(x1sq_xi2, "x1") == parse_poly(L33, "2*x1*xi3"));

    CHECK(partial(parse_poly(L22, "xi1*xi2"), "xi2") == parse_poly(L22, "-xi1"));
    CHECK(partial(parse_poly(L22, "x2"), "xi1").is_zero());
    CHECK_THROWS(partial(parse_poly(L22, "x1"), "x9"));

    // tau is leftmost in the canonical order
    CHECK(partial(parse_poly(K23, "tau*xi1"), "xi1") == parse_poly(K23, "-tau"));
    CHECK(partial(parse_poly(K23, "tau*xi1"), "tau") == parse_poly(K23, "xi1"));
}

TEST_CASE("super Leibniz rule for partials")
{
    std::mt19937 rng(3);
    for (int t = 0; t < 40; ++t) {
        auto f = rand_homog(rng, L22);
        auto g = rand_poly(rng, L22);
        int pf = f.lambda_parity();
        for (int i = 0; i < 2; ++i) {
            auto lhs = partial_odd(multiply(f, g), i);
            auto rhs = multiply(partial_odd(f, i), g) +
                       Rational(pf ? -1 : 1) * multiply(f, partial_odd(g, i));
            CHECK(lhs == rhs);
            CHECK(partial_even(multiply(f, g), i) ==
                  multiply(partial_even(f, i), g) + multiply(f, partial_even(g, i)));
        }
    }
}

TEST_CASE("supercommutativity on homogeneous elements")
{
    std::mt19937 rng(5);
    for (int t = 0; t < 40; ++t) {
        auto f = rand_homog(rng, K23);
        auto g = rand_homog(rng, K23);
        int s = (f.lambda_parity() && g.lambda_parity()) ? -1 : 1;
        CHECK(multiply(f, g) == Rational(s) * multiply(g, f));
    }
}

TEST_CASE("euler operator")
{
    CHECK(euler(parse_poly(L22, "x1^2*xi1")) == parse_poly(L22, "3*x1^2*xi1"));
    CHECK(euler(make_tau(K23)).is_zero());
    CHECK(euler(make_const(L22, 1)).is_zero());
    // against the defining sum
    std::mt19937 rng(9);
    for (int t = 0; t < 20; ++t) {
        auto f = rand_poly(rng, L33);
        SuperPolynomial acc(L33);
        for (int i = 0; i < 3; ++i) {
            acc += multiply(make_even(L33, i), partial_even(f, i));
            acc += multiply(make_odd(L33, i), partial_odd(f, i));
        }
        CHECK(acc == euler(f));
    }
}

TEST_CASE("odd laplacian")
{
    CHECK(odd_laplacian(parse_poly(L22, "x1*xi1")) == make_const(L22, 1));
    CHECK(odd_laplacian(parse_poly(L22, "x1*xi2")).is_zero());
    auto d = odd_laplacian(parse_poly(L22, "x1*x2*xi1*xi2"));
    bool a = d == parse_poly(L22, "x2*xi2 - x1*xi1");
    bool b = d == parse_poly(L22, "x1*xi1 - x2*xi2");
    CHECK((a || b));

    std::mt19937 rng(13);
    for (int t = 0; t < 50; ++t) {
        auto f = rand_poly(rng, L33);
        CHECK(odd_laplacian(odd_laplacian(f)).is_zero());
    }
}

TEST_CASE("beta divergence")
{
    Rational beta = rat(5, 7);
    CHECK(divergence_beta(parse_poly(K23, "x1*xi1 - x2*xi2"), beta).is_zero());
    // div_beta(tau) = 2*n*beta with n = 2
    CHECK(divergence_beta(make_tau(K23), beta) == make_const(K23, rat(4, 1) * beta));
    CHECK(divergence_beta(parse_poly(K23, "x1"), beta).is_zero());
    CHECK_THROWS(divergence_beta(parse_poly(L22, "x1"), beta));
}

TEST_CASE("vector field divergence")
{
    auto x1 = parse_poly(L22, "x1");
    auto xi1 = parse_poly(L22, "xi1");
    CHECK(vf_divergence(L22, {{x1, "x1"}}) == make_const(L22, 1));
    CHECK(vf_divergence(L22, {{xi1, "xi1"}}) == make_const(L22, -1));
    CHECK(vf_divergence(L22, {{parse_poly(L22, "x2"), "x1"}}).is_zero());
}

TEST_CASE("hodge duals")
{
    CHECK(hodge_dual(L22, 0) == parse_poly(L22, "xi2"));
    CHECK(hodge_dual(L22, 1) == parse_poly(L22, "-xi1"));
    CHECK(hodge_dual(L33, 1) == parse_poly(L33, "-xi1*xi3"));
    for (int n = 1; n <= 6; ++n) {
        VariableSet vs(VariableSet::Shape::XXi, n, n, false);
        for (int i = 0; i < n; ++i)
            CHECK(multiply(make_odd(vs, i), hodge_dual(vs, i)) == full_odd_monomial(vs));
    }
    CHECK_THROWS(hodge_dual(L22, 5));
}

TEST_CASE("render and parse round-trip")
{
    std::mt19937 rng(17);
    for (int t = 0; t < 40; ++t) {
        auto f = rand_poly(rng, K23);
        CHECK(parse_poly(K23, render(f)) == f);
    }
    CHECK(render(parse_poly(L33, "x1^2*xi1*xi3")) == "x1^2*xi1*xi3");
    CHECK(render(parse_poly(K23, "tau*xi2")) == "tau*xi2");
    CHECK(render(SuperPolynomial(L22)) == "0");
    CHECK_THROWS(parse_poly(L22, "x1 +"));
    CHECK_THROWS(parse_poly(L22, "y3"));
}

TEST_CASE("pq layout")
{
    VariableSet H23(VariableSet::Shape::PQXi, 2, 3, false);
    CHECK(H23.even_name(0) == "p1");
    CHECK(H23.even_name(1) == "q1");
    auto p1 = parse_poly(H23, "p1");
    CHECK(partial(p1, "p1") == make_const(H23, 1));
    CHECK(partial(p1, "q1").is_zero());
}
