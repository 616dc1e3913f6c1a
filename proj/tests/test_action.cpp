#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spencer/action.hpp"

#include <random>

using namespace spencer;

TEST_CASE("action matrices represent the bracket")
{
    for (const char* name : {"SHO'(2,2)", "SHO(3,3)", "SKO(2,3;1)", "H(2,3)"}) {
        CAPTURE(name);
        GradedAlgebra A(AlgebraSpec::parse(name));
        auto act = reductive_action(A);
        std::mt19937 rng(41);
        for (int trial = 0; trial < 6; ++trial) {
            const auto& a = act.generators[rng() % act.generators.size()];
            const auto& b = act.generators[rng() % act.generators.size()];
            for (int j : {-1, 0, 1, 2}) {
                if (A.component(j).dim() == 0)
                    continue;
                auto ma = action_matrix(A, a, j);
                auto mb = action_matrix(A, b, j);
                auto mab = action_matrix(A, A.bracket(a, b), j);
                // commutator of matrices equals matrix of the bracket
                std::size_t d = A.component(j).dim();
                for (std::size_t c = 0; c < d; ++c) {
                    std::vector<Rational> e(d, Rational(0));
                    e[c] = 1;
                    auto lhs = ma.apply(mb.apply(e));
                    auto tmp = mb.apply(ma.apply(e));
                    auto rhs = mab.apply(e);
                    for (std::size_t r = 0; r < d; ++r)
                        CHECK(lhs[r] - tmp[r] == rhs[r]);
                }
            }
        }
    }
}

TEST_CASE("explicit action on g_{-1} of SHO'(2,2)")
{
    GradedAlgebra A(AlgebraSpec::parse("SHO'(2,2)"));
    auto P = [&](const char* s) { return parse_poly(A.vars(), s); };
    auto e = P("x1*xi2"); // the raising generator
    CHECK(A.bracket(e, P("x2")) == P("-x1"));
    CHECK(A.bracket(e, P("xi1")) == P("xi2"));
    CHECK(A.bracket(e, P("x1")).is_zero());
    CHECK(A.bracket(e, P("xi2")).is_zero());
}

TEST_CASE("cartan weights reproduce the module tables")
{
    GradedAlgebra A(AlgebraSpec::parse("SHO'(2,2)"));
    auto act = reductive_action(A);
    auto P = [&](const char* s) { return parse_poly(A.vars(), s); };
    CHECK(cartan_weight(A, act, P("x1")) == std::vector<Rational>{Rational(1)});
    CHECK(cartan_weight(A, act, P("xi2")) == std::vector<Rational>{Rational(1)});
    CHECK(cartan_weight(A, act, P("x1^3")) == std::vector<Rational>{Rational(3)});

    // g_1: two copies of R(3), highest weight vectors x1^3 and x1^2 xi2
    auto hw1 = highest_weight_vectors(A, act, 1);
    REQUIRE(hw1.size() == 2);
    for (const auto& w : hw1)
        CHECK(w.weight == std::vector<Rational>{Rational(3)});

    // g_0: R(2) + R(2) + R(0)
    auto hw0 = highest_weight_vectors(A, act, 0);
    REQUIRE(hw0.size() == 3);
    unsigned long total = 0;
    for (const auto& w : hw0)
        total += weyl_dim_sl(w.weight);
    CHECK(total == A.component(0).dim());
}

TEST_CASE("SHO'(3,3) highest weights")
{
    GradedAlgebra A(AlgebraSpec::parse("SHO'(3,3)"));
    auto act = reductive_action(A);
    auto P = [&](const char* s) { return parse_poly(A.vars(), s); };
    CHECK(cartan_weight(A, act, P("x1")) == std::vector<Rational>{Rational(1), Rational(0)});
    CHECK(cartan_weight(A, act, P("xi3")) == std::vector<Rational>{Rational(0), Rational(1)});

    auto hw0 = highest_weight_vectors(A, act, 0);
    REQUIRE(hw0.size() == 3);
    std::vector<std::vector<Rational>> expected = {
        {Rational(2), Rational(0)}, // x1^2
        {Rational(1), Rational(1)}, // x1 xi3
        {Rational(1), Rational(0)}, // xi3 xi2
    };
    unsigned long total = 0;
    for (const auto& w : hw0)
        total += weyl_dim_sl(w.weight);
    CHECK(total == A.component(0).dim());
    for (const auto& e : expected) {
        bool found = false;
        for (const auto& w : hw0)
            if (w.weight == e)
                found = true;
        CHECK(found);
    }

    // Weyl dimension sums reproduce every component dimension
    for (int j = -1; j <= 3; ++j) {
        unsigned long sum = 0;
        for (const auto& w : highest_weight_vectors(A, act, j))
            sum += weyl_dim_sl(w.weight);
        CHECK(sum == A.component(j).dim());
    }
}

TEST_CASE("invariant vectors in components")
{
    // the trivial module C xi_1..xi_n inside g_{n-2} of SHO'(n,n)
    GradedAlgebra A(AlgebraSpec::parse("SHO'(3,3)"));
    auto act = reductive_action(A);
    auto inv = invariant_vectors(A, act, 1);
    REQUIRE(inv.size() == 1);
    SuperPolynomial v(A.vars());
    const auto& comp = A.component(1);
    for (std::size_t i = 0; i < comp.dim(); ++i)
        if (!is_zero(inv[0][i]))
            v += inv[0][i] * comp.vectors[i];
    CHECK(multiply(v, v).is_zero());
    CHECK(v.term_count() == 1);
    CHECK(v.terms().begin()->first.odd_degree() == 3);

    // SHO(3,3) has no invariant there (the cut removes it)
    GradedAlgebra S(AlgebraSpec::parse("SHO(3,3)"));
    CHECK(invariant_vectors(S, reductive_action(S), 1).empty());
}

TEST_CASE("hom vanishing")
{
    std::vector<ModuleLabel> U = {{{Rational(0), Rational(0)}, 0}};
    std::vector<ModuleLabel> V = {{{Rational(1), Rational(0)}, 0},
                                  {{Rational(0), Rational(0)}, 1}};
    CHECK(hom_vanishes(U, V));      // parity differs on the trivial label
    CHECK(hom_vanishes({}, V));     // empty U
    CHECK_FALSE(hom_vanishes(V, V));
}

TEST_CASE("weyl dimensions")
{
    CHECK(weyl_dim_sl({Rational(1)}) == 2);
    CHECK(weyl_dim_sl({Rational(3)}) == 4);
    CHECK(weyl_dim_sl({Rational(1), Rational(0)}) == 3);
    CHECK(weyl_dim_sl({Rational(1), Rational(1)}) == 8);
    CHECK(weyl_dim_sl({Rational(2), Rational(0)}) == 6);
    CHECK(weyl_dim_sl({Rational(0), Rational(0), Rational(0)}) == 1);
}
