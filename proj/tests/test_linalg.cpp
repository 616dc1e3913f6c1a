#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spencer/sparse_matrix.hpp"

#include <random>

using namespace spencer;

namespace {

SparseRationalMatrix random_sparse(std::mt19937& rng, std::size_t rows, std::size_t cols,
                                   double density)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> val(-4, 4);
    SparseRationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (u(rng) < density)
                m.set(r, c, Rational(val(rng)));
    return m;
}

} // namespace

TEST_CASE("rational helpers")
{
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat(-2, -4) == rat(1, 2));
    CHECK(rat_str(rat(2, -4)) == "-1/2");
    CHECK(sgn(rat(2, -4)) < 0);
    CHECK(rat_str(rat(3)) == "3");
    CHECK(rat_str(rat(-5, 3)) == "-5/3");
    CHECK(parse_rational("7/2") == rat(7, 2));
    CHECK(parse_rational("-4/6") == rat(-2, 3));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("rational arithmetic agrees with gmp, including promotions")
{
    std::mt19937_64 rng(2026);
    auto rnd = [&](bool big) {
        long n = static_cast<long>(rng() % 2001) - 1000;
        long d = 1 + static_cast<long>(rng() % 50);
        Rational r(n, d);
        if (big) {
            // push far beyond the small range
            Rational huge(static_cast<long>(3037000499L), 1);
            for (int i = 0; i < 3; ++i)
                r *= huge;
            r += Rational(1, 7);
        }
        return r;
    };
    for (int t = 0; t < 4000; ++t) {
        Rational a = rnd(t % 3 == 0), b = rnd(t % 5 == 0);
        mpq_class qa = a.to_mpq(), qb = b.to_mpq();
        CHECK((a + b).to_mpq() == qa + qb);
        CHECK((a - b).to_mpq() == qa - qb);
        CHECK((a * b).to_mpq() == qa * qb);
        if (!b.is_zero())
            CHECK((a / b).to_mpq() == qa / qb);
        CHECK((a == b) == (qa == qb));
        CHECK((a < b) == (qa < qb));
        CHECK(sgn(a) == sgn(qa));
        CHECK(parse_rational(rat_str(a)) == a);
    }
    // overflow boundary: squaring near-2^31 integers promotes and returns
    Rational x(2147483647L, 1);
    Rational y = x * x * x;
    CHECK(rat_str(y) == "9903520300447984150353281023");
    CHECK((y / (x * x)) == x);
}

TEST_CASE("rank basics")
{
    SparseRationalMatrix z(3, 3);
    CHECK(z.rank() == 0);

    SparseRationalMatrix id(4, 4);
    for (int i = 0; i < 4; ++i)
        id.set(i, i, 1);
    CHECK(id.rank() == 4);
    CHECK(id.kernel_basis().empty());
}

TEST_CASE("odd laplacian slice matrix has rank 1, kernel 7")
{
    // Columns: x1xi1, x1xi2, x2xi1, x2xi2, x1^2, x1x2, x2^2, xi1xi2.
    // Delta maps x1xi1 and x2xi2 to 1, the rest to 0.
    SparseRationalMatrix m(1, 8);
    m.set(0, 0, 1);
    m.set(0, 3, 1);
    CHECK(m.rank() == 1);
    auto k = m.kernel_basis();
    CHECK(k.size() == 7);
    for (const auto& v : k) {
        auto mv = m.apply(v);
        for (const auto& x : mv)
            CHECK(is_zero(x));
    }
}

TEST_CASE("kernel of [1 1]")
{
    SparseRationalMatrix m(1, 2);
    m.set(0, 0, 1);
    m.set(0, 1, 1);
    auto k = m.kernel_basis();
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == Rational(1));
    CHECK(k[0][1] == Rational(-1));
}

TEST_CASE("in_span")
{
    SparseRationalMatrix m(2, 1);
    m.set(1, 0, 1); // single column (0,1)
    CHECK(m.in_span({Rational(0), Rational(0)}));
    CHECK(m.in_span({Rational(0), Rational(3)}));
    CHECK_FALSE(m.in_span({Rational(1), Rational(0)}));
    CHECK_THROWS(m.in_span({Rational(1)}));
}

TEST_CASE("random matrices: rank-transpose, rank-nullity, span of image")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 12;
        auto m = random_sparse(rng, rows, cols, 0.35);
        std::size_t r = m.rank();
        CHECK(r == m.transpose().rank());
        CHECK(cols == r + m.kernel_basis().size());

        std::vector<Rational> w(cols);
        std::uniform_int_distribution<int> val(-3, 3);
        for (auto& x : w)
            x = Rational(val(rng));
        CHECK(m.in_span(m.apply(w)));

        for (const auto& v : m.kernel_basis())
            for (const auto& y : m.apply(v))
                CHECK(is_zero(y));
    }
}

TEST_CASE("sparse and dense elimination agree across the threshold")
{
    std::mt19937 rng(11);
    auto wide = random_sparse(rng, 20, 80, 0.1); // sparse path
    SparseRationalMatrix narrow(20, 40);         // dense path: same leading block
    for (std::size_t r = 0; r < 20; ++r)
        for (const auto& [c, v] : wide.row(r))
            if (c < 40)
                narrow.set(r, c, v);
    std::size_t hand = 0;
    {
        // independent oracle: rank via transpose of the dense-path matrix
        hand = narrow.transpose().rank();
    }
    CHECK(narrow.rank() == hand);
}
