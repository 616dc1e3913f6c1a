#include "spencer/rational.hpp"

namespace spencer {

namespace {

using i128 = __int128;

constexpr long long kSmallMax = (1LL << 62);

i128 gcd128(i128 a, i128 b)
{
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits_small(i128 v) { return v > -kSmallMax && v < kSmallMax; }

mpq_class mpq_from_i128(i128 v)
{
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
    mpz_class z = (hi << 64) + lo;
    if (neg)
        z = -z;
    return mpq_class(z);
}

} // namespace

Rational::Rational(unsigned long v) : n_(0), d_(1), big_(nullptr)
{
    if (v < static_cast<unsigned long>(kSmallMax)) {
        n_ = static_cast<long long>(v);
    } else {
        big_ = new mpq_class(v);
    }
}

Rational::Rational(long num, long den) : n_(0), d_(1), big_(nullptr)
{
    if (den == 0)
        throw std::invalid_argument("Rational: zero denominator");
    *this = make(num, den);
}

Rational& Rational::operator=(const Rational& o)
{
    if (this == &o)
        return *this;
    n_ = o.n_;
    d_ = o.d_;
    mpq_class* nb = o.big_ ? new mpq_class(*o.big_) : nullptr;
    delete big_;
    big_ = nb;
    return *this;
}

Rational& Rational::operator=(Rational&& o) noexcept
{
    if (this == &o)
        return *this;
    n_ = o.n_;
    d_ = o.d_;
    delete big_;
    big_ = o.big_;
    o.big_ = nullptr;
    return *this;
}

long Rational::num_long() const
{
    if (!is_integer())
        throw std::domain_error("Rational::num_long: not an integer");
    if (big_) {
        if (!big_->get_num().fits_slong_p())
            throw std::domain_error("Rational::num_long: out of range");
        return big_->get_num().get_si();
    }
    return static_cast<long>(n_);
}

Rational Rational::make(i128 n, i128 d)
{
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) {
        return Rational();
    }
    i128 g = gcd128(n, d);
    n /= g;
    d /= g;
    Rational r;
    if (fits_small(n) && fits_small(d)) {
        r.n_ = static_cast<long long>(n);
        r.d_ = static_cast<long long>(d);
    } else {
        mpq_class q(mpq_from_i128(n));
        q /= mpq_from_i128(d);
        r.big_ = new mpq_class(std::move(q));
    }
    return r;
}

Rational Rational::from_mpq(const mpq_class& q)
{
    Rational r;
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
        r.n_ = q.get_num().get_si();
        r.d_ = q.get_den().get_si();
    } else {
        r.big_ = new mpq_class(q);
        r.big_->canonicalize();
    }
    return r;
}

void Rational::promote_to(const mpq_class& q)
{
    Rational r = from_mpq(q);
    *this = std::move(r);
}

Rational& Rational::operator+=(const Rational& o)
{
    if (!big_ && !o.big_) {
        if (d_ == 1 && o.d_ == 1) {
            i128 s = static_cast<i128>(n_) + o.n_;
            if (fits_small(s)) {
                n_ = static_cast<long long>(s);
                return *this;
            }
            promote_to(mpq_from_i128(s));
            return *this;
        }
        i128 n = static_cast<i128>(n_) * o.d_ + static_cast<i128>(o.n_) * d_;
        i128 d = static_cast<i128>(d_) * o.d_;
        *this = make(n, d);
        return *this;
    }
    mpq_class q = to_mpq() + o.to_mpq();
    promote_to(q);
    return *this;
}

Rational& Rational::operator-=(const Rational& o)
{
    if (!big_ && !o.big_) {
        if (d_ == 1 && o.d_ == 1) {
            i128 s = static_cast<i128>(n_) - o.n_;
            if (fits_small(s)) {
                n_ = static_cast<long long>(s);
                return *this;
            }
            promote_to(mpq_from_i128(s));
            return *this;
        }
        i128 n = static_cast<i128>(n_) * o.d_ - static_cast<i128>(o.n_) * d_;
        i128 d = static_cast<i128>(d_) * o.d_;
        *this = make(n, d);
        return *this;
    }
    mpq_class q = to_mpq() - o.to_mpq();
    promote_to(q);
    return *this;
}

Rational& Rational::operator*=(const Rational& o)
{
    if (!big_ && !o.big_) {
        i128 n = static_cast<i128>(n_) * o.n_;
        if (d_ == 1 && o.d_ == 1) {
            if (fits_small(n)) {
                n_ = static_cast<long long>(n);
                return *this;
            }
            promote_to(mpq_from_i128(n));
            return *this;
        }
        *this = make(n, static_cast<i128>(d_) * o.d_);
        return *this;
    }
    mpq_class q = to_mpq() * o.to_mpq();
    promote_to(q);
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw std::domain_error("Rational: division by zero");
    if (!big_ && !o.big_) {
        *this = make(static_cast<i128>(n_) * o.d_, static_cast<i128>(d_) * o.n_);
        return *this;
    }
    mpq_class q = to_mpq() / o.to_mpq();
    promote_to(q);
    return *this;
}

Rational operator-(const Rational& a)
{
    Rational r = a;
    if (r.big_)
        *r.big_ = -*r.big_;
    else
        r.n_ = -r.n_;
    return r;
}

bool operator==(const Rational& a, const Rational& b)
{
    if (!a.big_ && !b.big_)
        return a.n_ == b.n_ && a.d_ == b.d_;
    return a.to_mpq() == b.to_mpq();
}

bool operator<(const Rational& a, const Rational& b)
{
    if (!a.big_ && !b.big_)
        return static_cast<__int128>(a.n_) * b.d_ < static_cast<__int128>(b.n_) * a.d_;
    return a.to_mpq() < b.to_mpq();
}

std::string Rational::str() const
{
    if (big_)
        return big_->get_str();
    std::string s = std::to_string(n_);
    if (d_ != 1)
        s += "/" + std::to_string(d_);
    return s;
}

std::string rat_str(const Rational& q) { return q.str(); }

Rational parse_rational(const std::string& s)
{
    if (s.empty())
        throw std::invalid_argument("parse_rational: empty string");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("parse_rational: bad rational '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational::from_mpq(q);
}

} // namespace spencer
