#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace spencer {

// Exact rational scalar: an int64 numerator/denominator fast path with
// transparent promotion to GMP when a value leaves the small range.
// Invariants: fully reduced, denominator > 0, zero stored as 0/1.
class Rational {
public:
    Rational() : n_(0), d_(1), big_(nullptr) {}
    Rational(int v) : n_(v), d_(1), big_(nullptr) {}
    Rational(long v) : n_(v), d_(1), big_(nullptr) {}
    Rational(long long v) : n_(v), d_(1), big_(nullptr) {}
    Rational(unsigned long v);
    Rational(long num, long den);

    Rational(const Rational& o) : n_(o.n_), d_(o.d_), big_(o.big_ ? new mpq_class(*o.big_) : nullptr) {}
    Rational(Rational&& o) noexcept : n_(o.n_), d_(o.d_), big_(o.big_) { o.big_ = nullptr; }
    Rational& operator=(const Rational& o);
    Rational& operator=(Rational&& o) noexcept;
    ~Rational() { delete big_; }

    bool is_small() const { return big_ == nullptr; }
    bool is_zero() const { return big_ ? sgn(*big_) == 0 : n_ == 0; }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }
    int sign() const { return big_ ? sgn(*big_) : (n_ > 0) - (n_ < 0); }

    // integer value of the numerator; requires a small integer
    long num_long() const;

    std::string str() const;

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a);

    friend bool operator==(const Rational& a, const Rational& b);
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);

    mpq_class to_mpq() const { return big_ ? *big_ : mpq_class(static_cast<long>(n_), static_cast<long>(d_)); }
    static Rational from_mpq(const mpq_class& q);

private:
    long long n_, d_; // valid when big_ == nullptr; d_ > 0, gcd(|n_|,d_) = 1
    mpq_class* big_;

    static Rational make(__int128 n, __int128 d);
    void promote_to(const mpq_class& q);
};

inline int sgn(const Rational& q) { return q.sign(); }
inline Rational abs(const Rational& q) { return q.sign() < 0 ? Rational(0) - q : q; }
inline bool is_zero(const Rational& q) { return q.is_zero(); }

inline Rational rat(long num, long den = 1) { return Rational(num, den); }

std::string rat_str(const Rational& q);

// Accepts "p" or "p/q" with optional sign, arbitrary precision.
Rational parse_rational(const std::string& s);

} // namespace spencer
