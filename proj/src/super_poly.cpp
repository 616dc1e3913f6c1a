#include "spencer/super_poly.hpp"

#include <bit>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace spencer {

VariableSet::VariableSet(Shape shape, int n_even, int n_odd, bool has_tau)
    : shape_(shape), n_even_(n_even), n_odd_(n_odd), tau_(has_tau)
{
    if (n_even < 0 || n_even > SuperMonomial::kMaxEven)
        throw std::invalid_argument("VariableSet: even variable count out of range");
    if (n_odd < 0 || n_odd > SuperMonomial::kMaxOdd)
        throw std::invalid_argument("VariableSet: odd variable count out of range");
    if (shape == Shape::PQXi && n_even % 2 != 0)
        throw std::invalid_argument("VariableSet: PQXi layout needs an even number of even vars");
}

std::string VariableSet::even_name(int i) const
{
    if (i < 0 || i >= n_even_)
        throw std::out_of_range("VariableSet::even_name");
    if (shape_ == Shape::XXi)
        return "x" + std::to_string(i + 1);
    int n = n_even_ / 2;
    return i < n ? "p" + std::to_string(i + 1) : "q" + std::to_string(i - n + 1);
}

std::string VariableSet::odd_name(int i) const
{
    if (i < 0 || i >= n_odd_)
        throw std::out_of_range("VariableSet::odd_name");
    return "xi" + std::to_string(i + 1);
}

bool VariableSet::lookup(const std::string& name, bool& is_even, bool& is_tau, int& index) const
{
    is_even = is_tau = false;
    index = -1;
    if (name == "tau") {
        if (!tau_)
            return false;
        is_tau = true;
        return true;
    }
    auto num = [](const std::string& s, std::size_t from) -> int {
        if (from >= s.size())
            return -1;
        for (std::size_t k = from; k < s.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(s[k])))
                return -1;
        return std::stoi(s.substr(from));
    };
    if (name.size() >= 3 && name.compare(0, 2, "xi") == 0) {
        int k = num(name, 2);
        if (k < 1 || k > n_odd_)
            return false;
        index = k - 1;
        return true;
    }
    if (shape_ == Shape::XXi && name.size() >= 2 && name[0] == 'x') {
        int k = num(name, 1);
        if (k < 1 || k > n_even_)
            return false;
        is_even = true;
        index = k - 1;
        return true;
    }
    if (shape_ == Shape::PQXi && name.size() >= 2 && (name[0] == 'p' || name[0] == 'q')) {
        int k = num(name, 1);
        int n = n_even_ / 2;
        if (k < 1 || k > n)
            return false;
        is_even = true;
        index = (name[0] == 'p' ? k - 1 : n + k - 1);
        return true;
    }
    return false;
}

namespace {

inline std::uint64_t with_weight(std::uint64_t bits, int w)
{
    if (w < 0 || w > 63)
        throw std::overflow_error("SuperMonomial: weight exceeds packed capacity");
    return (bits & ~(std::uint64_t(0x3f) << 58)) | (std::uint64_t(w) << 58);
}

} // namespace

void SuperMonomial::set_exponent(int i, unsigned e)
{
    if (e > kMaxExponent)
        throw std::overflow_error("SuperMonomial: exponent exceeds packed capacity");
    int w = weight() + static_cast<int>(e) - static_cast<int>(exponent(i));
    bits = (bits & ~(std::uint64_t(0x3f) << exp_shift(i))) | (std::uint64_t(e) << exp_shift(i));
    bits = with_weight(bits, w);
}

void SuperMonomial::set_odd_mask(std::uint32_t m)
{
    int w = weight() + std::popcount(m & 0x1ff) - odd_degree();
    bits = (bits & ~(std::uint64_t(0x1ff) << 1)) | (std::uint64_t(m & 0x1ff) << 1);
    bits = with_weight(bits, w);
}

void SuperMonomial::set_tau(bool t)
{
    int w = weight() + 2 * ((t ? 1 : 0) - (tau() ? 1 : 0));
    bits = (bits & ~std::uint64_t(1)) | std::uint64_t(t ? 1 : 0);
    bits = with_weight(bits, w);
}

int SuperMonomial::even_degree(const VariableSet& vs) const
{
    int d = 0;
    for (int i = 0; i < vs.even_count(); ++i)
        d += static_cast<int>(exponent(i));
    return d;
}

int SuperMonomial::odd_degree() const { return std::popcount(odd_mask()); }

int SuperMonomial::lambda_parity() const { return (odd_degree() + (tau() ? 1 : 0)) & 1; }

Rational SuperPolynomial::coeff(const SuperMonomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void SuperPolynomial::add_term(const SuperMonomial& m, const Rational& c)
{
    if (spencer::is_zero(c))
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (spencer::is_zero(it->second))
            terms_.erase(it);
    }
}

SuperPolynomial& SuperPolynomial::operator+=(const SuperPolynomial& g)
{
    if (g.is_zero())
        return *this;
    if (terms_.empty() && vs_ != g.vs_ && vs_ == VariableSet())
        vs_ = g.vs_;
    if (vs_ != g.vs_)
        throw std::invalid_argument("SuperPolynomial: mismatched variable sets");
    for (const auto& [m, c] : g.terms_)
        add_term(m, c);
    return *this;
}

SuperPolynomial& SuperPolynomial::operator-=(const SuperPolynomial& g)
{
    if (g.is_zero())
        return *this;
    if (terms_.empty() && vs_ != g.vs_ && vs_ == VariableSet())
        vs_ = g.vs_;
    if (vs_ != g.vs_)
        throw std::invalid_argument("SuperPolynomial: mismatched variable sets");
    for (const auto& [m, c] : g.terms_)
        add_term(m, -c);
    return *this;
}

SuperPolynomial& SuperPolynomial::operator*=(const Rational& c)
{
    if (spencer::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_)
        v *= c;
    return *this;
}

bool SuperPolynomial::operator==(const SuperPolynomial& g) const
{
    if (terms_.size() != g.terms_.size())
        return false;
    auto it = terms_.begin();
    auto jt = g.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (it->first != jt->first || it->second != jt->second)
            return false;
    return true;
}

int SuperPolynomial::lambda_parity() const
{
    if (terms_.empty())
        return -1;
    int p = terms_.begin()->first.lambda_parity();
    for (const auto& [m, c] : terms_)
        if (m.lambda_parity() != p)
            return -1;
    return p;
}

bool SuperPolynomial::weight_homogeneous(int* weight_out) const
{
    if (terms_.empty()) {
        if (weight_out)
            *weight_out = 0;
        return true;
    }
    int w = terms_.begin()->first.weight(vs_);
    for (const auto& [m, c] : terms_)
        if (m.weight(vs_) != w)
            return false;
    if (weight_out)
        *weight_out = w;
    return true;
}

SuperPolynomial make_monomial(const VariableSet& vs, const SuperMonomial& m, const Rational& c)
{
    SuperPolynomial f(vs);
    f.add_term(m, c);
    return f;
}

SuperPolynomial make_even(const VariableSet& vs, int i, unsigned power)
{
    if (i < 0 || i >= vs.even_count())
        throw std::out_of_range("make_even");
    SuperMonomial m;
    m.set_exponent(i, power);
    return make_monomial(vs, m);
}

SuperPolynomial make_odd(const VariableSet& vs, int i)
{
    if (i < 0 || i >= vs.odd_count())
        throw std::out_of_range("make_odd");
    SuperMonomial m;
    m.set_odd_mask(1u << i);
    return make_monomial(vs, m);
}

SuperPolynomial make_tau(const VariableSet& vs)
{
    if (!vs.has_tau())
        throw std::invalid_argument("make_tau: variable set has no tau");
    SuperMonomial m;
    m.set_tau(true);
    return make_monomial(vs, m);
}

SuperPolynomial make_const(const VariableSet& vs, const Rational& c)
{
    return make_monomial(vs, SuperMonomial::one(), c);
}

namespace {

// Sign of merging two canonically ordered odd words (tau < xi1 < xi2 < ...).
// Returns 0 on a repeated odd variable.
int odd_merge_sign(const SuperMonomial& a, const SuperMonomial& b)
{
    if ((a.odd_mask() & b.odd_mask()) != 0 || (a.tau() && b.tau()))
        return 0;
    int inversions = 0;
    if (b.tau())
        inversions += std::popcount(a.odd_mask());
    std::uint32_t mb = b.odd_mask();
    while (mb) {
        int i = std::countr_zero(mb);
        mb &= mb - 1;
        inversions += std::popcount(a.odd_mask() & ~((2u << i) - 1));
    }
    return (inversions & 1) ? -1 : 1;
}

} // namespace

SuperPolynomial multiply(const SuperPolynomial& f, const SuperPolynomial& g)
{
    if (f.is_zero() || g.is_zero())
        return SuperPolynomial(f.is_zero() ? g.vars() : f.vars());
    if (f.vars() != g.vars())
        throw std::invalid_argument("multiply: mismatched variable sets");
    const VariableSet& vs = f.vars();
    SuperPolynomial out(vs);
    for (const auto& [ma, ca] : f.terms()) {
        for (const auto& [mb, cb] : g.terms()) {
            int s = odd_merge_sign(ma, mb);
            if (s == 0)
                continue;
            SuperMonomial m;
            for (int i = 0; i < vs.even_count(); ++i)
                m.set_exponent(i, ma.exponent(i) + mb.exponent(i));
            m.set_odd_mask(ma.odd_mask() | mb.odd_mask());
            m.set_tau(ma.tau() || mb.tau());
            out.add_term(m, ca * cb * s);
        }
    }
    return out;
}

SuperPolynomial partial_even(const SuperPolynomial& f, int i)
{
    const VariableSet& vs = f.vars();
    if (i < 0 || i >= vs.even_count())
        throw std::out_of_range("partial_even");
    SuperPolynomial out(vs);
    for (const auto& [m, c] : f.terms()) {
        unsigned e = m.exponent(i);
        if (e == 0)
            continue;
        SuperMonomial d = m;
        d.set_exponent(i, e - 1);
        out.add_term(d, c * Rational(static_cast<long>(e)));
    }
    return out;
}

SuperPolynomial partial_odd(const SuperPolynomial& f, int i)
{
    const VariableSet& vs = f.vars();
    if (i < 0 || i >= vs.odd_count())
        throw std::out_of_range("partial_odd");
    SuperPolynomial out(vs);
    for (const auto& [m, c] : f.terms()) {
        if (!m.has_odd(i))
            continue;
        int preceding = (m.tau() ? 1 : 0) + std::popcount(m.odd_mask() & ((1u << i) - 1));
        SuperMonomial d = m;
        d.set_odd_mask(m.odd_mask() & ~(1u << i));
        out.add_term(d, (preceding & 1) ? -c : c);
    }
    return out;
}

SuperPolynomial partial_tau(const SuperPolynomial& f)
{
    if (!f.vars().has_tau())
        throw std::invalid_argument("partial_tau: variable set has no tau");
    SuperPolynomial out(f.vars());
    for (const auto& [m, c] : f.terms()) {
        if (!m.tau())
            continue;
        SuperMonomial d = m;
        d.set_tau(false);
        out.add_term(d, c);
    }
    return out;
}

SuperPolynomial partial(const SuperPolynomial& f, const std::string& var_name)
{
    bool is_even = false, is_tau = false;
    int idx = -1;
    if (!f.vars().lookup(var_name, is_even, is_tau, idx))
        throw std::invalid_argument("partial: unknown variable '" + var_name + "'");
    if (is_tau)
        return partial_tau(f);
    return is_even ? partial_even(f, idx) : partial_odd(f, idx);
}

SuperPolynomial euler(const SuperPolynomial& f)
{
    const VariableSet& vs = f.vars();
    SuperPolynomial out(vs);
    for (const auto& [m, c] : f.terms()) {
        int k = m.even_degree(vs) + m.odd_degree();
        if (k != 0)
            out.add_term(m, c * Rational(k));
    }
    return out;
}

SuperPolynomial odd_laplacian(const SuperPolynomial& f)
{
    const VariableSet& vs = f.vars();
    if (vs.even_count() != vs.odd_count() || vs.shape() != VariableSet::Shape::XXi)
        throw std::invalid_argument("odd_laplacian: needs equal x and xi counts");
    SuperPolynomial out(vs);
    for (int i = 0; i < vs.even_count(); ++i)
        out += partial_even(partial_odd(f, i), i);
    return out;
}

SuperPolynomial divergence_beta(const SuperPolynomial& f, const Rational& beta)
{
    const VariableSet& vs = f.vars();
    if (!vs.has_tau())
        throw std::invalid_argument("divergence_beta: variable set has no tau");
    Rational nbeta = Rational(vs.even_count()) * beta;
    SuperPolynomial out(vs);
    for (const auto& [m, c] : f.terms()) {
        SuperPolynomial term = make_monomial(vs, m, c);
        SuperPolynomial inner = odd_laplacian(term);
        SuperPolynomial dt = partial_tau(term);
        inner += euler(dt) - nbeta * dt;
        inner *= Rational(m.lambda_parity() ? -2 : 2);
        out += inner;
    }
    return out;
}

SuperPolynomial vf_divergence(const VariableSet& vs,
                              const std::vector<std::pair<SuperPolynomial, std::string>>& field)
{
    SuperPolynomial out(vs);
    for (const auto& [coef, name] : field) {
        if (coef.vars() != vs)
            throw std::invalid_argument("vf_divergence: mismatched variable sets");
        bool is_even = false, is_tau = false;
        int idx = -1;
        if (!vs.lookup(name, is_even, is_tau, idx))
            throw std::invalid_argument("vf_divergence: unknown variable '" + name + "'");
        if (is_tau)
            throw std::invalid_argument("vf_divergence: tau direction not supported");
        if (is_even) {
            out += partial_even(coef, idx);
        } else {
            for (const auto& [m, c] : coef.terms()) {
                SuperPolynomial d = partial_odd(make_monomial(vs, m, c), idx);
                out += (m.lambda_parity() ? -1 : 1) * Rational(1) * d;
            }
        }
    }
    return out;
}

SuperPolynomial hodge_dual(const VariableSet& vs, int i)
{
    int n = vs.odd_count();
    if (i < 0 || i >= n)
        throw std::out_of_range("hodge_dual: index out of range");
    SuperMonomial m;
    m.set_odd_mask(((1u << n) - 1) & ~(1u << i));
    return make_monomial(vs, m, Rational((i % 2) ? -1 : 1));
}

SuperPolynomial full_odd_monomial(const VariableSet& vs)
{
    SuperMonomial m;
    m.set_odd_mask((1u << vs.odd_count()) - 1);
    return make_monomial(vs, m);
}

SuperPolynomial tau_full_odd_monomial(const VariableSet& vs)
{
    if (!vs.has_tau())
        throw std::invalid_argument("tau_full_odd_monomial: no tau");
    SuperMonomial m;
    m.set_odd_mask((1u << vs.odd_count()) - 1);
    m.set_tau(true);
    return make_monomial(vs, m);
}

std::string render(const VariableSet& vs, const SuperMonomial& m)
{
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const std::string& s) {
        if (!first)
            os << "*";
        os << s;
        first = false;
    };
    for (int i = 0; i < vs.even_count(); ++i) {
        unsigned e = m.exponent(i);
        if (e == 0)
            continue;
        if (e == 1)
            emit(vs.even_name(i));
        else
            emit(vs.even_name(i) + "^" + std::to_string(e));
    }
    if (m.tau())
        emit("tau");
    for (int i = 0; i < vs.odd_count(); ++i)
        if (m.has_odd(i))
            emit(vs.odd_name(i));
    if (first)
        os << "1";
    return os.str();
}

std::string render(const SuperPolynomial& f)
{
    if (f.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        Rational a = c;
        if (first) {
            if (sgn(a) < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
            a = abs(a);
        }
        std::string mono = render(f.vars(), m);
        if (a != 1)
            os << rat_str(a) << (mono == "1" ? "" : "*");
        else if (mono == "1")
            os << "1";
        if (mono != "1")
            os << mono;
        first = false;
    }
    return os.str();
}

namespace {

struct Parser {
    const VariableSet& vs;
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool eof()
    {
        skip_ws();
        return pos >= s.size();
    }
    char peek()
    {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& msg)
    {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + msg);
    }

    Rational number()
    {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (start == pos)
            fail("expected number");
        std::string num = s.substr(start, pos - start);
        if (peek() == '/') {
            ++pos;
            skip_ws();
            std::size_t d0 = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                ++pos;
            if (d0 == pos)
                fail("expected denominator");
            num += "/" + s.substr(d0, pos - d0);
        }
        return parse_rational(num);
    }

    std::string ident()
    {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (start == pos)
            fail("expected variable name");
        return s.substr(start, pos - start);
    }

    SuperPolynomial factor()
    {
        if (std::isdigit(static_cast<unsigned char>(peek())))
            return make_const(vs, number());
        std::string name = ident();
        bool is_even = false, is_tau = false;
        int idx = -1;
        if (!vs.lookup(name, is_even, is_tau, idx))
            fail("unknown variable '" + name + "'");
        unsigned power = 1;
        if (peek() == '^') {
            ++pos;
            Rational p = number();
            if (!p.is_integer() || sgn(p) < 0)
                fail("bad exponent");
            power = static_cast<unsigned>(p.num_long());
        }
        if (is_tau) {
            if (power > 1)
                return SuperPolynomial(vs);
            return power == 0 ? make_const(vs, 1) : make_tau(vs);
        }
        if (is_even)
            return power == 0 ? make_const(vs, 1) : make_even(vs, idx, power);
        if (power > 1)
            return SuperPolynomial(vs);
        return power == 0 ? make_const(vs, 1) : make_odd(vs, idx);
    }

    SuperPolynomial term()
    {
        SuperPolynomial acc = factor();
        while (peek() == '*') {
            ++pos;
            acc = multiply(acc, factor());
        }
        return acc;
    }

    SuperPolynomial expr()
    {
        SuperPolynomial acc(vs);
        int sign = 1;
        if (peek() == '-') {
            ++pos;
            sign = -1;
        } else if (peek() == '+') {
            ++pos;
        }
        acc += Rational(sign) * term();
        while (!eof()) {
            char c = peek();
            if (c == '+')
                sign = 1;
            else if (c == '-')
                sign = -1;
            else
                fail("expected '+' or '-'");
            ++pos;
            acc += Rational(sign) * term();
        }
        return acc;
    }
};

} // namespace

SuperPolynomial parse_poly(const VariableSet& vs, const std::string& text)
{
    Parser p{vs, text};
    if (p.eof())
        throw std::invalid_argument("parse error: empty polynomial");
    return p.expr();
}

} // namespace spencer
