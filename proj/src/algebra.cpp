#include "spencer/algebra.hpp"

#include "spencer/sparse_matrix.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace spencer {

std::string family_name(Family f)
{
    switch (f) {
    case Family::HO: return "HO";
    case Family::SHO_PRIME: return "SHO'";
    case Family::SHO: return "SHO";
    case Family::HO_HAT: return "^HO";
    case Family::SHO_PRIME_HAT: return "^SHO'";
    case Family::SHO_HAT: return "^SHO";
    case Family::KO: return "KO";
    case Family::SKO_PRIME: return "SKO'";
    case Family::SKO: return "SKO";
    case Family::HAM: return "H";
    case Family::SHO_PLUS_PHI: return "SHO+Phi";
    case Family::SHO_PRIME_PLUS_PHI: return "SHO'+Phi";
    case Family::SHO_HAT_PLUS_PHI: return "^SHO+Phi";
    case Family::SHO_PRIME_HAT_PLUS_PHI: return "^SHO'+Phi";
    }
    return "?";
}

bool AlgebraSpec::is_hat() const
{
    switch (family) {
    case Family::HO_HAT:
    case Family::SHO_PRIME_HAT:
    case Family::SHO_HAT:
    case Family::SHO_HAT_PLUS_PHI:
    case Family::SHO_PRIME_HAT_PLUS_PHI:
        return true;
    default:
        return false;
    }
}

bool AlgebraSpec::is_contact() const
{
    return family == Family::KO || family == Family::SKO || family == Family::SKO_PRIME;
}

bool AlgebraSpec::is_sho_like() const
{
    switch (family) {
    case Family::SHO_PRIME:
    case Family::SHO:
    case Family::SHO_PRIME_HAT:
    case Family::SHO_HAT:
    case Family::SHO_PLUS_PHI:
    case Family::SHO_PRIME_PLUS_PHI:
    case Family::SHO_HAT_PLUS_PHI:
    case Family::SHO_PRIME_HAT_PLUS_PHI:
        return true;
    default:
        return false;
    }
}

bool AlgebraSpec::contains_constants() const { return is_hat() || is_contact(); }

int AlgebraSpec::depth() const { return contains_constants() ? 2 : 1; }

VariableSet AlgebraSpec::vars() const
{
    if (family == Family::HAM)
        return VariableSet(VariableSet::Shape::PQXi, 2 * n, m, false);
    if (is_contact())
        return VariableSet(VariableSet::Shape::XXi, n, n, true);
    return VariableSet(VariableSet::Shape::XXi, n, n, false);
}

namespace {

const std::vector<std::pair<std::string, Family>>& family_table()
{
    static const std::vector<std::pair<std::string, Family>> t = {
        {"^SHO'+Phi", Family::SHO_PRIME_HAT_PLUS_PHI},
        {"SHO'_HAT+Phi", Family::SHO_PRIME_HAT_PLUS_PHI},
        {"^SHO+Phi", Family::SHO_HAT_PLUS_PHI},
        {"SHO_HAT+Phi", Family::SHO_HAT_PLUS_PHI},
        {"SHO'+Phi", Family::SHO_PRIME_PLUS_PHI},
        {"SHO+Phi", Family::SHO_PLUS_PHI},
        {"^SHO'", Family::SHO_PRIME_HAT},
        {"SHO'_HAT", Family::SHO_PRIME_HAT},
        {"SHO_PRIME_HAT", Family::SHO_PRIME_HAT},
        {"^SHO", Family::SHO_HAT},
        {"SHO_HAT", Family::SHO_HAT},
        {"^HO", Family::HO_HAT},
        {"HO_HAT", Family::HO_HAT},
        {"SHO'", Family::SHO_PRIME},
        {"SHO_PRIME", Family::SHO_PRIME},
        {"SKO'", Family::SKO_PRIME},
        {"SKO_PRIME", Family::SKO_PRIME},
        {"SHO", Family::SHO},
        {"SKO", Family::SKO},
        {"KO", Family::KO},
        {"HO", Family::HO},
        {"HAM", Family::HAM},
        {"H", Family::HAM},
    };
    return t;
}

} // namespace

AlgebraSpec AlgebraSpec::parse(const std::string& text)
{
    auto fail = [&](const std::string& why, std::size_t at) {
        throw std::invalid_argument("algebra spec '" + text + "': " + why + " (position " +
                                    std::to_string(at) + ")");
    };
    std::size_t open = text.find('(');
    if (open == std::string::npos)
        fail("expected '('", text.size());
    std::string name = text.substr(0, open);
    Family fam{};
    bool found = false;
    for (const auto& [key, value] : family_table())
        if (name == key) {
            fam = value;
            found = true;
            break;
        }
    if (!found)
        fail("unknown family '" + name + "'", 0);
    std::size_t close = text.find(')', open);
    if (close == std::string::npos || close != text.size() - 1)
        fail("expected closing ')'", text.size());
    std::string args = text.substr(open + 1, close - open - 1);

    std::string beta_part;
    std::size_t semi = args.find(';');
    if (semi != std::string::npos) {
        beta_part = args.substr(semi + 1);
        args = args.substr(0, semi);
    }
    std::size_t comma = args.find(',');
    if (comma == std::string::npos)
        fail("expected 'n,m'", open + 1);
    AlgebraSpec spec;
    spec.family = fam;
    try {
        int a = std::stoi(args.substr(0, comma));
        int b = std::stoi(args.substr(comma + 1));
        bool is_sko = (fam == Family::SKO || fam == Family::SKO_PRIME);
        if (fam == Family::HAM) {
            if (a % 2 != 0 || a <= 0)
                fail("H(2n,m) needs an even first argument", open + 1);
            spec.n = a / 2;
            spec.m = b;
        } else if (fam == Family::KO || is_sko) {
            if (b != a + 1)
                fail("contact families need arguments (n,n+1)", open + 1);
            spec.n = a;
        } else {
            if (b != a)
                fail("this family needs arguments (n,n)", open + 1);
            spec.n = a;
        }
        if (is_sko) {
            if (beta_part.empty())
                fail("SKO families need ';beta'", close);
            spec.beta = parse_rational(beta_part);
        } else if (!beta_part.empty()) {
            fail("beta given for a family that takes none", semi);
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        fail("bad numeric arguments", open + 1);
    }
    if (spec.n < 1 || spec.n > 6 || (fam == Family::HAM && (spec.m < 0 || spec.m > 8)))
        fail("rank out of supported range", open + 1);
    return spec;
}

std::string AlgebraSpec::str() const
{
    std::ostringstream os;
    os << family_name(family) << "(";
    if (family == Family::HAM)
        os << 2 * n << "," << m;
    else if (is_contact())
        os << n << "," << n + 1;
    else
        os << n << "," << n;
    if (family == Family::SKO || family == Family::SKO_PRIME)
        os << ";" << rat_str(beta);
    os << ")";
    return os.str();
}

namespace {

// Splits f into its Lambda-parity-homogeneous pieces; [0] even, [1] odd.
std::array<SuperPolynomial, 2> parity_split(const SuperPolynomial& f)
{
    std::array<SuperPolynomial, 2> parts{SuperPolynomial(f.vars()), SuperPolynomial(f.vars())};
    for (const auto& [m, c] : f.terms())
        parts[m.lambda_parity()].add_term(m, c);
    return parts;
}

} // namespace

SuperPolynomial buttin_bracket(const SuperPolynomial& f, const SuperPolynomial& g)
{
    const VariableSet& vs = f.vars();
    if (vs.has_tau())
        throw std::invalid_argument("buttin_bracket: tau present");
    if (vs.even_count() != vs.odd_count())
        throw std::invalid_argument("buttin_bracket: needs balanced variable set");
    auto [f0, f1] = parity_split(f);
    SuperPolynomial out(vs);
    for (int k = 0; k < vs.even_count(); ++k) {
        out += multiply(partial_even(f, k), partial_odd(g, k));
        out += multiply(partial_odd(f0, k), partial_even(g, k));
        out -= multiply(partial_odd(f1, k), partial_even(g, k));
    }
    return out;
}

SuperPolynomial contact_bracket(const SuperPolynomial& f, const SuperPolynomial& g)
{
    const VariableSet& vs = f.vars();
    if (!vs.has_tau())
        throw std::invalid_argument("contact_bracket: variable set has no tau");
    auto two_minus_e = [](const SuperPolynomial& h) {
        return Rational(2) * h - euler(h);
    };
    auto [f0, f1] = parity_split(f);
    SuperPolynomial out(vs);
    out += multiply(two_minus_e(f), partial_tau(g));
    out += multiply(partial_tau(f0), two_minus_e(g));
    out -= multiply(partial_tau(f1), two_minus_e(g));
    for (int k = 0; k < vs.even_count(); ++k) {
        out -= multiply(partial_even(f, k), partial_odd(g, k));
        out -= multiply(partial_odd(f0, k), partial_even(g, k));
        out += multiply(partial_odd(f1, k), partial_even(g, k));
    }
    return out;
}

SuperPolynomial poisson_bracket(const SuperPolynomial& f, const SuperPolynomial& g)
{
    const VariableSet& vs = f.vars();
    if (vs.shape() != VariableSet::Shape::PQXi)
        throw std::invalid_argument("poisson_bracket: needs p/q variable layout");
    int n = vs.even_count() / 2;
    auto [f0, f1] = parity_split(f);
    SuperPolynomial out(vs);
    for (int i = 0; i < n; ++i) {
        out += multiply(partial_even(f, i), partial_even(g, n + i));
        out -= multiply(partial_even(f, n + i), partial_even(g, i));
    }
    for (int j = 0; j < vs.odd_count(); ++j) {
        out -= multiply(partial_odd(f0, j), partial_odd(g, j));
        out += multiply(partial_odd(f1, j), partial_odd(g, j));
    }
    return out;
}

std::vector<std::pair<SuperPolynomial, std::string>> to_vector_field(const SuperPolynomial& f)
{
    const VariableSet& vs = f.vars();
    if (vs.has_tau() || vs.even_count() != vs.odd_count())
        throw std::invalid_argument("to_vector_field: needs Lambda(n,n)");
    auto [f0, f1] = parity_split(f);
    std::vector<std::pair<SuperPolynomial, std::string>> out;
    for (int i = 0; i < vs.even_count(); ++i) {
        SuperPolynomial cx = partial_even(f, i);
        if (!cx.is_zero())
            out.emplace_back(cx, vs.odd_name(i));
        SuperPolynomial cxi = partial_odd(f0, i) - partial_odd(f1, i);
        if (!cxi.is_zero())
            out.emplace_back(cxi, vs.even_name(i));
    }
    return out;
}

namespace {

SuperPolynomial vf_apply(const VariableSet& vs,
                         const std::vector<std::pair<SuperPolynomial, std::string>>& d,
                         const SuperPolynomial& h)
{
    SuperPolynomial out(vs);
    for (const auto& [coef, name] : d)
        out += multiply(coef, partial(h, name));
    return out;
}

int vf_parity(const VariableSet& vs, const std::vector<std::pair<SuperPolynomial, std::string>>& d)
{
    int p = -1;
    for (const auto& [coef, name] : d) {
        bool is_even = false, is_tau = false;
        int idx = -1;
        vs.lookup(name, is_even, is_tau, idx);
        int dir_parity = is_even ? 0 : 1;
        int cp = coef.lambda_parity();
        if (cp < 0)
            throw std::invalid_argument("vf_commutator: mixed-parity coefficient");
        int tp = (cp + dir_parity) & 1;
        if (p == -1)
            p = tp;
        else if (p != tp)
            throw std::invalid_argument("vf_commutator: mixed-parity vector field");
    }
    return p < 0 ? 0 : p;
}

} // namespace

std::vector<std::pair<SuperPolynomial, std::string>> vf_commutator(
    const VariableSet& vs,
    const std::vector<std::pair<SuperPolynomial, std::string>>& a,
    const std::vector<std::pair<SuperPolynomial, std::string>>& b)
{
    int pa = vf_parity(vs, a), pb = vf_parity(vs, b);
    int sign = (pa && pb) ? -1 : 1;
    std::vector<std::pair<SuperPolynomial, std::string>> out;
    std::vector<std::string> names;
    for (int i = 0; i < vs.even_count(); ++i)
        names.push_back(vs.even_name(i));
    for (int i = 0; i < vs.odd_count(); ++i)
        names.push_back(vs.odd_name(i));
    if (vs.has_tau())
        names.push_back("tau");
    for (const auto& v : names) {
        SuperPolynomial bv(vs), av(vs);
        for (const auto& [coef, name] : b)
            if (name == v)
                bv += coef;
        for (const auto& [coef, name] : a)
            if (name == v)
                av += coef;
        SuperPolynomial c = vf_apply(vs, a, bv) - Rational(sign) * vf_apply(vs, b, av);
        if (!c.is_zero())
            out.emplace_back(c, v);
    }
    return out;
}

std::vector<SuperMonomial> monomials_of_weight(const VariableSet& vs, int w)
{
    std::vector<SuperMonomial> out;
    if (w < 0)
        return out;
    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 0; mask < (1u << vs.odd_count()); ++mask)
        masks.push_back(mask);
    for (int tau = 0; tau <= (vs.has_tau() ? 1 : 0); ++tau) {
        for (std::uint32_t mask : masks) {
            int rest = w - std::popcount(mask) - 2 * tau;
            if (rest < 0)
                continue;
            // distribute `rest` over the even exponents
            std::vector<unsigned> exp(vs.even_count(), 0);
            std::function<void(int, int)> rec = [&](int i, int left) {
                if (i == vs.even_count()) {
                    if (left != 0)
                        return;
                    SuperMonomial m;
                    for (int k = 0; k < vs.even_count(); ++k)
                        m.set_exponent(k, exp[k]);
                    m.set_odd_mask(mask);
                    m.set_tau(tau != 0);
                    out.push_back(m);
                    return;
                }
                for (int e = 0; e <= left; ++e) {
                    exp[i] = static_cast<unsigned>(e);
                    rec(i + 1, left - e);
                }
                exp[i] = 0;
            };
            if (vs.even_count() == 0) {
                if (rest == 0)
                    rec(0, 0);
            } else {
                rec(0, rest);
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [&](const SuperMonomial& a, const SuperMonomial& b) {
                  return MonomialLess{vs}(a, b);
              });
    return out;
}

GradedAlgebra::GradedAlgebra(const AlgebraSpec& spec, int degree_cap)
    : spec_(spec), vs_(spec.vars()), cap_(degree_cap)
{
    if (spec_.family == Family::SKO || spec_.family == Family::SKO_PRIME) {
        // nothing to validate: construction is allowed at every beta
    }
}

int GradedAlgebra::lie_degree(const SuperPolynomial& f) const
{
    int w = 0;
    if (!f.weight_homogeneous(&w))
        throw std::invalid_argument("lie_degree: element is not weight-homogeneous");
    return w - 2;
}

int GradedAlgebra::lie_parity(const SuperMonomial& m) const
{
    return (m.lambda_parity() + (spec_.parity_reversed() ? 1 : 0)) & 1;
}

int GradedAlgebra::lie_parity(const SuperPolynomial& f) const
{
    int p = f.lambda_parity();
    if (p < 0)
        return -1;
    return (p + (spec_.parity_reversed() ? 1 : 0)) & 1;
}

const DegreeBasis& GradedAlgebra::component(int j) const
{
    auto it = bases_.find(j);
    if (it != bases_.end())
        return it->second;
    if (j > cap_)
        throw std::out_of_range("GradedAlgebra: degree " + std::to_string(j) +
                                " exceeds cap " + std::to_string(cap_) +
                                "; construct with a cap of at least " + std::to_string(j));
    return bases_.emplace(j, build_component(j)).first->second;
}

DegreeBasis GradedAlgebra::build_component(int j) const
{
    DegreeBasis basis;
    int w = j + 2;
    if (w < 0 || j < -depth())
        return basis;
    if (w == 0 && !spec_.contains_constants())
        return basis;

    std::vector<SuperMonomial> slice = monomials_of_weight(vs_, w);
    if (slice.empty())
        return basis;

    bool constrained = spec_.is_sho_like() || spec_.family == Family::SKO ||
                       spec_.family == Family::SKO_PRIME;

    // Family cut monomials (removed from the derived algebra).
    std::vector<SuperMonomial> cuts;
    auto full_odd = [&]() {
        SuperMonomial m;
        m.set_odd_mask((1u << vs_.odd_count()) - 1);
        return m;
    };
    switch (spec_.family) {
    case Family::SHO:
    case Family::SHO_HAT:
    case Family::SHO_PLUS_PHI:
    case Family::SHO_HAT_PLUS_PHI:
        if (w == spec_.n)
            cuts.push_back(full_odd());
        break;
    case Family::SKO:
        if (spec_.beta == Rational(1) && w == spec_.n + 2) {
            SuperMonomial m = full_odd();
            m.set_tau(true);
            cuts.push_back(m);
        }
        if (spec_.beta == Rational(spec_.n - 2, spec_.n) && w == spec_.n)
            cuts.push_back(full_odd());
        break;
    default:
        break;
    }

    if (!constrained) {
        for (const auto& m : slice) {
            basis.vectors.push_back(make_monomial(vs_, m));
            basis.free_monomials.push_back(m);
        }
    } else {
        // kernel of the constraint operator on this weight slice
        std::vector<SuperMonomial> image = monomials_of_weight(vs_, w - 2);
        std::map<std::uint64_t, std::size_t> image_index;
        for (std::size_t i = 0; i < image.size(); ++i)
            image_index[image[i].bits] = i;
        SparseRationalMatrix con(image.size(), slice.size());
        for (std::size_t c = 0; c < slice.size(); ++c) {
            SuperPolynomial mono = make_monomial(vs_, slice[c]);
            SuperPolynomial im = spec_.is_contact()
                                     ? divergence_beta(mono, spec_.beta)
                                     : odd_laplacian(mono);
            for (const auto& [m, v] : im.terms())
                con.add(image_index.at(m.bits), c, v);
        }
        std::vector<std::size_t> free_cols;
        auto kern = con.kernel_basis(&free_cols);
        for (std::size_t k = 0; k < kern.size(); ++k) {
            SuperPolynomial vec(vs_);
            for (std::size_t c = 0; c < slice.size(); ++c)
                if (!is_zero(kern[k][c]))
                    vec.add_term(slice[c], kern[k][c]);
            basis.vectors.push_back(vec);
            basis.free_monomials.push_back(slice[free_cols[k]]);
        }
    }

    // derived-algebra cuts: remove the basis vector owning the cut monomial
    for (const auto& cut : cuts) {
        for (std::size_t k = 0; k < basis.vectors.size(); ++k) {
            if (basis.free_monomials[k] == cut) {
                basis.vectors.erase(basis.vectors.begin() + k);
                basis.free_monomials.erase(basis.free_monomials.begin() + k);
                break;
            }
        }
    }

    // adjoin Phi to degree 0 for the +CPhi families
    if (j == 0) {
        switch (spec_.family) {
        case Family::SHO_PLUS_PHI:
        case Family::SHO_PRIME_PLUS_PHI:
        case Family::SHO_HAT_PLUS_PHI:
        case Family::SHO_PRIME_HAT_PLUS_PHI: {
            SuperPolynomial p = phi();
            basis.vectors.push_back(p);
            // Phi is not in ker Delta, so its leading monomial x1*xi1 is free
            SuperMonomial lead;
            lead.set_exponent(0, 1);
            lead.set_odd_mask(1u);
            basis.free_monomials.push_back(lead);
            break;
        }
        default:
            break;
        }
    }
    return basis;
}

std::optional<std::vector<Rational>> GradedAlgebra::coordinates(int j,
                                                                const SuperPolynomial& f) const
{
    const DegreeBasis& b = component(j);
    if (f.is_zero())
        return std::vector<Rational>(b.dim(), Rational(0));
    std::vector<Rational> coords(b.dim(), Rational(0));
    SuperPolynomial rem = f;
    for (std::size_t k = 0; k < b.dim(); ++k) {
        Rational c = rem.coeff(b.free_monomials[k]);
        if (!is_zero(c)) {
            coords[k] = c;
            rem -= c * b.vectors[k];
        }
    }
    if (rem.is_zero())
        return coords; // unique since the basis is independent

    // General solve for bases without the one-free-monomial invariant
    // (the +CPhi degree-0 component). Kernel of [B | f] yields the answer.
    std::map<std::uint64_t, std::size_t> row_of;
    auto index_terms = [&](const SuperPolynomial& p) {
        for (const auto& [m, c] : p.terms())
            row_of.emplace(m.bits, row_of.size());
    };
    for (const auto& v : b.vectors)
        index_terms(v);
    index_terms(f);
    SparseRationalMatrix aug(row_of.size(), b.dim() + 1);
    for (std::size_t k = 0; k < b.dim(); ++k)
        for (const auto& [m, c] : b.vectors[k].terms())
            aug.set(row_of.at(m.bits), k, c);
    for (const auto& [m, c] : f.terms())
        aug.set(row_of.at(m.bits), b.dim(), c);
    for (const auto& v : aug.kernel_basis()) {
        if (!is_zero(v[b.dim()])) {
            Rational inv = Rational(-1) / v[b.dim()];
            for (std::size_t k = 0; k < b.dim(); ++k)
                coords[k] = v[k] * inv;
            return coords;
        }
    }
    return std::nullopt;
}

bool GradedAlgebra::contains(const SuperPolynomial& f) const
{
    if (f.is_zero())
        return true;
    std::map<int, SuperPolynomial> by_degree;
    for (const auto& [m, c] : f.terms()) {
        int j = m.weight(vs_) - 2;
        auto it = by_degree.find(j);
        if (it == by_degree.end())
            it = by_degree.emplace(j, SuperPolynomial(vs_)).first;
        it->second.add_term(m, c);
    }
    for (const auto& [j, part] : by_degree) {
        if (j < -depth())
            return false;
        if (!coordinates(j, part))
            return false;
    }
    return true;
}

SuperPolynomial GradedAlgebra::bracket(const SuperPolynomial& a, const SuperPolynomial& b) const
{
    SuperPolynomial raw(vs_);
    if (spec_.family == Family::HAM)
        raw = poisson_bracket(a, b);
    else if (spec_.is_contact())
        raw = contact_bracket(a, b);
    else
        raw = buttin_bracket(a, b);
    if (!spec_.contains_constants()) {
        Rational c = raw.constant_term();
        if (!is_zero(c))
            raw.add_term(SuperMonomial::one(), -c);
    }
    return raw;
}

std::vector<SuperPolynomial> GradedAlgebra::odd_degree_component(int j, int weight_cap) const
{
    if (!spec_.is_sho_like() && spec_.family != Family::HO && spec_.family != Family::HO_HAT)
        throw std::invalid_argument("odd_degree_component: HO/SHO variants only");
    std::vector<SuperPolynomial> out;
    if (j < 0 || j > vs_.odd_count())
        return out;
    for (int deg = -depth(); deg + 2 <= weight_cap; ++deg) {
        for (const auto& v : component(deg).vectors) {
            bool match = true;
            for (const auto& [m, c] : v.terms())
                if (m.odd_degree() != j) {
                    match = false;
                    break;
                }
            if (match && !v.is_zero())
                out.push_back(v);
        }
    }
    return out;
}

SuperPolynomial GradedAlgebra::phi() const
{
    if (vs_.shape() != VariableSet::Shape::XXi || vs_.even_count() != vs_.odd_count())
        throw std::invalid_argument("phi: needs Lambda(n,n) variables");
    SuperPolynomial p(vs_);
    for (int i = 0; i < vs_.even_count(); ++i)
        p += multiply(make_even(vs_, i), make_odd(vs_, i));
    return p;
}

SuperPolynomial GradedAlgebra::tau_beta_phi() const
{
    if (!spec_.is_contact())
        throw std::invalid_argument("tau_beta_phi: contact families only");
    return make_tau(vs_) + spec_.beta * phi();
}

} // namespace spencer
