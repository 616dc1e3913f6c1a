#include "spencer/deformation.hpp"

#include <stdexcept>

namespace spencer {

std::string variant_name(DeformVariant v)
{
    switch (v) {
    case DeformVariant::SHO_HAT_EPS: return "SHO_HAT_EPS";
    case DeformVariant::SHO_PRIME_EPS: return "SHO_PRIME_EPS";
    case DeformVariant::SKO_EPS: return "SKO_EPS";
    }
    return "?";
}

DeformVariant parse_variant(const std::string& s)
{
    if (s == "SHO_HAT_EPS" || s == "5.1")
        return DeformVariant::SHO_HAT_EPS;
    if (s == "SHO_PRIME_EPS" || s == "5.9")
        return DeformVariant::SHO_PRIME_EPS;
    if (s == "SKO_EPS" || s == "5.10")
        return DeformVariant::SKO_EPS;
    throw std::invalid_argument("unknown deformation variant '" + s + "'");
}

Deformation::Deformation(DeformVariant variant, int n, Family base) : variant_(variant), n_(n)
{
    AlgebraSpec spec;
    switch (variant) {
    case DeformVariant::SHO_HAT_EPS:
        if (base != Family::SHO_HAT && base != Family::SHO_PRIME_HAT)
            throw std::invalid_argument("SHO_HAT_EPS: base must be hat SHO or hat SHO'");
        if (n % 2 != 0)
            throw std::invalid_argument(
                "SHO_HAT_EPS: the deforming map is odd for odd n; construction rejected");
        spec.family = base;
        spec.n = n;
        break;
    case DeformVariant::SHO_PRIME_EPS:
        if (n % 2 != 0)
            throw std::invalid_argument(
                "SHO_PRIME_EPS: the deforming map is odd for odd n; construction rejected");
        spec.family = Family::SHO_PRIME;
        spec.n = n;
        break;
    case DeformVariant::SKO_EPS:
        if (n % 2 == 0)
            throw std::invalid_argument(
                "SKO_EPS: the deforming map is odd for even n; construction rejected");
        spec.family = Family::SKO;
        spec.n = n;
        spec.beta = rat(n + 2, n);
        break;
    }
    A_ = std::make_unique<GradedAlgebra>(spec);
}

int Deformation::mu_degree() const
{
    return variant_ == DeformVariant::SKO_EPS ? n_ + 2 : n_;
}

SuperPolynomial Deformation::scalar_free_part(const SuperPolynomial& f) const
{
    SuperPolynomial out(f.vars());
    for (const auto& [m, c] : f.terms())
        if (m.odd_mask() == 0 && !m.tau())
            out.add_term(m, c);
    return out;
}

SuperPolynomial Deformation::mu(const SuperPolynomial& f, const SuperPolynomial& g) const
{
    const VariableSet& vs = A_->vars();
    SuperPolynomial f0 = scalar_free_part(f), g0 = scalar_free_part(g);
    if (f0.is_zero() || g0.is_zero())
        return SuperPolynomial(vs);
    SuperPolynomial prod = multiply(f0, g0);
    switch (variant_) {
    case DeformVariant::SHO_HAT_EPS:
        return buttin_bracket(full_odd_monomial(vs), prod);
    case DeformVariant::SHO_PRIME_EPS: {
        // the quotient bracket (5.9) also maps the central output to the top
        // odd monomial; that part lives in bracket_eps, mu is the g^0 clause
        return buttin_bracket(full_odd_monomial(vs), prod);
    }
    case DeformVariant::SKO_EPS: {
        SuperPolynomial top = full_odd_monomial(vs);
        return contact_bracket(tau_full_odd_monomial(vs), prod) +
               Rational(2) * multiply(prod, top);
    }
    }
    return SuperPolynomial(vs);
}

SuperPolynomial Deformation::bracket_eps(const SuperPolynomial& f, const SuperPolynomial& g) const
{
    SuperPolynomial out = A_->bracket(f, g) + mu(f, g);
    if (variant_ == DeformVariant::SHO_PRIME_EPS) {
        // [x_i, xi_j]_eps = delta_ij xi_1..xi_n: the dropped constant term of
        // the raw bracket reappears on the top odd monomial
        Rational c = buttin_bracket(f, g).constant_term();
        if (!is_zero(c))
            out += c * full_odd_monomial(A_->vars());
    }
    return out;
}

JacobiReport Deformation::jacobi_verify(int cap) const
{
    JacobiReport rep;
    const GradedAlgebra& A = *A_;
    std::vector<std::pair<int, SuperPolynomial>> basis;
    for (int j = -A.depth(); j <= cap; ++j)
        for (const auto& v : A.component(j).vectors)
            basis.emplace_back(j, v);

    auto p = [&](const SuperPolynomial& x) { return A.lie_parity(x); };

    // super skew-symmetry of the deformed bracket on all pairs
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a; b < basis.size(); ++b) {
            if (basis[a].first + basis[b].first > cap)
                continue;
            int s = (p(basis[a].second) == 1 && p(basis[b].second) == 1) ? 1 : -1;
            SuperPolynomial lhs = bracket_eps(basis[a].second, basis[b].second);
            SuperPolynomial rhs = Rational(s) * bracket_eps(basis[b].second, basis[a].second);
            if (lhs != rhs) {
                ++rep.violation_count;
                if (rep.violations.size() < 10)
                    rep.violations.push_back({render(basis[a].second), render(basis[b].second),
                                              "skew: " + render(lhs - rhs)});
            }
        }

    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a; b < basis.size(); ++b)
            for (std::size_t c = b; c < basis.size(); ++c) {
                if (basis[a].first + basis[b].first + basis[c].first > cap)
                    continue;
                const SuperPolynomial& h = basis[a].second;
                const SuperPolynomial& f = basis[b].second;
                const SuperPolynomial& g = basis[c].second;
                int s = (p(h) == 1 && p(f) == 1) ? -1 : 1;
                SuperPolynomial resid = bracket_eps(h, bracket_eps(f, g));
                resid -= bracket_eps(bracket_eps(h, f), g);
                resid -= Rational(s) * bracket_eps(f, bracket_eps(h, g));
                ++rep.checked_triples;
                if (!resid.is_zero()) {
                    ++rep.violation_count;
                    if (rep.violations.size() < 10)
                        rep.violations.push_back(
                            {render(h), render(f), render(g) + " -> " + render(resid)});
                }
            }
    return rep;
}

Cochain Deformation::mu_cochain() const
{
    const GradedAlgebra& A = *A_;
    CochainSpacePtr S = make_cochain_space(A, 2, mu_degree());
    const GMinus& gm = S->gminus();
    Cochain out(S);
    for (const auto& info : S->words()) {
        const auto& E = info.word.evens;
        const auto& O = info.word.odds;
        SuperPolynomial val(A.vars());
        if (E.size() == 2)
            val = bracket_eps(gm.evens[E[0]].value, gm.evens[E[1]].value) -
                  A.bracket(gm.evens[E[0]].value, gm.evens[E[1]].value);
        else if (E.size() == 1)
            val = bracket_eps(gm.evens[E[0]].value, gm.odds[O[0]].value) -
                  A.bracket(gm.evens[E[0]].value, gm.odds[O[0]].value);
        else
            val = bracket_eps(gm.odds[O[0]].value, gm.odds[O[1]].value) -
                  A.bracket(gm.odds[O[0]].value, gm.odds[O[1]].value);
        if (val.is_zero())
            continue;
        auto co = A.coordinates(info.target_degree, val);
        if (!co)
            throw std::logic_error("mu_cochain: value left the algebra");
        for (std::size_t t = 0; t < info.target_dim; ++t)
            out.coef[info.offset + t] = (*co)[t];
    }
    return out;
}

CocycleCheck Deformation::cocycle_and_invariance_check() const
{
    const GradedAlgebra& A = *A_;
    CocycleCheck res;
    Cochain mu2 = mu_cochain();
    res.is_2cocycle = coboundary(mu2).is_zero();
    res.even = mu2.parity() == 0;

    ReductiveActionSpec actspec = reductive_action(A);
    res.a_invariant = true;
    for (const auto& gen : actspec.generators)
        if (!act(gen, mu2).is_zero()) {
            res.a_invariant = false;
            break;
        }

    // nontrivial: not a coboundary of a 1-cochain of the same degree
    CochainSpacePtr S1 = make_cochain_space(A, 1, mu_degree());
    SparseRationalMatrix dspan(mu2.coef.size(), 0);
    for (std::size_t i = 0; i < S1->dim(); ++i) {
        Cochain e(S1);
        e.coef[i] = 1;
        Cochain img = coboundary(e);
        if (!img.is_zero())
            dspan.append_column(img.coef);
    }
    res.class_nontrivial = !mu2.is_zero() && !dspan.in_span(mu2.coef);
    return res;
}

bool rho_check(int n, int cap)
{
    if (n % 2 != 0)
        throw std::invalid_argument("rho_check: even n required");
    Deformation hat(DeformVariant::SHO_HAT_EPS, n, Family::SHO_HAT);
    Deformation prime(DeformVariant::SHO_PRIME_EPS, n);
    const VariableSet& vs = hat.algebra().vars();
    SuperPolynomial top = full_odd_monomial(vs);

    auto rho = [&](const SuperPolynomial& f) {
        Rational c = f.constant_term();
        SuperPolynomial out = f;
        if (!is_zero(c)) {
            out.add_term(SuperMonomial::one(), -c);
            out += c * top;
        }
        return out;
    };

    const GradedAlgebra& A = hat.algebra();
    std::vector<std::pair<int, SuperPolynomial>> basis;
    for (int j = -A.depth(); j <= cap; ++j)
        for (const auto& v : A.component(j).vectors)
            basis.emplace_back(j, v);
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a; b < basis.size(); ++b) {
            if (basis[a].first + basis[b].first > cap)
                continue;
            SuperPolynomial lhs = rho(hat.bracket_eps(basis[a].second, basis[b].second));
            SuperPolynomial rhs =
                prime.bracket_eps(rho(basis[a].second), rho(basis[b].second));
            if (lhs != rhs)
                return false;
        }
    return true;
}

bool central_shift_check(int n, int cap)
{
    if (n % 2 != 0)
        throw std::invalid_argument("central_shift_check: even n required");
    Deformation hat(DeformVariant::SHO_HAT_EPS, n, Family::SHO_PRIME_HAT);
    const GradedAlgebra& A = hat.algebra();
    const VariableSet& vs = A.vars();
    SuperPolynomial z = make_const(vs, 1) - full_odd_monomial(vs);
    for (int j = -A.depth(); j <= cap; ++j)
        for (const auto& v : A.component(j).vectors) {
            if (!hat.bracket_eps(z, v).is_zero())
                return false;
            if (!hat.bracket_eps(v, z).is_zero())
                return false;
        }
    return true;
}

} // namespace spencer
