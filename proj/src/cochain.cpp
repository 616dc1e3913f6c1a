#include "spencer/cochain.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace spencer {

GMinus g_minus(const GradedAlgebra& A)
{
    GMinus gm;
    for (int j = -1; j >= -A.depth(); --j) {
        const DegreeBasis& b = A.component(j);
        for (const auto& v : b.vectors) {
            int p = A.lie_parity(v);
            if (p < 0)
                throw std::logic_error("g_minus: basis vector of mixed parity");
            GMinus::Elem e{v, j, render(v)};
            (p == 0 ? gm.evens : gm.odds).push_back(std::move(e));
        }
    }
    return gm;
}

namespace {

// Maps component(d) basis indices to positions in the GMinus parity lists.
std::vector<std::pair<bool, int>> component_to_gminus(const GradedAlgebra& A, const GMinus& gm,
                                                      int d)
{
    const DegreeBasis& comp = A.component(d);
    std::vector<std::pair<bool, int>> out(comp.dim());
    int even_seen = 0, odd_seen = 0;
    std::vector<int> even_pos, odd_pos;
    for (std::size_t i = 0; i < gm.evens.size(); ++i)
        if (gm.evens[i].degree == d)
            even_pos.push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < gm.odds.size(); ++i)
        if (gm.odds[i].degree == d)
            odd_pos.push_back(static_cast<int>(i));
    for (std::size_t ci = 0; ci < comp.dim(); ++ci) {
        int p = A.lie_parity(comp.vectors[ci]);
        if (p == 0)
            out[ci] = {true, even_pos.at(even_seen++)};
        else
            out[ci] = {false, odd_pos.at(odd_seen++)};
    }
    return out;
}

// Expansion of a parity- and degree-homogeneous element of g_- over the
// GMinus basis: list of (is_even, index, coefficient).
std::vector<std::tuple<bool, int, Rational>> expand_gminus(const GradedAlgebra& A,
                                                           const GMinus& gm,
                                                           const SuperPolynomial& v)
{
    std::vector<std::tuple<bool, int, Rational>> out;
    if (v.is_zero())
        return out;
    int d = A.lie_degree(v);
    auto co = A.coordinates(d, v);
    if (!co)
        throw std::invalid_argument("expand_gminus: element not in the algebra");
    auto where = component_to_gminus(A, gm, d);
    for (std::size_t ci = 0; ci < co->size(); ++ci)
        if (!is_zero((*co)[ci]))
            out.emplace_back(where[ci].first, where[ci].second, (*co)[ci]);
    return out;
}

} // namespace

CochainSpace::CochainSpace(const GradedAlgebra& A, int j, int l)
    : A_(&A), j_(j), l_(l), gm_(g_minus(A))
{
    if (j < 0)
        throw std::invalid_argument("CochainSpace: negative order");
    if (l - j > A.degree_cap())
        throw std::out_of_range("CochainSpace: target degree " + std::to_string(l - j) +
                                " exceeds cap; construct the algebra with cap >= " +
                                std::to_string(l - j));
    int ne = static_cast<int>(gm_.evens.size());
    int no = static_cast<int>(gm_.odds.size());

    std::vector<int> evens, odds;
    auto record = [&]() {
        int wdeg = 0;
        for (int e : evens)
            wdeg -= gm_.evens[e].degree;
        for (int o : odds)
            wdeg -= gm_.odds[o].degree;
        int k = l_ - wdeg;
        if (k < -A_->depth())
            return;
        const DegreeBasis& target = A_->component(k);
        if (target.dim() == 0)
            return;
        WordInfo w;
        w.word = DualWord{evens, odds};
        w.wdeg = wdeg;
        w.target_degree = k;
        w.offset = dim_;
        w.target_dim = target.dim();
        index_[{evens, odds}] = static_cast<int>(words_.size());
        int wpar = static_cast<int>(odds.size()) & 1;
        for (const auto& tv : target.vectors) {
            int tp = A_->lie_parity(tv);
            if (tp < 0)
                throw std::logic_error("CochainSpace: mixed-parity target vector");
            parity_.push_back((wpar + tp) & 1);
        }
        dim_ += target.dim();
        words_.push_back(std::move(w));
    };
    std::function<void(int)> fill_odds = [&](int from) {
        if (static_cast<int>(evens.size() + odds.size()) == j_) {
            record();
            return;
        }
        for (int o = from; o < no; ++o) {
            odds.push_back(o);
            fill_odds(o);
            odds.pop_back();
        }
    };
    std::function<void(int)> fill_evens = [&](int from) {
        fill_odds(0);
        if (static_cast<int>(evens.size()) == j_)
            return;
        for (int e = from; e < ne; ++e) {
            evens.push_back(e);
            fill_evens(e + 1);
            evens.pop_back();
        }
    };
    fill_evens(0);
}

int CochainSpace::word_index(const std::vector<int>& evens, const std::vector<int>& odds) const
{
    auto it = index_.find({evens, odds});
    return it == index_.end() ? -1 : it->second;
}

std::string CochainSpace::basis_name(std::size_t i) const
{
    for (const auto& w : words_) {
        if (i >= w.offset && i < w.offset + w.target_dim) {
            std::ostringstream os;
            for (int e : w.word.evens)
                os << "(" << gm_.evens[e].name << ")' ";
            for (int o : w.word.odds)
                os << "(" << gm_.odds[o].name << ")' ";
            os << "(x) " << render(A_->component(w.target_degree).vectors[i - w.offset]);
            return os.str();
        }
    }
    throw std::out_of_range("CochainSpace::basis_name");
}

CochainSpacePtr make_cochain_space(const GradedAlgebra& A, int j, int l)
{
    return std::make_shared<const CochainSpace>(A, j, l);
}

bool Cochain::is_zero() const
{
    for (const auto& c : coef)
        if (!spencer::is_zero(c))
            return false;
    return true;
}

int Cochain::parity() const
{
    int p = -1;
    for (std::size_t i = 0; i < coef.size(); ++i) {
        if (spencer::is_zero(coef[i]))
            continue;
        int q = space->basis_parity(i);
        if (p == -1)
            p = q;
        else if (p != q)
            return -1;
    }
    return p;
}

Cochain& Cochain::operator+=(const Cochain& o)
{
    if (space != o.space && (space->order() != o.space->order() ||
                             space->degree() != o.space->degree() || space->dim() != o.space->dim()))
        throw std::invalid_argument("Cochain: mismatched spaces");
    for (std::size_t i = 0; i < coef.size(); ++i)
        coef[i] += o.coef[i];
    return *this;
}

Cochain& Cochain::operator*=(const Rational& c)
{
    for (auto& x : coef)
        x *= c;
    return *this;
}

std::string render(const Cochain& c)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c.coef.size(); ++i) {
        if (is_zero(c.coef[i]))
            continue;
        if (!first)
            os << " + ";
        os << rat_str(c.coef[i]) << "*[" << c.space->basis_name(i) << "]";
        first = false;
    }
    if (first)
        os << "0";
    return os.str();
}

namespace {

// Sorts the even-argument block tracking the alternating sign; 0 on repeats.
int normalize_even_args(std::vector<int>& evens)
{
    int sign = 1;
    for (std::size_t i = 1; i < evens.size(); ++i)
        for (std::size_t k = i; k > 0 && evens[k] < evens[k - 1]; --k) {
            std::swap(evens[k], evens[k - 1]);
            sign = -sign;
        }
    for (std::size_t i = 1; i < evens.size(); ++i)
        if (evens[i] == evens[i - 1])
            return 0;
    return sign;
}

} // namespace

SuperPolynomial eval_tuple(const Cochain& c, std::vector<int> even_args, std::vector<int> odd_args)
{
    const CochainSpace& S = *c.space;
    const GradedAlgebra& A = S.algebra();
    SuperPolynomial zero(A.vars());
    if (static_cast<int>(even_args.size() + odd_args.size()) != S.order())
        throw std::invalid_argument("eval_tuple: wrong arity");
    int sign = normalize_even_args(even_args);
    if (sign == 0)
        return zero;
    std::sort(odd_args.begin(), odd_args.end());
    int w = S.word_index(even_args, odd_args);
    if (w < 0)
        return zero;
    const auto& info = S.words()[w];
    const DegreeBasis& target = A.component(info.target_degree);
    SuperPolynomial val(A.vars());
    for (std::size_t t = 0; t < info.target_dim; ++t) {
        const Rational& x = c.coef[info.offset + t];
        if (!is_zero(x))
            val += x * target.vectors[t];
    }
    return Rational(sign) * val;
}

SuperPolynomial evaluate(const Cochain& c, const std::vector<SuperPolynomial>& args)
{
    const CochainSpace& S = *c.space;
    const GradedAlgebra& A = S.algebra();
    const GMinus& gm = S.gminus();
    SuperPolynomial acc(A.vars());
    std::vector<int> evens, odds;
    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& mult) {
        if (i == args.size()) {
            acc += mult * eval_tuple(c, evens, odds);
            return;
        }
        for (const auto& [is_even, idx, coefv] : expand_gminus(A, gm, args[i])) {
            auto& vec = is_even ? evens : odds;
            vec.push_back(idx);
            rec(i + 1, mult * coefv);
            vec.pop_back();
        }
    };
    rec(0, Rational(1));
    return acc;
}

Cochain coboundary(const Cochain& c)
{
    const CochainSpace& S = *c.space;
    const GradedAlgebra& A = S.algebra();
    const GMinus& gm = S.gminus();
    CochainSpacePtr outS = make_cochain_space(A, S.order() + 1, S.degree());
    Cochain out(outS);

    for (const auto& info : outS->words()) {
        const std::vector<int>& E = info.word.evens;
        const std::vector<int>& O = info.word.odds;
        int p = static_cast<int>(E.size());
        int q = static_cast<int>(O.size());
        SuperPolynomial val(A.vars());

        // c([x_s,x_t], ...): the bracket joins the front of the even block
        for (int s = 0; s < p; ++s)
            for (int t = s + 1; t < p; ++t) {
                SuperPolynomial br = A.bracket(gm.evens[E[s]].value, gm.evens[E[t]].value);
                if (br.is_zero())
                    continue;
                int sgn0 = ((s + t + 1) % 2) ? -1 : 1; // (-1)^{(s+1)+(t+1)-1}
                for (const auto& [is_even, idx, cf] : expand_gminus(A, gm, br)) {
                    std::vector<int> evens, odds(O);
                    (is_even ? evens : odds).push_back(idx);
                    for (int u = 0; u < p; ++u)
                        if (u != s && u != t)
                            evens.push_back(E[u]);
                    val += Rational(sgn0) * cf * eval_tuple(c, evens, odds);
                }
            }

        // c(..., [x_s,y_t], ...): the bracket joins the odd block
        for (int s = 0; s < p; ++s)
            for (int t = 0; t < q; ++t) {
                SuperPolynomial br = A.bracket(gm.evens[E[s]].value, gm.odds[O[t]].value);
                if (br.is_zero())
                    continue;
                int sgn0 = (s % 2) ? -1 : 1; // (-1)^{(s+1)-1}
                for (const auto& [is_even, idx, cf] : expand_gminus(A, gm, br)) {
                    std::vector<int> evens, odds;
                    (is_even ? evens : odds).push_back(idx);
                    for (int u = 0; u < p; ++u)
                        if (u != s)
                            evens.push_back(E[u]);
                    for (int u = 0; u < q; ++u)
                        if (u != t)
                            odds.push_back(O[u]);
                    val += Rational(sgn0) * cf * eval_tuple(c, evens, odds);
                }
            }

        // c([y_s,y_t], ...): the bracket joins the front of the even block
        for (int s = 0; s < q; ++s)
            for (int t = s + 1; t < q; ++t) {
                SuperPolynomial br = A.bracket(gm.odds[O[s]].value, gm.odds[O[t]].value);
                if (br.is_zero())
                    continue;
                for (const auto& [is_even, idx, cf] : expand_gminus(A, gm, br)) {
                    std::vector<int> evens, odds;
                    (is_even ? evens : odds).push_back(idx);
                    for (int u = 0; u < p; ++u)
                        evens.push_back(E[u]);
                    for (int u = 0; u < q; ++u)
                        if (u != s && u != t)
                            odds.push_back(O[u]);
                    val += cf * eval_tuple(c, evens, odds);
                }
            }

        // sum_s (-1)^s [x_s, c(.., hat x_s, ..)]
        for (int s = 0; s < p; ++s) {
            std::vector<int> evens;
            for (int u = 0; u < p; ++u)
                if (u != s)
                    evens.push_back(E[u]);
            SuperPolynomial inner = eval_tuple(c, evens, O);
            if (!inner.is_zero())
                val += Rational((s + 1) % 2 ? -1 : 1) * A.bracket(gm.evens[E[s]].value, inner);
        }

        // (-1)^{p-1} sum_s [y_s, c(.., hat y_s, ..)]
        int sgn5 = ((p - 1) % 2 + 2) % 2 ? -1 : 1;
        for (int s = 0; s < q; ++s) {
            std::vector<int> odds;
            for (int u = 0; u < q; ++u)
                if (u != s)
                    odds.push_back(O[u]);
            SuperPolynomial inner = eval_tuple(c, E, odds);
            if (!inner.is_zero())
                val += Rational(sgn5) * A.bracket(gm.odds[O[s]].value, inner);
        }

        if (val.is_zero())
            continue;
        auto co = A.coordinates(info.target_degree, val);
        if (!co)
            throw std::logic_error("coboundary: value left the algebra");
        for (std::size_t t = 0; t < info.target_dim; ++t)
            out.coef[info.offset + t] = (*co)[t];
    }
    return out;
}

Cochain act(const SuperPolynomial& a, const Cochain& c)
{
    const CochainSpace& S = *c.space;
    const GradedAlgebra& A = S.algebra();
    const GMinus& gm = S.gminus();
    if (A.lie_parity(a) != 0 || A.lie_degree(a) != 0)
        throw std::invalid_argument("act: generator must be Lie-even of degree 0");
    Cochain out(c.space);
    for (const auto& info : S.words()) {
        const std::vector<int>& E = info.word.evens;
        const std::vector<int>& O = info.word.odds;
        SuperPolynomial inner = eval_tuple(c, E, O);
        SuperPolynomial val =
            inner.is_zero() ? SuperPolynomial(A.vars()) : A.bracket(a, inner);
        for (std::size_t s = 0; s < E.size(); ++s) {
            SuperPolynomial br = A.bracket(a, gm.evens[E[s]].value);
            if (br.is_zero())
                continue;
            for (const auto& [is_even, idx, cf] : expand_gminus(A, gm, br)) {
                if (!is_even)
                    throw std::logic_error("act: parity flip under even action");
                std::vector<int> evens(E);
                evens[s] = idx;
                val -= cf * eval_tuple(c, evens, O);
            }
        }
        for (std::size_t t = 0; t < O.size(); ++t) {
            SuperPolynomial br = A.bracket(a, gm.odds[O[t]].value);
            if (br.is_zero())
                continue;
            for (const auto& [is_even, idx, cf] : expand_gminus(A, gm, br)) {
                if (is_even)
                    throw std::logic_error("act: parity flip under even action");
                std::vector<int> odds(O);
                odds[t] = idx;
                val -= cf * eval_tuple(c, E, odds);
            }
        }
        if (val.is_zero())
            continue;
        auto co = A.coordinates(info.target_degree, val);
        if (!co)
            throw std::logic_error("act: value left the algebra");
        for (std::size_t t = 0; t < info.target_dim; ++t)
            out.coef[info.offset + t] = (*co)[t];
    }
    return out;
}

namespace {

Cochain unit_cochain(const CochainSpacePtr& S, std::size_t i)
{
    Cochain e(S);
    e.coef[i] = 1;
    return e;
}

std::vector<std::vector<Rational>> basis_weights(const CochainSpacePtr& S,
                                                 const ReductiveActionSpec& actspec)
{
    const CochainSpace& space = *S;
    const GradedAlgebra& A = space.algebra();
    const GMinus& gm = space.gminus();
    std::vector<std::vector<Rational>> wts(space.dim());
    std::vector<std::vector<Rational>> even_w, odd_w;
    for (const auto& e : gm.evens)
        even_w.push_back(cartan_weight(A, actspec, e.value));
    for (const auto& o : gm.odds)
        odd_w.push_back(cartan_weight(A, actspec, o.value));
    for (const auto& info : space.words()) {
        std::vector<Rational> base(actspec.cartan.size(), Rational(0));
        for (int e : info.word.evens)
            for (std::size_t k = 0; k < base.size(); ++k)
                base[k] -= even_w[e][k];
        for (int o : info.word.odds)
            for (std::size_t k = 0; k < base.size(); ++k)
                base[k] -= odd_w[o][k];
        const DegreeBasis& target = A.component(info.target_degree);
        for (std::size_t t = 0; t < info.target_dim; ++t) {
            std::vector<Rational> w = cartan_weight(A, actspec, target.vectors[t]);
            for (std::size_t k = 0; k < base.size(); ++k)
                w[k] += base[k];
            wts[info.offset + t] = std::move(w);
        }
    }
    return wts;
}

} // namespace

std::vector<Cochain> invariant_cochains(const CochainSpacePtr& S, const ReductiveActionSpec& actspec,
                                        int parity)
{
    const CochainSpace& space = *S;
    std::vector<std::size_t> selected;
    std::vector<std::vector<Rational>> wts;
    bool prefilter = actspec.has_weights && !actspec.cartan.empty();
    if (prefilter)
        wts = basis_weights(S, actspec);
    for (std::size_t i = 0; i < space.dim(); ++i) {
        if (parity >= 0 && space.basis_parity(i) != parity)
            continue;
        if (prefilter) {
            bool zero = true;
            for (const auto& x : wts[i])
                if (!is_zero(x)) {
                    zero = false;
                    break;
                }
            if (!zero)
                continue;
        }
        selected.push_back(i);
    }
    if (selected.empty())
        return {};

    std::vector<SuperPolynomial> ops;
    if (actspec.has_weights) {
        ops = actspec.raising;
        ops.insert(ops.end(), actspec.lowering.begin(), actspec.lowering.end());
        ops.insert(ops.end(), actspec.center.begin(), actspec.center.end());
        if (!prefilter)
            ops.insert(ops.end(), actspec.cartan.begin(), actspec.cartan.end());
    } else {
        ops = actspec.generators;
    }
    if (ops.empty()) {
        std::vector<Cochain> all;
        for (std::size_t i : selected)
            all.push_back(unit_cochain(S, i));
        return all;
    }

    SparseRationalMatrix stack(ops.size() * space.dim(), selected.size());
    for (std::size_t k = 0; k < selected.size(); ++k) {
        Cochain e = unit_cochain(S, selected[k]);
        for (std::size_t g = 0; g < ops.size(); ++g) {
            Cochain img = act(ops[g], e);
            for (std::size_t r = 0; r < space.dim(); ++r)
                if (!is_zero(img.coef[r]))
                    stack.set(g * space.dim() + r, k, img.coef[r]);
        }
    }
    std::vector<Cochain> out;
    for (const auto& kv : stack.kernel_basis()) {
        Cochain v(S);
        for (std::size_t k = 0; k < selected.size(); ++k)
            v.coef[selected[k]] = kv[k];
        out.push_back(std::move(v));
    }
    return out;
}

CohomologyResult cohomology(const GradedAlgebra& A, int l, int j, int parity,
                            const ReductiveActionSpec* inv)
{
    CohomologyResult res;
    CochainSpacePtr S = make_cochain_space(A, j, l);

    auto restricted = [&](const CochainSpacePtr& sp) {
        std::vector<Cochain> cols;
        if (inv) {
            cols = invariant_cochains(sp, *inv, parity);
        } else {
            for (std::size_t i = 0; i < sp->dim(); ++i) {
                if (parity >= 0 && sp->basis_parity(i) != parity)
                    continue;
                cols.push_back(unit_cochain(sp, i));
            }
        }
        return cols;
    };

    std::vector<Cochain> cols = restricted(S);
    std::vector<Cochain> images;
    std::size_t out_dim = 1;
    for (const auto& c : cols) {
        images.push_back(coboundary(c));
        out_dim = images.back().coef.size();
    }
    SparseRationalMatrix dmat(out_dim, cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k)
        for (std::size_t r = 0; r < images[k].coef.size(); ++r)
            if (!is_zero(images[k].coef[r]))
                dmat.set(r, k, images[k].coef[r]);
    auto zker = dmat.kernel_basis();

    std::vector<Cochain> bcols;
    if (j >= 1) {
        CochainSpacePtr Sprev = make_cochain_space(A, j - 1, l);
        for (const auto& c : restricted(Sprev)) {
            Cochain img = coboundary(c);
            if (!img.is_zero())
                bcols.push_back(std::move(img));
        }
    }
    SparseRationalMatrix bmat(S->dim(), bcols.size());
    for (std::size_t k = 0; k < bcols.size(); ++k)
        for (std::size_t r = 0; r < S->dim(); ++r)
            if (!is_zero(bcols[k].coef[r]))
                bmat.set(r, k, bcols[k].coef[r]);
    std::size_t brank = bmat.rank();

    res.dim = static_cast<int>(zker.size()) - static_cast<int>(brank);

    SparseRationalMatrix span(S->dim(), 0);
    for (const auto& b : bcols)
        span.append_column(b.coef);
    for (const auto& kv : zker) {
        if (static_cast<int>(res.representatives.size()) >= res.dim)
            break;
        Cochain z(S);
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (!is_zero(kv[k])) {
                Cochain t = cols[k];
                t *= kv[k];
                z += t;
            }
        if (!span.in_span(z.coef)) {
            span.append_column(z.coef);
            res.representatives.push_back(std::move(z));
        }
    }
    return res;
}

namespace {

struct GMinusFlat {
    std::vector<SuperPolynomial> values;
    std::vector<int> degrees;
    std::vector<int> parities;
};

GMinusFlat flat_gminus(const GradedAlgebra& A)
{
    GMinusFlat f;
    GMinus gm = g_minus(A);
    for (const auto& e : gm.evens) {
        f.values.push_back(e.value);
        f.degrees.push_back(e.degree);
        f.parities.push_back(0);
    }
    for (const auto& o : gm.odds) {
        f.values.push_back(o.value);
        f.degrees.push_back(o.degree);
        f.parities.push_back(1);
    }
    return f;
}

// elem index of each component(d) basis vector within the flat g_- list
std::vector<int> component_to_flat(const GradedAlgebra& A, const GMinusFlat& f, int d)
{
    const DegreeBasis& comp = A.component(d);
    std::vector<int> out(comp.dim(), -1);
    std::vector<int> counters(2, 0);
    for (std::size_t ci = 0; ci < comp.dim(); ++ci) {
        int p = A.lie_parity(comp.vectors[ci]);
        int seen = 0;
        for (std::size_t k = 0; k < f.values.size(); ++k) {
            if (f.degrees[k] != d || f.parities[k] != p)
                continue;
            if (seen == counters[p]) {
                out[ci] = static_cast<int>(k);
                break;
            }
            ++seen;
        }
        ++counters[p];
    }
    return out;
}

} // namespace

DerivationSpace derivation_space(const GradedAlgebra& A, int l)
{
    DerivationSpace D;
    D.l = l;
    GMinusFlat f = flat_gminus(A);
    for (std::size_t ie = 0; ie < f.values.size(); ++ie) {
        D.block_offset.push_back(D.flat_dim);
        D.block_degree.push_back(f.degrees[ie] + l);
        D.flat_dim += A.component(f.degrees[ie] + l).dim();
    }

    for (int pi = 0; pi <= 1; ++pi) {
        std::vector<std::map<std::size_t, Rational>> rows;
        for (std::size_t iu = 0; iu < f.values.size(); ++iu) {
            for (std::size_t iv = 0; iv < f.values.size(); ++iv) {
                int kdeg = f.degrees[iu] + f.degrees[iv] + l;
                const DegreeBasis& out = A.component(kdeg);
                if (out.dim() == 0)
                    continue;
                std::vector<std::map<std::size_t, Rational>> eq(out.dim());

                // alpha([u,v])
                SuperPolynomial br = A.bracket(f.values[iu], f.values[iv]);
                if (!br.is_zero()) {
                    int dbr = A.lie_degree(br);
                    auto co = A.coordinates(dbr, br);
                    if (!co)
                        throw std::logic_error("derivation_space: bracket left g_-");
                    auto flat_idx = component_to_flat(A, f, dbr);
                    for (std::size_t ci = 0; ci < co->size(); ++ci) {
                        if (is_zero((*co)[ci]))
                            continue;
                        int target = flat_idx[ci];
                        const DegreeBasis& tb = A.component(f.degrees[target] + l);
                        for (std::size_t t = 0; t < tb.dim(); ++t)
                            eq[t][D.block_offset[target] + t] += (*co)[ci];
                    }
                }

                // -[alpha(u), v]
                {
                    const DegreeBasis& ub = A.component(f.degrees[iu] + l);
                    for (std::size_t t = 0; t < ub.dim(); ++t) {
                        SuperPolynomial img = A.bracket(ub.vectors[t], f.values[iv]);
                        if (img.is_zero())
                            continue;
                        auto co = A.coordinates(kdeg, img);
                        if (!co)
                            throw std::logic_error("derivation_space: [alpha(u),v] escaped");
                        for (std::size_t r = 0; r < out.dim(); ++r)
                            if (!is_zero((*co)[r]))
                                eq[r][D.block_offset[iu] + t] -= (*co)[r];
                    }
                }

                // -(-1)^{pi p(u)} [u, alpha(v)]
                {
                    int s = (pi == 1 && f.parities[iu] == 1) ? -1 : 1;
                    const DegreeBasis& vb = A.component(f.degrees[iv] + l);
                    for (std::size_t t = 0; t < vb.dim(); ++t) {
                        SuperPolynomial img = A.bracket(f.values[iu], vb.vectors[t]);
                        if (img.is_zero())
                            continue;
                        auto co = A.coordinates(kdeg, img);
                        if (!co)
                            throw std::logic_error("derivation_space: [u,alpha(v)] escaped");
                        for (std::size_t r = 0; r < out.dim(); ++r)
                            if (!is_zero((*co)[r]))
                                eq[r][D.block_offset[iv] + t] -= Rational(s) * (*co)[r];
                    }
                }

                for (auto& row : eq)
                    if (!row.empty())
                        rows.push_back(std::move(row));
            }
        }

        // alpha of parity pi maps u to parity p(u)+pi
        std::vector<std::size_t> allowed;
        for (std::size_t ie = 0; ie < f.values.size(); ++ie) {
            const DegreeBasis& tb = A.component(f.degrees[ie] + l);
            for (std::size_t t = 0; t < tb.dim(); ++t)
                if (A.lie_parity(tb.vectors[t]) == ((f.parities[ie] + pi) & 1))
                    allowed.push_back(D.block_offset[ie] + t);
        }
        std::map<std::size_t, std::size_t> col_map;
        for (std::size_t k = 0; k < allowed.size(); ++k)
            col_map[allowed[k]] = k;
        SparseRationalMatrix M(rows.size(), allowed.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (const auto& [cidx, vv] : rows[r]) {
                auto it = col_map.find(cidx);
                if (it != col_map.end())
                    M.set(r, it->second, vv);
            }
        for (const auto& kv : M.kernel_basis()) {
            std::vector<Rational> flat(D.flat_dim, Rational(0));
            for (std::size_t k = 0; k < allowed.size(); ++k)
                flat[allowed[k]] = kv[k];
            D.basis.push_back(std::move(flat));
            D.parity.push_back(pi);
        }
    }
    return D;
}

std::vector<Rational> inner_derivation(const GradedAlgebra& A, const DerivationSpace& D,
                                       const SuperPolynomial& w)
{
    GMinusFlat f = flat_gminus(A);
    std::vector<Rational> flat(D.flat_dim, Rational(0));
    for (std::size_t ie = 0; ie < f.values.size(); ++ie) {
        SuperPolynomial img = A.bracket(w, f.values[ie]);
        if (img.is_zero())
            continue;
        auto co = A.coordinates(D.block_degree[ie], img);
        if (!co)
            throw std::logic_error("inner_derivation: image escaped");
        for (std::size_t t = 0; t < co->size(); ++t)
            flat[D.block_offset[ie] + t] = (*co)[t];
    }
    return flat;
}

namespace {

SparseRationalMatrix inner_matrix(const GradedAlgebra& A, const DerivationSpace& D, int l)
{
    const DegreeBasis& gl = A.component(l);
    SparseRationalMatrix inner(D.flat_dim, gl.dim());
    for (std::size_t k = 0; k < gl.dim(); ++k) {
        auto flat = inner_derivation(A, D, gl.vectors[k]);
        for (std::size_t r = 0; r < D.flat_dim; ++r)
            if (!is_zero(flat[r]))
                inner.set(r, k, flat[r]);
    }
    return inner;
}

} // namespace

int h_l1(const GradedAlgebra& A, int l)
{
    DerivationSpace D = derivation_space(A, l);
    return static_cast<int>(D.basis.size()) - static_cast<int>(inner_matrix(A, D, l).rank());
}

bool derivation_class_outside_inner(const GradedAlgebra& A, int l, const SuperPolynomial& w)
{
    DerivationSpace D = derivation_space(A, l);
    auto inner = inner_matrix(A, D, l);
    return !inner.in_span(inner_derivation(A, D, w));
}

namespace {

std::vector<ModuleLabel> component_hw_labels(const GradedAlgebra& A,
                                             const ReductiveActionSpec& actspec, int j)
{
    std::vector<ModuleLabel> out;
    for (const auto& w : highest_weight_vectors(A, actspec, j))
        out.emplace_back(w.weight, w.parity);
    return out;
}

// Highest-weight labels of der_l as an a-module (weights are diagonal on the
// flat coordinates; raising acts by (a.alpha)(u) = [a,alpha(u)] - alpha([a,u])).
std::vector<ModuleLabel> derivation_hw_labels(const GradedAlgebra& A,
                                              const ReductiveActionSpec& actspec,
                                              const DerivationSpace& D)
{
    GMinusFlat f = flat_gminus(A);
    std::vector<std::vector<Rational>> wt(D.flat_dim);
    for (std::size_t ie = 0; ie < f.values.size(); ++ie) {
        auto uw = cartan_weight(A, actspec, f.values[ie]);
        const DegreeBasis& tb = A.component(D.block_degree[ie]);
        for (std::size_t t = 0; t < tb.dim(); ++t) {
            auto w = cartan_weight(A, actspec, tb.vectors[t]);
            for (std::size_t k = 0; k < w.size(); ++k)
                w[k] -= uw[k];
            wt[D.block_offset[ie] + t] = std::move(w);
        }
    }

    auto raise_flat = [&](const SuperPolynomial& a, const std::vector<Rational>& flat) {
        std::vector<Rational> out(D.flat_dim, Rational(0));
        for (std::size_t ie = 0; ie < f.values.size(); ++ie) {
            const DegreeBasis& tb = A.component(D.block_degree[ie]);
            SuperPolynomial val(A.vars());
            for (std::size_t t = 0; t < tb.dim(); ++t) {
                const Rational& x = flat[D.block_offset[ie] + t];
                if (!is_zero(x))
                    val += x * tb.vectors[t];
            }
            if (!val.is_zero())
                val = A.bracket(a, val);
            SuperPolynomial au = A.bracket(a, f.values[ie]);
            if (!au.is_zero()) {
                int d = A.lie_degree(au);
                auto co = A.coordinates(d, au);
                if (!co)
                    throw std::logic_error("derivation_hw_labels: [a,u] escaped g_-");
                auto flat_idx = component_to_flat(A, f, d);
                for (std::size_t ci = 0; ci < co->size(); ++ci) {
                    if (is_zero((*co)[ci]))
                        continue;
                    int target = flat_idx[ci];
                    const DegreeBasis& sb = A.component(D.block_degree[target]);
                    for (std::size_t t = 0; t < sb.dim(); ++t) {
                        const Rational& x = flat[D.block_offset[target] + t];
                        if (!is_zero(x))
                            val -= (*co)[ci] * x * sb.vectors[t];
                    }
                }
            }
            if (!val.is_zero()) {
                auto co = A.coordinates(D.block_degree[ie], val);
                if (!co)
                    throw std::logic_error("derivation_hw_labels: action escaped");
                for (std::size_t t = 0; t < co->size(); ++t)
                    out[D.block_offset[ie] + t] += (*co)[t];
            }
        }
        return out;
    };

    std::map<ModuleLabel, std::vector<std::size_t>> blocks;
    for (std::size_t k = 0; k < D.basis.size(); ++k) {
        std::vector<Rational> w;
        for (std::size_t c = 0; c < D.flat_dim; ++c)
            if (!is_zero(D.basis[k][c])) {
                if (w.empty())
                    w = wt[c];
                else if (w != wt[c])
                    throw std::logic_error("derivation_hw_labels: mixed-weight basis vector");
            }
        if (w.empty())
            w.assign(actspec.cartan.size(), Rational(0));
        blocks[{w, D.parity[k]}].push_back(k);
    }

    std::vector<ModuleLabel> labels;
    for (const auto& [key, idxs] : blocks) {
        std::vector<std::vector<Rational>> cols;
        for (std::size_t k : idxs) {
            std::vector<Rational> img_all;
            for (const auto& r : actspec.raising) {
                auto img = raise_flat(r, D.basis[k]);
                img_all.insert(img_all.end(), img.begin(), img.end());
            }
            cols.push_back(std::move(img_all));
        }
        std::size_t rows = cols.empty() ? 0 : cols[0].size();
        SparseRationalMatrix M(rows, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t r = 0; r < rows; ++r)
                if (!is_zero(cols[c][r]))
                    M.set(r, c, cols[c][r]);
        std::size_t hw_count = cols.size() - M.rank();
        for (std::size_t i = 0; i < hw_count; ++i)
            labels.push_back(key);
    }
    return labels;
}

} // namespace

ProlongationReport prolongation_report(const GradedAlgebra& A, int k, int cap)
{
    if (k < 1)
        throw std::invalid_argument("prolongation_report: degree k must be >= 1");
    ProlongationReport rep;
    ReductiveActionSpec actspec = reductive_action(A);
    std::vector<ModuleLabel> positive_labels;
    if (actspec.has_weights)
        for (int j = 1; j <= cap; ++j)
            for (auto& lab : component_hw_labels(A, actspec, j))
                positive_labels.push_back(std::move(lab));

    for (int l = 1; l <= cap; ++l) {
        int h = h_l1(A, l);
        if (h == 0)
            continue;
        rep.nonzero_l.push_back(l);
        if (l >= k)
            rep.full_prolongation_from_k = false;
        if (l >= 1) {
            if (!actspec.has_weights) {
                rep.almost_full = false;
                continue;
            }
            DerivationSpace D = derivation_space(A, l);
            auto der_labels = derivation_hw_labels(A, actspec, D);
            auto gl_labels = component_hw_labels(A, actspec, l);
            std::map<ModuleLabel, int> mult;
            for (const auto& lab : der_labels)
                ++mult[lab];
            for (const auto& lab : gl_labels)
                --mult[lab];
            std::vector<ModuleLabel> quot;
            for (const auto& [lab, m] : mult)
                for (int i = 0; i < m; ++i)
                    quot.push_back(lab);
            if (!hom_vanishes(quot, positive_labels))
                rep.almost_full = false;
        }
    }
    return rep;
}

} // namespace spencer
