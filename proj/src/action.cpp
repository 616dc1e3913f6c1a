#include "spencer/action.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace spencer {

ReductiveActionSpec reductive_action(const GradedAlgebra& A)
{
    const AlgebraSpec& spec = A.spec();
    const VariableSet& vs = A.vars();
    ReductiveActionSpec act;

    if (spec.family == Family::HAM) {
        int n = spec.n, m = spec.m;
        act.label = "spo(" + std::to_string(2 * n) + "," + std::to_string(m) + ")";
        act.has_weights = false;
        auto ev = [&](int i) { return make_even(vs, i); };
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                act.generators.push_back(multiply(ev(i), ev(j)));         // p_i p_j
                act.generators.push_back(multiply(ev(n + i), ev(n + j))); // q_i q_j
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                act.generators.push_back(multiply(ev(i), ev(n + j))); // p_i q_j
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                act.generators.push_back(multiply(make_odd(vs, i), make_odd(vs, j)));
        return act;
    }

    int n = spec.n;
    bool contact = spec.is_contact();
    auto xxi = [&](int i, int j) { return multiply(make_even(vs, i), make_odd(vs, j)); };

    act.has_weights = true;
    for (int i = 0; i + 1 < n; ++i) {
        act.raising.push_back(xxi(i, i + 1));
        act.lowering.push_back(xxi(i + 1, i));
        // sign chosen per family so that x1 carries the first fundamental weight
        if (contact)
            act.cartan.push_back(xxi(i, i) - xxi(i + 1, i + 1));
        else
            act.cartan.push_back(xxi(i + 1, i + 1) - xxi(i, i));
    }

    bool gl = false;
    switch (spec.family) {
    case Family::HO:
    case Family::HO_HAT:
    case Family::SHO_PLUS_PHI:
    case Family::SHO_PRIME_PLUS_PHI:
    case Family::SHO_HAT_PLUS_PHI:
    case Family::SHO_PRIME_HAT_PLUS_PHI:
        act.center.push_back(A.phi());
        gl = true;
        break;
    case Family::KO:
        act.center.push_back(make_tau(vs));
        gl = true;
        break;
    case Family::SKO:
    case Family::SKO_PRIME:
        act.center.push_back(A.tau_beta_phi());
        gl = true;
        break;
    default:
        break;
    }
    act.label = (gl ? "gl" : "sl") + std::to_string(n);

    act.generators = act.raising;
    act.generators.insert(act.generators.end(), act.lowering.begin(), act.lowering.end());
    act.generators.insert(act.generators.end(), act.cartan.begin(), act.cartan.end());
    act.generators.insert(act.generators.end(), act.center.begin(), act.center.end());
    return act;
}

SparseRationalMatrix action_matrix(const GradedAlgebra& A, const SuperPolynomial& a, int j)
{
    const DegreeBasis& b = A.component(j);
    if (a.is_zero())
        return SparseRationalMatrix(b.dim(), b.dim());
    if (A.lie_degree(a) != 0)
        throw std::invalid_argument("action_matrix: generator must have degree 0");
    SparseRationalMatrix m(b.dim(), b.dim());
    for (std::size_t c = 0; c < b.dim(); ++c) {
        auto im = A.bracket(a, b.vectors[c]);
        auto co = A.coordinates(j, im);
        if (!co)
            throw std::logic_error("action_matrix: image left the component");
        for (std::size_t r = 0; r < b.dim(); ++r)
            if (!is_zero((*co)[r]))
                m.set(r, c, (*co)[r]);
    }
    return m;
}

std::vector<Rational> cartan_weight(const GradedAlgebra& A, const ReductiveActionSpec& act,
                                    const SuperPolynomial& v)
{
    if (v.is_zero())
        throw std::invalid_argument("cartan_weight: zero vector");
    std::vector<Rational> w;
    for (const auto& h : act.cartan) {
        SuperPolynomial hv = A.bracket(h, v);
        Rational lambda(0);
        if (!hv.is_zero()) {
            const auto& [m0, c0] = *v.terms().begin();
            lambda = hv.coeff(m0) / c0;
        }
        if (hv != lambda * v)
            throw std::invalid_argument("cartan_weight: not a weight vector");
        w.push_back(lambda);
    }
    return w;
}

std::vector<std::vector<Rational>> invariant_vectors(const GradedAlgebra& A,
                                                     const ReductiveActionSpec& act, int j)
{
    const DegreeBasis& b = A.component(j);
    if (b.dim() == 0)
        return {};
    if (act.generators.empty()) {
        std::vector<std::vector<Rational>> full;
        for (std::size_t i = 0; i < b.dim(); ++i) {
            std::vector<Rational> e(b.dim(), Rational(0));
            e[i] = 1;
            full.push_back(std::move(e));
        }
        return full;
    }
    SparseRationalMatrix stack(act.generators.size() * b.dim(), b.dim());
    std::size_t off = 0;
    for (const auto& g : act.generators) {
        auto m = action_matrix(A, g, j);
        for (std::size_t r = 0; r < b.dim(); ++r)
            for (const auto& [c, v] : m.row(r))
                stack.set(off + r, c, v);
        off += b.dim();
    }
    return stack.kernel_basis();
}

std::vector<WeightVector> highest_weight_vectors(const GradedAlgebra& A,
                                                 const ReductiveActionSpec& act, int j)
{
    if (!act.has_weights)
        throw std::invalid_argument("highest_weight_vectors: no weight data for this subalgebra");
    const DegreeBasis& b = A.component(j);
    std::vector<WeightVector> out;
    if (b.dim() == 0)
        return out;

    // group basis vectors by (weight, parity); kernel of raising per block
    std::map<std::pair<std::vector<Rational>, int>, std::vector<std::size_t>> blocks;
    std::vector<std::vector<Rational>> wt(b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i) {
        wt[i] = cartan_weight(A, act, b.vectors[i]);
        int par = A.lie_parity(b.vectors[i]);
        blocks[{wt[i], par}].push_back(i);
    }
    std::vector<SparseRationalMatrix> rmats;
    for (const auto& r : act.raising)
        rmats.push_back(action_matrix(A, r, j));

    for (const auto& [key, cols] : blocks) {
        if (rmats.empty()) {
            for (std::size_t c : cols) {
                WeightVector w;
                w.weight = key.first;
                w.parity = key.second;
                w.coords.assign(b.dim(), Rational(0));
                w.coords[c] = 1;
                out.push_back(std::move(w));
            }
            continue;
        }
        SparseRationalMatrix stack(rmats.size() * b.dim(), cols.size());
        for (std::size_t g = 0; g < rmats.size(); ++g) {
            auto t = rmats[g].transpose(); // column access
            for (std::size_t k = 0; k < cols.size(); ++k)
                for (const auto& [r, v] : t.row(cols[k]))
                    stack.set(g * b.dim() + r, k, v);
        }
        for (const auto& kv : stack.kernel_basis()) {
            WeightVector w;
            w.weight = key.first;
            w.parity = key.second;
            w.coords.assign(b.dim(), Rational(0));
            for (std::size_t k = 0; k < cols.size(); ++k)
                w.coords[cols[k]] = kv[k];
            out.push_back(std::move(w));
        }
    }
    return out;
}

unsigned long weyl_dim_sl(const std::vector<Rational>& weight)
{
    std::size_t r = weight.size();
    std::vector<Rational> lambda(r + 1, Rational(0));
    for (std::size_t i = r; i-- > 0;)
        lambda[i] = lambda[i + 1] + weight[i];
    Rational dim(1);
    for (std::size_t i = 0; i <= r; ++i)
        for (std::size_t j = i + 1; j <= r; ++j)
            dim *= (lambda[i] - lambda[j] + Rational(static_cast<long>(j - i))) /
                   Rational(static_cast<long>(j - i));
    if (!dim.is_integer() || sgn(dim) <= 0)
        throw std::invalid_argument("weyl_dim_sl: not a dominant integral weight");
    return static_cast<unsigned long>(dim.num_long());
}

bool hom_vanishes(const std::vector<ModuleLabel>& U, const std::vector<ModuleLabel>& V)
{
    for (const auto& u : U)
        for (const auto& v : V)
            if (u == v)
                return false;
    return true;
}

} // namespace spencer
