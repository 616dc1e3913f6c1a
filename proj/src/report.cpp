#include "spencer/report.hpp"

#include "spencer/deformation.hpp"
#include "spencer/named_cochains.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace spencer {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

Json weight_json(const std::vector<Rational>& w)
{
    Json a = Json::array();
    for (const auto& x : w)
        a.push_back(rat_str(x));
    return a;
}

} // namespace

Json cmd_algebra(const std::string& spec_text, int deg_lo, int deg_hi, const ReportOptions& opt)
{
    auto t0 = std::chrono::steady_clock::now();
    AlgebraSpec spec = AlgebraSpec::parse(spec_text);
    GradedAlgebra A(spec);
    ReductiveActionSpec act = reductive_action(A);

    Json doc;
    doc["tool"] = "spencer";
    doc["version"] = kToolVersion;
    doc["command"] = "algebra";
    doc["spec"] = spec.str();
    doc["degrees"] = {deg_lo, deg_hi};
    doc["depth"] = A.depth();
    doc["reductive_subalgebra"] = act.label;
    doc["degree_cap"] = A.degree_cap();

    Json comps = Json::array();
    for (int j = deg_lo; j <= deg_hi; ++j) {
        const DegreeBasis& b = A.component(j);
        Json entry;
        entry["degree"] = j;
        entry["dimension"] = b.dim();
        Json basis = Json::array();
        for (const auto& v : b.vectors)
            basis.push_back(render(v));
        entry["basis"] = basis;
        if (act.has_weights && b.dim() > 0) {
            Json hw = Json::array();
            unsigned long dimsum = 0;
            for (const auto& w : highest_weight_vectors(A, act, j)) {
                Json h;
                h["weight"] = weight_json(w.weight);
                h["parity"] = w.parity;
                SuperPolynomial v(A.vars());
                for (std::size_t i = 0; i < b.dim(); ++i)
                    if (!is_zero(w.coords[i]))
                        v += w.coords[i] * b.vectors[i];
                h["vector"] = render(v);
                if (act.center.empty()) {
                    unsigned long d = weyl_dim_sl(w.weight);
                    h["module_dimension"] = d;
                    dimsum += d;
                }
                hw.push_back(std::move(h));
            }
            entry["highest_weights"] = hw;
            if (act.center.empty())
                entry["weyl_dimension_sum_matches"] = (dimsum == b.dim());
        }
        comps.push_back(std::move(entry));
    }
    doc["components"] = comps;

    // self-checks: grading closure and Jacobi on a bounded triple sample
    {
        bool closure = true, jacobi = true, skew = true;
        std::vector<std::pair<int, SuperPolynomial>> basis;
        for (int j = -A.depth(); j <= std::min(deg_hi, 2); ++j)
            for (const auto& v : A.component(j).vectors)
                basis.emplace_back(j, v);
        for (std::size_t a = 0; a < basis.size() && closure; ++a)
            for (std::size_t b = a; b < basis.size() && closure; ++b) {
                SuperPolynomial br = A.bracket(basis[a].second, basis[b].second);
                if (br.is_zero())
                    continue;
                if (A.lie_degree(br) != basis[a].first + basis[b].first ||
                    !A.contains(br))
                    closure = false;
                int pa = A.lie_parity(basis[a].second), pb = A.lie_parity(basis[b].second);
                int s = (pa == 1 && pb == 1) ? 1 : -1;
                if (A.bracket(basis[b].second, basis[a].second) != Rational(s) * br)
                    skew = false;
            }
        std::mt19937 rng(2026);
        for (int t = 0; t < 300 && jacobi; ++t) {
            const auto& x = basis[rng() % basis.size()].second;
            const auto& y = basis[rng() % basis.size()].second;
            const auto& z = basis[rng() % basis.size()].second;
            int s = (A.lie_parity(x) == 1 && A.lie_parity(y) == 1) ? -1 : 1;
            SuperPolynomial r = A.bracket(x, A.bracket(y, z));
            r -= A.bracket(A.bracket(x, y), z);
            r -= Rational(s) * A.bracket(y, A.bracket(x, z));
            if (!r.is_zero())
                jacobi = false;
        }
        doc["selfcheck"] = {{"grading_closure", closure},
                            {"super_skew_symmetry", skew},
                            {"jacobi_sample", jacobi}};
    }
    if (opt.timings)
        doc["timing_ms"] = ms_since(t0);
    return doc;
}

Json cmd_cohomology(const std::string& spec_text, int j, int l_lo, int l_hi,
                    const std::string& parity, bool invariant, const ReportOptions& opt)
{
    auto t0 = std::chrono::steady_clock::now();
    AlgebraSpec spec = AlgebraSpec::parse(spec_text);
    GradedAlgebra A(spec);
    ReductiveActionSpec act = reductive_action(A);

    int par = -1;
    if (parity == "even")
        par = 0;
    else if (parity == "odd")
        par = 1;
    else if (parity != "both" && !parity.empty())
        throw std::invalid_argument("parity must be even|odd|both");

    Json doc;
    doc["tool"] = "spencer";
    doc["version"] = kToolVersion;
    doc["command"] = "cohomology";
    doc["spec"] = spec.str();
    doc["j"] = j;
    doc["l_range"] = {l_lo, l_hi};
    doc["parity"] = parity.empty() ? "both" : parity;
    doc["invariant"] = invariant ? act.label : "";
    doc["degree_cap"] = A.degree_cap();

    Json table = Json::array();
    for (int l = l_lo; l <= l_hi; ++l) {
        auto res = cohomology(A, l, j, par, invariant ? &act : nullptr);
        Json row;
        row["l"] = l;
        row["dimension"] = res.dim;
        if (res.dim > 0) {
            Json reps = Json::array();
            for (const auto& r : res.representatives)
                reps.push_back(render(r));
            row["representatives"] = reps;
        }
        table.push_back(std::move(row));
    }
    doc["table"] = table;
    if (opt.timings)
        doc["timing_ms"] = ms_since(t0);
    return doc;
}

Json cmd_deform(const std::string& variant_text, const std::string& base, int n, int cap,
                const ReportOptions& opt)
{
    auto t0 = std::chrono::steady_clock::now();
    DeformVariant variant = parse_variant(variant_text);
    Family base_family = Family::SHO_HAT;
    if (!base.empty()) {
        if (base == "SHO_HAT" || base == "^SHO")
            base_family = Family::SHO_HAT;
        else if (base == "SHO_PRIME_HAT" || base == "^SHO'")
            base_family = Family::SHO_PRIME_HAT;
        else
            throw std::invalid_argument("deform base must be ^SHO or ^SHO'");
    }
    Deformation D(variant, n, base_family);

    Json doc;
    doc["tool"] = "spencer";
    doc["version"] = kToolVersion;
    doc["command"] = "deform";
    doc["variant"] = variant_name(variant);
    doc["base"] = D.algebra().spec().str();
    doc["n"] = n;
    doc["cap"] = cap;
    doc["mu_degree"] = D.mu_degree();

    auto jac = D.jacobi_verify(cap);
    doc["jacobi"] = {{"checked_triples", jac.checked_triples},
                     {"violations", jac.violation_count},
                     {"passed", jac.passed()}};
    if (!jac.violations.empty()) {
        Json v = Json::array();
        for (const auto& viol : jac.violations)
            v.push_back({{"h", viol.h}, {"f", viol.f}, {"g", viol.g}, {"residual", viol.residual}});
        doc["jacobi"]["examples"] = v;
    }

    auto rec = D.cocycle_and_invariance_check();
    doc["cocycle"] = {{"is_2cocycle", rec.is_2cocycle},
                      {"a_invariant", rec.a_invariant},
                      {"even", rec.even},
                      {"class_nontrivial", rec.class_nontrivial}};

    if (variant != DeformVariant::SKO_EPS) {
        doc["rho_isomorphism"] = rho_check(n, cap);
        doc["central_shift"] = central_shift_check(n, cap);
    }
    if (opt.timings)
        doc["timing_ms"] = ms_since(t0);
    return doc;
}

Json cmd_selfcheck(const std::string& spec_text, const ReportOptions& opt)
{
    auto t0 = std::chrono::steady_clock::now();
    std::string spec = spec_text.empty() ? "SHO'(2,2)" : spec_text;
    Json doc;
    doc["tool"] = "spencer";
    doc["version"] = kToolVersion;
    doc["command"] = "selfcheck";
    doc["spec"] = spec;

    GradedAlgebra A(AlgebraSpec::parse(spec));
    Json checks;

    {
        Json alg = cmd_algebra(spec, -A.depth(), 2);
        checks["algebra"] = alg["selfcheck"];
    }

    // d o d = 0 on random cochains
    {
        std::mt19937 rng(2026);
        bool ok = true;
        for (int j : {0, 1}) {
            for (int l : {1, 2}) {
                CochainSpacePtr S = make_cochain_space(A, j, l);
                if (S->dim() == 0)
                    continue;
                for (int t = 0; t < 3 && ok; ++t) {
                    Cochain c(S);
                    for (auto& x : c.coef)
                        if (rng() % 3 == 0)
                            x = Rational(static_cast<long>(rng() % 7) - 3);
                    if (!coboundary(coboundary(c)).is_zero())
                        ok = false;
                }
            }
        }
        checks["d_squared_zero"] = ok;
    }

    // transitivity H^{k,0} = 0 for k = 0..2
    {
        bool ok = true;
        for (int k = 0; k <= 2; ++k)
            if (cohomology(A, k, 0).dim != 0)
                ok = false;
        checks["transitive"] = ok;
    }

    doc["checks"] = checks;
    bool all = true;
    std::function<void(const Json&)> walk = [&](const Json& v) {
        if (v.is_boolean()) {
            if (!v.get<bool>())
                all = false;
        } else if (v.is_object() || v.is_array()) {
            for (const auto& x : v)
                walk(x);
        }
    };
    walk(checks);
    doc["passed"] = all;
    if (opt.timings)
        doc["timing_ms"] = ms_since(t0);
    return doc;
}

bool report_passed(const Json& doc)
{
    bool all = true;
    std::function<void(const Json&, const std::string&)> walk = [&](const Json& v,
                                                                    const std::string& key) {
        if (v.is_boolean()) {
            if ((key == "passed" || key == "is_2cocycle" || key == "a_invariant" ||
                 key == "even" || key == "class_nontrivial" || key == "rho_isomorphism" ||
                 key == "central_shift" || key == "grading_closure" ||
                 key == "super_skew_symmetry" || key == "jacobi_sample" ||
                 key == "d_squared_zero" || key == "transitive" ||
                 key == "weyl_dimension_sum_matches") &&
                !v.get<bool>())
                all = false;
        } else if (v.is_object()) {
            for (auto it = v.begin(); it != v.end(); ++it)
                walk(it.value(), it.key());
        } else if (v.is_array()) {
            for (const auto& x : v)
                walk(x, key);
        }
    };
    walk(doc, "");
    return all;
}

std::string to_csv(const Json& doc)
{
    std::ostringstream os;
    if (doc.contains("table")) {
        os << "l,dimension\n";
        for (const auto& row : doc["table"])
            os << row["l"].get<int>() << "," << row["dimension"].get<int>() << "\n";
    } else if (doc.contains("components")) {
        os << "degree,dimension\n";
        for (const auto& row : doc["components"])
            os << row["degree"].get<int>() << "," << row["dimension"].get<int>() << "\n";
    } else {
        throw std::invalid_argument("to_csv: document has no dimension table");
    }
    return os.str();
}

} // namespace spencer
