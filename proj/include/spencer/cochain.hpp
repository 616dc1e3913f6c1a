#pragma once

#include "spencer/action.hpp"
#include "spencer/algebra.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace spencer {

// The negative part g_- split into Lie-even and Lie-odd basis elements,
// each tagged with its degree. Order: degree -1 block first, then -2.
struct GMinus {
    struct Elem {
        SuperPolynomial value;
        int degree;
        std::string name; // rendering of the element; duals print with '
    };
    std::vector<Elem> evens, odds;
};

GMinus g_minus(const GradedAlgebra& A);

// A super-wedge word of duals: a strict set of even-element duals
// (anticommuting) and a multiset of odd-element duals (commuting).
struct DualWord {
    std::vector<int> evens; // strictly increasing indices into GMinus::evens
    std::vector<int> odds;  // weakly increasing indices into GMinus::odds
};

// Cochain space C^j at Spencer degree l: words tensor target components.
// A word of dual-degree w pairs with g_{l-w}. Basis order: words in
// enumeration order, then the target component basis.
class CochainSpace {
public:
    CochainSpace(const GradedAlgebra& A, int j, int l);

    const GradedAlgebra& algebra() const { return *A_; }
    int order() const { return j_; }
    int degree() const { return l_; }
    std::size_t dim() const { return dim_; }
    const GMinus& gminus() const { return gm_; }

    struct WordInfo {
        DualWord word;
        int wdeg;          // total dual degree
        int target_degree; // l - wdeg
        std::size_t offset;
        std::size_t target_dim;
    };
    const std::vector<WordInfo>& words() const { return words_; }
    int word_index(const std::vector<int>& evens, const std::vector<int>& odds) const;

    int basis_parity(std::size_t i) const { return parity_[i]; }
    std::string basis_name(std::size_t i) const;

private:
    const GradedAlgebra* A_;
    int j_, l_;
    GMinus gm_;
    std::vector<WordInfo> words_;
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> index_;
    std::vector<int> parity_;
    std::size_t dim_ = 0;
};

using CochainSpacePtr = std::shared_ptr<const CochainSpace>;
CochainSpacePtr make_cochain_space(const GradedAlgebra& A, int j, int l);

struct Cochain {
    CochainSpacePtr space;
    std::vector<Rational> coef;

    explicit Cochain(CochainSpacePtr s)
        : space(std::move(s)), coef(space->dim(), Rational(0))
    {
    }
    bool is_zero() const;
    int parity() const; // -1 zero or mixed
    Cochain& operator+=(const Cochain& o);
    Cochain& operator*=(const Rational& c);
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator*(const Rational& c, Cochain a) { return a *= c; }
    friend Cochain operator-(Cochain a) { return a *= Rational(-1); }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a += Rational(-1) * Cochain(b); }
};

std::string render(const Cochain& c);

// Value of c on g_- basis elements, given as index tuples in either order;
// the even block is alternating, the odd block symmetric.
SuperPolynomial eval_tuple(const Cochain& c, std::vector<int> even_args,
                           std::vector<int> odd_args);

// Value of c on arbitrary parity-homogeneous elements of g_-.
SuperPolynomial evaluate(const Cochain& c, const std::vector<SuperPolynomial>& args);

// The Spencer coboundary d c, a (j+1)-cochain of the same degree.
Cochain coboundary(const Cochain& c);

// Action of a Lie-even degree-0 element on a cochain.
Cochain act(const SuperPolynomial& a, const Cochain& c);

// Basis of the subspace of parity-filtered (-1 for all) a-invariant cochains.
std::vector<Cochain> invariant_cochains(const CochainSpacePtr& S, const ReductiveActionSpec& act,
                                        int parity);

struct CohomologyResult {
    int dim = 0;
    std::vector<Cochain> representatives;
};

// dim H^{l,j}, optionally restricted to a parity and to a-invariants
// (invariant cocycles modulo d of invariant (j-1)-cochains).
CohomologyResult cohomology(const GradedAlgebra& A, int l, int j, int parity = -1,
                            const ReductiveActionSpec* inv = nullptr);

// ---- degree-l derivations of g_- into g ------------------------------------

struct DerivationSpace {
    int l;
    // unknown layout: for each g_- element (evens then odds), a block of
    // coordinates in component(elem.degree + l)
    std::vector<std::size_t> block_offset;
    std::vector<int> block_degree;
    std::size_t flat_dim = 0;
    std::vector<std::vector<Rational>> basis; // derivations, flat coords
    std::vector<int> parity;                  // parity per basis vector
};

DerivationSpace derivation_space(const GradedAlgebra& A, int l);

// Flattened alpha_w = [w,(.)]|_{g_-} for w in component(l).
std::vector<Rational> inner_derivation(const GradedAlgebra& A, const DerivationSpace& D,
                                       const SuperPolynomial& w);

int h_l1(const GradedAlgebra& A, int l);

// True iff ad(w)|_{g_-} is a derivation NOT lying in the inner ones.
bool derivation_class_outside_inner(const GradedAlgebra& A, int l, const SuperPolynomial& w);

struct ProlongationReport {
    bool full_prolongation_from_k = true;
    bool almost_full = true;
    std::vector<int> nonzero_l; // l in [0,cap] with H^{l,1} != 0
};

ProlongationReport prolongation_report(const GradedAlgebra& A, int k, int cap);

} // namespace spencer
