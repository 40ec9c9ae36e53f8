#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "blockwish/choi.hpp"
#include "blockwish/measure.hpp"
#include "blockwish/partition.hpp"

namespace blockwish {

/// Complex moment values keyed by exponent word, for all words up to some
/// order. The empty word always maps to 1.
struct MomentTable {
    int order = 0;
    std::map<ExponentWord, Complex> values;

    Complex at(const ExponentWord& e) const;
    /// key = word over {1,*}; value = `re,im`.
    void serialize(std::ostream& out) const;
    static MomentTable deserialize(std::istream& in);
};

struct MultiplicativityFailure {
    int p = 0;
    ExponentWord word;
    Partition sigma{0, 0, {}};
    Complex left;   // (M_sigma (x) M_gamma)(Lambda)
    Complex right;  // (M_sigma (x) M_sigma)(Lambda)
};

struct MultiplicativityReport {
    int pMax = 0;
    bool verdict = false;
    std::vector<MultiplicativityFailure> failures;

    void serialize(std::ostream& out) const;
};

/// Normalized trace of X^{e_1} ... X^{e_p}; the empty word gives 1.
Complex traceStarMoment(const Matrix& X, const ExponentWord& e);

/// Default budget for the brute-force generalized-moment sum, in elementary
/// terms n^{2p}.
inline constexpr long long kDefaultMomentBudget = 1'000'000'000;

/// Unnormalized brute-force sum over index tuples i,j in {1..n}^p of the
/// product of Lambda^{e_x} entries along sigma and tau.
Complex generalizedStarMomentRaw(const ChoiMatrix& lambda, const Permutation& sigma,
                                 const Permutation& tau, const ExponentWord& e,
                                 long long budget = kDefaultMomentBudget);

/// (M_sigma^e (x) M_tau^e)(Lambda), normalized by n^{|sigma|+|tau|}.
Complex generalizedStarMoment(const ChoiMatrix& lambda, const Permutation& sigma,
                              const Permutation& tau, const ExponentWord& e,
                              long long budget = kDefaultMomentBudget);

/// Checks (M_sigma^e (x) M_gamma^e) = (M_sigma^e (x) M_sigma^e) for all
/// p <= pMax, all exponent words, all sigma in NC_p.
MultiplicativityReport isMultiplicative(const ChoiMatrix& lambda, int p_max, double tol = 1e-9,
                                        long long budget = kDefaultMomentBudget);

/// Plain trace *-moments of Lambda for all words up to pMax; asserted equal
/// to the gamma-gamma generalized moments.
MomentTable lawMoments(const ChoiMatrix& lambda, int p_max);

/// Eigenvalues of a self-adjoint Choi matrix clustered into atoms with
/// weights multiplicity / n^2.
AtomicMeasure spectralAtoms(const ChoiMatrix& lambda, double tol = 1e-9);

}  // namespace blockwish
