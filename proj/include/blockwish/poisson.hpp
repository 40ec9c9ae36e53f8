#pragma once

#include "blockwish/measure.hpp"
#include "blockwish/moments.hpp"
#include "blockwish/partition.hpp"

namespace blockwish {

/// Compound free Poisson law, determined by its base measure: the free
/// *-cumulants of the law are the *-moments of the base.
struct CompoundFreePoissonLaw {
    AtomicMeasure base;
};

/// sum_i c_i prod_x (z_i or conj(z_i) per the word).
Complex measureStarMoment(const AtomicMeasure& mu, const ExponentWord& e);

/// Moment-cumulant summation over NC_p: for each noncrossing sigma, the
/// product over blocks of the base-measure moment of the restricted word.
MomentTable compoundMoments(const CompoundFreePoissonLaw& law, int p_max);

/// *-moments of pi_{mn rho} computed from Lambda:
/// sum over NC_p of (mn)^{|sigma|} (M_sigma^e (x) M_sigma^e)(Lambda).
MomentTable compoundFromChoi(const ChoiMatrix& lambda, int m, int n, int p_max,
                             long long budget = kDefaultMomentBudget);

/// Exact d -> infinity limit of the *-moments of m W~, valid for any Lambda:
/// sum over NC_p of (mn)^{|sigma|} (M_sigma^e (x) M_gamma^e)(Lambda).
MomentTable asymptoticLimit(const ChoiMatrix& lambda, int m, int n, int p_max,
                            long long budget = kDefaultMomentBudget);

/// Free Bessel law beta^n_t: base t * (uniform measure on n-th roots of 1).
CompoundFreePoissonLaw freeBessel(int n, double t);

/// Limit *-moment of the unrescaled W~ for the Bessel modification map:
/// sum over noncrossing tau whose blocks have e-weighted size divisible by n
/// of (n/m)^{|tau|-1}.
Complex besselLimit(int n, int m, const ExponentWord& e);

/// Marchenko-Pastur / free Poisson law pi_t = pi_{t delta_1}.
CompoundFreePoissonLaw marchenkoPastur(double t);

}  // namespace blockwish
