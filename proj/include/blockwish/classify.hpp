#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blockwish/measure.hpp"
#include "blockwish/moments.hpp"
#include "blockwish/partition.hpp"

namespace blockwish {

/// One piece of the finest symmetric decomposition of a symmetric partition
/// in P_even(2s,2s): either a single mirror-closed block, or the union of an
/// asymmetric block with its mirror image.
struct SymmetricComponent {
    enum class Kind { SymmetricBlock, AsymmetricPair };
    Kind kind = Kind::SymmetricBlock;

    std::vector<int> upperLegs;  // upper-row positions of the whole component
    std::vector<int> lowerLegs;  // lower-row positions

    // SymmetricBlock: r mirror pairs among upper legs, v among lower legs.
    // AsymmetricPair: counts for the block beta containing the smallest leg:
    // r/u upper legs in the left/right half, v/w lower legs likewise.
    int r = 0, u = 0, v = 0, w = 0;

    int upperLegCount() const { return static_cast<int>(upperLegs.size()); }
    int lowerLegCount() const { return static_cast<int>(lowerLegs.size()); }

    /// The component's legs as a standalone partition (row order preserved).
    Partition extracted{0, 0, {}};
};

/// pi equals its blockwise middle symmetry.
bool isSymmetric(const Partition& pi);

/// Finest symmetric decomposition; requires isSymmetric(pi).
std::vector<SymmetricComponent> symmetricComponents(const Partition& pi);

struct UnitalityResult {
    bool unital = false;
    Complex scalar;  // phi_pi(1) = scalar * 1 when unital
};

/// Evaluates both the matrix criterion (phi_pi(1) scalar) and the
/// combinatorial one ([mu on top of pi] = mu) and asserts they agree.
UnitalityResult isUnitalModScalars(const Partition& pi, int N);

struct EligibilityReport {
    bool eligible = false;
    bool unitalBothWays = false;      // phi_pi and phi_pi* unital mod scalars
    bool smallComponents = false;     // every component has <= 2 upper and <= 2 lower legs
    bool basicComponentCopies = false;  // components are copies of the P_even(2,2) shapes
    std::vector<SymmetricComponent> components;
};

/// The three equivalent conditions for the main limit theorem, evaluated
/// independently and asserted to agree.
EligibilityReport easyCaseEligible(const Partition& pi);

/// Symbolic lambda of a component at given sigma, tau: either a partition on
/// p points, or the unconstrained sentinel when no index relation survives
/// (one of the two linked index families stays entirely free, so all p
/// classes count and blockCount = p). The generalized moment of the
/// component is N^(blockCount - sigmaCoeff |sigma| - tauCoeff |tau|).
struct ComponentLambda {
    std::optional<Partition> lambda;  // nullopt = the unconstrained sentinel
    std::string symbol;               // e.g. "ss&st&st'" (s=sigma, t=tau, ' = inverse)
    int blockCount = 0;
    int sigmaCoeff = 0;
    int tauCoeff = 0;
};

ComponentLambda componentLambda(const SymmetricComponent& comp, const Permutation& sigma,
                                const Permutation& tau);

struct ClosedFormMoment {
    int exponent = 0;  // sum over components of |lambda| - R|sigma| - V|tau|
    double value = 0.0;
};

/// Product over symmetric components of the closed-form contribution;
/// plain (all-1) exponent word only.
ClosedFormMoment closedFormGeneralizedMoment(const Partition& pi, const Permutation& sigma,
                                             const Permutation& tau, int N);

struct PredictedLaw {
    MomentTable moments;
    std::optional<AtomicMeasure> baseMeasure;  // mn * law(Lambda) when self-adjoint
    bool twisted = false;
    // With twisting: whether the twisted prediction coincides with the
    // untwisted one. True exactly when every block of pi meets both rows;
    // a partition with a single-row block (a horizontal string) admits
    // index kernels that merge a string with other blocks, and such merged
    // kernels can carry signature -1, shifting the twisted moments.
    bool twistedMatchesUntwisted = true;
};

/// Whether every block of pi has at least one upper and one lower leg.
/// For eligible partitions this characterizes twisting-invariance of the
/// predicted limit law (verified exhaustively on P_even(4,4)).
bool allBlocksMeetBothRows(const Partition& pi);

/// End-to-end limit-law prediction: compoundFromChoi of the (twisted) easy
/// Choi matrix; refuses ineligible partitions. With twisting, the untwisted
/// prediction is recomputed and the comparison reported in the result.
PredictedLaw predictLimitLaw(const Partition& pi, int N, int m, bool twisted, int p_max);

}  // namespace blockwish
