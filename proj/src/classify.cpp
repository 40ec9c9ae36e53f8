#include "blockwish/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "blockwish/choi.hpp"
#include "blockwish/poisson.hpp"

namespace blockwish {

namespace {

// Mirror of a point: each half-row of length s is swapped with the other.
int mirrorPoint(int point, int s) {
    int two_s = 2 * s;
    if (point < two_s) return (point + s) % two_s;
    return two_s + (point - two_s + s) % two_s;
}

// The pairing in P(0,2s) connecting column i with column i+s; putting it on
// top of pi and asking for a fixed point is the combinatorial unitality test.
Partition halfShiftPairing(int s) {
    std::vector<int> ids(2 * s);
    for (int i = 0; i < 2 * s; ++i) ids[i] = i % s;
    return Partition(0, 2 * s, std::move(ids));
}

bool combinatorialUnital(const Partition& pi) {
    int s = pi.upperCount() / 2;
    Partition mu = halfShiftPairing(s);
    VerticalComposition vc = verticalCompose(mu, pi);
    return vc.result == mu;
}

}  // namespace

bool isSymmetric(const Partition& pi) { return middleSymmetry(pi) == pi; }

std::vector<SymmetricComponent> symmetricComponents(const Partition& pi) {
    if (pi.upperCount() != pi.lowerCount() || pi.upperCount() % 2 != 0)
        throw std::invalid_argument("symmetricComponents: partition must lie in P(2s,2s)");
    if (!isSymmetric(pi)) throw std::invalid_argument("symmetricComponents: partition not symmetric");
    int s = pi.upperCount() / 2;
    int two_s = 2 * s;

    auto blocks = pi.blocks();
    // Identify the mirror partner of each block.
    std::map<std::vector<int>, int> lookup;
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) lookup[blocks[b]] = b;
    std::vector<int> partner(blocks.size(), -1);
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
        std::vector<int> mirrored;
        for (int pt : blocks[b]) mirrored.push_back(mirrorPoint(pt, s));
        std::sort(mirrored.begin(), mirrored.end());
        auto it = lookup.find(mirrored);
        if (it == lookup.end())
            throw std::logic_error("symmetricComponents: mirror image of a block is not a block");
        partner[b] = it->second;
    }

    std::vector<SymmetricComponent> out;
    std::vector<bool> used(blocks.size(), false);
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
        if (used[b]) continue;
        used[b] = true;
        SymmetricComponent comp;
        std::vector<int> points = blocks[b];
        if (partner[b] == b) {
            comp.kind = SymmetricComponent::Kind::SymmetricBlock;
        } else {
            comp.kind = SymmetricComponent::Kind::AsymmetricPair;
            used[partner[b]] = true;
            points.insert(points.end(), blocks[partner[b]].begin(), blocks[partner[b]].end());
            std::sort(points.begin(), points.end());
        }
        for (int pt : points) {
            if (pt < two_s)
                comp.upperLegs.push_back(pt);
            else
                comp.lowerLegs.push_back(pt - two_s);
        }
        if (comp.kind == SymmetricComponent::Kind::SymmetricBlock) {
            if (comp.upperLegCount() % 2 != 0 || comp.lowerLegCount() % 2 != 0)
                throw std::logic_error("symmetricComponents: symmetric block with unpaired legs");
            comp.r = comp.upperLegCount() / 2;
            comp.v = comp.lowerLegCount() / 2;
        } else {
            // Counts refer to the block containing the smallest leg.
            for (int pt : blocks[b]) {
                if (pt < s)
                    ++comp.r;
                else if (pt < two_s)
                    ++comp.u;
                else if (pt < two_s + s)
                    ++comp.v;
                else
                    ++comp.w;
            }
        }
        // Standalone copy of the component's legs.
        std::vector<int> ids;
        for (int pt : points) ids.push_back(pi.blockAt(pt) == pi.blockAt(points[0]) ? 0 : 1);
        comp.extracted = Partition(comp.upperLegCount(), comp.lowerLegCount(), std::move(ids));
        out.push_back(std::move(comp));
    }
    return out;
}

UnitalityResult isUnitalModScalars(const Partition& pi, int N) {
    if (pi.upperCount() != pi.lowerCount() || pi.upperCount() % 2 != 0)
        throw std::invalid_argument("isUnitalModScalars: partition must lie in P(2s,2s)");
    bool fromDiagram = combinatorialUnital(pi);

    ChoiMatrix lambda = easyChoi(pi, N);
    LinearBlockMap phi = mapFromChoi(lambda);
    int n = lambda.inner;
    Matrix image = phi.apply(Matrix::Identity(n, n));
    Complex scalar = image(0, 0);
    bool fromMatrix = true;
    for (int b = 0; b < n && fromMatrix; ++b)
        for (int d = 0; d < n; ++d) {
            Complex want = (b == d) ? scalar : Complex(0.0, 0.0);
            if (std::abs(image(b, d) - want) > 1e-9) {
                fromMatrix = false;
                break;
            }
        }

    if (fromMatrix != fromDiagram)
        throw std::logic_error("isUnitalModScalars: matrix and diagram criteria disagree for " +
                               pi.str());
    return UnitalityResult{fromMatrix, scalar};
}

EligibilityReport easyCaseEligible(const Partition& pi) {
    if (!isSymmetric(pi)) throw std::invalid_argument("easyCaseEligible: partition not symmetric");
    if (!pi.allBlocksEven())
        throw std::invalid_argument("easyCaseEligible: partition has odd blocks");

    EligibilityReport rep;
    rep.components = symmetricComponents(pi);

    rep.unitalBothWays = combinatorialUnital(pi) && combinatorialUnital(adjoint(pi));

    rep.smallComponents = true;
    for (const auto& c : rep.components)
        if (c.upperLegCount() > 2 || c.lowerLegCount() > 2) rep.smallComponents = false;

    rep.basicComponentCopies = true;
    for (const auto& c : rep.components) {
        bool basic;
        if (c.kind == SymmetricComponent::Kind::SymmetricBlock)
            basic = c.r <= 1 && c.v <= 1;
        else
            basic = (c.r + c.u == 1) && (c.v + c.w == 1);
        if (!basic) rep.basicComponentCopies = false;
    }

    if (rep.unitalBothWays != rep.smallComponents ||
        rep.smallComponents != rep.basicComponentCopies)
        throw std::logic_error("easyCaseEligible: equivalent criteria disagree for " + pi.str());
    rep.eligible = rep.smallComponents;
    return rep;
}

namespace {

ComponentLambda wedgeOf(const std::vector<std::pair<std::string, Permutation>>& factors, int p) {
    ComponentLambda out;
    if (factors.empty()) {
        // No surviving relation: every index class stays free.
        out.lambda = std::nullopt;
        out.symbol = "free";
        out.blockCount = p;
        return out;
    }
    Partition acc = factors[0].second.cyclePartition();
    std::string sym = factors[0].first;
    for (size_t i = 1; i < factors.size(); ++i) {
        acc = commonCoarsening(acc, factors[i].second.cyclePartition());
        sym += "&" + factors[i].first;
    }
    out.lambda = acc;
    out.symbol = sym;
    out.blockCount = acc.blockCount();
    return out;
}

}  // namespace

ComponentLambda componentLambda(const SymmetricComponent& comp, const Permutation& sigma,
                                const Permutation& tau) {
    int p = sigma.size();
    if (tau.size() != p) throw std::invalid_argument("componentLambda: size mismatch");

    ComponentLambda out;
    if (comp.kind == SymmetricComponent::Kind::SymmetricBlock) {
        out.sigmaCoeff = comp.r;
        out.tauCoeff = comp.v;
        if (comp.r >= 1 && comp.v >= 1)
            out = wedgeOf({{"s", sigma}, {"t", tau}}, p);
        else if (comp.r >= 1)
            out = wedgeOf({{"s", sigma}}, p);
        else if (comp.v >= 1)
            out = wedgeOf({{"t", tau}}, p);
        else
            throw std::invalid_argument("componentLambda: symmetric block with no legs");
        out.sigmaCoeff = comp.r;
        out.tauCoeff = comp.v;
        return out;
    }

    bool R = comp.r > 0, U = comp.u > 0, V = comp.v > 0, W = comp.w > 0;
    if (!R && !U && !V && !W)
        throw std::invalid_argument("componentLambda: pair with r=u=v=w=0 is unreachable");

    Permutation ss = permCompose(sigma, sigma);
    Permutation st = permCompose(sigma, tau);
    Permutation st_inv = permCompose(sigma, tau.inverse());
    Permutation ts = permCompose(tau, sigma);
    Permutation t_inv_s = permCompose(tau.inverse(), sigma);
    Permutation tt = permCompose(tau, tau);

    // The 4x4 table of index relations, keyed by positivity of (r,u) x (v,w).
    std::vector<std::pair<std::string, Permutation>> factors;
    if (R && U) {
        if (V && W)
            factors = {{"ss", ss}, {"st", st}, {"st'", st_inv}};
        else if (V)
            factors = {{"ss", ss}, {"st'", st_inv}};
        else if (W)
            factors = {{"ss", ss}, {"st", st}};
        else
            factors = {{"ss", ss}};
    } else if (R) {
        if (V && W)
            factors = {{"st", st}, {"st'", st_inv}};
        else if (V)
            factors = {{"st'", st_inv}};
        else if (W)
            factors = {{"st", st}};
        else
            factors = {};
    } else if (U) {
        if (V && W)
            factors = {{"ts", ts}, {"tt", tt}};
        else if (V)
            factors = {{"ts", ts}};
        else if (W)
            factors = {{"t's", t_inv_s}};
        else
            factors = {};
    } else {
        if (V && W)
            factors = {{"tt", tt}};
        else
            factors = {};
    }
    out = wedgeOf(factors, p);
    out.sigmaCoeff = comp.r + comp.u;
    out.tauCoeff = comp.v + comp.w;
    return out;
}

ClosedFormMoment closedFormGeneralizedMoment(const Partition& pi, const Permutation& sigma,
                                             const Permutation& tau, int N) {
    auto comps = symmetricComponents(pi);
    int sigmaBlocks = sigma.cycleCount();
    int tauBlocks = tau.cycleCount();
    ClosedFormMoment out;
    for (const auto& c : comps) {
        ComponentLambda cl = componentLambda(c, sigma, tau);
        out.exponent += cl.blockCount - cl.sigmaCoeff * sigmaBlocks - cl.tauCoeff * tauBlocks;
    }
    out.value = std::pow(static_cast<double>(N), out.exponent);
    return out;
}

bool allBlocksMeetBothRows(const Partition& pi) {
    for (const auto& blk : pi.blocks()) {
        bool up = false, lo = false;
        for (int p : blk) (p < pi.upperCount() ? up : lo) = true;
        if (!up || !lo) return false;
    }
    return true;
}

PredictedLaw predictLimitLaw(const Partition& pi, int N, int m, bool twisted, int p_max) {
    EligibilityReport rep = easyCaseEligible(pi);
    if (!rep.eligible)
        throw std::invalid_argument("predictLimitLaw: partition fails the eligibility criteria: " +
                                    pi.str());

    ChoiMatrix lambda = twisted ? twistedChoi(pi, N) : easyChoi(pi, N);
    int n = lambda.inner;
    PredictedLaw law;
    law.twisted = twisted;
    law.moments = compoundFromChoi(lambda, m, n, p_max);

    if (twisted) {
        MomentTable plain = compoundFromChoi(easyChoi(pi, N), m, n, p_max);
        for (const auto& [word, value] : law.moments.values)
            if (std::abs(value - plain.at(word)) > 1e-9) law.twistedMatchesUntwisted = false;
        bool balanced = allBlocksMeetBothRows(pi);
        if (balanced != law.twistedMatchesUntwisted)
            throw std::logic_error(
                "predictLimitLaw: twisting-invariance disagrees with the block-structure "
                "criterion for " +
                pi.str());
    }

    if (lambda.isSelfAdjoint()) {
        // Base of the compound free Poisson limit: mn times the spectral law.
        law.baseMeasure = spectralAtoms(lambda).scaled(static_cast<double>(m) * n);
    }
    return law;
}

}  // namespace blockwish
