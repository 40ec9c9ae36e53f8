#include "blockwish/poisson.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blockwish {

namespace {

double intPowD(double base, int exp) {
    double out = 1.0;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

/// Word restricted to the positions of one block, in position order.
ExponentWord restrict(const ExponentWord& e, const std::vector<int>& block) {
    std::string sub;
    for (int pos : block) sub.push_back(e.isStar(pos) ? '*' : '1');
    return ExponentWord(std::move(sub));
}

}  // namespace

Complex measureStarMoment(const AtomicMeasure& mu, const ExponentWord& e) {
    Complex total = 0.0;
    for (const auto& atom : mu.atoms) {
        Complex prod = 1.0;
        for (int x = 0; x < e.size(); ++x)
            prod *= e.isStar(x) ? std::conj(atom.location) : atom.location;
        total += atom.weight * prod;
    }
    return total;
}

MomentTable compoundMoments(const CompoundFreePoissonLaw& law, int p_max) {
    if (p_max < 0) throw std::invalid_argument("compoundMoments: pMax must be >= 0");
    MomentTable table;
    table.order = p_max;
    table.values.emplace(ExponentWord(""), 1.0);
    for (int p = 1; p <= p_max; ++p) {
        for (const auto& word : ExponentWord::allWords(p)) {
            Complex sum = 0.0;
            for (const auto& sigma : enumerateNoncrossing(p)) {
                Complex prod = 1.0;
                for (const auto& block : sigma.blocks())
                    prod *= measureStarMoment(law.base, restrict(word, block));
                sum += prod;
            }
            table.values.emplace(word, sum);
        }
    }
    return table;
}

namespace {

MomentTable ncChoiSum(const ChoiMatrix& lambda, int m, int n, int p_max, bool tau_is_gamma,
                      long long budget) {
    if (p_max < 0) throw std::invalid_argument("pMax must be >= 0");
    if (m < 1 || n < 1) throw std::invalid_argument("parameters must be positive");
    if (n != lambda.inner) throw std::invalid_argument("n must match the Choi inner dimension");
    MomentTable table;
    table.order = p_max;
    table.values.emplace(ExponentWord(""), 1.0);
    for (int p = 1; p <= p_max; ++p) {
        auto gamma = Permutation::standardCycle(p);
        for (const auto& word : ExponentWord::allWords(p)) {
            Complex sum = 0.0;
            for (const auto& sigma_nc : enumerateNoncrossing(p)) {
                auto sigma = ncToPermutation(sigma_nc);
                const auto& tau = tau_is_gamma ? gamma : sigma;
                sum += intPowD(m * n, sigma.cycleCount()) *
                       generalizedStarMoment(lambda, sigma, tau, word, budget);
            }
            table.values.emplace(word, sum);
        }
    }
    return table;
}

}  // namespace

MomentTable compoundFromChoi(const ChoiMatrix& lambda, int m, int n, int p_max, long long budget) {
    return ncChoiSum(lambda, m, n, p_max, /*tau_is_gamma=*/false, budget);
}

MomentTable asymptoticLimit(const ChoiMatrix& lambda, int m, int n, int p_max, long long budget) {
    return ncChoiSum(lambda, m, n, p_max, /*tau_is_gamma=*/true, budget);
}

CompoundFreePoissonLaw freeBessel(int n, double t) {
    if (n < 1 || t <= 0.0) throw std::invalid_argument("freeBessel: need n >= 1, t > 0");
    CompoundFreePoissonLaw law;
    const double theta = 2.0 * std::numbers::pi / n;
    for (int k = 0; k < n; ++k)
        law.base.atoms.push_back({t / n, std::polar(1.0, theta * k)});
    return law;
}

Complex besselLimit(int n, int m, const ExponentWord& e) {
    if (n < 1 || m < 1) throw std::invalid_argument("besselLimit: need n, m >= 1");
    const int p = e.size();
    if (p == 0) return 1.0;
    double sum = 0.0;
    for (const auto& tau : enumerateNoncrossing(p)) {
        bool admissible = true;
        for (const auto& block : tau.blocks()) {
            int weighted = 0;
            for (int pos : block) weighted += e.sign(pos);
            if (((weighted % n) + n) % n != 0) {
                admissible = false;
                break;
            }
        }
        if (admissible)
            sum += std::pow(static_cast<double>(n) / m, tau.blockCount() - 1);
    }
    return sum;
}

CompoundFreePoissonLaw marchenkoPastur(double t) {
    if (t <= 0.0) throw std::invalid_argument("marchenkoPastur: t must be positive");
    CompoundFreePoissonLaw law;
    law.base.atoms.push_back({t, Complex(1.0, 0.0)});
    return law;
}

}  // namespace blockwish
