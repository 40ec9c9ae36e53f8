#include "blockwish/moments.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace blockwish {

namespace {

double intPowD(double base, int exp) {
    double out = 1.0;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace

Complex MomentTable::at(const ExponentWord& e) const {
    auto it = values.find(e);
    if (it == values.end()) throw std::out_of_range("moment table: missing word " + e.str());
    return it->second;
}

void MomentTable::serialize(std::ostream& out) const {
    out << "order " << order << '\n';
    for (const auto& [word, value] : values)
        out << (word.size() == 0 ? "-" : word.str()) << " = " << value.real() << ','
            << value.imag() << '\n';
}

MomentTable MomentTable::deserialize(std::istream& in) {
    MomentTable table;
    std::string key, eq, val;
    in >> key >> table.order;
    if (key != "order") throw std::runtime_error("moment table: bad header");
    while (in >> key >> eq >> val) {
        if (eq != "=") throw std::runtime_error("moment table: bad line");
        auto comma = val.find(',');
        Complex v(std::stod(val.substr(0, comma)), std::stod(val.substr(comma + 1)));
        table.values.emplace(ExponentWord(key == "-" ? "" : key), v);
    }
    return table;
}

void MultiplicativityReport::serialize(std::ostream& out) const {
    out << "pmax " << pMax << '\n' << "verdict " << (verdict ? "pass" : "fail") << '\n';
    for (const auto& f : failures)
        out << "failure p=" << f.p << " e=" << f.word.str() << " sigma=" << f.sigma.str()
            << " left=" << f.left.real() << ',' << f.left.imag() << " right=" << f.right.real()
            << ',' << f.right.imag() << '\n';
}

Complex traceStarMoment(const Matrix& X, const ExponentWord& e) {
    if (X.rows() != X.cols()) throw std::invalid_argument("traceStarMoment: square matrix required");
    if (e.size() == 0) return 1.0;
    Matrix prod = e.isStar(0) ? Matrix(X.adjoint()) : X;
    for (int i = 1; i < e.size(); ++i) prod = prod * (e.isStar(i) ? Matrix(X.adjoint()) : X);
    return prod.trace() / static_cast<double>(X.rows());
}

Complex generalizedStarMomentRaw(const ChoiMatrix& lambda, const Permutation& sigma,
                                 const Permutation& tau, const ExponentWord& e, long long budget) {
    const int p = e.size();
    if (sigma.size() != p || tau.size() != p)
        throw std::invalid_argument("generalizedStarMoment: permutation sizes must match word");
    const int n = lambda.inner;
    if (p == 0) return 1.0;
    double terms = std::pow(static_cast<double>(n), 2 * p);
    if (terms > static_cast<double>(budget))
        throw std::invalid_argument("generalizedStarMoment: budget exceeded");

    // Factor matrices: Lambda or its adjoint per letter.
    std::vector<const Matrix*> factors(p);
    Matrix adj = lambda.mat.adjoint();
    for (int x = 0; x < p; ++x) factors[x] = e.isStar(x) ? &adj : &lambda.mat;

    std::vector<int> i(p, 0), j(p, 0);
    Complex total = 0.0;
    while (true) {
        Complex prod = 1.0;
        for (int x = 0; x < p && prod != Complex(0.0); ++x)
            prod *= (*factors[x])(i[x] * n + j[x], i[sigma(x)] * n + j[tau(x)]);
        total += prod;
        int x = 0;
        for (; x < p; ++x) {
            if (++j[x] < n) break;
            j[x] = 0;
            if (++i[x] < n) break;
            i[x] = 0;
        }
        if (x == p) break;
    }
    return total;
}

Complex generalizedStarMoment(const ChoiMatrix& lambda, const Permutation& sigma,
                              const Permutation& tau, const ExponentWord& e, long long budget) {
    Complex raw = generalizedStarMomentRaw(lambda, sigma, tau, e, budget);
    return raw / intPowD(lambda.inner, sigma.cycleCount() + tau.cycleCount());
}

MultiplicativityReport isMultiplicative(const ChoiMatrix& lambda, int p_max, double tol,
                                        long long budget) {
    if (p_max < 1) throw std::invalid_argument("isMultiplicative: pMax must be >= 1");
    MultiplicativityReport report;
    report.pMax = p_max;
    for (int p = 1; p <= p_max; ++p) {
        auto gamma = Permutation::standardCycle(p);
        for (const auto& sigma_nc : enumerateNoncrossing(p)) {
            auto sigma = ncToPermutation(sigma_nc);
            for (const auto& word : ExponentWord::allWords(p)) {
                Complex left = generalizedStarMoment(lambda, sigma, gamma, word, budget);
                Complex right = generalizedStarMoment(lambda, sigma, sigma, word, budget);
                if (std::abs(left - right) > tol)
                    report.failures.push_back({p, word, sigma_nc, left, right});
            }
        }
    }
    report.verdict = report.failures.empty();
    return report;
}

MomentTable lawMoments(const ChoiMatrix& lambda, int p_max) {
    MomentTable table;
    table.order = p_max;
    table.values.emplace(ExponentWord(""), 1.0);
    for (int p = 1; p <= p_max; ++p) {
        auto gamma = Permutation::standardCycle(p);
        for (const auto& word : ExponentWord::allWords(p)) {
            Complex value = traceStarMoment(lambda.mat, word);
            // The gamma-gamma generalized moment is the same number.
            if (std::pow(static_cast<double>(lambda.inner), 2 * p) <=
                static_cast<double>(kDefaultMomentBudget)) {
                Complex check = generalizedStarMoment(lambda, gamma, gamma, word);
                if (std::abs(check - value) > 1e-9)
                    throw std::logic_error("lawMoments: trace route disagrees with gamma route");
            }
            table.values.emplace(word, value);
        }
    }
    return table;
}

AtomicMeasure spectralAtoms(const ChoiMatrix& lambda, double tol) {
    if (!lambda.isSelfAdjoint(tol))
        throw std::invalid_argument("spectralAtoms: non-self-adjoint input");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(lambda.mat);
    Eigen::VectorXd ev = solver.eigenvalues();
    AtomicMeasure out;
    const double unit = 1.0 / static_cast<double>(lambda.mat.rows());
    int i = 0;
    while (i < ev.size()) {
        int j = i;
        double sum = 0.0;
        while (j < ev.size() && ev(j) - ev(i) <= tol) sum += ev(j++);
        out.atoms.push_back({unit * (j - i), Complex(sum / (j - i), 0.0)});
        i = j;
    }
    return out;
}

}  // namespace blockwish
