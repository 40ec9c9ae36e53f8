#include "blockwish/wishart.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace blockwish {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic pairwise reduction; the summation tree depends only on the
// number of terms, never on worker scheduling.
template <typename T>
T pairwiseSum(const T* data, std::size_t count) {
    if (count == 0) return T{};
    if (count <= 8) {
        T acc = data[0];
        for (std::size_t i = 1; i < count; ++i) acc += data[i];
        return acc;
    }
    std::size_t half = count / 2;
    return pairwiseSum(data, half) + pairwiseSum(data + half, count - half);
}

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<ExponentWord> WishartConfig::requestedWords() const {
    if (!words.empty()) return words;
    std::vector<ExponentWord> out;
    for (int p = 1; p <= pMax; ++p)
        for (const auto& w : ExponentWord::allWords(p)) out.push_back(w);
    return out;
}

void WishartConfig::validate() const {
    if (d < 1 || n < 1 || m < 1 || trials < 1 || pMax < 1)
        throw std::invalid_argument("WishartConfig: d, n, m, trials, pMax must all be >= 1");
}

WishartConfig WishartConfig::parse(std::istream& in) {
    WishartConfig cfg;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::string t = trimmed(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineNo) + ": expected key=value");
        std::string key = trimmed(t.substr(0, eq));
        std::string value = trimmed(t.substr(eq + 1));
        if (key == "d")
            cfg.d = std::stoi(value);
        else if (key == "n")
            cfg.n = std::stoi(value);
        else if (key == "m")
            cfg.m = std::stoi(value);
        else if (key == "trials")
            cfg.trials = std::stoi(value);
        else if (key == "seed")
            cfg.seed = std::stoull(value);
        else if (key == "pMax")
            cfg.pMax = std::stoi(value);
        else if (key == "words") {
            cfg.words.clear();
            if (value != "all") {
                std::istringstream parts(value);
                std::string w;
                while (std::getline(parts, w, ',')) {
                    w = trimmed(w);
                    if (!w.empty()) cfg.words.push_back(ExponentWord(w));
                }
            }
        } else {
            throw std::runtime_error("config: unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

WishartConfig WishartConfig::parseFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    return parse(in);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t trial_index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (trial_index * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL);
    state_ = splitmix64(s);
}

std::uint64_t RngStream::nextRaw() { return splitmix64(state_); }

double RngStream::gaussian() {
    if (hasSpare_) {
        hasSpare_ = false;
        return spare_;
    }
    // Box-Muller on 53-bit uniforms; u1 is kept away from zero.
    double u1 = (static_cast<double>(nextRaw() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = static_cast<double>(nextRaw() >> 11) * 0x1.0p-53;
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    hasSpare_ = true;
    return radius * std::cos(angle);
}

Matrix sampleGinibre(int rows, int cols, RngStream& rng) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("sampleGinibre: bad dimensions");
    const double scale = std::sqrt(0.5);
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            g(i, j) = Complex(scale * rng.gaussian(), scale * rng.gaussian());
    return g;
}

Matrix sampleWishart(const WishartConfig& config, int trial_index) {
    config.validate();
    if (trial_index < 0 || trial_index >= config.trials)
        throw std::invalid_argument("sampleWishart: trial index out of range");
    RngStream rng(config.seed, static_cast<std::uint64_t>(trial_index));
    Matrix g = sampleGinibre(config.d * config.n, config.d * config.m, rng);
    return (g * g.adjoint()) / static_cast<double>(config.d * config.m);
}

namespace {

// Trace *-moments of X for many words at once, reusing half-length products:
// tr(PQ) costs O(dim^2) once P and Q are cached.
class TraceWordEvaluator {
public:
    explicit TraceWordEvaluator(Matrix x) : x_(std::move(x)), xAdj_(x_.adjoint()) {}

    Complex eval(const ExponentWord& e) {
        int p = e.size();
        if (p == 0) return Complex(1.0, 0.0);
        double dim = static_cast<double>(x_.rows());
        if (p == 1) return factor(e.str()[0]).trace() / dim;
        std::string s = e.str();
        const Matrix& left = product(s.substr(0, s.size() / 2));
        const Matrix& right = product(s.substr(s.size() / 2));
        return left.cwiseProduct(right.transpose()).sum() / dim;
    }

private:
    const Matrix& factor(char c) { return c == '*' ? xAdj_ : x_; }

    const Matrix& product(const std::string& w) {
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
        Matrix result;
        if (w.size() == 1)
            result = factor(w[0]);
        else
            result = product(w.substr(0, w.size() / 2)) * product(w.substr(w.size() / 2));
        return cache_.emplace(w, std::move(result)).first->second;
    }

    Matrix x_;
    Matrix xAdj_;
    std::map<std::string, Matrix> cache_;
};

}  // namespace

SampleStats empiricalStarMoments(const WishartConfig& config, const LinearBlockMap& phi,
                                 double rescale) {
    config.validate();
    if (phi.inner != config.n)
        throw std::invalid_argument("empiricalStarMoments: map dimension does not match n");
    std::vector<ExponentWord> words = config.requestedWords();
    int trials = config.trials;
    std::vector<std::vector<Complex>> samples(words.size(), std::vector<Complex>(trials));

    auto runRange = [&](int lo, int hi) {
        for (int t = lo; t < hi; ++t) {
            Matrix w = sampleWishart(config, t);
            Matrix modified = applyBlockModification(w, phi, config.d, config.n);
            TraceWordEvaluator eval(rescale * modified);
            for (std::size_t k = 0; k < words.size(); ++k) samples[k][t] = eval.eval(words[k]);
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    int workers = std::max(1, std::min<int>(hw ? static_cast<int>(hw) : 1, trials));
    if (workers == 1) {
        runRange(0, trials);
    } else {
        std::vector<std::thread> pool;
        int chunk = (trials + workers - 1) / workers;
        for (int wkr = 0; wkr < workers; ++wkr) {
            int lo = wkr * chunk, hi = std::min(trials, lo + chunk);
            if (lo < hi) pool.emplace_back(runRange, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    SampleStats stats;
    for (std::size_t k = 0; k < words.size(); ++k) {
        const auto& vals = samples[k];
        Complex mean = pairwiseSum(vals.data(), vals.size()) / static_cast<double>(trials);
        double se = 0.0;
        if (trials > 1) {
            std::vector<double> devRe(trials), devIm(trials);
            for (int t = 0; t < trials; ++t) {
                devRe[t] = (vals[t].real() - mean.real()) * (vals[t].real() - mean.real());
                devIm[t] = (vals[t].imag() - mean.imag()) * (vals[t].imag() - mean.imag());
            }
            double varRe = pairwiseSum(devRe.data(), devRe.size()) / (trials - 1);
            double varIm = pairwiseSum(devIm.data(), devIm.size()) / (trials - 1);
            se = std::sqrt(std::max(varRe, varIm) / trials);
        }
        stats.perWord.push_back(WordStats{words[k], mean, se, trials});
    }
    return stats;
}

const WordStats& SampleStats::at(const ExponentWord& e) const {
    for (const auto& ws : perWord)
        if (ws.word == e) return ws;
    throw std::out_of_range("SampleStats: word not present: " + e.str());
}

ConvergenceTable convergenceReport(const std::vector<int>& d_sweep, const WishartConfig& base,
                                   const LinearBlockMap& phi, double rescale,
                                   const MomentTable& exact_limit) {
    if (d_sweep.empty()) throw std::invalid_argument("convergenceReport: empty d sweep");
    ConvergenceTable table;
    std::vector<ExponentWord> words = base.requestedWords();
    for (int d : d_sweep) {
        WishartConfig cfg = base;
        cfg.d = d;
        SampleStats stats = empiricalStarMoments(cfg, phi, rescale);
        for (const auto& w : words) {
            const WordStats& ws = stats.at(w);
            Complex exact = exact_limit.at(w);
            table.rows.push_back(
                ConvergenceRow{d, w, ws.mean, ws.standardError, exact, std::abs(ws.mean - exact)});
        }
    }
    int dFirst = d_sweep.front(), dLast = d_sweep.back();
    for (const auto& w : words) {
        double first = 0.0, last = 0.0;
        for (const auto& row : table.rows) {
            if (!(row.word == w)) continue;
            if (row.d == dFirst) first = row.gap;
            if (row.d == dLast) last = row.gap;
        }
        table.shrinkingTrend.emplace_back(w, last <= first);
    }
    return table;
}

bool ConvergenceTable::withinTolerance(double rel_tol) const {
    int dMax = 0;
    for (const auto& row : rows) dMax = std::max(dMax, row.d);
    for (const auto& row : rows) {
        if (row.d != dMax) continue;
        double tol = std::max(3.0 * row.se, rel_tol * std::abs(row.exact));
        if (row.gap > tol) return false;
    }
    return true;
}

void ConvergenceTable::writeCsv(std::ostream& out) const {
    out << "d, word, mean_re, mean_im, se, exact_re, exact_im, gap\n";
    out.precision(17);
    for (const auto& row : rows) {
        out << row.d << ", " << row.word.str() << ", " << row.mean.real() << ", "
            << row.mean.imag() << ", " << row.se << ", " << row.exact.real() << ", "
            << row.exact.imag() << ", " << row.gap << '\n';
    }
}

void ConvergenceTable::writeReport(std::ostream& out) const {
    nlohmann::json doc;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
        doc["rows"].push_back({{"d", row.d},
                               {"word", row.word.str()},
                               {"mean_re", row.mean.real()},
                               {"mean_im", row.mean.imag()},
                               {"se", row.se},
                               {"exact_re", row.exact.real()},
                               {"exact_im", row.exact.imag()},
                               {"gap", row.gap}});
    }
    doc["trend"] = nlohmann::json::array();
    for (const auto& [word, shrank] : shrinkingTrend)
        doc["trend"].push_back({{"word", word.str()}, {"gap_shrank", shrank}});
    doc["within_tolerance"] = withinTolerance();
    out << doc.dump(2) << '\n';
}

}  // namespace blockwish
