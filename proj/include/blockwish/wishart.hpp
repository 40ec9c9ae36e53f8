#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "blockwish/choi.hpp"
#include "blockwish/moments.hpp"
#include "blockwish/partition.hpp"

namespace blockwish {

/// Ensemble parameters for the Wishart sampler. `words` empty means all
/// exponent words up to pMax.
struct WishartConfig {
    int d = 100;
    int n = 2;
    int m = 2;
    int trials = 200;
    std::uint64_t seed = 20240901;
    int pMax = 4;
    std::vector<ExponentWord> words;

    std::vector<ExponentWord> requestedWords() const;
    void validate() const;

    /// Flat key=value text: d, n, m, trials, seed, pMax, words
    /// (words = comma-separated literals over {1,*}, or "all").
    static WishartConfig parse(std::istream& in);
    static WishartConfig parseFile(const std::string& path);
};

/// Deterministic per-trial random stream (counter-derived, so trial-level
/// parallelism cannot change results). Gaussians via Box-Muller on the raw
/// 64-bit stream, to keep output identical across standard libraries.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t trial_index);
    double gaussian();  // standard normal
    std::uint64_t nextRaw();

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool hasSpare_ = false;
};

struct WordStats {
    ExponentWord word;
    Complex mean;
    double standardError = 0.0;
    int trials = 0;
};

struct SampleStats {
    std::vector<WordStats> perWord;

    const WordStats& at(const ExponentWord& e) const;
};

/// i.i.d. entries with independent N(0,1/2) real and imaginary parts,
/// so E|g|^2 = 1.
Matrix sampleGinibre(int rows, int cols, RngStream& rng);

/// W = G G* / (dm) for a dn x dm Ginibre matrix G, stream (seed, trialIndex).
Matrix sampleWishart(const WishartConfig& config, int trial_index);

/// Sample mean and standard error of the trace *-moments of
/// rescale * (id (x) phi)(W) over the configured trials. The standard error
/// is stdev/sqrt(trials) on real and imaginary parts, reported as the max.
SampleStats empiricalStarMoments(const WishartConfig& config, const LinearBlockMap& phi,
                                 double rescale);

struct ConvergenceRow {
    int d = 0;
    ExponentWord word;
    Complex mean;
    double se = 0.0;
    Complex exact;
    double gap = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    /// Per word: did the gap at the largest d not exceed the gap at the
    /// smallest d?
    std::vector<std::pair<ExponentWord, bool>> shrinkingTrend;

    /// max(3 SE, relTol * |exact|) acceptance check at the largest d.
    bool withinTolerance(double rel_tol = 0.05) const;

    /// `d, word, mean_re, mean_im, se, exact_re, exact_im, gap`
    void writeCsv(std::ostream& out) const;
    /// Structured report, one block per row plus the trend summary.
    void writeReport(std::ostream& out) const;
};

/// Runs empiricalStarMoments for each d in the sweep and tabulates the gaps
/// against the exact limit table.
ConvergenceTable convergenceReport(const std::vector<int>& d_sweep, const WishartConfig& base,
                                   const LinearBlockMap& phi, double rescale,
                                   const MomentTable& exact_limit);

}  // namespace blockwish
