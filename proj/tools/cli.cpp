// Command-line front end: enumerate/classify partitions, run multiplicativity
// checks, emit exact limit predictions, and drive Wishart simulations.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "blockwish/choi.hpp"
#include "blockwish/classify.hpp"
#include "blockwish/moments.hpp"
#include "blockwish/partition.hpp"
#include "blockwish/poisson.hpp"
#include "blockwish/wishart.hpp"

using namespace blockwish;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

// Resolves --out / BLOCKWISH_OUT into a stream; stdout when neither is set.
class OutputTarget {
public:
    OutputTarget(const std::string& out_flag, const std::string& default_name) {
        std::string path = out_flag;
        if (path.empty()) {
            const char* dir = std::getenv("BLOCKWISH_OUT");
            if (dir && *dir) path = std::string(dir) + "/" + default_name;
        }
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string prettyGrid(const Partition& pi) {
    std::string text = pi.str();
    auto slash = text.find('/');
    return text.substr(0, slash) + "\n" + text.substr(slash + 1) + "\n";
}

// A partition or builtin-map source for a Choi matrix.
struct Source {
    std::optional<Partition> pi;
    int N = 2;
    ChoiMatrix lambda;
    LinearBlockMap phi;
};

Source resolveSource(const std::string& pi_literal, const std::string& map_name, int N, int n,
                     bool twisted) {
    Source src;
    if (!pi_literal.empty() && !map_name.empty())
        throw std::runtime_error("give either --pi or --map, not both");
    if (pi_literal.empty() && map_name.empty())
        throw std::runtime_error("one of --pi or --map is required");
    if (!pi_literal.empty()) {
        src.pi = parsePartition(pi_literal);
        src.N = N;
        src.lambda = twisted ? twistedChoi(*src.pi, N) : easyChoi(*src.pi, N);
        src.phi = mapFromChoi(src.lambda);
    } else {
        if (twisted) throw std::runtime_error("--twisted requires --pi");
        src.phi = builtinMap(map_name, n);
        src.lambda = choiFromMap(src.phi);
    }
    return src;
}

int cmdPartitions(int k, int l, bool even, bool symmetric, bool noncrossing, bool eligible,
                  const std::string& format, const std::string& out_flag) {
    OutputTarget target(out_flag, "partitions.txt");
    std::ostream& out = target.stream();

    bool square = k == l && k % 2 == 0 && k > 0;
    json rows = json::array();
    if (format == "csv") out << "partition,even,symmetric,noncrossing,signature,eligible\n";
    for (const auto& pi : enumeratePartitions(k, l, even)) {
        bool isEven = pi.allBlocksEven();
        bool isSym = square && isSymmetric(pi);
        bool isNc = isNoncrossing(pi);
        if (symmetric && !isSym) continue;
        if (noncrossing && !isNc) continue;
        std::string sig = isEven ? std::to_string(signature(pi)) : "";
        std::string elig;
        if (square && isSym && isEven) elig = easyCaseEligible(pi).eligible ? "yes" : "no";
        if (eligible && elig != "yes") continue;

        if (format == "csv") {
            out << pi.str() << ',' << (isEven ? 1 : 0) << ',' << (isSym ? 1 : 0) << ','
                << (isNc ? 1 : 0) << ',' << sig << ',' << elig << '\n';
        } else if (format == "json") {
            json row = {{"partition", pi.str()},
                        {"even", isEven},
                        {"symmetric", isSym},
                        {"noncrossing", isNc}};
            if (!sig.empty()) row["signature"] = std::stoi(sig);
            if (!elig.empty()) row["eligible"] = elig == "yes";
            rows.push_back(row);
        } else {
            out << prettyGrid(pi) << "  even=" << isEven << " symmetric=" << isSym
                << " noncrossing=" << isNc;
            if (!sig.empty()) out << " signature=" << sig;
            if (!elig.empty()) out << " eligible=" << elig;
            out << "\n\n";
        }
    }
    if (format == "json") out << rows.dump(2) << '\n';
    return kExitPass;
}

int cmdCheckMult(const Source& src, int p_max, const std::string& format,
                 const std::string& out_flag) {
    OutputTarget target(out_flag, "check-mult.txt");
    std::ostream& out = target.stream();
    MultiplicativityReport report = isMultiplicative(src.lambda, p_max);
    if (format == "json") {
        json doc = {{"pmax", report.pMax}, {"verdict", report.verdict ? "pass" : "fail"}};
        doc["failures"] = json::array();
        for (const auto& f : report.failures)
            doc["failures"].push_back({{"p", f.p},
                                       {"word", f.word.str()},
                                       {"sigma", f.sigma.str()},
                                       {"left", {f.left.real(), f.left.imag()}},
                                       {"right", {f.right.real(), f.right.imag()}}});
        out << doc.dump(2) << '\n';
    } else {
        report.serialize(out);
    }
    return report.verdict ? kExitPass : kExitFail;
}

void emitMomentTable(const MomentTable& table, const std::string& label,
                     const std::string& format, std::ostream& out) {
    if (format == "csv") {
        out << "# " << label << "\nword,re,im\n";
        for (const auto& [word, value] : table.values)
            out << (word.size() == 0 ? "-" : word.str()) << ',' << value.real() << ','
                << value.imag() << '\n';
    } else if (format == "json") {
        json doc;
        for (const auto& [word, value] : table.values)
            doc[word.size() == 0 ? "-" : word.str()] = {value.real(), value.imag()};
        out << json{{label, doc}}.dump(2) << '\n';
    } else {
        out << "== " << label << " ==\n";
        table.serialize(out);
    }
}

int cmdPredict(const Source& src, int m, int p_max, bool twisted, bool require_eligible,
               const std::string& format, const std::string& out_flag) {
    OutputTarget target(out_flag, "predict.txt");
    std::ostream& out = target.stream();
    int n = src.lambda.inner;

    MomentTable limit = asymptoticLimit(src.lambda, m, n, p_max);
    emitMomentTable(limit, "asymptotic-limit", format, out);

    bool eligible = false;
    if (src.pi) {
        eligible = easyCaseEligible(*src.pi).eligible;
    } else {
        eligible = isMultiplicative(src.lambda, p_max).verdict;
    }
    if (require_eligible && !eligible)
        throw std::runtime_error("source is not eligible for the compound-law route");

    if (eligible) {
        if (src.pi) {
            PredictedLaw law = predictLimitLaw(*src.pi, src.N, m, twisted, p_max);
            emitMomentTable(law.moments, "compound-law", format, out);
            if (twisted)
                out << "# twisted-matches-untwisted " << (law.twistedMatchesUntwisted ? 1 : 0)
                    << "\n";
            if (law.baseMeasure) {
                out << "# base-measure (weight,re,im)\n";
                law.baseMeasure->serialize(out);
            }
        } else {
            MomentTable law = compoundFromChoi(src.lambda, m, n, p_max);
            emitMomentTable(law, "compound-law", format, out);
            if (src.lambda.isSelfAdjoint()) {
                out << "# base-measure (weight,re,im)\n";
                spectralAtoms(src.lambda).scaled(static_cast<double>(m) * n).serialize(out);
            }
        }
    }
    return kExitPass;
}

int cmdSimulate(const std::string& config_path, const Source& src, double rescale_flag,
                const std::string& sweep_text, bool assert_tolerance, bool assert_mismatch,
                const std::string& out_flag) {
    WishartConfig cfg = WishartConfig::parseFile(config_path);
    int n = src.lambda.inner;
    if (cfg.n != n)
        throw std::runtime_error("config n does not match the dimension of the supplied map");

    double rescale = rescale_flag > 0 ? rescale_flag : static_cast<double>(cfg.m);
    // The exact limit below describes m*W~; rescale other statistics to match.
    MomentTable limit = asymptoticLimit(src.lambda, cfg.m, n, cfg.pMax);
    if (rescale != static_cast<double>(cfg.m)) {
        for (auto& [word, value] : limit.values)
            value *= std::pow(rescale / cfg.m, static_cast<double>(word.size()));
    }

    std::vector<int> sweep;
    std::istringstream parts(sweep_text);
    std::string piece;
    while (std::getline(parts, piece, ',')) sweep.push_back(std::stoi(piece));
    if (sweep.empty()) sweep.push_back(cfg.d);

    ConvergenceTable table = convergenceReport(sweep, cfg, src.phi, rescale, limit);

    OutputTarget csvTarget(out_flag.empty() ? "" : out_flag + ".csv", "simulate.csv");
    table.writeCsv(csvTarget.stream());
    OutputTarget reportTarget(out_flag.empty() ? "" : out_flag + ".json", "simulate.json");
    table.writeReport(reportTarget.stream());

    if (assert_mismatch) {
        // The compound-law table must stay >= 5 SE away from the data at the
        // largest d for at least one word, while the true limit stays close.
        MomentTable compound = compoundFromChoi(src.lambda, cfg.m, n, cfg.pMax);
        if (rescale != static_cast<double>(cfg.m))
            for (auto& [word, value] : compound.values)
                value *= std::pow(rescale / cfg.m, static_cast<double>(word.size()));
        int dMax = *std::max_element(sweep.begin(), sweep.end());
        bool mismatch = false;
        for (const auto& row : table.rows) {
            if (row.d != dMax || row.se <= 0.0) continue;
            double gapCompound = std::abs(row.mean - compound.at(row.word));
            if (gapCompound >= 5.0 * row.se &&
                row.gap <= std::max(3.0 * row.se, 0.05 * std::abs(row.exact)))
                mismatch = true;
        }
        if (!table.withinTolerance() || !mismatch) return kExitFail;
        return kExitPass;
    }
    if (assert_tolerance && !table.withinTolerance()) return kExitFail;
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"block-modified Wishart matrix toolkit"};
    app.require_subcommand(1);

    std::string piLiteral, mapName, format = "csv", outPath, configPath, sweepText;
    int N = 2, n = 2, m = 2, pMax = 4, k = 2, l = 2;
    bool twisted = false, requireEligible = false;
    bool filterEven = false, filterSym = false, filterNc = false, filterElig = false;
    bool assertTol = false, assertMismatch = false;
    double rescale = -1.0;

    auto addFormat = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json", "pretty"}));
        cmd->add_option("--out", outPath, "output file path");
    };
    auto addSource = [&](CLI::App* cmd) {
        cmd->add_option("--pi", piLiteral, "partition literal, e.g. ab/ba");
        cmd->add_option("--map", mapName,
                        "builtin map: identity, transpose, trace-unit, diagonal, "
                        "twisted-crossing, bessel");
        cmd->add_option("--N", N, "base dimension for partition maps (n = N^s)");
        cmd->add_option("--n", n, "block dimension for builtin maps");
        cmd->add_flag("--twisted", twisted, "use the signed Kronecker symbols");
    };

    CLI::App* cmdParts = app.add_subcommand("partitions", "enumerate partitions with flags");
    cmdParts->add_option("k", k, "upper points")->required();
    cmdParts->add_option("l", l, "lower points")->required();
    cmdParts->add_flag("--even", filterEven, "restrict to even block sizes");
    cmdParts->add_flag("--symmetric", filterSym, "restrict to symmetric partitions");
    cmdParts->add_flag("--noncrossing", filterNc, "restrict to noncrossing partitions");
    cmdParts->add_flag("--eligible", filterElig, "restrict to limit-theorem-eligible partitions");
    addFormat(cmdParts);

    CLI::App* cmdMult = app.add_subcommand("check-mult", "multiplicativity check of a Choi matrix");
    addSource(cmdMult);
    cmdMult->add_option("--pmax", pMax, "maximum word length");
    addFormat(cmdMult);

    CLI::App* cmdPred = app.add_subcommand("predict", "exact limit moments and compound law");
    addSource(cmdPred);
    cmdPred->add_option("--m", m, "aspect parameter m");
    cmdPred->add_option("--pmax", pMax, "maximum word length");
    cmdPred->add_flag("--require-eligible", requireEligible, "error out when ineligible");
    addFormat(cmdPred);

    CLI::App* cmdSim = app.add_subcommand("simulate", "Monte Carlo convergence report");
    addSource(cmdSim);
    cmdSim->add_option("--config", configPath, "WishartConfig key=value file")->required();
    cmdSim->add_option("--d-sweep", sweepText, "comma-separated d values (default: config d)");
    cmdSim->add_option("--rescale", rescale, "statistic rescale factor (default m)");
    cmdSim->add_flag("--assert", assertTol, "exit 1 unless gaps are within tolerance");
    cmdSim->add_flag("--assert-mismatch", assertMismatch,
                     "exit 1 unless the compound route mismatches by >= 5 SE");
    cmdSim->add_option("--out", outPath, "output basename (writes .csv and .json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (cmdParts->parsed())
            return cmdPartitions(k, l, filterEven, filterSym, filterNc, filterElig, format,
                                 outPath);
        Source src = resolveSource(piLiteral, mapName, N, n, twisted);
        if (cmdMult->parsed()) return cmdCheckMult(src, pMax, format, outPath);
        if (cmdPred->parsed())
            return cmdPredict(src, m, pMax, twisted, requireEligible, format, outPath);
        if (cmdSim->parsed())
            return cmdSimulate(configPath, src, rescale, sweepText, assertTol, assertMismatch,
                               outPath);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
