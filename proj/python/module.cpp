// Python bindings for the main operations: partitions, Choi matrices,
// generalized moments, limit laws, and the Wishart sampler.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blockwish/choi.hpp"
#include "blockwish/classify.hpp"
#include "blockwish/moments.hpp"
#include "blockwish/partition.hpp"
#include "blockwish/poisson.hpp"
#include "blockwish/wishart.hpp"

namespace py = pybind11;
using namespace blockwish;

namespace {

ChoiMatrix choiFromRaw(const Matrix& mat, int n) {
    if (mat.rows() != n * n || mat.cols() != n * n)
        throw std::invalid_argument("expected an n^2 x n^2 matrix");
    ChoiMatrix lambda;
    lambda.inner = n;
    lambda.mat = mat;
    return lambda;
}

py::dict tableToDict(const MomentTable& table) {
    py::dict out;
    for (const auto& [word, value] : table.values) out[py::str(word.str())] = value;
    return out;
}

}  // namespace

PYBIND11_MODULE(blockwish, mod) {
    mod.doc() = "block-modified Wishart matrix toolkit";

    py::class_<Partition>(mod, "Partition")
        .def(py::init(&parsePartition))
        .def("__str__", &Partition::str)
        .def("__eq__", [](const Partition& a, const Partition& b) { return a == b; })
        .def_property_readonly("upper", &Partition::upperCount)
        .def_property_readonly("lower", &Partition::lowerCount)
        .def_property_readonly("block_count", &Partition::blockCount)
        .def("blocks", &Partition::blocks)
        .def("all_blocks_even", &Partition::allBlocksEven);

    mod.def("parse_partition", &parsePartition, py::arg("literal"));
    mod.def(
        "enumerate_partitions",
        [](int k, int l, bool even) {
            std::vector<std::string> out;
            for (const auto& pi : enumeratePartitions(k, l, even)) out.push_back(pi.str());
            return out;
        },
        py::arg("k"), py::arg("l"), py::arg("even_only") = false);
    mod.def("is_noncrossing", &isNoncrossing);
    mod.def("is_symmetric", &isSymmetric);
    mod.def("signature", &signature);
    mod.def("kreweras", &kreweras);
    mod.def("middle_symmetry", &middleSymmetry);
    mod.def("adjoint_partition", &adjoint);

    mod.def(
        "easy_choi", [](const Partition& pi, int N) { return easyChoi(pi, N).mat; },
        py::arg("pi"), py::arg("N"));
    mod.def(
        "twisted_choi", [](const Partition& pi, int N) { return twistedChoi(pi, N).mat; },
        py::arg("pi"), py::arg("N"));
    mod.def(
        "builtin_map_choi",
        [](const std::string& name, int n) { return choiFromMap(builtinMap(name, n)).mat; },
        py::arg("name"), py::arg("n"));
    mod.def(
        "apply_block_modification",
        [](const Matrix& w, const Matrix& choi, int d, int n) {
            return applyBlockModification(w, mapFromChoi(choiFromRaw(choi, n)), d, n);
        },
        py::arg("w"), py::arg("choi"), py::arg("d"), py::arg("n"));

    mod.def(
        "is_multiplicative",
        [](const Matrix& choi, int n, int p_max) {
            return isMultiplicative(choiFromRaw(choi, n), p_max).verdict;
        },
        py::arg("choi"), py::arg("n"), py::arg("p_max"));
    mod.def(
        "asymptotic_limit",
        [](const Matrix& choi, int n, int m, int p_max) {
            return tableToDict(asymptoticLimit(choiFromRaw(choi, n), m, n, p_max));
        },
        py::arg("choi"), py::arg("n"), py::arg("m"), py::arg("p_max"));
    mod.def(
        "compound_from_choi",
        [](const Matrix& choi, int n, int m, int p_max) {
            return tableToDict(compoundFromChoi(choiFromRaw(choi, n), m, n, p_max));
        },
        py::arg("choi"), py::arg("n"), py::arg("m"), py::arg("p_max"));

    mod.def("eligible", [](const Partition& pi) { return easyCaseEligible(pi).eligible; });
    mod.def(
        "predict_limit_law",
        [](const Partition& pi, int N, int m, bool twisted, int p_max) {
            PredictedLaw law = predictLimitLaw(pi, N, m, twisted, p_max);
            py::object atoms = py::none();
            if (law.baseMeasure) {
                py::list lst;
                for (const auto& atom : law.baseMeasure->atoms)
                    lst.append(py::make_tuple(atom.weight, atom.location));
                atoms = std::move(lst);
            }
            return py::make_tuple(tableToDict(law.moments), atoms);
        },
        py::arg("pi"), py::arg("N"), py::arg("m"), py::arg("twisted") = false,
        py::arg("p_max") = 4);

    mod.def(
        "sample_wishart",
        [](int d, int n, int m, std::uint64_t seed, int trial) {
            WishartConfig cfg;
            cfg.d = d;
            cfg.n = n;
            cfg.m = m;
            cfg.trials = trial + 1;
            cfg.seed = seed;
            return sampleWishart(cfg, trial);
        },
        py::arg("d"), py::arg("n"), py::arg("m"), py::arg("seed") = 20240901,
        py::arg("trial") = 0);
    mod.def(
        "empirical_star_moments",
        [](int d, int n, int m, int trials, std::uint64_t seed, int p_max, const Matrix& choi,
           double rescale) {
            WishartConfig cfg;
            cfg.d = d;
            cfg.n = n;
            cfg.m = m;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.pMax = p_max;
            SampleStats stats = empiricalStarMoments(cfg, mapFromChoi(choiFromRaw(choi, n)), rescale);
            py::dict out;
            for (const auto& ws : stats.perWord)
                out[py::str(ws.word.str())] = py::make_tuple(ws.mean, ws.standardError);
            return out;
        },
        py::arg("d"), py::arg("n"), py::arg("m"), py::arg("trials"), py::arg("seed"),
        py::arg("p_max"), py::arg("choi"), py::arg("rescale"));
}
