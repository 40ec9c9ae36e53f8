#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "blockwish/choi.hpp"
#include "blockwish/moments.hpp"
#include "blockwish/partition.hpp"

using namespace blockwish;

namespace {

Matrix randomComplex(int rows, int cols, std::mt19937& gen) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = Complex(dist(gen), dist(gen));
    return m;
}

Matrix unitMatrix(int n, int a, int c) {
    Matrix m = Matrix::Zero(n, n);
    m(a, c) = 1.0;
    return m;
}

// Horizontal concatenation of two partition literals (side-by-side rows).
Partition sideBySide(const Partition& a, const Partition& b) {
    std::vector<int> ids;
    int shift = a.blockCount();
    for (int i = 0; i < a.upperCount(); ++i) ids.push_back(a.upperBlockAt(i));
    for (int i = 0; i < b.upperCount(); ++i) ids.push_back(shift + b.upperBlockAt(i));
    for (int i = 0; i < a.lowerCount(); ++i) ids.push_back(a.lowerBlockAt(i));
    for (int i = 0; i < b.lowerCount(); ++i) ids.push_back(shift + b.lowerBlockAt(i));
    std::map<int, int> relabel;
    for (int& id : ids) {
        auto [it, fresh] = relabel.emplace(id, static_cast<int>(relabel.size()));
        id = it->second;
    }
    return Partition(a.upperCount() + b.upperCount(), a.lowerCount() + b.lowerCount(), ids);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

const char* kIdentityPairing = "ab/ab";   // phi(A) = A
const char* kCrossing = "ab/ba";          // phi(A) = A^t
const char* kHorizontalSmall = "aa/bb";   // phi(A) = Tr(A) 1
const char* kOneBlockSmall = "aa/aa";     // phi(A) = diag(A)

}  // namespace

TEST_CASE("choi correspondence round-trips") {
    std::mt19937 gen(12345);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + trial % 3;
        LinearBlockMap phi{n, randomComplex(n * n, n * n, gen)};
        auto back = mapFromChoi(choiFromMap(phi));
        CHECK((back.action - phi.action).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("choi matrices of the named maps") {
    int n = 2;
    auto identity = choiFromMap(builtinMap("identity", n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    CHECK(identity.entry(a, b, c, d) == Complex(a == b && c == d ? 1.0 : 0.0));

    // transpose map <-> flip operator e_c (x) e_a -> e_a (x) e_c
    auto flip = choiFromMap(builtinMap("transpose", n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    CHECK(flip.entry(a, b, c, d) == Complex(a == d && b == c ? 1.0 : 0.0));
}

TEST_CASE("easy choi matrices of the four basic partitions") {
    for (int N = 2; N <= 3; ++N) {
        CHECK((easyChoi(parsePartition(kHorizontalSmall), N).mat -
               Matrix::Identity(N * N, N * N))
                  .cwiseAbs()
                  .maxCoeff() == 0.0);

        // one-block partition: orthogonal projection onto span(e_a (x) e_a)
        auto proj = easyChoi(parsePartition(kOneBlockSmall), N).mat;
        CHECK((proj * proj - proj).cwiseAbs().maxCoeff() == 0.0);
        CHECK((proj - proj.adjoint()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(proj.trace() == Complex(N));

        // each basic partition reproduces the Choi matrix of its named map
        const std::pair<const char*, const char*> pairs[] = {
            {kIdentityPairing, "identity"},
            {kCrossing, "transpose"},
            {kHorizontalSmall, "trace-unit"},
            {kOneBlockSmall, "diagonal"},
        };
        for (const auto& [literal, name] : pairs) {
            auto fromPartition = easyChoi(parsePartition(literal), N);
            auto fromMap = choiFromMap(builtinMap(name, N));
            CHECK((fromPartition.mat - fromMap.mat).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("adjoint of an easy choi matrix is the middle-symmetry partner") {
    for (int N = 2; N <= 3; ++N) {
        for (const auto& pi : enumeratePartitions(2, 2, true)) {
            auto lhs = easyChoi(pi, N).adjointMatrix();
            auto rhs = easyChoi(middleSymmetry(pi), N);
            CHECK((lhs.mat - rhs.mat).cwiseAbs().maxCoeff() == 0.0);
        }
    }
    for (const auto& pi : enumeratePartitions(4, 4, true)) {
        auto lhs = easyChoi(pi, 2).adjointMatrix();
        auto rhs = easyChoi(middleSymmetry(pi), 2);
        CHECK((lhs.mat - rhs.mat).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("twisted choi of the crossing carries the sign") {
    for (int n = 2; n <= 3; ++n) {
        auto lambda = twistedChoi(parsePartition(kCrossing), n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        double expected = (a == d && b == c) ? (a == c ? 1.0 : -1.0) : 0.0;
                        CHECK(lambda.entry(a, b, c, d) == Complex(expected));
                    }
        CHECK(lambda.isSelfAdjoint());
    }
}

TEST_CASE("twisting is trivial on noncrossing partitions") {
    for (const auto& pi : enumeratePartitions(4, 4, true)) {
        if (!isNoncrossing(pi)) continue;
        CHECK((twistedChoi(pi, 2).mat - easyChoi(pi, 2).mat).cwiseAbs().maxCoeff() == 0.0);
    }
    // A crossing partition whose blocks all meet both rows is also
    // twist-invariant entrywise: every admissible index kernel coarsens it
    // without creating a negative-signature merge.
    auto diag = parsePartition("abab/abab");
    CHECK((twistedChoi(diag, 2).mat - easyChoi(diag, 2).mat).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(twistedChoi(parsePartition("aab/a"), 2), std::invalid_argument);
}

TEST_CASE("twisting flips the entries whose index kernel has negative signature") {
    // The double horizontal pairing admits index tuples whose kernel merges
    // an upper string with lower legs; such merged kernels can need an odd
    // number of leg switches, so the signed symbol is -1 where the plain
    // symbol is +1.
    auto eta = parsePartition("abab/cdcd");
    auto easy = easyChoi(eta, 2);
    auto tw = twistedChoi(eta, 2);

    // Witness tuple: upper digits (1,1,1,1), lower digits (1,2,1,2). Its
    // kernel joins all upper legs with lower legs 1,3 into one class and
    // needs exactly one switch to become noncrossing.
    auto ker = kernel({0, 0, 0, 0}, {0, 1, 0, 1});
    CHECK(signature(ker) == -1);
    CHECK(signatureSwitchSearch(ker) == -1);

    int differing = 0;
    const int n = easy.inner;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    double e = easy.mat(a * n + b, c * n + d).real();
                    double t = tw.mat(a * n + b, c * n + d).real();
                    // digit split: a=(a0,a1) etc., upper row (a0,a1,c0,c1),
                    // lower row (b0,b1,d0,d1)
                    auto ker2 = kernel({a / 2, a % 2, c / 2, c % 2}, {b / 2, b % 2, d / 2, d % 2});
                    if (e != 0.0) {
                        CHECK(t == e * signature(ker2));
                        if (t != e) ++differing;
                    } else {
                        CHECK(t == 0.0);
                    }
                }
    CHECK(differing == 8);
    CHECK((tw.mat - easy.mat).cwiseAbs().maxCoeff() == 2.0);
    // The flipped entries shift the trace moments: the plain matrix has
    // normalized trace 1, the signed one 0.
    CHECK(traceStarMoment(easy.mat, ExponentWord::allOnes(1)).real() == doctest::Approx(1.0));
    CHECK(traceStarMoment(tw.mat, ExponentWord::allOnes(1)).real() == doctest::Approx(0.0));
}

TEST_CASE("tensor map of the identity pairing is the identity") {
    for (int N = 2; N <= 3; ++N) {
        auto t = tensorMap(parsePartition("ab/ab"), N);
        CHECK((t - Matrix::Identity(N * N, N * N)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("twisted tensor maps compose with loop factors") {
    const int N = 2;
    auto evenSmall = enumeratePartitions(2, 2, true);
    auto evenLarge = enumeratePartitions(4, 4, true);
    auto checkPair = [&](const Partition& top, const Partition& bottom) {
        auto composed = verticalCompose(top, bottom);
        Matrix lhs = twistedTensorMap(bottom, N) * twistedTensorMap(top, N);
        Matrix rhs =
            std::pow(double(N), composed.loopCount) * twistedTensorMap(composed.result, N);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
    };
    for (const auto& top : evenSmall)
        for (const auto& bottom : evenSmall) checkPair(top, bottom);
    for (const auto& top : evenLarge)
        for (const auto& bottom : evenLarge) checkPair(top, bottom);
}

TEST_CASE("twisted tensor maps respect side-by-side tensor products") {
    const int N = 2;
    auto even = enumeratePartitions(2, 2, true);
    for (const auto& a : even)
        for (const auto& b : even) {
            Matrix lhs = kron(twistedTensorMap(a, N), twistedTensorMap(b, N));
            Matrix rhs = twistedTensorMap(sideBySide(a, b), N);
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
        }
}

TEST_CASE("twisted tensor maps respect adjoints") {
    const int N = 2;
    for (const auto& pi : enumeratePartitions(4, 4, true)) {
        Matrix lhs = twistedTensorMap(pi, N).adjoint();
        Matrix rhs = twistedTensorMap(adjoint(pi), N);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("builtin maps") {
    auto transpose = builtinMap("transpose", 2);
    CHECK((transpose.apply(unitMatrix(2, 0, 1)) - unitMatrix(2, 1, 0)).cwiseAbs().maxCoeff() ==
          0.0);

    for (int n = 2; n <= 3; ++n) {
        auto twisted = builtinMap("twisted-crossing", n);
        auto fromChoi = mapFromChoi(twistedChoi(parsePartition(kCrossing), n));
        CHECK((twisted.action - fromChoi.action).cwiseAbs().maxCoeff() == 0.0);
        // and it acts as A -> 2 diag(A) - A^t
        std::mt19937 gen(7);
        Matrix A = randomComplex(n, n, gen);
        Matrix expected = 2.0 * Matrix(A.diagonal().asDiagonal()) - A.transpose();
        CHECK((twisted.apply(A) - expected).cwiseAbs().maxCoeff() < 1e-12);
    }

    auto bessel = builtinMap("bessel", 2);
    Matrix E(2, 2);
    E << 1.0, 0.0, 0.0, -1.0;
    std::mt19937 gen(8);
    Matrix A = randomComplex(2, 2, gen);
    CHECK((bessel.apply(A) - E * A).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(builtinMap("no-such-map", 2), std::invalid_argument);
}

TEST_CASE("block modification") {
    std::mt19937 gen(99);
    const int d = 3, n = 2;
    Matrix W = randomComplex(d * n, d * n, gen);
    W = Matrix(W + W.adjoint());  // Hermitian input

    CHECK((applyBlockModification(W, builtinMap("identity", n), d, n) - W)
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    Matrix single = randomComplex(n, n, gen);
    CHECK((applyBlockModification(single, builtinMap("transpose", n), 1, n) -
           single.transpose())
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    Matrix traceless = unitMatrix(n, 0, 1);
    CHECK(applyBlockModification(traceless, builtinMap("trace-unit", n), 1, n)
              .cwiseAbs()
              .maxCoeff() == 0.0);

    // maps with self-adjoint Choi matrices preserve Hermiticity
    for (const char* name : {"transpose", "trace-unit", "diagonal", "twisted-crossing"}) {
        auto phi = builtinMap(name, n);
        REQUIRE(choiFromMap(phi).isSelfAdjoint());
        Matrix modified = applyBlockModification(W, phi, d, n);
        CHECK((modified - modified.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }

    CHECK_THROWS_AS(applyBlockModification(W, builtinMap("identity", n), d + 1, n),
                    std::invalid_argument);
}

TEST_CASE("matrix dumps") {
    Matrix m(2, 2);
    m << Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8);

    std::string csvPath = "choi_dump_test.csv";
    dumpMatrixCsv(m, csvPath);
    std::ifstream csv(csvPath);
    REQUIRE(csv.good());
    std::string firstLine;
    std::getline(csv, firstLine);
    CHECK(firstLine.find("1") != std::string::npos);
    csv.close();
    std::remove(csvPath.c_str());

    std::string binPath = "choi_dump_test.bin";
    dumpMatrixBinary(m, binPath);
    std::ifstream bin(binPath, std::ios::binary | std::ios::ate);
    REQUIRE(bin.good());
    CHECK(bin.tellg() == static_cast<std::streamoff>(4 * 2 * sizeof(double)));
    bin.close();
    std::remove(binPath.c_str());
}
