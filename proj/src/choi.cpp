#include "blockwish/choi.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace blockwish {

namespace {

int64_t intPow(int64_t base, int exp) {
    int64_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

/// Digits of x in base N, most significant first, s digits.
std::vector<int> digits(int64_t x, int N, int s) {
    std::vector<int> out(s);
    for (int i = s - 1; i >= 0; --i) {
        out[i] = static_cast<int>(x % N);
        x /= N;
    }
    return out;
}

void requireSquareShape(const Partition& pi) {
    if (pi.upperCount() != pi.lowerCount() || pi.upperCount() % 2 != 0)
        throw std::invalid_argument("partition must lie in P(2s,2s)");
}

}  // namespace

ChoiMatrix ChoiMatrix::adjointMatrix() const {
    ChoiMatrix out = *this;
    out.mat = mat.adjoint();
    return out;
}

bool ChoiMatrix::isSelfAdjoint(double tol) const {
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix LinearBlockMap::apply(const Matrix& A) const {
    const int n = inner;
    if (A.rows() != n || A.cols() != n) throw std::invalid_argument("apply: dimension mismatch");
    Eigen::VectorXcd vec(n * n);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) vec(a * n + c) = A(a, c);
    Eigen::VectorXcd out = action * vec;
    Matrix B(n, n);
    for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) B(b, d) = out(b * n + d);
    return B;
}

ChoiMatrix choiFromMap(const LinearBlockMap& phi) {
    const int n = phi.inner;
    ChoiMatrix out;
    out.inner = n;
    out.mat = Matrix::Zero(n * n, n * n);
    // Lambda_{ab,cd} = phi(e_{ac})_{bd}; action row (b,d), column (a,c).
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    out.mat(a * n + b, c * n + d) = phi.action(b * n + d, a * n + c);
    return out;
}

LinearBlockMap mapFromChoi(const ChoiMatrix& lambda) {
    const int n = lambda.inner;
    LinearBlockMap out;
    out.inner = n;
    out.action = Matrix::Zero(n * n, n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    out.action(b * n + d, a * n + c) = lambda.mat(a * n + b, c * n + d);
    return out;
}

ChoiMatrix easyChoi(const Partition& pi, int N) {
    requireSquareShape(pi);
    if (N < 1) throw std::invalid_argument("easyChoi: N must be positive");
    const int s = pi.upperCount() / 2;
    const int64_t n = intPow(N, s);
    if (n * n > 4096) throw std::invalid_argument("easyChoi: size guard exceeded");
    ChoiMatrix out;
    out.inner = static_cast<int>(n);
    out.baseDim = N;
    out.tensorDepth = s;
    out.mat = Matrix::Zero(n * n, n * n);
    std::vector<int> upper(2 * s), lower(2 * s);
    for (int64_t a = 0; a < n; ++a)
        for (int64_t b = 0; b < n; ++b)
            for (int64_t c = 0; c < n; ++c)
                for (int64_t d = 0; d < n; ++d) {
                    auto da = digits(a, N, s), db = digits(b, N, s);
                    auto dc = digits(c, N, s), dd = digits(d, N, s);
                    for (int t = 0; t < s; ++t) {
                        upper[t] = da[t];
                        upper[s + t] = dc[t];
                        lower[t] = db[t];
                        lower[s + t] = dd[t];
                    }
                    out.mat(a * n + b, c * n + d) = deltaSymbol(pi, upper, lower);
                }
    return out;
}

ChoiMatrix twistedChoi(const Partition& pi, int N) {
    requireSquareShape(pi);
    if (!pi.allBlocksEven()) throw std::invalid_argument("twistedChoi: odd block present");
    const int s = pi.upperCount() / 2;
    const int64_t n = intPow(N, s);
    if (n * n > 4096) throw std::invalid_argument("twistedChoi: size guard exceeded");
    ChoiMatrix out;
    out.inner = static_cast<int>(n);
    out.baseDim = N;
    out.tensorDepth = s;
    out.mat = Matrix::Zero(n * n, n * n);
    std::vector<int> upper(2 * s), lower(2 * s);
    for (int64_t a = 0; a < n; ++a)
        for (int64_t b = 0; b < n; ++b)
            for (int64_t c = 0; c < n; ++c)
                for (int64_t d = 0; d < n; ++d) {
                    auto da = digits(a, N, s), db = digits(b, N, s);
                    auto dc = digits(c, N, s), dd = digits(d, N, s);
                    for (int t = 0; t < s; ++t) {
                        upper[t] = da[t];
                        upper[s + t] = dc[t];
                        lower[t] = db[t];
                        lower[s + t] = dd[t];
                    }
                    if (deltaSymbol(pi, upper, lower))
                        out.mat(a * n + b, c * n + d) = signature(kernel(upper, lower));
                }
    return out;
}

namespace {

Matrix tensorMapImpl(const Partition& pi, int N, bool twisted) {
    const int k = pi.upperCount(), l = pi.lowerCount();
    const int64_t rows = intPow(N, l), cols = intPow(N, k);
    if (rows * cols > (1 << 20)) throw std::invalid_argument("tensorMap: size guard exceeded");
    Matrix out = Matrix::Zero(rows, cols);
    for (int64_t i = 0; i < cols; ++i) {
        auto di = digits(i, N, k);
        for (int64_t j = 0; j < rows; ++j) {
            auto dj = digits(j, N, l);
            if (!deltaSymbol(pi, di, dj)) continue;
            out(j, i) = twisted ? Complex(signature(kernel(di, dj))) : Complex(1.0);
        }
    }
    return out;
}

}  // namespace

Matrix tensorMap(const Partition& pi, int N) { return tensorMapImpl(pi, N, false); }

Matrix twistedTensorMap(const Partition& pi, int N) {
    if (!pi.allBlocksEven()) throw std::invalid_argument("twistedTensorMap: odd block present");
    return tensorMapImpl(pi, N, true);
}

LinearBlockMap builtinMap(const std::string& name, int n) {
    LinearBlockMap out;
    out.inner = n;
    out.action = Matrix::Zero(n * n, n * n);
    auto set = [&](int b, int d, int a, int c, Complex v) { out.action(b * n + d, a * n + c) = v; };
    if (name == "identity") {
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c) set(a, c, a, c, 1.0);
    } else if (name == "transpose") {
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c) set(c, a, a, c, 1.0);
    } else if (name == "trace-unit") {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) set(b, b, a, a, 1.0);
    } else if (name == "diagonal") {
        for (int a = 0; a < n; ++a) set(a, a, a, a, 1.0);
    } else if (name == "twisted-crossing") {
        // A -> 2 A^delta - A^t
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c) set(c, a, a, c, -1.0);
        for (int a = 0; a < n; ++a) out.action(a * n + a, a * n + a) += 2.0;
    } else if (name == "bessel") {
        // A -> E A with E = diag(1, w, ..., w^{n-1}), w = exp(2 pi i / n).
        const double theta = 2.0 * std::numbers::pi / n;
        for (int a = 0; a < n; ++a) {
            Complex w = std::polar(1.0, theta * a);
            for (int c = 0; c < n; ++c) set(a, c, a, c, w);
        }
    } else {
        throw std::invalid_argument("unknown builtin map: " + name);
    }
    return out;
}

Matrix applyBlockModification(const Matrix& W, const LinearBlockMap& phi, int d, int n) {
    if (W.rows() != static_cast<long>(d) * n || W.cols() != static_cast<long>(d) * n ||
        phi.inner != n)
        throw std::invalid_argument("applyBlockModification: dimension mismatch");
    Matrix out(W.rows(), W.cols());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out.block(i * n, j * n, n, n) = phi.apply(W.block(i * n, j * n, n, n));
    return out;
}

void dumpMatrixCsv(const Matrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    for (long r = 0; r < m.rows(); ++r) {
        for (long c = 0; c < m.cols(); ++c) {
            if (c) out << ',';
            out << m(r, c).real() << ',' << m(r, c).imag();
        }
        out << '\n';
    }
}

void dumpMatrixBinary(const Matrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    for (long r = 0; r < m.rows(); ++r)
        for (long c = 0; c < m.cols(); ++c) {
            double re = m(r, c).real(), im = m(r, c).imag();
            out.write(reinterpret_cast<const char*>(&re), sizeof(double));
            out.write(reinterpret_cast<const char*>(&im), sizeof(double));
        }
}

}  // namespace blockwish
