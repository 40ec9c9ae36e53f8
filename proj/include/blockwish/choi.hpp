#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "blockwish/partition.hpp"

namespace blockwish {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Square matrix on the tensor-square space, size n^2 x n^2, with row index
/// (a,b) -> a*n+b and column index (c,d) -> c*n+d, so that
/// mat(a*n+b, c*n+d) = Lambda_{ab,cd} in the convention
/// Lambda = sum Lambda_{ab,cd} e_{ac} (x) e_{bd}.
struct ChoiMatrix {
    int inner = 0;        // n
    int baseDim = 0;      // N when built from a partition, else 0
    int tensorDepth = 0;  // s when built from a partition, else 0
    Matrix mat;

    Complex entry(int a, int b, int c, int d) const { return mat(a * inner + b, c * inner + d); }
    ChoiMatrix adjointMatrix() const;
    bool isSelfAdjoint(double tol = 1e-12) const;
};

/// Linear map on M_n(C) through its action on row-major vectorized matrices:
/// e_{ac} maps to basis vector a*n+c.
struct LinearBlockMap {
    int inner = 0;
    Matrix action;  // n^2 x n^2

    Matrix apply(const Matrix& A) const;
};

ChoiMatrix choiFromMap(const LinearBlockMap& phi);
LinearBlockMap mapFromChoi(const ChoiMatrix& lambda);

/// Easy Choi matrix of a partition in P(2s,2s): n = N^s and the entry at
/// multi-index (a,b,c,d) is the Kronecker symbol of pi on rows (a,c)/(b,d).
ChoiMatrix easyChoi(const Partition& pi, int N);

/// Twisted variant: entry = signature(kernel((a,c),(b,d))) when the Kronecker
/// symbol is 1, else 0. Requires even blocks.
ChoiMatrix twistedChoi(const Partition& pi, int N);

/// Tensor-level easy map of pi in P(k,l): an N^l x N^k matrix.
Matrix tensorMap(const Partition& pi, int N);
/// Twisted tensor map, with signature weights; even blocks required.
Matrix twistedTensorMap(const Partition& pi, int N);

/// Builtin map names: identity, transpose, trace-unit, diagonal,
/// twisted-crossing, bessel.
LinearBlockMap builtinMap(const std::string& name, int n);

/// Block modification: W is dn x dn with row index (i,a) -> i*n+a; returns
/// the matrix with entries W~_{ia,jb} = sum_{cd} Lambda_{ca,db} W_{ic,jd}.
Matrix applyBlockModification(const Matrix& W, const LinearBlockMap& phi, int d, int n);

/// Writes a dense complex matrix as CSV of `re,im` pairs (row-major), or as
/// raw little-endian double pairs when binary is requested.
void dumpMatrixCsv(const Matrix& m, const std::string& path);
void dumpMatrixBinary(const Matrix& m, const std::string& path);

}  // namespace blockwish
