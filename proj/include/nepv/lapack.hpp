// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <cstdint>
#include <vector>

#include "nepv/core.hpp"

// Thin wrappers over the reference BLAS/LAPACK entry points (linked from
// OpenBLAS). Everything here takes and returns the column-major CMatrix, so
// no transposition or copying tricks leak into the callers. Input matrices
// that LAPACK would destroy are taken by value.

namespace nepv::la {

// C = alpha * op(A) * op(B) + beta * C, op in {'N', 'T', 'C'}.
void gemm(char ta, char tb, Cx alpha, const CMatrix& a, const CMatrix& b, Cx beta, CMatrix& c);
CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix matmul_op(char ta, char tb, const CMatrix& a, const CMatrix& b);
// y = op(A) * x.
CVector gemv(char trans, const CMatrix& a, const CVector& x);
// a += alpha * x * y^T (unconjugated rank-one update on a leading block).
void geru(int m, int n, Cx alpha, const Cx* x, int incx, const Cx* y, int incy, Cx* a, int lda);
// In-place triangular multiply / solve with the upper triangle of t.
void trmv_upper(const CMatrix& t, CVector& x);
void trsv_upper(const CMatrix& t, CVector& x);

// LU factorization with partial pivoting. rcond() estimates the reciprocal
// 1-norm condition number of the original matrix (zgecon).
struct Lu {
  int n = 0;
  CMatrix f;               // factors, as returned by zgetrf
  std::vector<int> ipiv;
  double anorm1 = 0.0;     // 1-norm of the unfactored matrix

  CVector solve(char trans, CVector rhs) const;
  void solve_inplace(char trans, CMatrix& rhs) const;
  double rcond() const;
};

// Throws Error(on_singular) when an exactly zero pivot is hit.
Lu lu_factor(CMatrix a, Errc on_singular = Errc::LapackError);

// Cumulative number of zgetrs invocations in this process. Lets tests assert
// the solver cost contracts (residual inverse iteration does exactly one
// back-substitution per iteration after setup).
std::uint64_t solve_count();

// Generalized eigenproblem A v = lambda B v via zggev. Eigenvalue i is
// alpha[i]/beta[i]; vl/vr hold left/right eigenvectors by column when
// requested. Left eigenvectors u satisfy u^H A = lambda u^H B.
struct Eigs {
  std::vector<Cx> alpha, beta;
  CMatrix vl, vr;
};
Eigs ggev(CMatrix a, CMatrix b, bool want_left, bool want_right);

// Economy SVD via zgesvd: a = u * diag(s) * vt with k = min(m, n) columns.
struct Svd {
  std::vector<double> s;
  CMatrix u, vt;
};
Svd svd_econ(CMatrix a);

// Generalized Schur (QZ) decomposition via zgges: a = q s z^H, b = q t z^H
// with s, t upper triangular and q, z unitary.
struct Qz {
  CMatrix s, t, q, z;
};
Qz gges(CMatrix a, CMatrix b);

// Eigenvalues only, via zgeev (used for companion-matrix root finding).
std::vector<Cx> eigvals(CMatrix a);

}  // namespace nepv::la
