// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#include "nepv/lapack.hpp"

#include <atomic>
#include <string>

// Fortran prototypes. std::complex<double> is layout-compatible with the
// Fortran COMPLEX*16 convention used by LAPACK; hidden character-length
// arguments are benign on the supported ABIs (same pattern as everywhere
// else that calls LAPACK from C++ directly).
extern "C" {
void zgemm_(const char* transa, const char* transb, const int* m, const int* n, const int* k,
            const nepv::Cx* alpha, const nepv::Cx* a, const int* lda, const nepv::Cx* b,
            const int* ldb, const nepv::Cx* beta, nepv::Cx* c, const int* ldc);
void zgemv_(const char* trans, const int* m, const int* n, const nepv::Cx* alpha,
            const nepv::Cx* a, const int* lda, const nepv::Cx* x, const int* incx,
            const nepv::Cx* beta, nepv::Cx* y, const int* incy);
void zgeru_(const int* m, const int* n, const nepv::Cx* alpha, const nepv::Cx* x, const int* incx,
            const nepv::Cx* y, const int* incy, nepv::Cx* a, const int* lda);
void ztrmv_(const char* uplo, const char* trans, const char* diag, const int* n, const nepv::Cx* a,
            const int* lda, nepv::Cx* x, const int* incx);
void ztrsv_(const char* uplo, const char* trans, const char* diag, const int* n, const nepv::Cx* a,
            const int* lda, nepv::Cx* x, const int* incx);
void zgetrf_(const int* m, const int* n, nepv::Cx* a, const int* lda, int* ipiv, int* info);
void zgetrs_(const char* trans, const int* n, const int* nrhs, const nepv::Cx* a, const int* lda,
             const int* ipiv, nepv::Cx* b, const int* ldb, int* info);
void zgecon_(const char* norm, const int* n, const nepv::Cx* a, const int* lda, const double* anorm,
             double* rcond, nepv::Cx* work, double* rwork, int* info);
void zggev_(const char* jobvl, const char* jobvr, const int* n, nepv::Cx* a, const int* lda,
            nepv::Cx* b, const int* ldb, nepv::Cx* alpha, nepv::Cx* beta, nepv::Cx* vl,
            const int* ldvl, nepv::Cx* vr, const int* ldvr, nepv::Cx* work, const int* lwork,
            double* rwork, int* info);
void zgesvd_(const char* jobu, const char* jobvt, const int* m, const int* n, nepv::Cx* a,
             const int* lda, double* s, nepv::Cx* u, const int* ldu, nepv::Cx* vt, const int* ldvt,
             nepv::Cx* work, const int* lwork, double* rwork, int* info);
void zgges_(const char* jobvsl, const char* jobvsr, const char* sort, const void* selctg,
            const int* n, nepv::Cx* a, const int* lda, nepv::Cx* b, const int* ldb, int* sdim,
            nepv::Cx* alpha, nepv::Cx* beta, nepv::Cx* vsl, const int* ldvsl, nepv::Cx* vsr,
            const int* ldvsr, nepv::Cx* work, const int* lwork, double* rwork, int* bwork,
            int* info);
void zgeev_(const char* jobvl, const char* jobvr, const int* n, nepv::Cx* a, const int* lda,
            nepv::Cx* w, nepv::Cx* vl, const int* ldvl, nepv::Cx* vr, const int* ldvr,
            nepv::Cx* work, const int* lwork, double* rwork, int* info);
}

namespace nepv::la {

namespace {

std::atomic<std::uint64_t> g_solve_count{0};

[[noreturn]] void bad_info(const char* who, int info) {
  fail(Errc::LapackError, std::string(who) + ": illegal argument " + std::to_string(-info));
}

int op_rows(char t, const CMatrix& a) { return t == 'N' ? a.rows : a.cols; }
int op_cols(char t, const CMatrix& a) { return t == 'N' ? a.cols : a.rows; }

}  // namespace

void gemm(char ta, char tb, Cx alpha, const CMatrix& a, const CMatrix& b, Cx beta, CMatrix& c) {
  const int m = op_rows(ta, a), k = op_cols(ta, a), n = op_cols(tb, b);
  if (op_rows(tb, b) != k) fail(Errc::DimensionMismatch, "gemm: inner dimensions");
  if (c.rows != m || c.cols != n) fail(Errc::DimensionMismatch, "gemm: output shape");
  if (m == 0 || n == 0) return;
  const int lda = a.rows, ldb = b.rows, ldc = c.rows;
  zgemm_(&ta, &tb, &m, &n, &k, &alpha, a.a.data(), &lda, b.a.data(), &ldb, &beta, c.a.data(), &ldc);
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) { return matmul_op('N', 'N', a, b); }

CMatrix matmul_op(char ta, char tb, const CMatrix& a, const CMatrix& b) {
  CMatrix c(op_rows(ta, a), op_cols(tb, b));
  gemm(ta, tb, Cx(1.0), a, b, Cx(0.0), c);
  return c;
}

CVector gemv(char trans, const CMatrix& a, const CVector& x) {
  const int m = a.rows, n = a.cols;
  const int xlen = (trans == 'N') ? n : m;
  const int ylen = (trans == 'N') ? m : n;
  if (x.size() != static_cast<std::size_t>(xlen)) fail(Errc::DimensionMismatch, "gemv: x length");
  CVector y(static_cast<std::size_t>(ylen), Cx(0.0));
  if (m == 0 || n == 0) return y;
  const Cx one(1.0), zero(0.0);
  const int inc = 1;
  zgemv_(&trans, &m, &n, &one, a.a.data(), &m, x.data(), &inc, &zero, y.data(), &inc);
  return y;
}

void geru(int m, int n, Cx alpha, const Cx* x, int incx, const Cx* y, int incy, Cx* a, int lda) {
  if (m == 0 || n == 0) return;
  zgeru_(&m, &n, &alpha, x, &incx, y, &incy, a, &lda);
}

void trmv_upper(const CMatrix& t, CVector& x) {
  const char uplo = 'U', trans = 'N', diag = 'N';
  const int n = t.rows, inc = 1;
  ztrmv_(&uplo, &trans, &diag, &n, t.a.data(), &n, x.data(), &inc);
}

void trsv_upper(const CMatrix& t, CVector& x) {
  const char uplo = 'U', trans = 'N', diag = 'N';
  const int n = t.rows, inc = 1;
  ztrsv_(&uplo, &trans, &diag, &n, t.a.data(), &n, x.data(), &inc);
}

Lu lu_factor(CMatrix a, Errc on_singular) {
  if (a.rows != a.cols) fail(Errc::DimensionMismatch, "lu_factor: matrix not square");
  Lu lu;
  lu.n = a.rows;
  lu.anorm1 = norm1(a);
  lu.ipiv.assign(static_cast<std::size_t>(lu.n), 0);
  lu.f = std::move(a);
  int info = 0;
  zgetrf_(&lu.n, &lu.n, lu.f.a.data(), &lu.n, lu.ipiv.data(), &info);
  if (info < 0) bad_info("zgetrf", info);
  if (info > 0) fail(on_singular, "zgetrf: zero pivot at position " + std::to_string(info));
  return lu;
}

CVector Lu::solve(char trans, CVector rhs) const {
  if (rhs.size() != static_cast<std::size_t>(n)) fail(Errc::DimensionMismatch, "Lu::solve: rhs length");
  const int nrhs = 1;
  int info = 0;
  zgetrs_(&trans, &n, &nrhs, f.a.data(), &n, ipiv.data(), rhs.data(), &n, &info);
  if (info < 0) bad_info("zgetrs", info);
  g_solve_count.fetch_add(1, std::memory_order_relaxed);
  return rhs;
}

void Lu::solve_inplace(char trans, CMatrix& rhs) const {
  if (rhs.rows != n) fail(Errc::DimensionMismatch, "Lu::solve_inplace: rhs rows");
  const int nrhs = rhs.cols;
  int info = 0;
  zgetrs_(&trans, &n, &nrhs, f.a.data(), &n, ipiv.data(), rhs.a.data(), &n, &info);
  if (info < 0) bad_info("zgetrs", info);
  g_solve_count.fetch_add(1, std::memory_order_relaxed);
}

double Lu::rcond() const {
  const char norm = '1';
  double rc = 0.0;
  CVector work(static_cast<std::size_t>(2 * n));
  std::vector<double> rwork(static_cast<std::size_t>(2 * n));
  int info = 0;
  zgecon_(&norm, &n, f.a.data(), &n, &anorm1, &rc, work.data(), rwork.data(), &info);
  if (info < 0) bad_info("zgecon", info);
  return rc;
}

std::uint64_t solve_count() { return g_solve_count.load(std::memory_order_relaxed); }

Eigs ggev(CMatrix a, CMatrix b, bool want_left, bool want_right) {
  if (a.rows != a.cols || b.rows != b.cols || a.rows != b.rows)
    fail(Errc::DimensionMismatch, "ggev: matrices must be square and same size");
  const int n = a.rows;
  Eigs out;
  out.alpha.resize(static_cast<std::size_t>(n));
  out.beta.resize(static_cast<std::size_t>(n));
  const char jobvl = want_left ? 'V' : 'N';
  const char jobvr = want_right ? 'V' : 'N';
  if (want_left) out.vl = CMatrix(n, n);
  if (want_right) out.vr = CMatrix(n, n);
  const int ldvl = want_left ? n : 1;
  const int ldvr = want_right ? n : 1;
  Cx* vl = want_left ? out.vl.a.data() : nullptr;
  Cx* vr = want_right ? out.vr.a.data() : nullptr;
  std::vector<double> rwork(static_cast<std::size_t>(8 * n));
  Cx wkopt;
  int lwork = -1, info = 0;
  zggev_(&jobvl, &jobvr, &n, a.a.data(), &n, b.a.data(), &n, out.alpha.data(), out.beta.data(), vl,
         &ldvl, vr, &ldvr, &wkopt, &lwork, rwork.data(), &info);
  if (info != 0) bad_info("zggev(query)", info);
  lwork = static_cast<int>(wkopt.real());
  CVector work(static_cast<std::size_t>(lwork));
  zggev_(&jobvl, &jobvr, &n, a.a.data(), &n, b.a.data(), &n, out.alpha.data(), out.beta.data(), vl,
         &ldvl, vr, &ldvr, work.data(), &lwork, rwork.data(), &info);
  if (info < 0) bad_info("zggev", info);
  if (info > 0) fail(Errc::ConvergenceFailure, "zggev: QZ iteration failed at step " + std::to_string(info));
  return out;
}

Svd svd_econ(CMatrix a) {
  const int m = a.rows, n = a.cols;
  const int k = m < n ? m : n;
  Svd out;
  out.s.resize(static_cast<std::size_t>(k));
  out.u = CMatrix(m, k);
  out.vt = CMatrix(k, n);
  const char jobu = 'S', jobvt = 'S';
  std::vector<double> rwork(static_cast<std::size_t>(5 * k));
  Cx wkopt;
  int lwork = -1, info = 0;
  zgesvd_(&jobu, &jobvt, &m, &n, a.a.data(), &m, out.s.data(), out.u.a.data(), &m, out.vt.a.data(),
          &k, &wkopt, &lwork, rwork.data(), &info);
  if (info != 0) bad_info("zgesvd(query)", info);
  lwork = static_cast<int>(wkopt.real());
  CVector work(static_cast<std::size_t>(lwork));
  zgesvd_(&jobu, &jobvt, &m, &n, a.a.data(), &m, out.s.data(), out.u.a.data(), &m, out.vt.a.data(),
          &k, work.data(), &lwork, rwork.data(), &info);
  if (info < 0) bad_info("zgesvd", info);
  if (info > 0) fail(Errc::ConvergenceFailure, "zgesvd: did not converge");
  return out;
}

Qz gges(CMatrix a, CMatrix b) {
  if (a.rows != a.cols || b.rows != b.cols || a.rows != b.rows)
    fail(Errc::DimensionMismatch, "gges: matrices must be square and same size");
  const int n = a.rows;
  Qz out;
  out.q = CMatrix(n, n);
  out.z = CMatrix(n, n);
  std::vector<Cx> alpha(static_cast<std::size_t>(n)), beta(static_cast<std::size_t>(n));
  const char jobvsl = 'V', jobvsr = 'V', sort = 'N';
  int sdim = 0, info = 0, lwork = -1;
  std::vector<double> rwork(static_cast<std::size_t>(8 * n));
  Cx wkopt;
  zgges_(&jobvsl, &jobvsr, &sort, nullptr, &n, a.a.data(), &n, b.a.data(), &n, &sdim, alpha.data(),
         beta.data(), out.q.a.data(), &n, out.z.a.data(), &n, &wkopt, &lwork, rwork.data(), nullptr,
         &info);
  if (info != 0) bad_info("zgges(query)", info);
  lwork = static_cast<int>(wkopt.real());
  CVector work(static_cast<std::size_t>(lwork));
  zgges_(&jobvsl, &jobvsr, &sort, nullptr, &n, a.a.data(), &n, b.a.data(), &n, &sdim, alpha.data(),
         beta.data(), out.q.a.data(), &n, out.z.a.data(), &n, work.data(), &lwork, rwork.data(),
         nullptr, &info);
  if (info < 0) bad_info("zgges", info);
  if (info > 0) fail(Errc::ConvergenceFailure, "zgges: QZ iteration failed at step " + std::to_string(info));
  out.s = std::move(a);
  out.t = std::move(b);
  return out;
}

std::vector<Cx> eigvals(CMatrix a) {
  if (a.rows != a.cols) fail(Errc::DimensionMismatch, "eigvals: matrix not square");
  const int n = a.rows;
  std::vector<Cx> w(static_cast<std::size_t>(n));
  if (n == 0) return w;
  const char jobvl = 'N', jobvr = 'N';
  const int ldv = 1;
  std::vector<double> rwork(static_cast<std::size_t>(2 * n));
  Cx wkopt;
  int lwork = -1, info = 0;
  zgeev_(&jobvl, &jobvr, &n, a.a.data(), &n, w.data(), nullptr, &ldv, nullptr, &ldv, &wkopt, &lwork,
         rwork.data(), &info);
  if (info != 0) bad_info("zgeev(query)", info);
  lwork = static_cast<int>(wkopt.real());
  CVector work(static_cast<std::size_t>(lwork));
  zgeev_(&jobvl, &jobvr, &n, a.a.data(), &n, w.data(), nullptr, &ldv, nullptr, &ldv, work.data(),
         &lwork, rwork.data(), &info);
  if (info < 0) bad_info("zgeev", info);
  if (info > 0) fail(Errc::ConvergenceFailure, "zgeev: did not converge");
  return w;
}

}  // namespace nepv::la
