// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Dense complex substrate shared by every module: the column-major matrix
// type, unconjugated/conjugated vector products, error taxonomy, and the
// default tolerances used across the solvers.

namespace nepv {

using Cx = std::complex<double>;
using CVector = std::vector<Cx>;

enum class Errc {
  DimensionMismatch,
  DenominatorNearZero,
  Overflow,
  InvalidG,
  MemoryBudgetExceeded,
  SingularDelta0,
  SingularPencil,
  ConvergenceFailure,
  DegenerateRayleigh,
  SingularShiftedMatrix,
  SingularUpdateSystem,
  SingularShiftedPencil,
  SingularSylvesterOperator,
  LapackError,
  InvalidArgument,
  IoError,
  BadProblemFile,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& what) { throw Error(c, what); }

// Default thresholds. Values are part of the interface contract: tests pin
// them, so changing one is a behavior change, not a tuning knob.
namespace tol {
// |s^T x| below denom * |s| * |x| counts as a vanishing denominator in f_i.
inline constexpr double denom = 1e-12;
// NEPv residual below which a symmetric candidate is accepted as a solution.
inline constexpr double accept = 1e-8;
// Symmetry defect (max sin of angle between Kronecker factors) threshold.
inline constexpr double sym = 1e-6;
// Rank-one fit threshold for "decomposable".
inline constexpr double fit = 1e-6;
// Eigenpair deduplication tolerance (absolute + relative on lambda, and on x).
inline constexpr double dedup = 1e-8;
// Pairwise independence of the g vectors: sin of principal angle must exceed this.
inline constexpr double g_angle = 1e-8;
// Delta0 counts as nonsingular when its estimated reciprocal condition number
// exceeds this (condition number below 1e-3 / machine epsilon).
inline constexpr double rcond_min = 2.2e-13;
// Condition bound on the small (m+1)x(m+1) update system in residual inverse
// iteration; beyond it the shift is unusable.
inline constexpr double update_cond = 1e12;
}  // namespace tol

// Column-major dense complex matrix. Entry (i,j) lives at a[i + j*rows].
// The layout is fixed globally so the vec convention used by the Sylvester
// path is unambiguous: vec stacks columns.
struct CMatrix {
  int rows = 0;
  int cols = 0;
  CVector a;

  CMatrix() = default;
  CMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  Cx& operator()(int i, int j) { return a[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * rows]; }
  const Cx& operator()(int i, int j) const {
    return a[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * rows];
  }

  std::size_t size() const { return a.size(); }

  static CMatrix identity(int n);
  static CMatrix zero(int r, int c) { return CMatrix(r, c); }
};

bool same_shape(const CMatrix& x, const CMatrix& y);
void require_shape(const CMatrix& x, int r, int c, const char* who);

// Vector operations. dotu is the unconjugated bilinear form v^T w used
// everywhere the formulas write ^T (also for complex data); dotc conjugates
// the first argument and only appears in norms and ^H Rayleigh quotients.
Cx dotu(const CVector& v, const CVector& w);
Cx dotc(const CVector& v, const CVector& w);
double nrm2(const CVector& v);
void scal(Cx alpha, CVector& v);
void axpy(Cx alpha, const CVector& x, CVector& y);  // y += alpha*x
CVector scaled(Cx alpha, const CVector& v);
// Normalize to unit 2-norm; throws InvalidArgument on the zero vector.
CVector normalized(const CVector& v);
// Rotate phase so the largest-magnitude entry is real positive. Makes vector
// output deterministic and comparable across eigensolvers.
CVector phase_canonical(const CVector& v);
// sin of the principal angle between the lines spanned by v and w.
double sin_angle(const CVector& v, const CVector& w);

// Matrix operations (hand loops; BLAS-backed products live in lapack.hpp).
double frob(const CMatrix& x);
double norm1(const CMatrix& x);
CMatrix transpose(const CMatrix& x);  // unconjugated
void add_scaled(CMatrix& x, Cx alpha, const CMatrix& y);        // x += alpha*y
void outer_acc(CMatrix& x, Cx alpha, const CVector& u, const CVector& v);  // x += alpha * u v^T
CVector matvec(const CMatrix& x, const CVector& v);
CVector matvec_t(const CMatrix& x, const CVector& v);  // x^T v, unconjugated

// vec / unvec under the fixed column-major convention.
CVector vec(const CMatrix& z);
CMatrix unvec(const CVector& v, int rows, int cols);

// Solve a small dense square system in place with partial pivoting. Used where
// LAPACK would be overkill or where calls happen inside parallel regions (the
// multistart oracle). Throws SingularUpdateSystem on breakdown.
CVector solve_small(CMatrix a, CVector b);

}  // namespace nepv
