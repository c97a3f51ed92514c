// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nepv/core.hpp"

// The eigenvector-nonlinear problem
//
//   (A + lambda*B + sum_i f_i(x) C_i) x = 0,   f_i(x) = (r_i^T x) / (s_i^T x),
//
// with unconjugated transposes also for complex data. This header carries the
// problem model, the nonlinear functionals, the relative residual, the Bezout
// solution count, and the record type every solver path reports in.

namespace nepv {

struct NepvProblem {
  CMatrix A, B;
  std::vector<CMatrix> C;
  std::vector<CVector> r, s;

  int n() const { return A.rows; }
  int m() const { return static_cast<int>(C.size()); }

  // Shape consistency + nonzero s_i. Throws DimensionMismatch / InvalidArgument.
  void validate() const;
};

// f_i(x) for the 0-based term index i. Throws DenominatorNearZero when
// |s_i^T x| <= tol::denom * |s_i| * |x|.
Cx f_eval(const NepvProblem& p, int i, const CVector& x);

// Relative residual
//   || (A + lambda B + sum f_i(x) C_i) x ||_2
//   -----------------------------------------------------------------
//   (||A||_F + |lambda| ||B||_F + sum |f_i(x)| ||C_i||_F) * ||x||_2
// Scale-invariant in x; propagates DenominatorNearZero from f_eval.
double nepv_residual(const NepvProblem& p, Cx lambda, const CVector& x);

// Maximum number of isolated solutions, N_s = binomial(n+m, m+1).
// Throws Overflow if the value exceeds 2^63 - 1.
std::int64_t count_solutions(int n, int m);

enum class SolutionClass { True, Spurious, NonSymmetric, Unknown };

const char* solution_class_name(SolutionClass c);

// Left-eigenvector diagnosis of a non-solution eigenpair. The dot products
// are normalized: g_dot_y[j] = g_j^T y_{j+1} / (|g_j| |y_{j+1}|) and
// s_dot_x[j] = s_j^T x_1 / (|s_j| |x_1|). A tiny g_dot_y or s_dot_x entry is
// exactly the hypothesis violation that makes an eigenpair spurious.
struct SpuriousDiagnosis {
  std::vector<CVector> left_factors;  // y_1, ..., y_{m+1}, unit norm
  double left_fit = 0.0;              // rank-one fit of the left eigenvector
  std::vector<Cx> g_dot_y;
  std::vector<Cx> s_dot_x;
  std::vector<bool> g_orthogonal;     // |g_dot_y[j]| <= tol for some j
  std::vector<bool> s_filtered;       // |s_dot_x[j]| <= tol::denom
};

struct SolutionRecord {
  Cx lambda;
  std::vector<Cx> mu;
  CVector x;  // unit 2-norm, phase-canonical
  SolutionClass cls = SolutionClass::Unknown;
  // NEPv residual of (lambda, x); +inf when f(x) is undefined (s^T x ~ 0).
  double residual = 0.0;
  // Rank-one factorization quality of the underlying GEP eigenvector.
  double fit = 0.0;
  double symmetry_defect = 0.0;
  // ||Delta1 z - lambda Delta0 z|| / (||Delta1||_F + |lambda| ||Delta0||_F).
  double backward_error = 0.0;
  std::optional<SpuriousDiagnosis> diagnostics;
};

}  // namespace nepv
