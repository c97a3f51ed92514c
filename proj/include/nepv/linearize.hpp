// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <cstdint>

#include "nepv/problem.hpp"

// Exact linearization of the rational-linear NEPv to a linear multiparameter
// eigenvalue problem (MEP). Each nonlinearity f_i contributes one extra
// equation built from a free nonzero vector g_i; the solver modules consume
// the resulting block structure.

namespace nepv {

enum class GFailure {
  None,
  ZeroVector,          // some g_i is (numerically) zero
  PairwiseDependent,   // m >= 2 and two g_i are linearly dependent
};

const char* g_failure_name(GFailure f);

// Outcome of validating a candidate set g_1..g_m.
struct GReport {
  bool pass = true;
  GFailure reason = GFailure::None;
  // Offending vector (ZeroVector) or offending pair (PairwiseDependent),
  // 0-based; -1 when not applicable.
  int index_a = -1;
  int index_b = -1;
  // Smallest pairwise principal angle seen, as sin; 1.0 when m < 2.
  double min_sin_angle = 1.0;
};

// Linear (m+1)-parameter eigenvalue problem
//
//   V[i][0] x_i = (lambda V[i][1] + sum_j mu_j V[i][1+j]) x_i,   i = 0..m,
//
// stored as the (m+1) x (m+2) block grid V. Row 0 is the original pencil
// with the nonlinearities replaced by the parameters mu_j:
//
//   V[0][0] = -A,              V[0][1] = B,  V[0][1+j] = C_j.
//
// Row i+1 (one per nonlinearity, i = 0..m-1) couples mu_i back to f_i via
// the free vector g_i:
//
//   V[i+1][0]   = -(A + g_i r_i^T),
//   V[i+1][1]   = B,
//   V[i+1][1+i] = C_i - g_i s_i^T,
//   V[i+1][1+j] = C_j           for j != i.
//
// Subtracting row 0 from row i+1 on a common vector x gives
// g_i (r_i^T x - mu_i s_i^T x), which vanishes exactly when mu_i = f_i(x);
// that is the whole point of the construction.
struct MepProblem {
  NepvProblem src;                      // problem this MEP linearizes
  std::vector<std::vector<CMatrix>> V;  // (m+1) x (m+2) blocks, each n x n
  std::vector<CVector> g;               // free vectors, one per nonlinearity

  int n() const { return src.n(); }
  int m() const { return src.m(); }
  int rows() const { return static_cast<int>(V.size()); }
};

// Check the free vectors: every g_i nonzero, and for m >= 2 pairwise linear
// independence (sin of principal angle > tol::g_angle). Shape errors throw
// DimensionMismatch; quality failures come back in the report.
GReport validate_g(const NepvProblem& p, const std::vector<CVector>& g);

// Assemble the MEP. Throws InvalidG when validate_g fails.
MepProblem build_mep(const NepvProblem& p, const std::vector<CVector>& g);

// Deterministic real standard-normal g vectors from per-vector streams
// "g1".."gm". Redraws on the probability-zero event that validation fails,
// so the result always passes validate_g.
std::vector<CVector> random_g(int n, int m, std::uint64_t seed);

// Row operator T_i(lambda, mu) = lambda V[i][1] + sum_j mu_j V[i][1+j]
// - V[i][0]; a tuple solves MEP row i exactly when T_i(lambda, mu) x = 0.
// Row index is 0-based.
CMatrix mep_row_matrix(const MepProblem& mep, int i, Cx lambda, const CVector& mu);

// ||T_i(lambda, mu) x||_2 / ||x||_2 for 0-based row i.
double mep_row_residual(const MepProblem& mep, int i, Cx lambda, const CVector& mu,
                        const CVector& x);

// Max of mep_row_residual over all rows.
double mep_residual(const MepProblem& mep, Cx lambda, const CVector& mu, const CVector& x);

}  // namespace nepv
