// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#pragma once

#include "nepv/opdet.hpp"

// Dense solution path: solve the generalized eigenvalue problem
// Delta[0] z = lambda Delta0 z, decompose each eigenvector into Kronecker
// factors, and classify which eigenpairs are solutions of the original NEPv.
// This path enumerates every candidate at once and is the reference the
// iterative solvers are checked against.

namespace nepv {

// One eigenpair of the pencil (Delta1, Delta0). Eigenvectors are unit 2-norm
// and phase-canonical. left_w is empty unless left eigenvectors were
// requested; it satisfies w^H Delta1 = lambda w^H Delta0.
struct GepEigenpair {
  Cx lambda;
  CVector z;
  CVector left_w;
  // ||Delta1 z - lambda Delta0 z||_2 / (||Delta1||_F + |lambda| ||Delta0||_F);
  // for an infinite eigenvalue the homogeneous form with (alpha, beta) weights.
  double backward_error = 0.0;
  // False when beta ~ 0 (eigenvalue at infinity). Cannot happen while Delta0
  // is nonsingular, but a user-supplied pencil may produce it.
  bool finite = true;
};

// All N eigenpairs of Delta1 z = lambda Delta0 z via the QZ algorithm, sorted
// by (|lambda|, Re, Im). Throws SingularPencil when some (alpha, beta) pair is
// indeterminate (both negligible) and ConvergenceFailure when QZ fails.
std::vector<GepEigenpair> solve_gep(const CMatrix& delta1, const CMatrix& delta0,
                                    bool want_left = false);

// Parameter recovery mu_i = z^H Delta_{1+i} z / z^H Delta0 z. Throws
// DegenerateRayleigh when |z^H Delta0 z| <= 1e-12 * ||Delta0||_F * ||z||^2.
Cx mu_from_rayleigh(const CVector& z, const CMatrix& delta_i, const CMatrix& delta0);

// Best rank-one Kronecker decomposition z ~ alpha * x_1 (x) ... (x) x_{m+1}
// computed by successive mode unfoldings: reshape to n^m x n column-major
// (so the unfolding equals (x_2 (x) ... (x) x_{m+1}) x_1^T), take the dominant
// singular pair, keep the conjugated right vector as x_1, recurse on the left
// vector. Factors are unit 2-norm and phase-canonical.
struct RankOneFactorization {
  std::vector<CVector> factors;  // x_1, ..., x_{m+1}
  Cx alpha = 0.0;                // (x_1 (x) ... (x) x_{m+1})^H z
  double fit = 0.0;              // ||z - alpha * (x)_i x_i||_2 / ||z||_2
  double symmetry_defect = 0.0;  // max_i sin of angle between x_i and x_1
  bool symmetric = false;        // defect < tol::sym and fit < tol::fit
};
RankOneFactorization factor_rank_one(const CVector& z, int n, int m);

struct ExtractOptions {
  double tol_accept = tol::accept;
  double tol_sym = tol::sym;
  double tol_fit = tol::fit;
  double dedup = tol::dedup;
  // Attach left-eigenvector diagnostics to every non-True record. Requesting
  // them makes the QZ call compute left eigenvectors too, roughly doubling
  // its cost, so the large sweeps switch this off.
  bool diagnose = true;
};

// The dense pipeline: solve the Delta pencil, factor every eigenvector, and
// classify. A record is True when the factorization is symmetric, every
// |s_i^T x_1| clears the denominator threshold, and the NEPv residual of
// (lambda, x_1) is below tol_accept; then mu_i = f_i(x_1) exactly. A
// symmetric record failing the filter or the residual is Spurious. A
// non-symmetric record is NonSymmetric, unless its eigenvalue is clustered
// with another record's and the vector is not decomposable at all (fit above
// tol_fit), which means the eigenspace basis is arbitrary; those come back
// Unknown. Duplicate records (lambda and x both within dedup) are merged,
// keeping the better-classified one; conjugate pairs never merge. Records are
// sorted by (|lambda|, Re, Im). Rayleigh-based mu entries that hit a
// degenerate denominator are reported as NaN rather than aborting the sweep.
std::vector<SolutionRecord> extract_nepv_solutions(const NepvProblem& p, const MepProblem& mep,
                                                   const DeltaSystem& ds,
                                                   const ExtractOptions& opts = {});

// Explain a non-True eigenpair from its left eigenvector: factor
// conj(left_w) into y_1, ..., y_{m+1} and report the normalized products
// g_j^T y_{j+1} and s_j^T x_1. A vanishing g product means the eigenpair
// violates the nondegeneracy hypothesis the linearization needs (the
// eigenvalue is an artifact of the chosen g); a vanishing s product means x_1
// sits where some f_i is undefined. Requires pair.left_w; throws
// InvalidArgument when it is missing.
SpuriousDiagnosis diagnose_spurious(const MepProblem& mep, const GepEigenpair& pair);

}  // namespace nepv
