// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <vector>

#include "nepv/core.hpp"
#include "nepv/linearize.hpp"
#include "nepv/problem.hpp"

// Residual inverse iteration on the MEP rows. Both solvers freeze a shift
// pair (sigma, tau) for the whole run, factor every row operator
// T_i(sigma, tau) once, and then repeat: evaluate the row residuals through
// those fixed factorizations, solve a small (m+1) x (m+1) system for the
// eigenvalue updates, and correct the eigenvector estimate(s).
//
// ri_solve is the general method: it maintains one vector per MEP row and
// solves against every row operator each iteration. ris_solve exploits the
// symmetry of the linearization: when all rows share the normalization
// functional and the starting vector, the row vectors stay equal forever
// (provided v^T T_1(sigma,tau)^{-1} g_i != 0), so a single vector and a
// single back-substitution per iteration suffice. After setup the symmetric
// iteration costs O(m n^2) per step plus one triangular solve pair.

namespace nepv {

// Shift, start, and stopping policy for ri_solve / ris_solve.
struct RiConfig {
  Cx sigma;             // lambda shift, frozen for the whole run
  CVector tau;          // m mu shifts; empty means tau_i = f_i(x0)
  CVector x0;           // starting vector
  CVector v;            // normalization functional; empty means
                        // conj(x0) / (x0^H x0), which gives v^T x0 = 1 exactly
  // ri_solve only: per-row starts and functionals. Empty means every row
  // uses x0 / v. When x0_rows is set, the default tau and the default v of
  // each row derive from that row's own start (tau from row 0's start).
  std::vector<CVector> x0_rows;
  std::vector<CVector> v_rows;
  int max_iter = 100;
  double tol = 1e-12;   // on nepv_residual of the current iterate
  bool record_history = true;
};

// One history row per visited iterate, starting with the raw input (row 0).
struct HistoryRow {
  int iteration = 0;
  double residual = 0.0;  // nepv_residual; +inf when f(x) is undefined
  Cx lambda;
  CVector mu;
};

enum class StopReason {
  Converged,      // residual dropped below tol
  MaxIterations,  // budget exhausted; result holds the last iterate
  Stagnated,      // inverse iteration only: residual plateau above tol
};

// Outcome of any iterative solver in this library. The history records the
// state at the TOP of each iteration, so converged runs end with a row whose
// residual is below tol and a run that converges on its input reports
// iterations == 0.
struct IterationResult {
  Cx lambda;
  CVector mu;
  CVector x;  // residual iterations keep v^T x = 1; inverse iteration unit norm
  bool converged = false;
  int iterations = 0;
  StopReason stop = StopReason::MaxIterations;
  std::vector<HistoryRow> history;
  // ri_solve only: the final per-row vectors x_1 .. x_{m+1} (x == x_rows[0]).
  std::vector<CVector> x_rows;
  // Hybrid driver only: index of the first history row produced after the
  // switch to residual inverse iteration; -1 for single-method runs.
  int switch_index = -1;
};

// Symmetric residual inverse iteration. Setup factors the m+1 row operators
// T_i(sigma, tau) and computes psi_i = T_i(sigma,tau)^{-T} v plus the
// constant vectors (dT_i/dphi)^T psi_i for phi in {lambda, mu_1..mu_m}; each
// iteration then needs m+2 matrix-vector products, one back-substitution
// against T_1(sigma, tau), and one (m+1) x (m+1) solve. Starts at
// (lambda, mu) = (sigma, tau). A max_iter run without convergence is not an
// error: the result comes back with converged = false.
//
// Throws SingularShiftedMatrix when some T_i(sigma, tau) factorization hits
// an exactly zero pivot, SingularUpdateSystem when the small update system
// has condition beyond tol::update_cond, InvalidArgument when v^T x0
// vanishes, and ConvergenceFailure when an iterate collapses onto the
// null space of the normalization functional.
IterationResult ris_solve(const MepProblem& mep, const RiConfig& cfg);

// General residual inverse iteration: one vector and one normalization
// functional per MEP row, m+1 back-substitutions per iteration. Exists as
// the comparison baseline for ris_solve; with equal rows the two methods
// produce identical iterates up to rounding. Convergence is measured on the
// row-0 vector, the eigenvector estimate of the original pencil.
IterationResult ri_solve(const MepProblem& mep, const RiConfig& cfg);

}  // namespace nepv
