// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#pragma once

#include "nepv/dense.hpp"
#include "nepv/resinv.hpp"

// Inverse iteration on the pencil (Delta[0], Delta0). A symmetric starting
// vector x0 (x) ... (x) x0 keeps every iterate in the symmetric invariant
// subspace, so the iteration homes in on genuine NEPv solutions and its rate
// is governed by the symmetric part of the spectrum only. For one
// nonlinearity the shifted solve never forms the N x N matrices: it is a
// generalized Sylvester equation in the n x n unfolding, solved in O(n^3).

namespace nepv {

enum class IiPath {
  Dense,      // factor Delta[0] - sigma Delta0 once, back-substitute per step
  Sylvester,  // m = 1 only: QZ-based Sylvester solve on the n x n unfolding
  Auto,       // Sylvester when m = 1 and n > 8, dense otherwise
};

struct IiConfig {
  // Shift; an estimate of the wanted eigenvalue, not an exact eigenvalue.
  Cx sigma;
  // Length-n start: the iteration begins from x0 (x) ... (x) x0 (m+1 factors).
  CVector x0;
  // Full-length start of size n^{m+1}; takes precedence over x0 when set.
  // Starts off the symmetric subspace are allowed (that is the point of
  // having it), but the symmetric-start guarantees no longer apply.
  CVector z0;
  int max_iter = 100;
  // Convergence threshold on the NEPv residual of the factored iterate.
  double tol = 1e-12;
  IiPath path = IiPath::Auto;
  bool record_history = true;
};

// Inverse iteration z_{k+1} = normalize((Delta[0] - sigma Delta0)^{-1}
// Delta0 z_k) with one factorization shared across all steps. Each iterate
// is factored into Kronecker factors; lambda is estimated by the Rayleigh
// quotient z^H Delta[0] z / z^H Delta0 z and the run stops when the NEPv
// residual of (lambda, x_1) drops below cfg.tol. The result carries
// lambda, mu_i = f_i(x_1), and x = x_1 (unit norm, phase canonical).
//
// The convergence test runs after each step, never on the raw start, so a
// start that is already an exact eigenvector converges at iteration 1 with
// its direction unchanged. History row 0 records the initial state.
//
// Iterates can pass through directions where z^H Delta0 z or s_i^T x_1 is
// numerically zero (the s-filtered part of the spectrum); such rows carry a
// NaN lambda estimate or NaN mu and an infinite residual, and the iteration
// simply continues. They can never satisfy the convergence test.
//
// When the residual plateaus (no 10% improvement on the best value over ten
// consecutive steps while still above tol) the run stops with
// StopReason::Stagnated and reports the best iterate seen. This is the
// expected endgame at high cond(Delta0), not a failure.
//
// Errors: SingularShiftedPencil when the shifted operator is singular
// (exactly, or past cancellation on the Sylvester path); InvalidArgument for
// a Sylvester request with m != 1; MemoryBudgetExceeded from the Delta build
// on the dense path; ConvergenceFailure when an iterate vanishes or
// overflows.
IterationResult ii_solve(const NepvProblem& p, const MepProblem& mep, const IiConfig& cfg);

// Same, reusing an already-built Delta system for the dense path instead of
// assembling a fresh one. The Sylvester path ignores ds.
IterationResult ii_solve(const NepvProblem& p, const MepProblem& mep, const DeltaSystem& ds,
                         const IiConfig& cfg);

// One unnormalized inverse-iteration step for m = 1 in the n x n unfolding:
// solves
//
//   (A + g r^T + sigma B) Z C^T - (C - g s^T) Z (A + sigma B)^T
//       = (C - g s^T) Zk B^T - B Zk C^T
//
// for Z. Under the column-major vec convention, vec(Z) of the solution
// equals (Delta[0] - sigma Delta0)^{-1} Delta0 vec(Zk): the Kronecker
// identity (M (x) N) vec(Z) = vec(N Z M^T) turns the N x N shifted solve
// into this matrix equation. Solved by QZ decompositions of the two
// coefficient pencils and triangular back-substitution, O(n^3) total where
// the dense route costs O(n^6).
//
// Throws SingularSylvesterOperator when some pivot
// u_jj s_ii - w_jj t_ii cancels to roundoff (the shifted pencil is singular),
// DimensionMismatch for shape errors, InvalidArgument when m != 1.
CMatrix sylvester_step(const MepProblem& mep, Cx sigma, const CMatrix& zk);

// Inverse iteration followed by symmetric residual inverse iteration: run
// ii_solve for k_switch steps, factor the final iterate to x_hat, then seed
// ris_solve with sigma = the Rayleigh lambda estimate, tau_i = f_i(x_hat),
// x0 = x_hat. Inverse iteration supplies the global pull toward the wanted
// eigenvalue; the residual iteration supplies the cheap, stagnation-free
// endgame.
//
// cfg_ris.sigma, tau, and x0 are overridden by the handoff; its remaining
// fields (tol, max_iter, v, history switch) apply to the second stage as
// given. If the first stage already converged its result is returned as is.
// With k_switch = 0 and an x0-based start nothing is factored: the second
// stage starts from cfg_ii.x0 itself, so the run is exactly a ris_solve from
// the raw start (with sigma taken from the Rayleigh quotient at z0).
//
// The returned history is the inverse-iteration rows followed by the
// residual-iteration rows (its duplicate starting row dropped, iterations
// renumbered to continue the count); switch_index is the index of the first
// residual-iteration row. Errors from either stage propagate.
IterationResult hybrid_solve(const NepvProblem& p, const MepProblem& mep, const IiConfig& cfg_ii,
                             int k_switch, const RiConfig& cfg_ris);

}  // namespace nepv
