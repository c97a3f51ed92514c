// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#include "nepv/invit.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "nepv/lapack.hpp"

namespace nepv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Marker for a degenerate Rayleigh quotient. Early iterates routinely pass
// through directions with z^H Delta0 z near zero (they correspond to
// eigenvectors killed by the s-filter); the estimate is meaningless there but
// the iteration itself is unaffected, so the row is recorded with an infinite
// residual and the run continues.
constexpr Cx kNanCx{std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN()};

CVector kron_vec(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  std::size_t k = 0;
  for (const Cx& ai : a)
    for (const Cx& bj : b) out[k++] = ai * bj;
  return out;
}

// Delta0 z in the n x n unfolding: (C - g s^T) Z B^T - B Z C^T.
CMatrix delta0_apply(const MepProblem& mep, const CMatrix& z) {
  CMatrix f(mep.n(), mep.n());
  add_scaled(f, Cx(1.0), la::matmul_op('N', 'T', la::matmul(mep.V[1][2], z), mep.V[0][1]));
  add_scaled(f, Cx(-1.0), la::matmul_op('N', 'T', la::matmul(mep.V[0][1], z), mep.V[0][2]));
  return f;
}

// Delta[0] z in the unfolding: (A + g r^T) Z C^T - (C - g s^T) Z A^T.
CMatrix delta1_apply(const MepProblem& mep, const CMatrix& z) {
  CMatrix f(mep.n(), mep.n());
  add_scaled(f, Cx(-1.0), la::matmul_op('N', 'T', la::matmul(mep.V[1][0], z), mep.V[0][2]));
  add_scaled(f, Cx(1.0), la::matmul_op('N', 'T', la::matmul(mep.V[1][2], z), mep.V[0][0]));
  return f;
}

// The shifted inverse application for m = 1, kept in the unfolding. With
// P = A + g r^T + sigma B, Q = C - g s^T, R = A + sigma B, the equation
// P Z C^T - Q Z R^T = F is transformed by the QZ decompositions
// P = q1 S z1^H, Q = q1 T z1^H and C = q2 U z2^H, R = q2 W z2^H into
//
//   S Y U^T - T Y W^T = q1^H F conj(q2),   Y = z1^H Z conj(z2),
//
// with all four triangular factors upper, and solved column by column from
// the right: column j needs one triangular solve with U_jj S - W_jj T and a
// rank-one update of the remaining right-hand-side columns.
struct SylvesterOp {
  int n = 0;
  la::Qz lhs;  // pencil (P, Q)
  la::Qz rhs;  // pencil (C, R)

  SylvesterOp(const MepProblem& mep, Cx sigma, Errc on_singular) : n(mep.n()) {
    const CVector mu0(1, Cx(0.0));
    lhs = la::gges(mep_row_matrix(mep, 1, sigma, mu0), mep.V[1][2]);
    rhs = la::gges(mep.V[0][2], mep_row_matrix(mep, 0, sigma, mu0));

    // Every pivot of the back-substitution is fixed by the decompositions, so
    // singularity is decided up front. A pivot that cancels to roundoff means
    // sigma is an eigenvalue of the shifted pencil to working precision.
    const double rel = 100.0 * std::numeric_limits<double>::epsilon();
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const Cx a = rhs.s(j, j) * lhs.s(i, i);
        const Cx b = rhs.t(j, j) * lhs.t(i, i);
        if (std::abs(a - b) <= rel * (std::abs(a) + std::abs(b)))
          fail(on_singular, "sylvester operator: pivot " + std::to_string(i) + "," +
                                std::to_string(j) + " cancels; shift hits the pencil spectrum");
      }
  }

  CMatrix solve(const CMatrix& f) const {
    // g = q1^H f conj(q2), via (q2^H (q1^H f)^T)^T to stay in BLAS ops.
    CMatrix g = la::matmul_op('C', 'N', lhs.q, f);
    g = transpose(la::matmul_op('C', 'T', rhs.q, g));

    CMatrix y(n, n);
    CMatrix mj(n, n);
    CVector col(n), sy(n), ty(n);
    for (int j = n - 1; j >= 0; --j) {
      const Cx ujj = rhs.s(j, j);
      const Cx wjj = rhs.t(j, j);
      for (int c = 0; c < n; ++c)
        for (int r = 0; r <= c; ++r) mj(r, c) = ujj * lhs.s(r, c) - wjj * lhs.t(r, c);
      for (int r = 0; r < n; ++r) col[r] = g(r, j);
      la::trsv_upper(mj, col);
      for (int r = 0; r < n; ++r) y(r, j) = col[r];
      if (j > 0) {
        sy = col;
        ty = col;
        la::trmv_upper(lhs.s, sy);
        la::trmv_upper(lhs.t, ty);
        // Move column j's contribution off the still-open columns.
        la::geru(n, j, Cx(-1.0), sy.data(), 1, &rhs.s(0, j), 1, g.a.data(), n);
        la::geru(n, j, Cx(1.0), ty.data(), 1, &rhs.t(0, j), 1, g.a.data(), n);
      }
    }
    return la::matmul_op('N', 'T', la::matmul(lhs.z, y), rhs.z);
  }
};

struct Evaluation {
  double residual = kInf;
  Cx lambda;
  CVector mu;
  CVector x;
};

Evaluation evaluate(const NepvProblem& p, const CVector& z, Cx lambda_est) {
  Evaluation e;
  e.lambda = lambda_est;
  e.x = factor_rank_one(z, p.n(), p.m()).factors[0];
  e.mu.resize(p.m());
  for (int i = 0; i < p.m(); ++i) {
    try {
      e.mu[i] = f_eval(p, i, e.x);
    } catch (const Error& err) {
      if (err.code() != Errc::DenominatorNearZero) throw;
      e.mu[i] = Cx(std::numeric_limits<double>::quiet_NaN(),
                   std::numeric_limits<double>::quiet_NaN());
    }
  }
  if (!std::isfinite(lambda_est.real()) || !std::isfinite(lambda_est.imag())) return e;
  try {
    e.residual = nepv_residual(p, lambda_est, e.x);
  } catch (const Error& err) {
    if (err.code() != Errc::DenominatorNearZero) throw;
    e.residual = kInf;
  }
  return e;
}

// The iteration itself, shared by both application paths. The convergence
// test runs after each step, never on the raw start. A plateau (no 10%
// improvement on the best residual over ten consecutive steps) stops the run
// with the best iterate seen; that is the normal endgame when cond(Delta0)
// caps the attainable residual.
template <class Step, class Rayleigh>
IterationResult run_ii(const NepvProblem& p, const IiConfig& cfg, CVector z, const Step& step,
                       const Rayleigh& rayleigh) {
  IterationResult out;
  auto record = [&](int k, const Evaluation& e) {
    if (cfg.record_history) out.history.push_back({k, e.residual, e.lambda, e.mu});
  };

  Evaluation e = evaluate(p, z, rayleigh(z));
  record(0, e);
  Evaluation best = e;
  int best_at = 0;
  out.lambda = e.lambda;
  out.mu = e.mu;
  out.x = e.x;

  for (int k = 1; k <= cfg.max_iter; ++k) {
    z = step(z);
    const double nz = nrm2(z);
    if (!(nz > 0.0) || !std::isfinite(nz))
      fail(Errc::ConvergenceFailure, "ii_solve: iterate vanished or overflowed");
    scal(Cx(1.0 / nz), z);

    e = evaluate(p, z, rayleigh(z));
    record(k, e);
    out.iterations = k;
    out.lambda = e.lambda;
    out.mu = e.mu;
    out.x = e.x;
    if (e.residual < cfg.tol) {
      out.converged = true;
      out.stop = StopReason::Converged;
      return out;
    }
    if (e.residual < 0.9 * best.residual) {
      best = e;
      best_at = k;
    }
    if (k - best_at >= 10) {
      out.stop = StopReason::Stagnated;
      out.lambda = best.lambda;
      out.mu = best.mu;
      out.x = best.x;
      return out;
    }
  }
  out.stop = StopReason::MaxIterations;
  return out;
}

enum class Resolved { Dense, Sylvester };

Resolved resolve_path(const MepProblem& mep, const IiConfig& cfg) {
  if (cfg.path == IiPath::Sylvester) {
    if (mep.m() != 1)
      fail(Errc::InvalidArgument, "ii_solve: the Sylvester path needs exactly one nonlinearity");
    return Resolved::Sylvester;
  }
  if (cfg.path == IiPath::Auto && mep.m() == 1 && mep.n() > 8) return Resolved::Sylvester;
  return Resolved::Dense;
}

std::size_t kron_dim(const MepProblem& mep) {
  std::size_t nn = 1;
  for (int i = 0; i <= mep.m(); ++i) nn *= static_cast<std::size_t>(mep.n());
  return nn;
}

void check_inputs(const NepvProblem& p, const MepProblem& mep, const IiConfig& cfg) {
  if (p.n() != mep.n() || p.m() != mep.m())
    fail(Errc::DimensionMismatch, "ii_solve: problem and MEP sizes disagree");
  if (cfg.max_iter < 0) fail(Errc::InvalidArgument, "ii_solve: max_iter must be nonnegative");
  if (!(cfg.tol >= 0.0)) fail(Errc::InvalidArgument, "ii_solve: tol must be nonnegative");
}

CVector initial_z(const MepProblem& mep, const IiConfig& cfg) {
  CVector z;
  if (!cfg.z0.empty()) {
    if (cfg.z0.size() != kron_dim(mep))
      fail(Errc::DimensionMismatch, "ii_solve: z0 must have length n^(m+1)");
    z = cfg.z0;
  } else {
    if (cfg.x0.size() != static_cast<std::size_t>(mep.n()))
      fail(Errc::DimensionMismatch, "ii_solve: x0 must have length n");
    z = cfg.x0;
    for (int i = 0; i < mep.m(); ++i) z = kron_vec(cfg.x0, z);
  }
  const double nz = nrm2(z);
  if (!(nz > 0.0) || !std::isfinite(nz))
    fail(Errc::InvalidArgument, "ii_solve: starting vector is zero");
  scal(Cx(1.0 / nz), z);
  return z;
}

IterationResult ii_dense(const NepvProblem& p, const DeltaSystem& ds, const IiConfig& cfg,
                         CVector z0) {
  if (ds.Delta.empty() || ds.N != static_cast<int>(z0.size()))
    fail(Errc::DimensionMismatch, "ii_solve: Delta system does not match the problem");
  CMatrix shifted = ds.Delta[0];
  add_scaled(shifted, -cfg.sigma, ds.Delta0);
  const la::Lu lu = la::lu_factor(std::move(shifted), Errc::SingularShiftedPencil);

  const double scale = frob(ds.Delta0);
  auto rayleigh = [&](const CVector& z) {
    const Cx den = dotc(z, la::gemv('N', ds.Delta0, z));
    if (std::abs(den) <= tol::denom * scale) return kNanCx;
    return dotc(z, la::gemv('N', ds.Delta[0], z)) / den;
  };
  auto step = [&](const CVector& z) { return lu.solve('N', la::gemv('N', ds.Delta0, z)); };
  return run_ii(p, cfg, std::move(z0), step, rayleigh);
}

IterationResult ii_sylvester(const NepvProblem& p, const MepProblem& mep, const IiConfig& cfg,
                             CVector z0) {
  const int n = mep.n();
  const SylvesterOp op(mep, cfg.sigma, Errc::SingularShiftedPencil);

  // Upper bound on ||Delta0||_F through the Kronecker structure; only used to
  // scale the degeneracy guard.
  const double scale = frob(mep.V[0][1]) * frob(mep.V[1][2]) + frob(mep.V[0][2]) * frob(mep.V[0][1]);
  auto rayleigh = [&](const CVector& z) {
    const CMatrix zm = unvec(z, n, n);
    const Cx den = dotc(z, vec(delta0_apply(mep, zm)));
    if (std::abs(den) <= tol::denom * scale) return kNanCx;
    return dotc(z, vec(delta1_apply(mep, zm))) / den;
  };
  auto step = [&](const CVector& z) { return vec(op.solve(delta0_apply(mep, unvec(z, n, n)))); };
  return run_ii(p, cfg, std::move(z0), step, rayleigh);
}

}  // namespace

IterationResult ii_solve(const NepvProblem& p, const MepProblem& mep, const IiConfig& cfg) {
  check_inputs(p, mep, cfg);
  CVector z0 = initial_z(mep, cfg);
  if (resolve_path(mep, cfg) == Resolved::Sylvester)
    return ii_sylvester(p, mep, cfg, std::move(z0));
  DeltaOptions opts;
  opts.estimate_condition = false;  // the shifted factorization is the real check
  return ii_dense(p, build_deltas(mep, opts), cfg, std::move(z0));
}

IterationResult ii_solve(const NepvProblem& p, const MepProblem& mep, const DeltaSystem& ds,
                         const IiConfig& cfg) {
  check_inputs(p, mep, cfg);
  CVector z0 = initial_z(mep, cfg);
  if (resolve_path(mep, cfg) == Resolved::Sylvester)
    return ii_sylvester(p, mep, cfg, std::move(z0));
  return ii_dense(p, ds, cfg, std::move(z0));
}

CMatrix sylvester_step(const MepProblem& mep, Cx sigma, const CMatrix& zk) {
  if (mep.m() != 1)
    fail(Errc::InvalidArgument, "sylvester_step: needs exactly one nonlinearity");
  if (zk.rows != mep.n() || zk.cols != mep.n())
    fail(Errc::DimensionMismatch, "sylvester_step: Zk must be n x n");
  const SylvesterOp op(mep, sigma, Errc::SingularSylvesterOperator);
  return op.solve(delta0_apply(mep, zk));
}

IterationResult hybrid_solve(const NepvProblem& p, const MepProblem& mep, const IiConfig& cfg_ii,
                             int k_switch, const RiConfig& cfg_ris) {
  if (k_switch < 0) fail(Errc::InvalidArgument, "hybrid_solve: k_switch must be nonnegative");

  IiConfig stage = cfg_ii;
  stage.max_iter = k_switch;
  IterationResult first = ii_solve(p, mep, stage);
  if (first.converged) return first;

  // Zero steps leave an x0-based start untouched, so hand the raw vector over
  // instead of a factored copy of it.
  CVector x_hat = (k_switch == 0 && cfg_ii.z0.empty()) ? normalized(cfg_ii.x0) : first.x;

  RiConfig rcfg = cfg_ris;
  rcfg.sigma = first.lambda;
  rcfg.x0 = x_hat;
  rcfg.tau.resize(p.m());
  for (int i = 0; i < p.m(); ++i) rcfg.tau[i] = f_eval(p, i, x_hat);

  IterationResult out = ris_solve(mep, rcfg);

  std::vector<HistoryRow> history = std::move(first.history);
  out.switch_index = static_cast<int>(history.size());
  for (std::size_t i = 1; i < out.history.size(); ++i) {
    HistoryRow row = std::move(out.history[i]);
    row.iteration += k_switch;
    history.push_back(std::move(row));
  }
  out.history = std::move(history);
  out.iterations += k_switch;
  return out;
}

}  // namespace nepv
