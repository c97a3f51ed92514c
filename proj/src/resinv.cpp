// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#include "nepv/resinv.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

#include "nepv/lapack.hpp"

namespace nepv {

namespace {

// nepv_residual with the denominator failure mapped to +inf: an iterate may
// wander across the hyperplane s_i^T x = 0 and recover on the next step.
double residual_or_inf(const NepvProblem& p, Cx lambda, const CVector& x) {
  try {
    return nepv_residual(p, lambda, x);
  } catch (const Error& e) {
    if (e.code() == Errc::DenominatorNearZero) return std::numeric_limits<double>::infinity();
    throw;
  }
}

CVector default_v(const CVector& x0) {
  const double h = std::real(dotc(x0, x0));
  if (h == 0.0) fail(Errc::InvalidArgument, "starting vector is zero");
  CVector v(x0.size());
  for (std::size_t k = 0; k < x0.size(); ++k) v[k] = std::conj(x0[k]) / h;
  return v;
}

// x <- x / (v^T x). The error flavor distinguishes a bad start from an
// iterate that collapsed onto the null space of the functional mid-run.
void rescale(const CVector& v, CVector& x, Errc on_zero) {
  const Cx d = dotu(v, x);
  if (std::abs(d) <= tol::denom * nrm2(v) * nrm2(x))
    fail(on_zero, "normalization functional annihilates the vector");
  scal(Cx(1.0) / d, x);
}

// Everything a run computes once: the factored shifted row operators, the
// adjoint solves psi_i = T_i(sigma,tau)^{-T} v_i, and the constant vectors
// dpsi[i][phi] = (dT_i/dphi)^T psi_i whose products with the current iterate
// form the update system. dT_i/dlambda is V[i][1] and dT_i/dmu_j is
// V[i][2+j], so V[i][1+phi] enumerates them for phi = 0..m.
struct Setup {
  std::vector<la::Lu> lu;
  std::vector<CVector> psi;
  std::vector<std::vector<CVector>> dpsi;
};

Setup build_setup(const MepProblem& mep, Cx sigma, const CVector& tau,
                  const std::vector<CVector>& v_rows) {
  const int m = mep.m();
  Setup s;
  s.lu.reserve(m + 1);
  s.psi.reserve(m + 1);
  s.dpsi.resize(m + 1);
  for (int i = 0; i <= m; ++i) {
    s.lu.push_back(la::lu_factor(mep_row_matrix(mep, i, sigma, tau), Errc::SingularShiftedMatrix));
    s.psi.push_back(s.lu[i].solve('T', v_rows[i]));
    s.dpsi[i].reserve(m + 1);
    for (int phi = 0; phi <= m; ++phi) s.dpsi[i].push_back(matvec_t(mep.V[i][1 + phi], s.psi[i]));
  }
  return s;
}

// T_i(lambda, mu) x assembled from precomputed products ax = A x, bx = B x,
// cx[j] = C_j x. Rows past the first add their rank-one coupling term
// g_{i-1} (r_{i-1}^T x - mu_{i-1} s_{i-1}^T x) in O(n).
CVector row_product(const MepProblem& mep, int i, Cx lambda, const CVector& mu, const CVector& x,
                    const CVector& ax, const CVector& bx, const std::vector<CVector>& cx) {
  CVector w = ax;
  axpy(lambda, bx, w);
  for (std::size_t j = 0; j < mu.size(); ++j) axpy(mu[j], cx[j], w);
  if (i > 0) {
    const NepvProblem& p = mep.src;
    const Cx c = dotu(p.r[i - 1], x) - mu[i - 1] * dotu(p.s[i - 1], x);
    axpy(c, mep.g[i - 1], w);
  }
  return w;
}

// Solve the (m+1) x (m+1) system sys * delta = -gamma for the eigenvalue
// updates. A near-singular system means the shift cannot separate the
// parameters (bad sigma/tau or a non-simple target), so fail loudly instead
// of producing a wild step.
CVector update_deltas(const CMatrix& sys, const CVector& gamma) {
  const la::Svd svd = la::svd_econ(sys);
  if (!(svd.s.back() > 0.0) || svd.s.front() > tol::update_cond * svd.s.back())
    fail(Errc::SingularUpdateSystem, "eigenvalue update system is numerically singular");
  CVector rhs(gamma.size());
  for (std::size_t k = 0; k < gamma.size(); ++k) rhs[k] = -gamma[k];
  return solve_small(sys, std::move(rhs));
}

CVector resolve_tau(const NepvProblem& p, const CVector& given, const CVector& x0) {
  if (!given.empty()) {
    if (static_cast<int>(given.size()) != p.m())
      fail(Errc::DimensionMismatch, "tau must have one entry per nonlinear term");
    return given;
  }
  CVector tau(p.m());
  for (int i = 0; i < p.m(); ++i) tau[i] = f_eval(p, i, x0);
  return tau;
}

}  // namespace

IterationResult ris_solve(const MepProblem& mep, const RiConfig& cfg) {
  const NepvProblem& p = mep.src;
  const int n = mep.n();
  const int m = mep.m();
  if (static_cast<int>(cfg.x0.size()) != n)
    fail(Errc::DimensionMismatch, "ris_solve: x0 must have length n");
  if (!cfg.v.empty() && static_cast<int>(cfg.v.size()) != n)
    fail(Errc::DimensionMismatch, "ris_solve: v must have length n");
  if (!cfg.x0_rows.empty() || !cfg.v_rows.empty())
    fail(Errc::InvalidArgument, "ris_solve: per-row starts belong to ri_solve");
  if (cfg.max_iter < 0) fail(Errc::InvalidArgument, "ris_solve: negative max_iter");

  const CVector v = cfg.v.empty() ? default_v(cfg.x0) : cfg.v;
  const CVector tau = resolve_tau(p, cfg.tau, cfg.x0);
  CVector x = cfg.x0;
  rescale(v, x, Errc::InvalidArgument);

  const Setup s = build_setup(mep, cfg.sigma, tau, std::vector<CVector>(m + 1, v));

  IterationResult out;
  out.lambda = cfg.sigma;
  out.mu = tau;
  for (int k = 0;; ++k) {
    const double res = residual_or_inf(p, out.lambda, x);
    if (cfg.record_history) out.history.push_back({k, res, out.lambda, out.mu});
    if (res < cfg.tol) {
      out.converged = true;
      out.stop = StopReason::Converged;
      out.iterations = k;
      break;
    }
    if (k == cfg.max_iter) {
      out.iterations = k;
      break;
    }

    // The m+2 products below are shared by every row residual and by the
    // final vector update; the rest of the iteration is O(n) per row.
    const CVector ax = matvec(p.A, x);
    const CVector bx = matvec(p.B, x);
    std::vector<CVector> cx(m);
    for (int j = 0; j < m; ++j) cx[j] = matvec(p.C[j], x);

    CMatrix sys(m + 1, m + 1);
    CVector gamma(m + 1);
    for (int i = 0; i <= m; ++i) {
      gamma[i] = dotu(s.psi[i], row_product(mep, i, out.lambda, out.mu, x, ax, bx, cx));
      for (int phi = 0; phi <= m; ++phi) sys(i, phi) = dotu(s.dpsi[i][phi], x);
    }
    const CVector delta = update_deltas(sys, gamma);
    out.lambda += delta[0];
    for (int j = 0; j < m; ++j) out.mu[j] += delta[1 + j];

    // Single back-substitution per iteration: only the row-0 operator
    // corrects the vector.
    const CVector corr =
        s.lu[0].solve('N', row_product(mep, 0, out.lambda, out.mu, x, ax, bx, cx));
    axpy(Cx(-1.0), corr, x);
    rescale(v, x, Errc::ConvergenceFailure);
  }
  out.x = std::move(x);
  return out;
}

IterationResult ri_solve(const MepProblem& mep, const RiConfig& cfg) {
  const NepvProblem& p = mep.src;
  const int n = mep.n();
  const int m = mep.m();
  if (cfg.max_iter < 0) fail(Errc::InvalidArgument, "ri_solve: negative max_iter");

  std::vector<CVector> xs;
  if (!cfg.x0_rows.empty()) {
    if (static_cast<int>(cfg.x0_rows.size()) != m + 1)
      fail(Errc::DimensionMismatch, "ri_solve: x0_rows needs one vector per MEP row");
    xs = cfg.x0_rows;
  } else {
    if (static_cast<int>(cfg.x0.size()) != n)
      fail(Errc::DimensionMismatch, "ri_solve: x0 must have length n");
    xs.assign(m + 1, cfg.x0);
  }
  for (const CVector& xi : xs)
    if (static_cast<int>(xi.size()) != n)
      fail(Errc::DimensionMismatch, "ri_solve: every row start must have length n");

  std::vector<CVector> vs;
  if (!cfg.v_rows.empty()) {
    if (static_cast<int>(cfg.v_rows.size()) != m + 1)
      fail(Errc::DimensionMismatch, "ri_solve: v_rows needs one vector per MEP row");
    vs = cfg.v_rows;
    for (const CVector& vi : vs)
      if (static_cast<int>(vi.size()) != n)
        fail(Errc::DimensionMismatch, "ri_solve: every row functional must have length n");
  } else if (!cfg.v.empty()) {
    if (static_cast<int>(cfg.v.size()) != n)
      fail(Errc::DimensionMismatch, "ri_solve: v must have length n");
    vs.assign(m + 1, cfg.v);
  } else {
    vs.reserve(m + 1);
    for (const CVector& xi : xs) vs.push_back(default_v(xi));
  }

  const CVector tau = resolve_tau(p, cfg.tau, xs[0]);
  for (int i = 0; i <= m; ++i) rescale(vs[i], xs[i], Errc::InvalidArgument);

  const Setup s = build_setup(mep, cfg.sigma, tau, vs);

  IterationResult out;
  out.lambda = cfg.sigma;
  out.mu = tau;
  std::vector<CVector> axs(m + 1), bxs(m + 1);
  std::vector<std::vector<CVector>> cxs(m + 1);
  for (int k = 0;; ++k) {
    const double res = residual_or_inf(p, out.lambda, xs[0]);
    if (cfg.record_history) out.history.push_back({k, res, out.lambda, out.mu});
    if (res < cfg.tol) {
      out.converged = true;
      out.stop = StopReason::Converged;
      out.iterations = k;
      break;
    }
    if (k == cfg.max_iter) {
      out.iterations = k;
      break;
    }

    CMatrix sys(m + 1, m + 1);
    CVector gamma(m + 1);
    for (int i = 0; i <= m; ++i) {
      axs[i] = matvec(p.A, xs[i]);
      bxs[i] = matvec(p.B, xs[i]);
      cxs[i].resize(m);
      for (int j = 0; j < m; ++j) cxs[i][j] = matvec(p.C[j], xs[i]);
      gamma[i] =
          dotu(s.psi[i], row_product(mep, i, out.lambda, out.mu, xs[i], axs[i], bxs[i], cxs[i]));
      for (int phi = 0; phi <= m; ++phi) sys(i, phi) = dotu(s.dpsi[i][phi], xs[i]);
    }
    const CVector delta = update_deltas(sys, gamma);
    out.lambda += delta[0];
    for (int j = 0; j < m; ++j) out.mu[j] += delta[1 + j];

    // Every row corrects its own vector against its own operator.
    for (int i = 0; i <= m; ++i) {
      const CVector corr = s.lu[i].solve(
          'N', row_product(mep, i, out.lambda, out.mu, xs[i], axs[i], bxs[i], cxs[i]));
      axpy(Cx(-1.0), corr, xs[i]);
      rescale(vs[i], xs[i], Errc::ConvergenceFailure);
    }
  }
  out.x = xs[0];
  out.x_rows = std::move(xs);
  return out;
}

}  // namespace nepv
