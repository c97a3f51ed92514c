// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "nepv/lapack.hpp"
#include "nepv/problems.hpp"
#include "nepv/rng.hpp"

// Brute-force oracle. Two independent paths: a resultant for 2x2 problems
// (exact elimination down to one univariate polynomial) and a damped Newton
// multistart for anything tiny. Neither touches the linearization, so
// agreement with the dense pipeline is a real cross-check.

namespace nepv {

namespace {

// Polynomials as coefficient vectors, constant term first.
using Poly = std::vector<Cx>;

Poly pmul(const Poly& u, const Poly& v) {
  Poly w(u.size() + v.size() - 1, Cx(0.0));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) w[i + j] += u[i] * v[j];
  return w;
}

Cx peval(const Poly& u, Cx t) {
  Cx acc(0.0);
  for (std::size_t i = u.size(); i > 0; --i) acc = acc * t + u[i - 1];
  return acc;
}

std::vector<Cx> poly_roots(Poly c) {
  double mx = 0.0;
  for (const Cx& v : c) mx = std::max(mx, std::abs(v));
  if (mx == 0.0) return {};
  while (c.size() > 1 && std::abs(c.back()) <= 1e-12 * mx) c.pop_back();
  const int d = static_cast<int>(c.size()) - 1;
  if (d < 1) return {};
  CMatrix comp(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = Cx(1.0);
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
  return la::eigvals(comp);
}

void dedup_push(std::vector<OracleSolution>& out, OracleSolution s) {
  for (OracleSolution& t : out) {
    const bool same_lambda = std::abs(t.lambda - s.lambda) <= 1e-8 * std::max(1.0, std::abs(t.lambda));
    if (!same_lambda) continue;
    CVector d = t.x;
    axpy(Cx(-1.0), s.x, d);
    if (nrm2(d) <= 1e-7) {
      if (s.residual < t.residual) t = std::move(s);
      return;
    }
  }
  out.push_back(std::move(s));
}

void finish(OracleResult& res) {
  std::sort(res.solutions.begin(), res.solutions.end(),
            [](const OracleSolution& a, const OracleSolution& b) {
              const double ma = std::abs(a.lambda), mb = std::abs(b.lambda);
              if (ma != mb) return ma < mb;
              if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
              return a.lambda.imag() < b.lambda.imag();
            });
  res.complete = res.solutions.size() == res.expected;
}

// Mark components whose mu is unconstrained because C_i x vanishes.
void flag_mu(const NepvProblem& p, OracleSolution& s) {
  for (int i = 0; i < p.m(); ++i) {
    const double cx = nrm2(matvec(p.C[i], s.x));
    if (cx <= 1e-12 * std::max(1.0, frob(p.C[i]))) s.mu_identifiable = false;
  }
}

// Resultant path for n = 2. Parametrizing x = (1, t) makes every scalar in
// sight a polynomial in t: with denominators S_k(t) = s_k^T x and numerators
// R_k(t) = r_k^T x, row i of the NEPv times prod_k S_k reads
// P_i(t) + lambda Q_i(t) = 0. Eliminating lambda leaves the single
// polynomial D = P_0 Q_1 - P_1 Q_0 of degree 2(m+1); the m roots where some
// S_k vanishes are artifacts of clearing denominators.
OracleResult closed_form_n2(const NepvProblem& p) {
  const int m = p.m();
  OracleResult res;
  res.expected = count_solutions(2, m);
  res.used_closed_form = true;

  std::vector<Poly> S(m), R(m);
  for (int k = 0; k < m; ++k) {
    S[k] = {p.s[k][0], p.s[k][1]};
    R[k] = {p.r[k][0], p.r[k][1]};
  }
  Poly prod_s = {Cx(1.0)};
  for (int k = 0; k < m; ++k) prod_s = pmul(prod_s, S[k]);

  auto acc = [](Poly& dst, const Poly& add) {
    dst.resize(std::max(dst.size(), add.size()), Cx(0.0));
    for (std::size_t k = 0; k < add.size(); ++k) dst[k] += add[k];
  };

  Poly P[2], Q[2];
  for (int i = 0; i < 2; ++i) {
    const Poly ai = {p.A(i, 0), p.A(i, 1)};
    const Poly bi = {p.B(i, 0), p.B(i, 1)};
    P[i] = pmul(ai, prod_s);
    Q[i] = pmul(bi, prod_s);
    for (int k = 0; k < m; ++k) {
      Poly others = {Cx(1.0)};
      for (int j = 0; j < m; ++j)
        if (j != k) others = pmul(others, S[j]);
      const Poly ci = {p.C[k](i, 0), p.C[k](i, 1)};
      acc(P[i], pmul(pmul(R[k], ci), others));
    }
  }

  Poly disc = pmul(P[0], Q[1]);
  const Poly p1q0 = pmul(P[1], Q[0]);
  disc.resize(std::max(disc.size(), p1q0.size()), Cx(0.0));
  for (std::size_t k = 0; k < p1q0.size(); ++k) disc[k] -= p1q0[k];

  for (const Cx& t : poly_roots(disc)) {
    const CVector xr = {Cx(1.0), t};
    bool spurious = false;
    for (int k = 0; k < m; ++k)
      if (std::abs(peval(S[k], t)) <= tol::denom * nrm2(p.s[k]) * nrm2(xr)) spurious = true;
    if (spurious) continue;
    const Cx q0 = peval(Q[0], t), q1 = peval(Q[1], t);
    const int pick = (std::abs(q0) >= std::abs(q1)) ? 0 : 1;
    const Cx qv = pick == 0 ? q0 : q1;
    if (std::abs(qv) <= 1e-14 * (std::abs(q0) + std::abs(q1) + 1.0)) continue;  // lambda at infinity
    OracleSolution sol;
    sol.lambda = -peval(P[pick], t) / qv;
    sol.x = phase_canonical(normalized(xr));
    sol.mu.resize(m);
    for (int k = 0; k < m; ++k) sol.mu[k] = f_eval(p, k, sol.x);
    sol.residual = nepv_residual(p, sol.lambda, sol.x);
    if (sol.residual >= 1e-10) continue;
    flag_mu(p, sol);
    dedup_push(res.solutions, std::move(sol));
  }

  // The parametrization misses x = e_2; it is a solution when the two rows
  // are consistent for a single lambda, found here by least squares.
  bool e2_ok = true;
  for (int k = 0; k < m; ++k)
    if (std::abs(p.s[k][1]) <= tol::denom * nrm2(p.s[k])) e2_ok = false;
  if (e2_ok) {
    CVector mu(m);
    for (int k = 0; k < m; ++k) mu[k] = p.r[k][1] / p.s[k][1];
    Cx num(0.0), den(0.0);
    for (int i = 0; i < 2; ++i) {
      Cx ai = p.A(i, 1);
      for (int k = 0; k < m; ++k) ai += mu[k] * p.C[k](i, 1);
      const Cx bi = p.B(i, 1);
      num -= std::conj(bi) * ai;
      den += std::conj(bi) * bi;
    }
    if (std::abs(den) > 1e-14) {
      OracleSolution sol;
      sol.lambda = num / den;
      sol.x = {Cx(0.0), Cx(1.0)};
      sol.mu = std::move(mu);
      sol.residual = nepv_residual(p, sol.lambda, sol.x);
      if (sol.residual < 1e-10) {
        flag_mu(p, sol);
        dedup_push(res.solutions, std::move(sol));
      }
    }
  }

  finish(res);
  return res;
}

// One damped Newton run on F(x, lambda) = [(A + lambda B + sum f_i C_i)x;
// v^T x - 1]. The system is holomorphic, so a plain complex Newton step
// applies. Returns true on convergence of ||F|| to rounding level.
bool newton_run(const NepvProblem& p, const CVector& v, CVector& x, Cx& lambda, int max_iters) {
  const int n = p.n();
  const int m = p.m();
  double scale = frob(p.A) + frob(p.B);
  for (const CMatrix& c : p.C) scale += frob(c);
  scale = std::max(scale, 1.0);

  auto eval_f = [&](const CVector& xx, Cx ll, CVector& F) {
    CVector fx(m);
    for (int i = 0; i < m; ++i) fx[i] = f_eval(p, i, xx);
    CMatrix t = p.A;
    add_scaled(t, ll, p.B);
    for (int i = 0; i < m; ++i) add_scaled(t, fx[i], p.C[i]);
    const CVector tx = matvec(t, xx);
    F.assign(n + 1, Cx(0.0));
    for (int i = 0; i < n; ++i) F[i] = tx[i];
    F[n] = dotu(v, xx) - Cx(1.0);
    return fx;
  };

  CVector F;
  CVector fx = eval_f(x, lambda, F);
  double normF = nrm2(F);

  for (int iter = 0; iter < max_iters; ++iter) {
    if (normF <= 1e-14 * scale) return true;

    CMatrix jac(n + 1, n + 1);
    CMatrix t = p.A;
    add_scaled(t, lambda, p.B);
    for (int i = 0; i < m; ++i) add_scaled(t, fx[i], p.C[i]);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) jac(i, j) = t(i, j);
    for (int i = 0; i < m; ++i) {
      // d f_i / dx = (r_i s_i^T x - s_i r_i^T x) / (s_i^T x)^2
      const Cx sx = dotu(p.s[i], x);
      const Cx rx = dotu(p.r[i], x);
      CVector grad = scaled(sx, p.r[i]);
      axpy(-rx, p.s[i], grad);
      scal(Cx(1.0) / (sx * sx), grad);
      const CVector cx = matvec(p.C[i], x);
      for (int j = 0; j < n; ++j)
        for (int i2 = 0; i2 < n; ++i2) jac(i2, j) += cx[i2] * grad[j];
    }
    const CVector bx = matvec(p.B, x);
    for (int i = 0; i < n; ++i) jac(i, n) = bx[i];
    for (int j = 0; j < n; ++j) jac(n, j) = v[j];

    CVector rhs(n + 1);
    for (int i = 0; i <= n; ++i) rhs[i] = -F[i];
    const CVector step = solve_small(std::move(jac), std::move(rhs));

    double alpha = 1.0;
    bool accepted = false;
    for (int half = 0; half < 25; ++half) {
      CVector xn = x;
      for (int i = 0; i < n; ++i) xn[i] += alpha * step[i];
      const Cx ln = lambda + alpha * step[n];
      try {
        CVector Fn;
        CVector fn = eval_f(xn, ln, Fn);
        const double nf = nrm2(Fn);
        if (nf < normF * (1.0 - 1e-4 * alpha) || nf <= 1e-14 * scale) {
          x = std::move(xn);
          lambda = ln;
          fx = std::move(fn);
          F = std::move(Fn);
          normF = nf;
          accepted = true;
          break;
        }
      } catch (const Error&) {
        // stepped onto a vanishing denominator; shorten
      }
      alpha *= 0.5;
    }
    if (!accepted) return false;
  }
  return normF <= 1e-13 * scale;
}

OracleResult multistart(const NepvProblem& p, const OracleOptions& opts) {
  const int n = p.n();
  const int m = p.m();
  OracleResult res;
  res.expected = count_solutions(n, m);

  const std::size_t nstarts =
      static_cast<std::size_t>(opts.starts_per_solution) * static_cast<std::size_t>(res.expected);
  std::vector<OracleSolution> hits(nstarts);
  std::vector<char> found(nstarts, 0);

#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t k = 0; k < nstarts; ++k) {
    try {
      Rng rng(opts.seed, "start" + std::to_string(k));
      CVector x = rng.complex_normal_vector(n);
      CVector v = rng.complex_normal_vector(n);
      // Cycle the shift scale over decades: eigenvalues of modest problems
      // can still be huge (near-singular B directions), and Newton only
      // reaches them from starts of comparable size.
      static constexpr double scales[] = {0.5, 1.0, 5.0, 25.0, 125.0, 625.0};
      Cx lambda = rng.normal_complex() * scales[k % 6];
      if (!newton_run(p, v, x, lambda, opts.max_newton_iters)) continue;

      OracleSolution sol;
      sol.x = phase_canonical(normalized(x));
      sol.lambda = lambda;
      sol.mu.resize(m);
      for (int i = 0; i < m; ++i) sol.mu[i] = f_eval(p, i, sol.x);
      sol.residual = nepv_residual(p, sol.lambda, sol.x);
      if (sol.residual >= 1e-12) continue;
      flag_mu(p, sol);
      hits[k] = std::move(sol);
      found[k] = 1;
    } catch (const Error&) {
      // denominator breakdown or singular Newton system; the start is lost
    }
  }

  // Merge in start order so the result is independent of thread count.
  for (std::size_t k = 0; k < nstarts; ++k)
    if (found[k]) dedup_push(res.solutions, std::move(hits[k]));

  finish(res);
  return res;
}

}  // namespace

OracleResult brute_force_solve(const NepvProblem& p, const OracleOptions& opts) {
  p.validate();
  if (p.n() == 2 && !opts.force_multistart) return closed_form_n2(p);
  if (p.n() * (p.m() + 1) <= 12) return multistart(p, opts);
  fail(Errc::InvalidArgument, "brute_force_solve: instance too large for the oracle");
}

}  // namespace nepv
