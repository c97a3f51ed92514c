// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#include "nepv/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "nepv/kernels.hpp"
#include "nepv/lapack.hpp"

namespace nepv {

namespace {

bool lambda_before(Cx a, Cx b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma < mb;
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

CVector matrix_column(const CMatrix& x, int j) {
  CVector out(x.rows);
  for (int i = 0; i < x.rows; ++i) out[i] = x(i, j);
  return out;
}

int class_rank(SolutionClass c) {
  switch (c) {
    case SolutionClass::True: return 0;
    case SolutionClass::Spurious: return 1;
    case SolutionClass::NonSymmetric: return 2;
    case SolutionClass::Unknown: return 3;
  }
  return 3;
}

}  // namespace

std::vector<GepEigenpair> solve_gep(const CMatrix& delta1, const CMatrix& delta0, bool want_left) {
  if (delta1.rows != delta1.cols || !same_shape(delta1, delta0))
    fail(Errc::DimensionMismatch, "solve_gep: pencils must be square with equal shape");
  const int N = delta1.rows;
  if (N == 0) return {};

  la::Eigs e = la::ggev(delta1, delta0, want_left, true);

  // zggev scales eigenvector columns by their largest component; rescale to
  // the unit 2-norm contract before deriving anything from them.
  for (int k = 0; k < N; ++k) {
    double s = 0.0;
    for (int i = 0; i < N; ++i) s += std::norm(e.vr(i, k));
    s = std::sqrt(s);
    if (s > 0.0)
      for (int i = 0; i < N; ++i) e.vr(i, k) /= s;
  }

  const double f1 = frob(delta1), f0 = frob(delta0);
  // Residual columns for all pairs at once: two gemms instead of 2N matvecs.
  const CMatrix r1 = la::matmul(delta1, e.vr);
  const CMatrix r0 = la::matmul(delta0, e.vr);

  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<GepEigenpair> out(N);
  for (int k = 0; k < N; ++k) {
    const Cx al = e.alpha[k], be = e.beta[k];
    const double sa = std::abs(al), sb = std::abs(be);
    if (sa <= 100.0 * eps * std::max(f1, 1.0) && sb <= 100.0 * eps * std::max(f0, 1.0))
      fail(Errc::SingularPencil, "solve_gep: indeterminate eigenvalue (alpha and beta negligible)");
    GepEigenpair& p = out[k];
    p.finite = sb > eps * (sa + sb);
    double rr = 0.0;
    if (p.finite) {
      p.lambda = al / be;
      for (int i = 0; i < N; ++i) rr += std::norm(r1(i, k) - p.lambda * r0(i, k));
      p.backward_error = std::sqrt(rr) / (f1 + std::abs(p.lambda) * f0);
    } else {
      p.lambda = Cx(std::numeric_limits<double>::infinity(), 0.0);
      for (int i = 0; i < N; ++i) rr += std::norm(be * r1(i, k) - al * r0(i, k));
      p.backward_error = std::sqrt(rr) / (sb * f1 + sa * f0);
    }
    p.z = phase_canonical(matrix_column(e.vr, k));
    if (want_left) p.left_w = phase_canonical(normalized(matrix_column(e.vl, k)));
  }

  std::sort(out.begin(), out.end(), [](const GepEigenpair& a, const GepEigenpair& b) {
    return lambda_before(a.lambda, b.lambda);
  });
  return out;
}

Cx mu_from_rayleigh(const CVector& z, const CMatrix& delta_i, const CMatrix& delta0) {
  if (delta_i.rows != delta_i.cols || !same_shape(delta_i, delta0))
    fail(Errc::DimensionMismatch, "mu_from_rayleigh: matrices must be square with equal shape");
  if (static_cast<int>(z.size()) != delta0.rows)
    fail(Errc::DimensionMismatch, "mu_from_rayleigh: vector length does not match the matrices");
  const Cx den = dotc(z, matvec(delta0, z));
  const double zz = dotc(z, z).real();
  if (std::abs(den) <= tol::denom * frob(delta0) * zz)
    fail(Errc::DegenerateRayleigh, "mu_from_rayleigh: |z^H Delta0 z| below the threshold");
  return dotc(z, matvec(delta_i, z)) / den;
}

RankOneFactorization factor_rank_one(const CVector& z, int n, int m) {
  if (n < 1 || m < 0) fail(Errc::InvalidArgument, "factor_rank_one: need n >= 1 and m >= 0");
  std::size_t need = 1;
  for (int i = 0; i <= m; ++i) {
    if (need > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(n))
      fail(Errc::Overflow, "factor_rank_one: n^(m+1) overflows");
    need *= static_cast<std::size_t>(n);
  }
  if (z.size() != need) fail(Errc::DimensionMismatch, "factor_rank_one: expected length n^(m+1)");
  const double zn = nrm2(z);
  if (zn == 0.0) fail(Errc::InvalidArgument, "factor_rank_one: zero vector");

  RankOneFactorization out;
  out.factors.reserve(static_cast<std::size_t>(m) + 1);
  CVector work = z;
  while (work.size() > static_cast<std::size_t>(n)) {
    const int tail = static_cast<int>(work.size() / static_cast<std::size_t>(n));
    const la::Svd svd = la::svd_econ(unvec(work, tail, n));
    // The factor for this mode is the conjugated dominant right singular
    // vector; its conjugate is exactly the first row of vt.
    CVector x(n);
    for (int j = 0; j < n; ++j) x[j] = svd.vt(0, j);
    out.factors.push_back(phase_canonical(normalized(x)));
    CVector next(tail);
    for (int i = 0; i < tail; ++i) next[i] = svd.u(i, 0);
    work = std::move(next);
  }
  out.factors.push_back(phase_canonical(normalized(work)));

  CVector chain = out.factors[0];
  for (std::size_t i = 1; i < out.factors.size(); ++i)
    chain = kernels::kron_vec(chain, out.factors[i]);
  out.alpha = dotc(chain, z);
  CVector resid = z;
  axpy(-out.alpha, chain, resid);
  out.fit = nrm2(resid) / zn;
  for (std::size_t i = 1; i < out.factors.size(); ++i)
    out.symmetry_defect = std::max(out.symmetry_defect, sin_angle(out.factors[i], out.factors[0]));
  out.symmetric = out.symmetry_defect < tol::sym && out.fit < tol::fit;
  return out;
}

std::vector<SolutionRecord> extract_nepv_solutions(const NepvProblem& p, const MepProblem& mep,
                                                   const DeltaSystem& ds,
                                                   const ExtractOptions& opts) {
  p.validate();
  const int n = p.n(), m = p.m();
  if (mep.n() != n || mep.m() != m)
    fail(Errc::DimensionMismatch, "extract_nepv_solutions: MEP does not match the problem");
  if (static_cast<int>(ds.Delta.size()) != m + 1)
    fail(Errc::DimensionMismatch, "extract_nepv_solutions: Delta system does not match the problem");
  if (ds.nonsingular == TriState::No)
    fail(Errc::SingularDelta0, "extract_nepv_solutions: Delta0 is singular");

  const std::vector<GepEigenpair> pairs = solve_gep(ds.Delta[0], ds.Delta0, opts.diagnose);
  const int np = static_cast<int>(pairs.size());
  if (np == 0) return {};

  // Rayleigh quotients for all eigenvectors in one pass: with the vectors as
  // columns of Z, each z^H Delta z is a gemm plus a column dot product.
  CMatrix Z(ds.N, np);
  for (int k = 0; k < np; ++k)
    for (int i = 0; i < ds.N; ++i) Z(i, k) = pairs[k].z[i];
  std::vector<Cx> den(np);
  {
    const CMatrix w = la::matmul(ds.Delta0, Z);
    for (int k = 0; k < np; ++k) {
      Cx acc = 0.0;
      for (int i = 0; i < ds.N; ++i) acc += std::conj(Z(i, k)) * w(i, k);
      den[k] = acc;
    }
  }
  const double dfrob0 = frob(ds.Delta0);
  const Cx nan_mu(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());
  std::vector<std::vector<Cx>> ray(m, std::vector<Cx>(np));
  for (int i = 0; i < m; ++i) {
    const CMatrix w = la::matmul(ds.Delta[1 + i], Z);
    for (int k = 0; k < np; ++k) {
      Cx acc = 0.0;
      for (int ii = 0; ii < ds.N; ++ii) acc += std::conj(Z(ii, k)) * w(ii, k);
      // The eigenvectors are unit, so this guard matches mu_from_rayleigh.
      ray[i][k] = std::abs(den[k]) <= tol::denom * dfrob0 ? nan_mu : acc / den[k];
    }
  }

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<SolutionRecord> recs(np);
  std::vector<char> keep(np, 1);

#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < np; ++k) {
    if (!pairs[k].finite) {
      keep[k] = 0;
      continue;
    }
    const RankOneFactorization f = factor_rank_one(pairs[k].z, n, m);
    SolutionRecord& rec = recs[k];
    rec.lambda = pairs[k].lambda;
    rec.x = f.factors[0];
    rec.fit = f.fit;
    rec.symmetry_defect = f.symmetry_defect;
    rec.backward_error = pairs[k].backward_error;
    rec.mu.resize(m);

    const bool sym = f.symmetry_defect < opts.tol_sym && f.fit < opts.tol_fit;
    bool s_ok = true;
    std::vector<Cx> fx(m);
    for (int i = 0; i < m; ++i) {
      try {
        fx[i] = f_eval(p, i, rec.x);
      } catch (const Error&) {
        // Shapes were validated, so only the vanishing denominator lands here.
        s_ok = false;
        break;
      }
    }
    rec.residual = s_ok ? nepv_residual(p, rec.lambda, rec.x) : inf;
    if (sym && s_ok && rec.residual < opts.tol_accept) {
      rec.cls = SolutionClass::True;
      rec.mu = fx;
    } else {
      rec.cls = sym ? SolutionClass::Spurious : SolutionClass::NonSymmetric;
      for (int i = 0; i < m; ++i) rec.mu[i] = ray[i][k];
    }
    if (opts.diagnose && rec.cls != SolutionClass::True)
      rec.diagnostics = diagnose_spurious(mep, pairs[k]);
  }

  // A non-decomposable eigenvector at a clustered eigenvalue means the QZ run
  // returned an arbitrary basis of a multidimensional eigenspace, so
  // non-symmetry cannot be asserted for it.
  for (int a = 0; a < np; ++a) {
    if (!keep[a] || recs[a].cls != SolutionClass::NonSymmetric || recs[a].fit <= opts.tol_fit)
      continue;
    for (int b = 0; b < np; ++b) {
      if (b == a || !keep[b]) continue;
      if (std::abs(recs[a].lambda - recs[b].lambda) <=
          1e-6 * std::max(1.0, std::abs(recs[a].lambda))) {
        recs[a].cls = SolutionClass::Unknown;
        break;
      }
    }
  }

  std::vector<SolutionRecord> live;
  live.reserve(static_cast<std::size_t>(np));
  for (int k = 0; k < np; ++k)
    if (keep[k]) live.push_back(std::move(recs[k]));

  // Sort so that duplicates are resolved toward the better classification and
  // the smaller backward error; the leading keys give the output order.
  std::sort(live.begin(), live.end(), [](const SolutionRecord& a, const SolutionRecord& b) {
    const double ma = std::abs(a.lambda), mb = std::abs(b.lambda);
    if (ma != mb) return ma < mb;
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
    if (a.lambda.imag() != b.lambda.imag()) return a.lambda.imag() < b.lambda.imag();
    if (class_rank(a.cls) != class_rank(b.cls)) return class_rank(a.cls) < class_rank(b.cls);
    return a.backward_error < b.backward_error;
  });

  std::vector<SolutionRecord> out;
  out.reserve(live.size());
  for (SolutionRecord& rec : live) {
    bool dup = false;
    for (const SolutionRecord& kept : out) {
      const double scale = std::max({1.0, std::abs(rec.lambda), std::abs(kept.lambda)});
      if (std::abs(rec.lambda - kept.lambda) > opts.dedup * scale) continue;
      CVector diff = rec.x;
      axpy(Cx(-1.0), kept.x, diff);
      if (nrm2(diff) <= opts.dedup) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(rec));
  }
  return out;
}

SpuriousDiagnosis diagnose_spurious(const MepProblem& mep, const GepEigenpair& pair) {
  if (pair.left_w.empty())
    fail(Errc::InvalidArgument, "diagnose_spurious: pair carries no left eigenvector");
  const int n = mep.n(), m = mep.m();

  // The factor structure lives on the bilinear (transposed) left null vector
  // of the pencil, which is the conjugate of the zggev left eigenvector.
  CVector wt(pair.left_w.size());
  for (std::size_t i = 0; i < wt.size(); ++i) wt[i] = std::conj(pair.left_w[i]);
  const RankOneFactorization left = factor_rank_one(wt, n, m);
  const RankOneFactorization right = factor_rank_one(pair.z, n, m);

  SpuriousDiagnosis d;
  d.left_factors = left.factors;
  d.left_fit = left.fit;
  d.g_dot_y.resize(m);
  d.s_dot_x.resize(m);
  d.g_orthogonal.assign(m, false);
  d.s_filtered.assign(m, false);
  for (int j = 0; j < m; ++j) {
    const CVector& y = left.factors[j + 1];
    d.g_dot_y[j] = dotu(mep.g[j], y) / (nrm2(mep.g[j]) * nrm2(y));
    d.s_dot_x[j] =
        dotu(mep.src.s[j], right.factors[0]) / (nrm2(mep.src.s[j]) * nrm2(right.factors[0]));
    d.g_orthogonal[j] = std::abs(d.g_dot_y[j]) <= tol::g_angle;
    d.s_filtered[j] = std::abs(d.s_dot_x[j]) <= tol::denom;
  }
  return d;
}

}  // namespace nepv
