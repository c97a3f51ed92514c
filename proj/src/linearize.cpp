// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#include "nepv/linearize.hpp"

#include <string>

#include "nepv/rng.hpp"

namespace nepv {

const char* g_failure_name(GFailure f) {
  switch (f) {
    case GFailure::None: return "none";
    case GFailure::ZeroVector: return "zero_vector";
    case GFailure::PairwiseDependent: return "pairwise_dependent";
  }
  return "unknown";
}

namespace {

// Quality check on the vectors alone; shape checks live in validate_g.
GReport check_g_vectors(const std::vector<CVector>& g) {
  GReport rep;
  const int m = static_cast<int>(g.size());
  for (int i = 0; i < m; ++i) {
    if (nrm2(g[i]) == 0.0) {
      rep.pass = false;
      rep.reason = GFailure::ZeroVector;
      rep.index_a = i;
      return rep;
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double s = sin_angle(g[i], g[j]);
      if (s < rep.min_sin_angle) rep.min_sin_angle = s;
      if (s <= tol::g_angle) {
        rep.pass = false;
        rep.reason = GFailure::PairwiseDependent;
        rep.index_a = i;
        rep.index_b = j;
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace

GReport validate_g(const NepvProblem& p, const std::vector<CVector>& g) {
  if (static_cast<int>(g.size()) != p.m())
    fail(Errc::DimensionMismatch, "validate_g: expected " + std::to_string(p.m()) +
                                      " vectors, got " + std::to_string(g.size()));
  for (const CVector& gi : g)
    if (static_cast<int>(gi.size()) != p.n())
      fail(Errc::DimensionMismatch, "validate_g: g vector length does not match n");
  return check_g_vectors(g);
}

MepProblem build_mep(const NepvProblem& p, const std::vector<CVector>& g) {
  p.validate();
  const GReport rep = validate_g(p, g);
  if (!rep.pass) {
    std::string what = std::string("build_mep: g rejected (") + g_failure_name(rep.reason) + ")";
    if (rep.index_a >= 0) what += ", g" + std::to_string(rep.index_a + 1);
    if (rep.index_b >= 0) what += " vs g" + std::to_string(rep.index_b + 1);
    fail(Errc::InvalidG, what);
  }

  const int n = p.n();
  const int m = p.m();
  MepProblem mep;
  mep.src = p;
  mep.g = g;
  mep.V.assign(m + 1, std::vector<CMatrix>(m + 2));

  // Row 0: the original pencil with f_i replaced by mu_i.
  mep.V[0][0] = CMatrix(n, n);
  add_scaled(mep.V[0][0], Cx(-1.0), p.A);
  mep.V[0][1] = p.B;
  for (int j = 0; j < m; ++j) mep.V[0][2 + j] = p.C[j];

  // Row i+1: rank-one corrections by g_i tie mu_i to f_i.
  for (int i = 0; i < m; ++i) {
    CMatrix lhs(n, n);
    add_scaled(lhs, Cx(-1.0), p.A);
    outer_acc(lhs, Cx(-1.0), g[i], p.r[i]);  // -(A + g_i r_i^T)
    mep.V[i + 1][0] = std::move(lhs);
    mep.V[i + 1][1] = p.B;
    for (int j = 0; j < m; ++j) {
      CMatrix coeff = p.C[j];
      if (j == i) outer_acc(coeff, Cx(-1.0), g[i], p.s[i]);  // C_i - g_i s_i^T
      mep.V[i + 1][2 + j] = std::move(coeff);
    }
  }
  return mep;
}

std::vector<CVector> random_g(int n, int m, std::uint64_t seed) {
  if (n <= 0 || m <= 0) fail(Errc::InvalidArgument, "random_g: n and m must be positive");
  std::vector<Rng> streams;
  streams.reserve(m);
  for (int i = 0; i < m; ++i) streams.emplace_back(seed, "g" + std::to_string(i + 1));

  std::vector<CVector> g(m);
  auto draw = [&](int i) {
    g[i].assign(n, Cx(0.0));
    for (int k = 0; k < n; ++k) g[i][k] = Cx(streams[i].normal(), 0.0);
  };
  for (int i = 0; i < m; ++i) draw(i);

  // Standard-normal draws fail validation with probability zero; redraw the
  // offending vector from its own stream so the good ones stay put.
  for (int guard = 0; guard < 64; ++guard) {
    const GReport rep = check_g_vectors(g);
    if (rep.pass) return g;
    draw(rep.reason == GFailure::PairwiseDependent ? rep.index_b : rep.index_a);
  }
  fail(Errc::InvalidArgument, "random_g: could not draw valid vectors");
}

CMatrix mep_row_matrix(const MepProblem& mep, int i, Cx lambda, const CVector& mu) {
  if (i < 0 || i >= mep.rows()) fail(Errc::InvalidArgument, "mep_row_matrix: row out of range");
  if (static_cast<int>(mu.size()) != mep.m())
    fail(Errc::DimensionMismatch, "mep_row_matrix: mu length does not match m");
  CMatrix t(mep.n(), mep.n());
  add_scaled(t, lambda, mep.V[i][1]);
  for (int j = 0; j < mep.m(); ++j) add_scaled(t, mu[j], mep.V[i][2 + j]);
  add_scaled(t, Cx(-1.0), mep.V[i][0]);
  return t;
}

double mep_row_residual(const MepProblem& mep, int i, Cx lambda, const CVector& mu,
                        const CVector& x) {
  const double nx = nrm2(x);
  if (nx == 0.0) fail(Errc::InvalidArgument, "mep_row_residual: zero vector");
  const CMatrix t = mep_row_matrix(mep, i, lambda, mu);
  return nrm2(matvec(t, x)) / nx;
}

double mep_residual(const MepProblem& mep, Cx lambda, const CVector& mu, const CVector& x) {
  double worst = 0.0;
  for (int i = 0; i < mep.rows(); ++i)
    worst = std::max(worst, mep_row_residual(mep, i, lambda, mu, x));
  return worst;
}

}  // namespace nepv
