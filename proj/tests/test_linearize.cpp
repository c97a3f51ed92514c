// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#include "nepv/linearize.hpp"

#include <doctest.h>

#include "nepv/lapack.hpp"
#include "nepv/rng.hpp"
#include "support/worked2x2.hpp"

using namespace nepv;
using namespace nepv::test;

namespace {

double entry_dist(const CMatrix& x, const CMatrix& y) {
  REQUIRE(same_shape(x, y));
  double worst = 0.0;
  for (std::size_t k = 0; k < x.a.size(); ++k) worst = std::max(worst, std::abs(x.a[k] - y.a[k]));
  return worst;
}

}  // namespace

TEST_CASE("build_mep row structure") {
  const NepvProblem p = worked2x2();
  const MepProblem mep = build_mep(p, worked2x2_g());

  REQUIRE(mep.rows() == 2);
  REQUIRE(mep.V[0].size() == 3);

  CMatrix minus_a(2, 2);
  add_scaled(minus_a, Cx(-1.0), p.A);
  CHECK(entry_dist(mep.V[0][0], minus_a) == 0.0);
  CHECK(entry_dist(mep.V[0][1], p.B) == 0.0);
  CHECK(entry_dist(mep.V[0][2], p.C[0]) == 0.0);
  CHECK(entry_dist(mep.V[1][1], p.B) == 0.0);
}

TEST_CASE("build_mep second row matches hand arithmetic") {
  const MepProblem mep = build_mep(worked2x2(), worked2x2_g());

  // With g = (1,3): A + g r^T = [[4,3],[9,7]] and C - g s^T = [[-2,-3],[-12,-8]].
  const CMatrix lhs = mat({{-4, -3}, {-9, -7}});
  const CMatrix mu_coeff = mat({{-2, -3}, {-12, -8}});
  CHECK(entry_dist(mep.V[1][0], lhs) == 0.0);
  CHECK(entry_dist(mep.V[1][2], mu_coeff) == 0.0);
}

TEST_CASE("mep_row_matrix assembles the row pencil") {
  const NepvProblem p = worked2x2();
  const MepProblem mep = build_mep(p, worked2x2_g());
  const Cx lambda(0.7, -0.3);
  const CVector mu = {Cx(1.5, 0.25)};

  // Row 0 is A + lambda B + mu_1 C_1.
  CMatrix want = p.A;
  add_scaled(want, lambda, p.B);
  add_scaled(want, mu[0], p.C[0]);
  CHECK(entry_dist(mep_row_matrix(mep, 0, lambda, mu), want) < 1e-15);

  // Row 1 adds the g-coupling: + g r^T - mu_1 g s^T.
  outer_acc(want, Cx(1.0), mep.g[0], p.r[0]);
  outer_acc(want, -mu[0], mep.g[0], p.s[0]);
  CHECK(entry_dist(mep_row_matrix(mep, 1, lambda, mu), want) < 1e-15);
}

TEST_CASE("row difference vanishes when mu tracks f") {
  Rng rng(31);
  const NepvProblem p = worked2x2();
  const MepProblem mep = build_mep(p, worked2x2_g());

  for (int trial = 0; trial < 10; ++trial) {
    const CVector x = rng.complex_normal_vector(2);
    const Cx lambda = rng.normal_complex();
    const CVector mu = {f_eval(p, 0, x)};
    const CVector d0 = matvec(mep_row_matrix(mep, 0, lambda, mu), x);
    CVector d1 = matvec(mep_row_matrix(mep, 1, lambda, mu), x);
    axpy(Cx(-1.0), d0, d1);
    // (T_2 - T_1) x = g (r^T x - mu s^T x) = 0 exactly when mu = f(x).
    CHECK(nrm2(d1) < 1e-12 * nrm2(x));
  }
}

TEST_CASE("constant nonlinearity embeds pencil eigenpairs in every row") {
  // With r = s the nonlinearity is identically 1, so any eigenpair of
  // (A + C) x = -lambda B x solves both MEP rows with mu = 1.
  Rng rng(77);
  const int n = 6;
  NepvProblem p;
  p.A = rng.normal_matrix(n, n);
  p.B = rng.normal_matrix(n, n);
  p.C = {rng.normal_matrix(n, n)};
  p.r = {rng.complex_normal_vector(n)};
  p.s = p.r;
  const MepProblem mep = build_mep(p, random_g(n, 1, 5));

  CMatrix apc = p.A;
  add_scaled(apc, Cx(1.0), p.C[0]);
  CMatrix minus_b(n, n);
  add_scaled(minus_b, Cx(-1.0), p.B);
  const la::Eigs eigs = la::ggev(apc, minus_b, false, true);

  int checked = 0;
  for (int k = 0; k < n; ++k) {
    if (std::abs(eigs.beta[k]) < 1e-8) continue;
    const Cx lambda = eigs.alpha[k] / eigs.beta[k];
    CVector x(n);
    for (int i = 0; i < n; ++i) x[i] = eigs.vr(i, k);
    CHECK(mep_residual(mep, lambda, {Cx(1.0)}, x) < 1e-10);
    ++checked;
  }
  CHECK(checked >= n - 1);
}

TEST_CASE("validate_g rejects bad choices") {
  Rng rng(9);
  NepvProblem p;
  const int n = 4;
  p.A = rng.normal_matrix(n, n);
  p.B = rng.normal_matrix(n, n);
  for (int i = 0; i < 2; ++i) {
    p.C.push_back(rng.normal_matrix(n, n));
    p.r.push_back(rng.complex_normal_vector(n));
    p.s.push_back(rng.complex_normal_vector(n));
  }

  const CVector u = rng.complex_normal_vector(n);

  SUBCASE("zero vector") {
    const GReport rep = validate_g(p, {u, CVector(n, Cx(0.0))});
    CHECK_FALSE(rep.pass);
    CHECK(rep.reason == GFailure::ZeroVector);
    CHECK(rep.index_a == 1);
    CHECK_THROWS_AS(build_mep(p, {u, CVector(n, Cx(0.0))}), Error);
  }

  SUBCASE("equal vectors") {
    const GReport rep = validate_g(p, {u, u});
    CHECK_FALSE(rep.pass);
    CHECK(rep.reason == GFailure::PairwiseDependent);
    CHECK(rep.index_a == 0);
    CHECK(rep.index_b == 1);
  }

  SUBCASE("scaled copy is still dependent") {
    const GReport rep = validate_g(p, {u, scaled(Cx(0.0, -2.5), u)});
    CHECK_FALSE(rep.pass);
    CHECK(rep.reason == GFailure::PairwiseDependent);
  }

  SUBCASE("independent vectors pass") {
    const GReport rep = validate_g(p, {u, rng.complex_normal_vector(n)});
    CHECK(rep.pass);
    CHECK(rep.min_sin_angle > tol::g_angle);
  }

  SUBCASE("wrong count throws") {
    CHECK_THROWS_AS(validate_g(p, {u}), Error);
  }
}

TEST_CASE("random_g is deterministic and valid") {
  const auto g1 = random_g(5, 1, 42);
  const auto g2 = random_g(5, 1, 42);
  const auto g3 = random_g(5, 1, 43);
  REQUIRE(g1.size() == 1);
  CHECK(g1[0] == g2[0]);
  CHECK(g1[0] != g3[0]);
  for (const Cx& v : g1[0]) CHECK(v.imag() == 0.0);

  NepvProblem p;
  Rng rng(3);
  const int n = 10;
  p.A = rng.normal_matrix(n, n);
  p.B = rng.normal_matrix(n, n);
  for (int i = 0; i < 2; ++i) {
    p.C.push_back(rng.normal_matrix(n, n));
    p.r.push_back(rng.complex_normal_vector(n));
    p.s.push_back(rng.complex_normal_vector(n));
  }
  CHECK(validate_g(p, random_g(n, 2, 7)).pass);
}
