// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#include "nepv/opdet.hpp"

#include <doctest.h>

#include "nepv/kernels.hpp"
#include "nepv/problems.hpp"
#include "nepv/rng.hpp"
#include "support/worked2x2.hpp"

using namespace nepv;
using namespace nepv::test;

namespace {

// Block grids of the worked 2x2 problem, written out by hand.
std::vector<std::vector<CMatrix>> delta0_blocks() {
  const NepvProblem p = worked2x2();
  const CVector g = worked2x2_g()[0];
  CMatrix c_gs = p.C[0];
  outer_acc(c_gs, Cx(-1.0), g, p.s[0]);
  return {{p.B, p.C[0]}, {p.B, c_gs}};
}

std::vector<std::vector<CMatrix>> delta1_blocks() {
  const NepvProblem p = worked2x2();
  const CVector g = worked2x2_g()[0];
  CMatrix ma(2, 2), magr(2, 2);
  add_scaled(ma, Cx(-1.0), p.A);
  magr = ma;
  outer_acc(magr, Cx(-1.0), g, p.r[0]);
  CMatrix c_gs = p.C[0];
  outer_acc(c_gs, Cx(-1.0), g, p.s[0]);
  return {{ma, p.C[0]}, {magr, c_gs}};
}

}  // namespace

TEST_CASE("single block is its own determinant") {
  Rng rng(4);
  const CMatrix a = rng.normal_matrix(3, 3);
  const CMatrix d = operator_determinant({{a}});
  CHECK(d.a == a.a);
}

TEST_CASE("worked example determinants match the printed integers") {
  const CMatrix d0 = operator_determinant(delta0_blocks());
  const CMatrix d1 = operator_determinant(delta1_blocks());
  CHECK(d0.a == worked2x2_delta0().a);
  CHECK(d1.a == worked2x2_delta1().a);
}

TEST_CASE("two-block expansion equals the closed form to the last bit") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + trial % 3;
    std::vector<std::vector<CMatrix>> blocks(2, std::vector<CMatrix>(2));
    for (auto& row : blocks)
      for (auto& b : row) b = rng.normal_matrix(n, n);

    CMatrix want = kernels::kron(blocks[0][0], blocks[1][1]);
    kernels::kron_acc(want, Cx(-1.0), blocks[0][1], blocks[1][0]);
    const CMatrix got = operator_determinant(blocks);
    CHECK(got.a == want.a);
  }
}

TEST_CASE("build_deltas reproduces the hand grids bit for bit") {
  const MepProblem mep = build_mep(worked2x2(), worked2x2_g());
  const DeltaSystem ds = build_deltas(mep);

  CHECK(ds.N == 4);
  REQUIRE(ds.Delta.size() == 2);
  CHECK(ds.Delta0.a == worked2x2_delta0().a);
  CHECK(ds.Delta[0].a == worked2x2_delta1().a);
  CHECK(ds.nonsingular == TriState::Yes);
  CHECK(ds.rcond > tol::rcond_min);

  // Delta[i] is Delta0 with block-column i swapped for the left-hand sides.
  const CMatrix d2 = operator_determinant(
      {{mep.V[0][1], mep.V[0][0]}, {mep.V[1][1], mep.V[1][0]}});
  CHECK(ds.Delta[1].a == d2.a);
}

TEST_CASE("column operations behave like determinant columns") {
  const auto blocks = delta0_blocks();
  const ColumnPropertyReport rep = column_property_check(blocks, 0, 1);
  CHECK(rep.swap_deviation == 0.0);
  CHECK(rep.duplicate_deviation == 0.0);
  CHECK(rep.shear_deviation == 0.0);
  CHECK(rep.max_deviation() == 0.0);

  // Swap written out: the result is exactly the negated determinant.
  auto swapped = blocks;
  for (auto& row : swapped) std::swap(row[0], row[1]);
  CMatrix neg = operator_determinant(swapped);
  add_scaled(neg, Cx(1.0), worked2x2_delta0());
  CHECK(frob(neg) == 0.0);
}

TEST_CASE("row swaps do not negate the determinant") {
  auto blocks = delta0_blocks();
  std::swap(blocks[0], blocks[1]);
  CMatrix dev = operator_determinant(blocks);
  // If rows behaved like columns this would vanish; it stays far from zero.
  add_scaled(dev, Cx(1.0), worked2x2_delta0());
  CHECK(frob(dev) > 1.0);
}

TEST_CASE("column properties hold on a random three-row grid") {
  Rng rng(23);
  std::vector<std::vector<CMatrix>> blocks(3, std::vector<CMatrix>(3));
  for (auto& row : blocks)
    for (auto& b : row) b = rng.normal_matrix(3, 3);
  const ColumnPropertyReport rep = column_property_check(blocks, 0, 2, Cx(0.5, 1.0));
  const double scale = frob(operator_determinant(blocks));
  CHECK(rep.max_deviation() < 1e-12 * scale);
}

TEST_CASE("seeded instances build and pass the regularity checks") {
  SUBCASE("n=5, m=1") {
    const RandomProblem rp = gen_random(5, 1, 42);
    const DeltaSystem ds = build_deltas(build_mep(rp.problem, rp.g));
    CHECK(ds.N == 25);
    CHECK(ds.nonsingular == TriState::Yes);
    CHECK(commute_check(ds) == 0.0);  // single-term convention
  }

  SUBCASE("n=10, m=2") {
    const RandomProblem rp = gen_random(10, 2, 7);
    const DeltaSystem ds = build_deltas(build_mep(rp.problem, rp.g));
    CHECK(ds.N == 1000);
    CHECK(ds.nonsingular == TriState::Yes);
    CHECK(commute_check(ds) < 1e-10);
  }
}

TEST_CASE("commute_check detects a corrupted system") {
  Rng rng(5);
  const RandomProblem rp = gen_random(4, 2, 3);
  DeltaSystem ds = build_deltas(build_mep(rp.problem, rp.g));
  REQUIRE(ds.nonsingular == TriState::Yes);
  CHECK(commute_check(ds) < 1e-10);
  ds.Delta[1] = rng.normal_matrix(ds.N, ds.N);
  CHECK(commute_check(ds) > 1e-2);
}

TEST_CASE("memory cap and skipped condition estimate") {
  const MepProblem mep = build_mep(worked2x2(), worked2x2_g());

  DeltaOptions tight;
  tight.max_entries = 10;
  try {
    build_deltas(mep, tight);
    FAIL("expected MemoryBudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MemoryBudgetExceeded);
  }

  DeltaOptions lazy;
  lazy.estimate_condition = false;
  const DeltaSystem ds = build_deltas(mep, lazy);
  CHECK(ds.nonsingular == TriState::Unknown);
  CHECK(ds.rcond == 0.0);
}

TEST_CASE("shape violations are rejected") {
  Rng rng(8);
  const CMatrix a = rng.normal_matrix(2, 2);
  const CMatrix b = rng.normal_matrix(3, 3);
  CHECK_THROWS_AS(operator_determinant({{a, a}, {a, b}}), Error);
  CHECK_THROWS_AS(operator_determinant({{a, a}}), Error);
  CHECK_THROWS_AS(column_property_check({{a, a}, {a, a}}, 0, 0), Error);
}
