// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <cstddef>

#include "nepv/linearize.hpp"

// Operator determinants: the block-matrix analogue of the Laplace expansion
// with multiplication replaced by the Kronecker product. Applied to the MEP
// coefficient grid it yields the Delta matrices whose generalized eigenvalue
// problems carry all solutions of the original NEPv.

namespace nepv {

enum class TriState { Yes, No, Unknown };

// Delta0 together with Delta[0] (the lambda matrix) and Delta[1+i] (the mu_i
// matrices). Delta[i] is Delta0 with block-column i replaced by the column of
// left-hand-side blocks.
struct DeltaSystem {
  int N = 0;  // Kronecker dimension n^{m+1}
  CMatrix Delta0;
  std::vector<CMatrix> Delta;
  TriState nonsingular = TriState::Unknown;
  double rcond = 0.0;  // reciprocal condition estimate of Delta0 (1-norm)
};

struct DeltaOptions {
  // Memory cap counted in complex entries over all m+2 stored matrices.
  // The default bounds the build at roughly 3.2 GB.
  std::size_t max_entries = 200000000;
  // Estimate cond(Delta0) to set the nonsingular flag; skippable because the
  // LU factorization behind it costs as much as one GEP-sized solve.
  bool estimate_condition = true;
};

// Expansion along the first block row with alternating signs, Kronecker
// product in place of multiplication, each term taken as
// (first-row block) (x) (minor determinant). Requires a square block grid of
// square blocks of equal size.
CMatrix operator_determinant(const std::vector<std::vector<CMatrix>>& blocks);

// Assemble Delta0 and Delta[0..m] from the MEP block grid.
// Throws MemoryBudgetExceeded before allocating past opts.max_entries.
DeltaSystem build_deltas(const MepProblem& mep, const DeltaOptions& opts = {});

// Max over i<j of ||G_i G_j - G_j G_i||_F / (||G_i||_F ||G_j||_F) with
// G_i = Delta0^{-1} Delta[i]; zero for m = 0 or a single parameter pair.
// Throws SingularDelta0 when the system is flagged singular.
double commute_check(const DeltaSystem& ds);

// Determinant-like behavior under block-column operations, exercised on a
// concrete block grid: swapping columns i and j negates the result,
// duplicating a column annihilates it, and adding alpha times column j to
// column i changes nothing. Deviations are Frobenius norms; all three are
// zero in exact arithmetic. Test-support operation.
struct ColumnPropertyReport {
  double swap_deviation = 0.0;
  double duplicate_deviation = 0.0;
  double shear_deviation = 0.0;
  double max_deviation() const;
};
ColumnPropertyReport column_property_check(const std::vector<std::vector<CMatrix>>& blocks,
                                           int i, int j, Cx alpha = Cx(2.0));

}  // namespace nepv
