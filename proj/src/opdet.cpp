// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#include "nepv/opdet.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "nepv/kernels.hpp"
#include "nepv/lapack.hpp"

namespace nepv {

namespace {

using BlockGrid = std::vector<std::vector<CMatrix>>;

int check_grid(const BlockGrid& blocks) {
  const int k = static_cast<int>(blocks.size());
  if (k == 0) fail(Errc::DimensionMismatch, "operator_determinant: empty block grid");
  const int n = blocks[0][0].rows;
  for (const auto& row : blocks) {
    if (static_cast<int>(row.size()) != k)
      fail(Errc::DimensionMismatch, "operator_determinant: block grid is not square");
    for (const CMatrix& b : row)
      if (b.rows != n || b.cols != n)
        fail(Errc::DimensionMismatch, "operator_determinant: blocks must all be n x n");
  }
  return n;
}

// Expansion along the first block row; no shape checks past the entry point.
CMatrix opdet_rec(const BlockGrid& blocks) {
  const int k = static_cast<int>(blocks.size());
  if (k == 1) return blocks[0][0];

  BlockGrid minor(k - 1, std::vector<CMatrix>(k - 1));
  std::size_t dim = blocks[0][0].rows;
  for (int p = 1; p < k; ++p) dim *= static_cast<std::size_t>(blocks[0][0].rows);
  CMatrix out(static_cast<int>(dim), static_cast<int>(dim));

  for (int j = 0; j < k; ++j) {
    for (int r = 1; r < k; ++r) {
      int cc = 0;
      for (int c = 0; c < k; ++c)
        if (c != j) minor[r - 1][cc++] = blocks[r][c];
    }
    const Cx sign = (j % 2 == 0) ? Cx(1.0) : Cx(-1.0);
    kernels::kron_acc(out, sign, blocks[0][j], opdet_rec(minor));
  }
  return out;
}

}  // namespace

CMatrix operator_determinant(const BlockGrid& blocks) {
  check_grid(blocks);
  return opdet_rec(blocks);
}

DeltaSystem build_deltas(const MepProblem& mep, const DeltaOptions& opts) {
  const int n = mep.n();
  const int m = mep.m();
  const int l = m + 1;  // grid size: one row per MEP equation

  unsigned __int128 big_n = 1;
  for (int p = 0; p < l; ++p) big_n *= static_cast<unsigned>(n);
  const unsigned __int128 total = big_n * big_n * static_cast<unsigned>(m + 2);
  if (total > opts.max_entries)
    fail(Errc::MemoryBudgetExceeded,
         "build_deltas: " + std::to_string(static_cast<double>(total)) +
             " complex entries over cap " + std::to_string(opts.max_entries));

  DeltaSystem ds;
  ds.N = static_cast<int>(big_n);

  // Delta0 uses the parameter coefficient columns; Delta[i] swaps column i
  // for the left-hand-side blocks.
  BlockGrid grid(l, std::vector<CMatrix>(l));
  auto fill = [&](int replaced) {
    for (int r = 0; r < l; ++r)
      for (int c = 0; c < l; ++c)
        grid[r][c] = (c == replaced) ? mep.V[r][0] : mep.V[r][1 + c];
  };

  fill(-1);
  ds.Delta0 = opdet_rec(grid);
  ds.Delta.reserve(l);
  for (int i = 0; i < l; ++i) {
    fill(i);
    ds.Delta.push_back(opdet_rec(grid));
  }

  if (opts.estimate_condition) {
    try {
      la::Lu lu = la::lu_factor(ds.Delta0);
      ds.rcond = lu.rcond();
      ds.nonsingular = (ds.rcond > tol::rcond_min) ? TriState::Yes : TriState::No;
    } catch (const Error&) {
      ds.rcond = 0.0;
      ds.nonsingular = TriState::No;
    }
  }
  return ds;
}

double commute_check(const DeltaSystem& ds) {
  const int count = static_cast<int>(ds.Delta.size());
  // A single nonlinearity is treated as vacuous by convention: the lambda/mu
  // pair still commutes, but nothing rides on it and callers expect exact 0.
  if (count < 3) return 0.0;
  if (ds.nonsingular == TriState::No)
    fail(Errc::SingularDelta0, "commute_check: Delta0 flagged singular");

  la::Lu lu = la::lu_factor(ds.Delta0, Errc::SingularDelta0);
  std::vector<CMatrix> gamma;
  gamma.reserve(count);
  for (const CMatrix& d : ds.Delta) {
    CMatrix g = d;
    lu.solve_inplace('N', g);
    gamma.push_back(std::move(g));
  }

  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      CMatrix comm = la::matmul(gamma[i], gamma[j]);
      const CMatrix ji = la::matmul(gamma[j], gamma[i]);
      add_scaled(comm, Cx(-1.0), ji);
      worst = std::max(worst, frob(comm) / (frob(gamma[i]) * frob(gamma[j])));
    }
  }
  return worst;
}

double ColumnPropertyReport::max_deviation() const {
  return std::max({swap_deviation, duplicate_deviation, shear_deviation});
}

ColumnPropertyReport column_property_check(const BlockGrid& blocks, int i, int j, Cx alpha) {
  check_grid(blocks);
  const int k = static_cast<int>(blocks.size());
  if (i < 0 || j < 0 || i >= k || j >= k || i == j)
    fail(Errc::InvalidArgument, "column_property_check: need distinct valid columns");

  const CMatrix base = opdet_rec(blocks);
  ColumnPropertyReport rep;

  BlockGrid work = blocks;
  for (int r = 0; r < k; ++r) std::swap(work[r][i], work[r][j]);
  CMatrix dev = opdet_rec(work);
  add_scaled(dev, Cx(1.0), base);  // swap negates, so det + base should vanish
  rep.swap_deviation = frob(dev);

  work = blocks;
  for (int r = 0; r < k; ++r) work[r][j] = work[r][i];
  rep.duplicate_deviation = frob(opdet_rec(work));

  work = blocks;
  for (int r = 0; r < k; ++r) add_scaled(work[r][i], alpha, blocks[r][j]);
  dev = opdet_rec(work);
  add_scaled(dev, Cx(-1.0), base);
  rep.shear_deviation = frob(dev);

  return rep;
}

}  // namespace nepv
