// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <initializer_list>
#include <vector>

#include "nepv/problem.hpp"

// Shared test fixture: the worked 2x2 problem with one nonlinear term whose
// operator determinants are small integer matrices, so every pipeline stage
// can be checked against exact hand-computable values. With g = (1, 3) the
// linearized two-parameter problem has four eigenvalues; three are genuine
// NEPv solutions and the fourth (lambda = -5/4 exactly) is spurious, with
// left eigenvector factors collinear to (-1, 1/3) that are orthogonal to g.

namespace nepv::test {

inline CMatrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(rows.begin()->size());
  CMatrix out(r, c);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (const double v : row) out(i, j++) = Cx(v, 0.0);
    ++i;
  }
  return out;
}

inline CVector vecr(std::initializer_list<double> xs) {
  CVector out;
  for (const double v : xs) out.emplace_back(v, 0.0);
  return out;
}

inline NepvProblem worked2x2() {
  NepvProblem p;
  p.A = mat({{1, 1}, {0, 1}});
  p.B = mat({{1, 2}, {3, 4}});
  p.C = {mat({{2, 0}, {0, 1}})};
  p.r = {vecr({3, 2})};
  p.s = {vecr({4, 3})};
  return p;
}

inline std::vector<CVector> worked2x2_g() { return {vecr({1, 3})}; }

// Operator determinants of the linearization with g = (1, 3); exact integers.
inline CMatrix worked2x2_delta0() {
  return mat({{-4, -7, -4, -6}, {-18, -16, -24, -16}, {-6, -9, -9, -14}, {-36, -24, -51, -36}});
}

inline CMatrix worked2x2_delta1() {
  return mat({{10, 9, 2, 3}, {30, 22, 12, 8}, {0, 0, 6, 6}, {0, 0, 21, 15}});
}

// Eigenvalues of (Delta1, Delta0) to four decimals, and the rank-one factors
// of the corresponding eigenvectors z = x1 (x) x2, where x1 is the vector the
// first MEP row (the original pencil) annihilates. The first three
// eigenvectors are symmetric (x1 = x2); the fourth is decomposable but not
// symmetric.
struct Worked2x2Eig {
  double lambda;
  CVector x1, x2;
  bool symmetric;
};

inline std::vector<Worked2x2Eig> worked2x2_eigs() {
  return {
      {5.2462, vecr({-0.8232, 0.5677}), vecr({-0.8232, 0.5677}), true},
      {-0.4224, vecr({-0.5637, 0.8260}), vecr({-0.5637, 0.8260}), true},
      {-0.4367, vecr({-0.0672, 0.9977}), vecr({-0.0672, 0.9977}), true},
      {-1.2500, vecr({0.7682, -0.6402}), vecr({-0.4706, 0.8824}), false},
  };
}

// The spurious eigenvalue is exactly -5/4; both factors of its left
// eigenvector are collinear to this direction, which is orthogonal to g.
inline CVector worked2x2_left_factor() { return vecr({-1.0, 1.0 / 3.0}); }

}  // namespace nepv::test
