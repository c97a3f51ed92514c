// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <vector>

#include "nepv/core.hpp"
#include "nepv/lapack.hpp"
#include "nepv/linearize.hpp"

// Test-only oracle: one explicit quasi-Newton step on the stacked system
//
//   [ T_1(sigma,tau)            dT_1/dlambda x_1  dT_1/dmu_j x_1 ] [dx_1   ]
//   [        ...        ...            ...               ...     ] [ ...   ]
//   [          T_{m+1}(sigma,tau) dT/dlambda x_{m+1}     ...     ] [dx_{m+1}]
//   [ v_1^T                              0                0      ] [dlambda]
//   [        ...                         0                0      ] [dmu    ]
//
// equal to minus the stacked row residuals and normalization defects, solved
// densely in one shot. The production solvers take the equivalent two-stage
// shortcut (small eigenvalue system, then per-row back-substitution); tests
// compare a single step of both routes.

namespace nepv::test {

struct QnStep {
  Cx lambda;
  CVector mu;
  std::vector<CVector> rows;  // updated + v-normalized per-row vectors
};

inline QnStep quasi_newton_step(const MepProblem& mep, Cx sigma, const CVector& tau,
                                const std::vector<CVector>& vs, const std::vector<CVector>& xs,
                                Cx lambda, const CVector& mu) {
  const int n = mep.n();
  const int m = mep.m();
  const int dim = n * (m + 1) + (m + 1);
  CMatrix jac(dim, dim);
  CVector rhs(dim);
  for (int i = 0; i <= m; ++i) {
    const CMatrix shifted = mep_row_matrix(mep, i, sigma, tau);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) jac(i * n + r, i * n + c) = shifted(r, c);
    for (int phi = 0; phi <= m; ++phi) {
      const CVector col = matvec(mep.V[i][1 + phi], xs[i]);
      for (int r = 0; r < n; ++r) jac(i * n + r, n * (m + 1) + phi) = col[r];
    }
    const CVector res = matvec(mep_row_matrix(mep, i, lambda, mu), xs[i]);
    for (int r = 0; r < n; ++r) rhs[i * n + r] = -res[r];
    for (int c = 0; c < n; ++c) jac(n * (m + 1) + i, i * n + c) = vs[i][c];
    rhs[n * (m + 1) + i] = -(dotu(vs[i], xs[i]) - Cx(1.0));
  }
  const CVector sol = la::lu_factor(std::move(jac)).solve('N', std::move(rhs));

  QnStep step;
  step.lambda = lambda + sol[n * (m + 1)];
  step.mu = mu;
  for (int j = 0; j < m; ++j) step.mu[j] += sol[n * (m + 1) + 1 + j];
  step.rows.reserve(m + 1);
  for (int i = 0; i <= m; ++i) {
    CVector z = xs[i];
    for (int r = 0; r < n; ++r) z[r] += sol[i * n + r];
    scal(Cx(1.0) / dotu(vs[i], z), z);
    step.rows.push_back(std::move(z));
  }
  return step;
}

}  // namespace nepv::test
