// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#include "nepv/problem.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace nepv {

void NepvProblem::validate() const {
  const int dim = A.rows;
  if (dim < 1) fail(Errc::InvalidArgument, "NepvProblem: empty matrix A");
  require_shape(A, dim, dim, "NepvProblem.A");
  require_shape(B, dim, dim, "NepvProblem.B");
  if (C.size() != r.size() || C.size() != s.size())
    fail(Errc::DimensionMismatch, "NepvProblem: C, r, s must have the same length");
  if (C.empty()) fail(Errc::InvalidArgument, "NepvProblem: at least one nonlinear term required");
  for (std::size_t i = 0; i < C.size(); ++i) {
    require_shape(C[i], dim, dim, "NepvProblem.C[i]");
    if (r[i].size() != static_cast<std::size_t>(dim) || s[i].size() != static_cast<std::size_t>(dim))
      fail(Errc::DimensionMismatch, "NepvProblem: r/s vector length " + std::to_string(i));
    if (nrm2(s[i]) == 0.0)
      fail(Errc::InvalidArgument, "NepvProblem: s vector " + std::to_string(i) + " is zero");
  }
}

Cx f_eval(const NepvProblem& p, int i, const CVector& x) {
  if (i < 0 || i >= p.m()) fail(Errc::InvalidArgument, "f_eval: term index out of range");
  const Cx num = dotu(p.r[static_cast<std::size_t>(i)], x);
  const Cx den = dotu(p.s[static_cast<std::size_t>(i)], x);
  const double floor = tol::denom * nrm2(p.s[static_cast<std::size_t>(i)]) * nrm2(x);
  if (std::abs(den) <= floor)
    fail(Errc::DenominatorNearZero, "f_eval: |s^T x| = " + std::to_string(std::abs(den)) +
                                        " below threshold " + std::to_string(floor));
  return num / den;
}

double nepv_residual(const NepvProblem& p, Cx lambda, const CVector& x) {
  if (x.size() != static_cast<std::size_t>(p.n()))
    fail(Errc::DimensionMismatch, "nepv_residual: x length");
  const double xn = nrm2(x);
  if (xn == 0.0) fail(Errc::InvalidArgument, "nepv_residual: zero vector");

  CVector w = matvec(p.A, x);
  axpy(lambda, matvec(p.B, x), w);
  double scale = frob(p.A) + std::abs(lambda) * frob(p.B);
  for (int i = 0; i < p.m(); ++i) {
    const Cx fi = f_eval(p, i, x);
    axpy(fi, matvec(p.C[static_cast<std::size_t>(i)], x), w);
    scale += std::abs(fi) * frob(p.C[static_cast<std::size_t>(i)]);
  }
  if (scale == 0.0) return 0.0;  // all-zero coefficients: residual is vacuously zero
  return nrm2(w) / (scale * xn);
}

std::int64_t count_solutions(int n, int m) {
  if (n < 1 || m < 1) fail(Errc::InvalidArgument, "count_solutions: need n >= 1, m >= 1");
  const std::int64_t total = static_cast<std::int64_t>(n) + m;  // binomial(n+m, m+1)
  std::int64_t k = static_cast<std::int64_t>(m) + 1;
  if (k > total - k) k = total - k;
  if (k < 0) return 1;
  unsigned __int128 acc = 1;
  constexpr unsigned __int128 cap = static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max());
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned __int128>(total - k + i);
    acc /= static_cast<unsigned __int128>(i);  // exact: running value is binomial(total-k+i, i)
    if (acc > cap) fail(Errc::Overflow, "count_solutions: N_s exceeds 2^63 - 1");
  }
  return static_cast<std::int64_t>(acc);
}

const char* solution_class_name(SolutionClass c) {
  switch (c) {
    case SolutionClass::True: return "true";
    case SolutionClass::Spurious: return "spurious";
    case SolutionClass::NonSymmetric: return "non_symmetric";
    case SolutionClass::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace nepv
