// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#include <cmath>
#include <string>

#include "nepv/linearize.hpp"
#include "nepv/problems.hpp"
#include "nepv/rng.hpp"

namespace nepv {

RandomProblem gen_random(int n, int m, std::uint64_t seed) {
  if (n < 2 || m < 1) fail(Errc::InvalidArgument, "gen_random: need n >= 2, m >= 1");

  RandomProblem out;
  NepvProblem& p = out.problem;
  p.A = Rng(seed, "A").normal_matrix(n, n);
  p.B = Rng(seed, "B").normal_matrix(n, n);
  for (int i = 0; i < m; ++i) {
    const std::string tag = std::to_string(i + 1);
    p.C.push_back(Rng(seed, "C" + tag).normal_matrix(n, n));
    p.r.push_back(Rng(seed, "r" + tag).normal_vector(n));
    p.s.push_back(Rng(seed, "s" + tag).normal_vector(n));
  }
  p.validate();
  out.g = random_g(n, m, seed);
  return out;
}

double pde_k1(double x) { return 1.0 + 0.5 * std::tanh(5.0 * x); }
double pde_k2(double x) { return 1.0 + 0.5 * std::cos(M_PI * x); }

NepvProblem gen_pde(const PdeSpec& spec) {
  const int n = spec.n;
  if (n < 3) fail(Errc::InvalidArgument, "gen_pde: need at least 3 interior points");
  const double h = 2.0 / (n + 1);
  auto grid = [&](int j) { return -1.0 + (j + 1) * h; };  // j is 0-based

  NepvProblem p;
  p.A = CMatrix(n, n);
  CMatrix k1(n, n), k2(n, n);
  CVector a(n);
  for (int j = 0; j < n; ++j) {
    const double x = grid(j);
    p.A(j, j) = -2.0 / (h * h);
    if (j > 0) p.A(j, j - 1) = 1.0 / (h * h);
    if (j + 1 < n) p.A(j, j + 1) = 1.0 / (h * h);
    k1(j, j) = pde_k1(x);
    k2(j, j) = pde_k2(x);
    // Trapezoidal weights are uniformly h inside because the boundary values
    // are pinned to zero.
    a[j] = h * std::exp(-spec.gamma * x * x);
  }

  // u'(0): for even n the nodes at -h/2 and h/2 straddle the origin, so a
  // plain difference over one gap applies; for odd n there is a node at 0
  // and the long central difference uses its neighbors.
  CVector b(n, Cx(0.0));
  if (n % 2 == 0) {
    b[n / 2] = 1.0 / h;
    b[n / 2 - 1] = -1.0 / h;
  } else {
    b[(n + 1) / 2] = 1.0 / (2.0 * h);
    b[(n + 1) / 2 - 2] = -1.0 / (2.0 * h);
  }

  p.B = std::move(k1);
  p.C = {std::move(k2)};
  p.r = {std::move(a)};
  p.s = {std::move(b)};
  p.validate();
  return p;
}

}  // namespace nepv
