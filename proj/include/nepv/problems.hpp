// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <cstdint>
#include <vector>

#include "nepv/problem.hpp"

// Problem generators and an independent brute-force oracle. The generators
// are deterministic in (sizes, seed) down to the bit, using the documented
// PRNG streams, so test expectations can be frozen. The oracle solves tiny
// instances without going through the linearization at all; it exists to
// cross-check the solver pipeline, never to feed it.

namespace nepv {

// Random dense problem with real standard-normal entries. Every object has
// its own stream derived from (seed, name): "A", "B", "C1".."Cm", "r1"..,
// "s1".., and the free vectors "g1".. shared with random_g.
struct RandomProblem {
  NepvProblem problem;
  std::vector<CVector> g;
};
RandomProblem gen_random(int n, int m, std::uint64_t seed);

// Discretized two-point boundary value problem on [-1,1] with homogeneous
// Dirichlet conditions: u'' + lambda k1(x) u + f(u) k2(x) u = 0 where the
// nonlinearity f(u) = (integral of g(x)u) / u'(0) is rational-linear in the
// grid values. Central differences on n interior points, trapezoidal rule
// for the integral, straddling (even n) or long central (odd n) difference
// for u'(0).
struct PdeSpec {
  int n = 100;         // interior grid points
  double gamma = 10.0; // weight g(x) = exp(-gamma x^2)
};
// Coefficient functions, exposed for tests: k1(x) = 1 + tanh(5x)/2,
// k2(x) = 1 + cos(pi x)/2.
double pde_k1(double x);
double pde_k2(double x);
NepvProblem gen_pde(const PdeSpec& spec);

// One solution found by the oracle. mu_identifiable goes false for
// components where ||C_i x|| vanishes, making mu_i arbitrary.
struct OracleSolution {
  Cx lambda;
  CVector mu;   // f_i(x), size m
  CVector x;    // unit norm, phase canonical
  double residual = 0.0;
  bool mu_identifiable = true;
};

struct OracleOptions {
  std::uint64_t seed = 20260101;  // multistart path only
  int starts_per_solution = 1500;  // times N_s
  int max_newton_iters = 100;
  // Skip the resultant path even when it applies, so tests can compare the
  // two oracle paths against each other.
  bool force_multistart = false;
};

struct OracleResult {
  std::vector<OracleSolution> solutions;  // sorted by (|lambda|, Re, Im)
  std::uint64_t expected = 0;             // N_s for the instance
  bool complete = false;                  // found exactly N_s
  bool used_closed_form = false;
};

// Solve a tiny NEPv exhaustively. For n = 2 a resultant reduces the problem
// to one polynomial of degree 2(m+1) whose roots come from a companion
// matrix; otherwise a seeded damped-Newton multistart on the square
// augmented system is used, limited to n*(m+1) <= 12. Every returned solution is validated to
// nepv_residual below 1e-12 (closed form: 1e-10) and deduplicated.
OracleResult brute_force_solve(const NepvProblem& p, const OracleOptions& opts = {});

}  // namespace nepv
