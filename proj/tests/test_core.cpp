// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "nepv/core.hpp"
#include "nepv/problem.hpp"
#include "nepv/rng.hpp"
#include "support/worked2x2.hpp"

using namespace nepv;

TEST_CASE("CMatrix is column-major") {
  CMatrix a(2, 3);
  a(0, 0) = 1.0;
  a(1, 0) = 2.0;
  a(0, 1) = 3.0;
  a(1, 2) = 6.0;
  CHECK(a.a[0] == Cx(1.0));
  CHECK(a.a[1] == Cx(2.0));
  CHECK(a.a[2] == Cx(3.0));
  CHECK(a.a[5] == Cx(6.0));
}

TEST_CASE("dotu is unconjugated, dotc conjugates the first argument") {
  const CVector v{Cx(0, 1), Cx(1, 0)};
  const CVector w{Cx(0, 1), Cx(2, 0)};
  CHECK(dotu(v, w) == Cx(1, 0));  // i*i + 1*2
  CHECK(dotc(v, w) == Cx(3, 0));  // conj(i)*i + 1*2
}

TEST_CASE("phase_canonical puts the largest entry on the positive real axis") {
  const CVector v{Cx(0.1, 0.0), Cx(0.0, -2.0)};
  const CVector c = phase_canonical(v);
  CHECK(c[1].real() == doctest::Approx(2.0));
  CHECK(std::abs(c[1].imag()) < 1e-15);
  // Norm and collinearity preserved.
  CHECK(nrm2(c) == doctest::Approx(nrm2(v)));
  CHECK(sin_angle(c, v) < 1e-14);
}

TEST_CASE("solve_small solves a pivoting-required system") {
  CMatrix a(3, 3);
  a(0, 0) = 0.0;  a(0, 1) = 2.0;  a(0, 2) = 1.0;
  a(1, 0) = 1.0;  a(1, 1) = 1.0;  a(1, 2) = Cx(0.0, 1.0);
  a(2, 0) = 4.0;  a(2, 1) = 0.0;  a(2, 2) = 3.0;
  const CVector xref{Cx(1, 1), Cx(-2, 0), Cx(0, 3)};
  const CVector b = matvec(a, xref);
  const CVector x = solve_small(a, b);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(x[i] - xref[i]) < 1e-12);
}

TEST_CASE("solve_small reports exact singularity") {
  CMatrix a(2, 2);
  a(0, 0) = 1.0; a(0, 1) = 2.0;
  a(1, 0) = 2.0; a(1, 1) = 4.0;
  CHECK_THROWS_AS(solve_small(a, CVector{Cx(1), Cx(1)}), Error);
}

TEST_CASE("f_eval on the worked 2x2 data") {
  const NepvProblem p = test::worked2x2();
  SUBCASE("x = e1 gives 3/4") {
    const Cx f = f_eval(p, 0, test::vecr({1, 0}));
    CHECK(f.real() == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(f.imag() == 0.0);
  }
  SUBCASE("scale invariance under complex alpha") {
    const CVector x{Cx(0.3, -0.2), Cx(1.1, 0.4)};
    const Cx alpha(2.0, 1.0);
    const Cx f1 = f_eval(p, 0, x);
    const Cx f2 = f_eval(p, 0, scaled(alpha, x));
    CHECK(std::abs(f1 - f2) < 1e-14 * std::abs(f1));
  }
  SUBCASE("r = s gives exactly 1") {
    NepvProblem q = p;
    q.r = q.s;
    const Cx f = f_eval(q, 0, test::vecr({1, 2}));
    CHECK(f == Cx(1.0));
  }
  SUBCASE("vanishing denominator throws") {
    // s = (4, 3): x = (3, -4) is exactly orthogonal.
    CHECK_THROWS_AS(f_eval(p, 0, test::vecr({3, -4})), Error);
    try {
      f_eval(p, 0, test::vecr({3, -4}));
    } catch (const Error& e) {
      CHECK(e.code() == Errc::DenominatorNearZero);
    }
  }
}

TEST_CASE("nepv_residual on the worked 2x2 data") {
  const NepvProblem p = test::worked2x2();
  SUBCASE("printed four-decimal solution has a small residual") {
    const auto eig = test::worked2x2_eigs()[0];
    CHECK(nepv_residual(p, Cx(eig.lambda, 0.0), eig.x1) < 1e-3);
  }
  SUBCASE("a non-solution has a visible residual") {
    CHECK(nepv_residual(p, Cx(0.0), test::vecr({1, 0})) > 1e-2);
  }
  SUBCASE("scale invariance") {
    const CVector x{Cx(0.9, 0.1), Cx(-0.4, 0.7)};
    const double r1 = nepv_residual(p, Cx(1.5, -0.5), x);
    const double r2 = nepv_residual(p, Cx(1.5, -0.5), scaled(Cx(0.0, 3.0), x));
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-13));
  }
}

TEST_CASE("count_solutions values and properties") {
  CHECK(count_solutions(2, 1) == 3);
  CHECK(count_solutions(5, 1) == 15);
  CHECK(count_solutions(10, 2) == 220);
  SUBCASE("m = 1 closed form n(n+1)/2") {
    for (int n = 1; n <= 40; ++n)
      CHECK(count_solutions(n, 1) == static_cast<std::int64_t>(n) * (n + 1) / 2);
  }
  SUBCASE("overflow guarded") {
    CHECK_THROWS_AS(count_solutions(1000000, 3), Error);
    try {
      count_solutions(1000000, 3);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::Overflow);
    }
  }
}

TEST_CASE("problem validation rejects malformed input") {
  NepvProblem p = test::worked2x2();
  CHECK_NOTHROW(p.validate());
  SUBCASE("zero s vector") {
    p.s[0] = test::vecr({0, 0});
    CHECK_THROWS_AS(p.validate(), Error);
  }
  SUBCASE("shape mismatch") {
    p.B = CMatrix(3, 3);
    CHECK_THROWS_AS(p.validate(), Error);
  }
}

TEST_CASE("splitmix64 matches the published reference stream") {
  Rng r(0);
  CHECK(r.next_u64() == UINT64_C(0xE220A8397B1DCDAF));
  CHECK(r.next_u64() == UINT64_C(0x6E789E6AA1B965F4));
  CHECK(r.next_u64() == UINT64_C(0x06C45D188009454F));
}

TEST_CASE("rng streams are deterministic and name-separated") {
  Rng a1(42, "A"), a2(42, "A"), b(42, "B");
  const CVector va1 = a1.normal_vector(8);
  const CVector va2 = a2.normal_vector(8);
  const CVector vb = b.normal_vector(8);
  for (int i = 0; i < 8; ++i) CHECK(va1[i] == va2[i]);
  bool differs = false;
  for (int i = 0; i < 8; ++i) differs = differs || (va1[i] != vb[i]);
  CHECK(differs);
}

TEST_CASE("box-muller normals have sane first moments") {
  Rng r(7, "moments");
  const int k = 20000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < k; ++i) {
    const double x = r.normal();
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / k;
  const double var = sumsq / k - mean * mean;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.05);
}
