// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#include "nepv/core.hpp"

#include <algorithm>
#include <cmath>

namespace nepv {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DenominatorNearZero: return "DenominatorNearZero";
    case Errc::Overflow: return "Overflow";
    case Errc::InvalidG: return "InvalidG";
    case Errc::MemoryBudgetExceeded: return "MemoryBudgetExceeded";
    case Errc::SingularDelta0: return "SingularDelta0";
    case Errc::SingularPencil: return "SingularPencil";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::DegenerateRayleigh: return "DegenerateRayleigh";
    case Errc::SingularShiftedMatrix: return "SingularShiftedMatrix";
    case Errc::SingularUpdateSystem: return "SingularUpdateSystem";
    case Errc::SingularShiftedPencil: return "SingularShiftedPencil";
    case Errc::SingularSylvesterOperator: return "SingularSylvesterOperator";
    case Errc::LapackError: return "LapackError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IoError: return "IoError";
    case Errc::BadProblemFile: return "BadProblemFile";
  }
  return "UnknownError";
}

CMatrix CMatrix::identity(int n) {
  CMatrix e(n, n);
  for (int i = 0; i < n; ++i) e(i, i) = 1.0;
  return e;
}

bool same_shape(const CMatrix& x, const CMatrix& y) { return x.rows == y.rows && x.cols == y.cols; }

void require_shape(const CMatrix& x, int r, int c, const char* who) {
  if (x.rows != r || x.cols != c)
    fail(Errc::DimensionMismatch, std::string(who) + ": expected " + std::to_string(r) + "x" +
                                      std::to_string(c) + ", got " + std::to_string(x.rows) + "x" +
                                      std::to_string(x.cols));
}

Cx dotu(const CVector& v, const CVector& w) {
  if (v.size() != w.size()) fail(Errc::DimensionMismatch, "dotu: length mismatch");
  Cx acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += v[i] * w[i];
  return acc;
}

Cx dotc(const CVector& v, const CVector& w) {
  if (v.size() != w.size()) fail(Errc::DimensionMismatch, "dotc: length mismatch");
  Cx acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(v[i]) * w[i];
  return acc;
}

double nrm2(const CVector& v) {
  // Two-pass scaled sum to avoid spurious overflow; vectors here are short.
  double amax = 0.0;
  for (const Cx& z : v) amax = std::max({amax, std::abs(z.real()), std::abs(z.imag())});
  if (amax == 0.0) return 0.0;
  double acc = 0.0;
  for (const Cx& z : v) {
    const double re = z.real() / amax, im = z.imag() / amax;
    acc += re * re + im * im;
  }
  return amax * std::sqrt(acc);
}

void scal(Cx alpha, CVector& v) {
  for (Cx& z : v) z *= alpha;
}

void axpy(Cx alpha, const CVector& x, CVector& y) {
  if (x.size() != y.size()) fail(Errc::DimensionMismatch, "axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

CVector scaled(Cx alpha, const CVector& v) {
  CVector out(v);
  scal(alpha, out);
  return out;
}

CVector normalized(const CVector& v) {
  const double n = nrm2(v);
  if (n == 0.0) fail(Errc::InvalidArgument, "normalized: zero vector");
  return scaled(1.0 / n, v);
}

CVector phase_canonical(const CVector& v) {
  std::size_t k = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best) {
      best = a;
      k = i;
    }
  }
  if (best <= 0.0) return v;
  const Cx ph = v[k] / best;  // unit-modulus phase of the pivot entry
  return scaled(std::conj(ph), v);
}

double sin_angle(const CVector& v, const CVector& w) {
  const double nv = nrm2(v), nw = nrm2(w);
  if (nv == 0.0 || nw == 0.0) fail(Errc::InvalidArgument, "sin_angle: zero vector");
  // Norm of the component of w orthogonal to v; stable for tiny angles where
  // sqrt(1 - cos^2) would cancel.
  const CVector vh = scaled(1.0 / nv, v);
  CVector p = scaled(1.0 / nw, w);
  axpy(-dotc(vh, p), vh, p);
  return std::min(nrm2(p), 1.0);
}

double frob(const CMatrix& x) { return nrm2(x.a); }

double norm1(const CMatrix& x) {
  double best = 0.0;
  for (int j = 0; j < x.cols; ++j) {
    double col = 0.0;
    for (int i = 0; i < x.rows; ++i) col += std::abs(x(i, j));
    best = std::max(best, col);
  }
  return best;
}

CMatrix transpose(const CMatrix& x) {
  CMatrix out(x.cols, x.rows);
  for (int j = 0; j < x.cols; ++j)
    for (int i = 0; i < x.rows; ++i) out(j, i) = x(i, j);
  return out;
}

void add_scaled(CMatrix& x, Cx alpha, const CMatrix& y) {
  if (!same_shape(x, y)) fail(Errc::DimensionMismatch, "add_scaled: shape mismatch");
  for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += alpha * y.a[i];
}

void outer_acc(CMatrix& x, Cx alpha, const CVector& u, const CVector& v) {
  if (static_cast<std::size_t>(x.rows) != u.size() || static_cast<std::size_t>(x.cols) != v.size())
    fail(Errc::DimensionMismatch, "outer_acc: shape mismatch");
  for (int j = 0; j < x.cols; ++j) {
    const Cx av = alpha * v[static_cast<std::size_t>(j)];
    for (int i = 0; i < x.rows; ++i) x(i, j) += u[static_cast<std::size_t>(i)] * av;
  }
}

CVector matvec(const CMatrix& x, const CVector& v) {
  if (static_cast<std::size_t>(x.cols) != v.size()) fail(Errc::DimensionMismatch, "matvec: shape mismatch");
  CVector y(static_cast<std::size_t>(x.rows), Cx(0.0));
  for (int j = 0; j < x.cols; ++j) {
    const Cx vj = v[static_cast<std::size_t>(j)];
    if (vj == Cx(0.0)) continue;
    const Cx* col = x.a.data() + static_cast<std::size_t>(j) * x.rows;
    for (int i = 0; i < x.rows; ++i) y[static_cast<std::size_t>(i)] += col[i] * vj;
  }
  return y;
}

CVector matvec_t(const CMatrix& x, const CVector& v) {
  if (static_cast<std::size_t>(x.rows) != v.size())
    fail(Errc::DimensionMismatch, "matvec_t: shape mismatch");
  CVector y(static_cast<std::size_t>(x.cols), Cx(0.0));
  for (int j = 0; j < x.cols; ++j) {
    const Cx* col = x.a.data() + static_cast<std::size_t>(j) * x.rows;
    Cx acc = 0.0;
    for (int i = 0; i < x.rows; ++i) acc += col[i] * v[static_cast<std::size_t>(i)];
    y[static_cast<std::size_t>(j)] = acc;
  }
  return y;
}

CVector vec(const CMatrix& z) { return z.a; }

CMatrix unvec(const CVector& v, int rows, int cols) {
  if (v.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
    fail(Errc::DimensionMismatch, "unvec: length mismatch");
  CMatrix z(rows, cols);
  z.a = v;
  return z;
}

CVector solve_small(CMatrix a, CVector b) {
  if (a.rows != a.cols || b.size() != static_cast<std::size_t>(a.rows))
    fail(Errc::DimensionMismatch, "solve_small: shape mismatch");
  const int n = a.rows;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double m = std::abs(a(i, k));
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (best == 0.0) fail(Errc::SingularUpdateSystem, "solve_small: exactly singular pivot");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(piv)]);
    }
    const Cx akk = a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const Cx l = a(i, k) / akk;
      if (l == Cx(0.0)) continue;
      a(i, k) = l;
      for (int j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
      b[static_cast<std::size_t>(i)] -= l * b[static_cast<std::size_t>(k)];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    Cx acc = b[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) acc -= a(i, j) * b[static_cast<std::size_t>(j)];
    b[static_cast<std::size_t>(i)] = acc / a(i, i);
  }
  return b;
}

}  // namespace nepv
