// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#include "nepv/kernels.hpp"

namespace nepv::kernels {

namespace {

void check_kron_shape(const CMatrix& out, const CMatrix& a, const CMatrix& b) {
  if (out.rows != a.rows * b.rows || out.cols != a.cols * b.cols)
    fail(Errc::DimensionMismatch, "kron_acc: output shape");
}

// One coefficient block: out[ia*br.., ja*bc..] += aval * b. Shared by the
// serial and parallel drivers so their arithmetic is identical.
inline void kron_block(CMatrix& out, Cx aval, const CMatrix& b, int ia, int ja) {
  const int br = b.rows, bc = b.cols;
  const std::size_t orows = static_cast<std::size_t>(out.rows);
  for (int jb = 0; jb < bc; ++jb) {
    Cx* dst = out.a.data() + static_cast<std::size_t>(ja * bc + jb) * orows +
              static_cast<std::size_t>(ia) * br;
    const Cx* src = b.a.data() + static_cast<std::size_t>(jb) * br;
    for (int ib = 0; ib < br; ++ib) dst[ib] += aval * src[ib];
  }
}

}  // namespace

namespace serial {

void kron_acc(CMatrix& out, Cx alpha, const CMatrix& a, const CMatrix& b) {
  check_kron_shape(out, a, b);
  for (int ja = 0; ja < a.cols; ++ja)
    for (int ia = 0; ia < a.rows; ++ia) kron_block(out, alpha * a(ia, ja), b, ia, ja);
}

}  // namespace serial

void kron_acc(CMatrix& out, Cx alpha, const CMatrix& a, const CMatrix& b) {
  check_kron_shape(out, a, b);
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static)
  for (int ja = 0; ja < a.cols; ++ja)
    for (int ia = 0; ia < a.rows; ++ia) kron_block(out, alpha * a(ia, ja), b, ia, ja);
#else
  serial::kron_acc(out, alpha, a, b);
#endif
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows * b.rows, a.cols * b.cols);
  kron_acc(out, Cx(1.0), a, b);
  return out;
}

CVector kron_vec(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  std::size_t k = 0;
  for (const Cx& av : a)
    for (const Cx& bv : b) out[k++] = av * bv;
  return out;
}

CVector kron_power(const CVector& x, int count) {
  if (count < 1) fail(Errc::InvalidArgument, "kron_power: count must be >= 1");
  CVector out = x;
  for (int i = 1; i < count; ++i) out = kron_vec(out, x);
  return out;
}

}  // namespace nepv::kernels
