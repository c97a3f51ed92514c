// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#pragma once

#include "nepv/core.hpp"

// Kronecker-product kernels. The hot call is kron_acc, which the operator
// determinant assembly hits once per cofactor term; it parallelizes over
// coefficient blocks with OpenMP when available. Each output entry is written
// by exactly one block, so the parallel and serial versions are bitwise
// identical; nepv::kernels::serial keeps the plain-loop reference used by the
// test suite and the benchmark target.

namespace nepv::kernels {

namespace serial {
// out += alpha * (a (x) b); out must be (a.rows*b.rows) x (a.cols*b.cols).
void kron_acc(CMatrix& out, Cx alpha, const CMatrix& a, const CMatrix& b);
}  // namespace serial

void kron_acc(CMatrix& out, Cx alpha, const CMatrix& a, const CMatrix& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// a (x) b for vectors under the same convention: (a (x) b)[i*len(b)+j] = a[i]*b[j].
CVector kron_vec(const CVector& a, const CVector& b);

// x (x) x (x) ... (x) x with `count` factors.
CVector kron_power(const CVector& x, int count);

}  // namespace nepv::kernels
