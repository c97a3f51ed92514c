// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#pragma once

#include <string>
#include <vector>

#include "nepv/problem.hpp"
#include "nepv/resinv.hpp"

// Problem interchange format and the CSV convergence-history writer.
//
// A problem file is a JSON document
//
//   {"n": .., "m": .., "A": [[..]..], "B": .., "C": [mat..], "r": [vec..],
//    "s": [vec..], "g": [vec..]}
//
// with matrices as row-major nested arrays and m-long lists for C, r, s.
// Complex scalars are two-element arrays [re, im]; real scalars may be bare
// numbers. "g" is optional: it only pins the linearization vectors, which
// true solutions do not depend on.
//
// The serializer is canonical (fixed key order, one matrix row per line,
// shortest round-trip number formatting, bare numbers for exact reals), so
// writing the same problem twice produces byte-identical files and a
// write/read round trip reproduces every matrix entry bit-exactly.

namespace nepv {

struct ProblemFile {
  NepvProblem problem;
  std::vector<CVector> g;  // empty when the file has no "g" entry
};

// Serialize to the canonical text form (ends with a newline).
std::string problem_to_json(const NepvProblem& p, const std::vector<CVector>& g);

// Parse and shape-check a problem document. Throws Error(BadProblemFile)
// with a field-precise message ("C[1][3]: expected 5 entries, got 4"); JSON
// syntax errors carry the parser's position report.
ProblemFile parse_problem_json(const std::string& text);

// File wrappers; filesystem failures throw Error(IoError).
ProblemFile read_problem_file(const std::string& path);
void write_problem_file(const std::string& path, const NepvProblem& p,
                        const std::vector<CVector>& g);

// Parse a start vector: a JSON array of scalars in the same encoding.
CVector parse_vector_json(const std::string& text);
CVector read_vector_file(const std::string& path);

// Convergence history as CSV with the fixed column set
//   iter,residual,lambda_re,lambda_im,mu1_re,mu1_im,...
// one row per recorded iteration, in order. m names the number of mu
// columns; rows with fewer mu entries (degenerate estimates) are padded with
// nan. Non-finite values print as inf/-inf/nan.
std::string history_csv(const std::vector<HistoryRow>& history, int m);
void write_history_csv(const std::string& path, const std::vector<HistoryRow>& history, int m);

}  // namespace nepv
