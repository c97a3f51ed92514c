// Copyright (c) 2026 nepv contributors
// SPDX-License-Identifier: MIT

#include "nepv/io.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace nepv {

namespace {

using nlohmann::json;

// Shortest decimal form that parses back to the same bits; bare integers
// stay bare ("2550.25", "1", "-0.5").
std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// JSON scalar: bare number for exact reals (negative zero kept complex so
// the round trip stays bit-exact), [re, im] otherwise.
void put_scalar(std::string& out, Cx z) {
  if (z.imag() == 0.0 && !std::signbit(z.imag())) {
    out += fmt(z.real());
    return;
  }
  out += '[';
  out += fmt(z.real());
  out += ", ";
  out += fmt(z.imag());
  out += ']';
}

void put_row(std::string& out, const Cx* row, int n, int stride) {
  out += '[';
  for (int j = 0; j < n; ++j) {
    if (j) out += ", ";
    put_scalar(out, row[static_cast<std::size_t>(j) * stride]);
  }
  out += ']';
}

// Emits the open bracket and the rows, one per line; the caller closes the
// bracket at its own indentation level.
void put_matrix(std::string& out, const CMatrix& a, const char* indent) {
  out += "[\n";
  for (int i = 0; i < a.rows; ++i) {
    out += indent;
    put_row(out, &a(i, 0), a.cols, a.rows);  // column-major storage, row walk
    out += (i + 1 < a.rows) ? ",\n" : "\n";
  }
}

void check_finite(const CMatrix& a, const std::string& name) {
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
        fail(Errc::InvalidArgument, name + ": non-finite entry cannot be serialized");
}

void check_finite(const CVector& v, const std::string& name) {
  for (const Cx& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(Errc::InvalidArgument, name + ": non-finite entry cannot be serialized");
}

double num_at(const json& j, const std::string& path) {
  if (!j.is_number()) fail(Errc::BadProblemFile, path + ": expected a number");
  return j.get<double>();
}

Cx scalar_at(const json& j, const std::string& path) {
  if (j.is_number()) return Cx(j.get<double>(), 0.0);
  if (j.is_array()) {
    if (j.size() != 2)
      fail(Errc::BadProblemFile,
           path + ": complex scalar needs exactly [re, im], got " + std::to_string(j.size()) +
               " entries");
    return Cx(num_at(j[0], path + "[0]"), num_at(j[1], path + "[1]"));
  }
  fail(Errc::BadProblemFile, path + ": expected a number or [re, im]");
}

CVector vector_at(const json& j, const std::string& path, int n) {
  if (!j.is_array()) fail(Errc::BadProblemFile, path + ": expected an array");
  if (static_cast<int>(j.size()) != n)
    fail(Errc::BadProblemFile, path + ": expected " + std::to_string(n) + " entries, got " +
                                   std::to_string(j.size()));
  CVector v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = scalar_at(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

CMatrix matrix_at(const json& j, const std::string& path, int n) {
  if (!j.is_array()) fail(Errc::BadProblemFile, path + ": expected an array of rows");
  if (static_cast<int>(j.size()) != n)
    fail(Errc::BadProblemFile,
         path + ": expected " + std::to_string(n) + " rows, got " + std::to_string(j.size()));
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    const CVector row = vector_at(j[i], path + "[" + std::to_string(i) + "]", n);
    for (int k = 0; k < n; ++k) a(i, k) = row[k];
  }
  return a;
}

int int_at(const json& j, const std::string& path) {
  if (!j.is_number_integer())
    fail(Errc::BadProblemFile, path + ": expected a positive integer");
  const auto v = j.get<std::int64_t>();
  if (v < 1 || v > 100000) fail(Errc::BadProblemFile, path + ": out of range");
  return static_cast<int>(v);
}

const json& field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) fail(Errc::BadProblemFile, std::string(name) + ": missing field");
  return *it;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, path + ": cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(Errc::IoError, path + ": read failed");
  return buf.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, path + ": cannot open for writing");
  out << text;
  out.flush();
  if (!out) fail(Errc::IoError, path + ": write failed");
}

json parse_or_fail(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::BadProblemFile, e.what());
  }
}

}  // namespace

std::string problem_to_json(const NepvProblem& p, const std::vector<CVector>& g) {
  const int n = p.n(), m = p.m();
  if (n < 1 || m < 1) fail(Errc::InvalidArgument, "problem_to_json: empty problem");
  if (p.A.rows != n || p.A.cols != n || p.B.rows != n || p.B.cols != n)
    fail(Errc::DimensionMismatch, "problem_to_json: A/B shape");
  if (static_cast<int>(p.r.size()) != m || static_cast<int>(p.s.size()) != m)
    fail(Errc::DimensionMismatch, "problem_to_json: r/s count");
  if (!g.empty() && static_cast<int>(g.size()) != m)
    fail(Errc::DimensionMismatch, "problem_to_json: g count");
  check_finite(p.A, "A");
  check_finite(p.B, "B");
  for (int i = 0; i < m; ++i) {
    if (p.C[i].rows != n || p.C[i].cols != n)
      fail(Errc::DimensionMismatch, "problem_to_json: C shape");
    if (static_cast<int>(p.r[i].size()) != n || static_cast<int>(p.s[i].size()) != n)
      fail(Errc::DimensionMismatch, "problem_to_json: r/s length");
    check_finite(p.C[i], "C");
    check_finite(p.r[i], "r");
    check_finite(p.s[i], "s");
  }
  for (const auto& gi : g) {
    if (static_cast<int>(gi.size()) != n) fail(Errc::DimensionMismatch, "problem_to_json: g length");
    check_finite(gi, "g");
  }

  std::string out;
  out.reserve(static_cast<std::size_t>(n) * n * (m + 2) * 8);
  out += "{\n";
  out += "  \"n\": " + std::to_string(n) + ",\n";
  out += "  \"m\": " + std::to_string(m) + ",\n";
  out += "  \"A\": ";
  put_matrix(out, p.A, "    ");
  out += "  ],\n  \"B\": ";
  put_matrix(out, p.B, "    ");
  out += "  ],\n  \"C\": [\n";
  for (int i = 0; i < m; ++i) {
    out += "    ";
    put_matrix(out, p.C[i], "      ");
    out += (i + 1 < m) ? "    ],\n" : "    ]\n";
  }
  out += "  ],\n";
  const auto put_vecs = [&](const char* name, const std::vector<CVector>& vs) {
    out += "  \"";
    out += name;
    out += "\": [\n";
    for (std::size_t i = 0; i < vs.size(); ++i) {
      out += "    ";
      put_row(out, vs[i].data(), static_cast<int>(vs[i].size()), 1);
      out += (i + 1 < vs.size()) ? ",\n" : "\n";
    }
    out += "  ]";
  };
  put_vecs("r", p.r);
  out += ",\n";
  put_vecs("s", p.s);
  if (!g.empty()) {
    out += ",\n";
    put_vecs("g", g);
  }
  out += "\n}\n";
  return out;
}

ProblemFile parse_problem_json(const std::string& text) {
  const json j = parse_or_fail(text);
  if (!j.is_object()) fail(Errc::BadProblemFile, "top level: expected an object");
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    if (k != "n" && k != "m" && k != "A" && k != "B" && k != "C" && k != "r" && k != "s" &&
        k != "g")
      fail(Errc::BadProblemFile, k + ": unknown field");
  }
  const int n = int_at(field(j, "n"), "n");
  const int m = int_at(field(j, "m"), "m");

  ProblemFile pf;
  pf.problem.A = matrix_at(field(j, "A"), "A", n);
  pf.problem.B = matrix_at(field(j, "B"), "B", n);

  const auto list_at = [&](const char* name) -> const json& {
    const json& l = field(j, name);
    if (!l.is_array() || static_cast<int>(l.size()) != m)
      fail(Errc::BadProblemFile,
           std::string(name) + ": expected a list of " + std::to_string(m) + " entries");
    return l;
  };
  const json& c = list_at("C");
  const json& r = list_at("r");
  const json& s = list_at("s");
  for (int i = 0; i < m; ++i) {
    const std::string idx = "[" + std::to_string(i) + "]";
    pf.problem.C.push_back(matrix_at(c[i], "C" + idx, n));
    pf.problem.r.push_back(vector_at(r[i], "r" + idx, n));
    pf.problem.s.push_back(vector_at(s[i], "s" + idx, n));
  }
  if (j.contains("g")) {
    const json& g = list_at("g");
    for (int i = 0; i < m; ++i)
      pf.g.push_back(vector_at(g[i], "g[" + std::to_string(i) + "]", n));
  }
  return pf;
}

ProblemFile read_problem_file(const std::string& path) {
  try {
    return parse_problem_json(slurp(path));
  } catch (const Error& e) {
    if (e.code() == Errc::IoError) throw;
    fail(Errc::BadProblemFile, path + ": " + e.what());
  }
}

void write_problem_file(const std::string& path, const NepvProblem& p,
                        const std::vector<CVector>& g) {
  spill(path, problem_to_json(p, g));
}

CVector parse_vector_json(const std::string& text) {
  const json j = parse_or_fail(text);
  if (!j.is_array() || j.empty())
    fail(Errc::BadProblemFile, "top level: expected a non-empty array of scalars");
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v[i] = scalar_at(j[i], "[" + std::to_string(i) + "]");
  return v;
}

CVector read_vector_file(const std::string& path) {
  try {
    return parse_vector_json(slurp(path));
  } catch (const Error& e) {
    if (e.code() == Errc::IoError) throw;
    fail(Errc::BadProblemFile, path + ": " + e.what());
  }
}

std::string history_csv(const std::vector<HistoryRow>& history, int m) {
  if (m < 0) fail(Errc::InvalidArgument, "history_csv: negative m");
  std::string out = "iter,residual,lambda_re,lambda_im";
  for (int i = 1; i <= m; ++i)
    out += ",mu" + std::to_string(i) + "_re,mu" + std::to_string(i) + "_im";
  out += '\n';
  const double nan = std::nan("");
  for (const HistoryRow& row : history) {
    out += std::to_string(row.iteration);
    out += ',';
    out += fmt(row.residual);
    out += ',';
    out += fmt(row.lambda.real());
    out += ',';
    out += fmt(row.lambda.imag());
    for (int i = 0; i < m; ++i) {
      const Cx mu = i < static_cast<int>(row.mu.size()) ? row.mu[i] : Cx(nan, nan);
      out += ',';
      out += fmt(mu.real());
      out += ',';
      out += fmt(mu.imag());
    }
    out += '\n';
  }
  return out;
}

void write_history_csv(const std::string& path, const std::vector<HistoryRow>& history, int m) {
  spill(path, history_csv(history, m));
}

}  // namespace nepv
