// Copyright 2026 The ptdilate authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/reports.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace ptdilate {

namespace {

using nlohmann::json;

[[noreturn]] void throw_serialization(const std::string& msg) {
  throw Error(ErrorKind::serialization, msg);
}

void require_encodable(double x) {
  if (!std::isfinite(x)) throw_serialization("cannot encode a non-finite real");
}

std::string format_with(const char* fmt, double x) {
  require_encodable(x);
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

json parse(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw_serialization("malformed JSON document");
  return j;
}

double get_real(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw_serialization(std::string("missing or non-numeric field: ") + key);
  return j.at(key).get<double>();
}

// Writes matrices through the same 17-digit formatter as scalars so decoding
// reproduces every bit.
void append_matrix(std::string& out, const ComplexMatrix& m) {
  out += '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += '[';
      out += format_real_json(m(i, j).real());
      out += ',';
      out += format_real_json(m(i, j).imag());
      out += ']';
    }
    out += ']';
  }
  out += ']';
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw_serialization("matrix must be a nonempty array of rows");
  std::size_t rows = j.size();
  std::size_t cols = j.at(0).size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || row.size() != cols) throw_serialization("ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k) {
      const json& cell = row.at(k);
      if (!cell.is_array() || cell.size() != 2 || !cell.at(0).is_number() ||
          !cell.at(1).is_number())
        throw_serialization("matrix entries must be [re, im] pairs");
      m(i, k) = cx{cell.at(0).get<double>(), cell.at(1).get<double>()};
    }
  }
  return m;
}

void append_kv(std::string& out, const char* key, const std::string& value, bool quote = false) {
  out += '"';
  out += key;
  out += "\":";
  if (quote) {
    out += '"';
    out += value;
    out += '"';
  } else {
    out += value;
  }
}

}  // namespace

std::string format_real_csv(double x) { return format_with("%.8g", x); }

std::string format_real_json(double x) {
  // "-0" would be parsed back as the integer zero, losing the sign bit.
  if (x == 0.0) return std::signbit(x) ? "-0.0" : "0";
  return format_with("%.17g", x);
}

std::string to_csv_row(const BellReport& r) {
  std::string out;
  out += format_real_csv(r.alpha);
  out += ',';
  out += format_real_csv(r.e0);
  out += ',';
  out += format_real_csv(r.s);
  out += ',';
  out += picture_name(r.picture);
  for (double v : {r.b0a0, r.b1a0, r.b0a1, r.b1a1, r.bell_value, r.deviation_term, r.bound}) {
    out += ',';
    out += format_real_csv(v);
  }
  return out;
}

std::string to_csv_row(const EvolutionComparison& r) {
  return format_real_csv(r.t) + "," + format_real_csv(r.deviation) + "," +
         format_real_csv(r.success_probability);
}

std::string to_csv(const ShotTable& t) {
  std::string out = kShotTableCsvHeader;
  out += '\n';
  for (const auto& row : t.rows) {
    char buf[32];
    out += std::to_string(row.setting_i);
    out += ',';
    out += std::to_string(row.setting_j);
    out += ',';
    out += format_real_csv(row.outcome_a);
    out += ',';
    out += format_real_csv(row.outcome_b);
    out += ',';
    std::snprintf(buf, sizeof buf, "%" PRIu64, static_cast<std::uint64_t>(row.count));
    out += buf;
    out += '\n';
  }
  return out;
}

std::string to_json(const BellReport& r) {
  std::string out = "{";
  append_kv(out, "alpha", format_real_json(r.alpha));
  out += ',';
  append_kv(out, "e0", format_real_json(r.e0));
  out += ',';
  append_kv(out, "s", format_real_json(r.s));
  out += ',';
  append_kv(out, "picture", picture_name(r.picture), true);
  out += ',';
  append_kv(out, "b0a0", format_real_json(r.b0a0));
  out += ',';
  append_kv(out, "b1a0", format_real_json(r.b1a0));
  out += ',';
  append_kv(out, "b0a1", format_real_json(r.b0a1));
  out += ',';
  append_kv(out, "b1a1", format_real_json(r.b1a1));
  out += ',';
  append_kv(out, "bell_value", format_real_json(r.bell_value));
  out += ',';
  append_kv(out, "mean_term", format_real_json(r.mean_term));
  out += ',';
  append_kv(out, "deviation_term", format_real_json(r.deviation_term));
  out += ',';
  append_kv(out, "bound", format_real_json(r.bound));
  out += '}';
  return out;
}

BellReport bell_report_from_json(std::string_view text) {
  json j = parse(text);
  BellReport r;
  r.alpha = get_real(j, "alpha");
  r.e0 = get_real(j, "e0");
  r.s = get_real(j, "s");
  if (!j.contains("picture") || !j.at("picture").is_string())
    throw_serialization("missing picture name");
  r.picture = picture_from_name(j.at("picture").get<std::string>());
  r.b0a0 = get_real(j, "b0a0");
  r.b1a0 = get_real(j, "b1a0");
  r.b0a1 = get_real(j, "b0a1");
  r.b1a1 = get_real(j, "b1a1");
  r.bell_value = get_real(j, "bell_value");
  r.mean_term = get_real(j, "mean_term");
  r.deviation_term = get_real(j, "deviation_term");
  r.bound = get_real(j, "bound");
  return r;
}

std::string to_json(const EstimatorResult& r) {
  char shots[32], seed[32];
  std::snprintf(shots, sizeof shots, "%" PRIu64, static_cast<std::uint64_t>(r.shots));
  std::snprintf(seed, sizeof seed, "%" PRIu64, static_cast<std::uint64_t>(r.seed));
  std::string out = "{";
  append_kv(out, "mean", format_real_json(r.mean));
  out += ',';
  append_kv(out, "stderr", format_real_json(r.std_error));
  out += ',';
  append_kv(out, "shots", shots);
  out += ',';
  append_kv(out, "seed", seed);
  out += ',';
  append_kv(out, "degenerate", r.degenerate ? "true" : "false");
  out += '}';
  return out;
}

EstimatorResult estimator_from_json(std::string_view text) {
  json j = parse(text);
  EstimatorResult r;
  r.mean = get_real(j, "mean");
  r.std_error = get_real(j, "stderr");
  if (!j.contains("shots") || !j.at("shots").is_number_unsigned())
    throw_serialization("missing shot count");
  r.shots = j.at("shots").get<std::uint64_t>();
  if (!j.contains("seed") || !j.at("seed").is_number_unsigned())
    throw_serialization("missing seed");
  r.seed = j.at("seed").get<std::uint64_t>();
  if (!j.contains("degenerate") || !j.at("degenerate").is_boolean())
    throw_serialization("missing degenerate flag");
  r.degenerate = j.at("degenerate").get<bool>();
  return r;
}

std::string to_json(const ComplexMatrix& m) {
  if (!m.all_finite()) throw_serialization("cannot encode a non-finite matrix");
  std::string out;
  append_matrix(out, m);
  return out;
}

std::string to_json(const DilationResult& d) {
  std::string out = "{";
  append_kv(out, "e0", format_real_json(d.params.e0));
  out += ',';
  append_kv(out, "s", format_real_json(d.params.s));
  out += ',';
  append_kv(out, "alpha", format_real_json(d.params.alpha));
  out += ',';
  append_kv(out, "omega0", format_real_json(omega0(d.params)));
  out += ',';
  out += "\"h\":";
  append_matrix(out, d.h);
  out += ',';
  out += "\"t\":";
  append_matrix(out, d.t);
  out += ',';
  out += "\"lambda\":";
  append_matrix(out, d.lambda);
  out += ',';
  out += "\"omega\":";
  append_matrix(out, d.omega);
  out += ',';
  out += "\"hhat\":";
  append_matrix(out, d.hhat);
  out += ',';
  out += "\"residuals\":{";
  bool first = true;
  for (const auto& [name, value] : d.residuals) {
    if (!first) out += ',';
    first = false;
    append_kv(out, name.c_str(), format_real_json(value));
  }
  out += "}}";
  return out;
}

DilationResult dilation_from_json(std::string_view text) {
  json j = parse(text);
  DilationResult d;
  d.params.e0 = get_real(j, "e0");
  d.params.s = get_real(j, "s");
  d.params.alpha = get_real(j, "alpha");
  for (const char* key : {"h", "t", "lambda", "omega", "hhat"})
    if (!j.contains(key)) throw_serialization(std::string("missing matrix: ") + key);
  d.h = matrix_from_json(j.at("h"));
  d.t = matrix_from_json(j.at("t"));
  d.lambda = matrix_from_json(j.at("lambda"));
  d.omega = matrix_from_json(j.at("omega"));
  d.hhat = matrix_from_json(j.at("hhat"));
  if (j.contains("residuals")) {
    if (!j.at("residuals").is_object()) throw_serialization("residuals must be an object");
    for (const auto& [name, value] : j.at("residuals").items()) {
      if (!value.is_number()) throw_serialization("residuals must be numeric");
      d.residuals[name] = value.get<double>();
    }
  }
  return d;
}

}  // namespace ptdilate
