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

// Command-line front end. Everything numerical happens behind the C API in
// libptdilate; this file only parses flags, shuttles buffers, and writes
// CSV/JSON.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptdilate/ptdilate.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

struct StringFree {
  void operator()(char* s) const { ptd_string_free(s); }
};
using CStr = std::unique_ptr<char, StringFree>;

[[noreturn]] void fail(ptd_status st) {
  std::cerr << "error: " << ptd_last_error() << "\n";
  std::exit(st == PTD_OK ? PTD_ERROR : static_cast<int>(st));
}

void check(ptd_status st) {
  if (st != PTD_OK) fail(st);
}

// Runs fn(&raw) and owns the resulting string. Keeping the call and the
// read of raw in separate statements matters: argument evaluation order is
// indeterminate.
template <typename Fn>
std::string c_string(Fn&& fn) {
  char* raw = nullptr;
  check(fn(&raw));
  CStr owned(raw);
  return raw == nullptr ? std::string() : std::string(owned.get());
}

// Model parameters shared by most subcommands.
struct ModelFlags {
  double e0 = 0.0;
  double s = 1.0;
  double alpha = 0.0;
  double alpha_deg = 0.0;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* alpha_deg_opt = nullptr;

  double resolved_alpha() const {
    if (alpha_deg_opt != nullptr && alpha_deg_opt->count() > 0) return alpha_deg * kPi / 180.0;
    return alpha;
  }
};

void add_model_flags(CLI::App* cmd, ModelFlags& m, bool alpha_required = true) {
  cmd->add_option("--e0", m.e0, "Mean energy E0")->capture_default_str();
  cmd->add_option("--s", m.s, "Coupling strength s (nonzero)")->capture_default_str();
  m.alpha_opt = cmd->add_option("--alpha", m.alpha, "Non-Hermiticity angle in radians");
  m.alpha_deg_opt =
      cmd->add_option("--alpha-deg", m.alpha_deg, "Non-Hermiticity angle in degrees");
  m.alpha_deg_opt->excludes(m.alpha_opt);
  if (alpha_required) {
    // Exactly one of the two spellings.
    cmd->callback([&m, cmd]() {
      if (m.alpha_opt->count() == 0 && m.alpha_deg_opt->count() == 0)
        throw CLI::RequiredError(cmd->get_name() + " requires --alpha or --alpha-deg");
    });
  }
}

struct OutputFlags {
  std::string path;
  std::string format;
};

void add_output_flags(CLI::App* cmd, OutputFlags& o, const std::string& default_format) {
  cmd->add_option("--output,-o", o.path,
                  "Output file (default stdout; relative paths land in "
                  "$PTDILATE_OUTPUT_DIR when set)");
  o.format = default_format;
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("PTDILATE_OUTPUT_DIR"); dir != nullptr && *dir != '\0')
      return std::filesystem::path(dir) / p;
  }
  return p;
}

void emit(const OutputFlags& o, const std::string& payload) {
  if (o.path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::filesystem::path p = resolve_output(o.path);
  std::ofstream f(p, std::ios::binary);
  if (!f || !(f << payload)) {
    std::cerr << "error: cannot write " << p.string() << "\n";
    std::exit(PTD_ERROR);
  }
  if (!payload.empty() && payload.back() != '\n') f << '\n';
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string estimate_json(const ptd_estimate& e) {
  return c_string([&](char** out) { return ptd_estimate_to_json(&e, out); });
}

using Dilation = std::unique_ptr<ptd_dilation, decltype(&ptd_dilation_free)>;

Dilation make_dilation(const ModelFlags& m) {
  ptd_dilation* raw = nullptr;
  check(ptd_dilation_create(m.e0, m.s, m.resolved_alpha(), &raw));
  return Dilation(raw, &ptd_dilation_free);
}

std::vector<double> time_grid(double t_max, std::size_t steps) {
  std::vector<double> ts(steps);
  if (steps == 1) {
    ts[0] = t_max;
    return ts;
  }
  for (std::size_t i = 0; i < steps; ++i)
    ts[i] = t_max * static_cast<double>(i) / static_cast<double>(steps - 1);
  return ts;
}

std::string residuals_json(const ptd_residuals& r) {
  std::string out = "{";
  out += "\"hermiticity\":" + fmt17(r.hermiticity);
  out += ",\"generator_primary\":" + fmt17(r.generator_primary);
  out += ",\"generator_secondary\":" + fmt17(r.generator_secondary);
  out += ",\"evolution\":" + fmt17(r.evolution);
  out += ",\"spectrum\":" + fmt17(r.spectrum);
  out += ",\"pass\":";
  out += r.pass ? "true" : "false";
  out += "}";
  return out;
}

// ---- per-subcommand state ---------------------------------------------

struct AliceFlags {
  std::vector<double> u{1.0 / 1.4142135623730951, 0.0};
  std::vector<double> v{1.0 / 1.4142135623730951, 0.0};
};

void add_alice_flags(CLI::App* cmd, AliceFlags& a) {
  cmd->add_option("--u", a.u, "Alice amplitude u as re im (default 1/sqrt(2) 0)")
      ->expected(2);
  cmd->add_option("--v", a.v, "Alice amplitude v as re im (default 1/sqrt(2) 0)")
      ->expected(2);
}

struct LocalFlags {
  std::vector<double> s_plus{1.0 / 1.4142135623730951, 0.0, 1.0 / 1.4142135623730951, 0.0};
  std::vector<double> s_minus{1.0 / 1.4142135623730951, 0.0, -1.0 / 1.4142135623730951, 0.0};
};

void add_local_flags(CLI::App* cmd, LocalFlags& l) {
  cmd->add_option("--s-plus", l.s_plus, "H_h eigenvector |s+> as re im re im")->expected(4);
  cmd->add_option("--s-minus", l.s_minus, "H_h eigenvector |s-> as re im re im")->expected(4);
}

std::string bell_report_payload(const ptd_bell_report& r, const std::string& format) {
  if (format == "json")
    return c_string([&](char** out) { return ptd_bell_report_to_json(&r, out); });
  std::string hdr = c_string([](char** out) { return ptd_bell_csv_header(out); });
  std::string row = c_string([&](char** out) { return ptd_bell_report_to_csv(&r, out); });
  return hdr + "\n" + row + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian dilations of 2D PT-symmetric Hamiltonians: build, verify,\n"
               "evolve with post-selection, and compare Bell-operator pictures."};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read defaults from a key=value file");
  app.fallthrough(false);

  // dilate ----------------------------------------------------------------
  auto* dilate = app.add_subcommand("dilate", "Build H, T, Lambda, Omega, Hhat")->configurable();
  ModelFlags dilate_model;
  OutputFlags dilate_out;
  add_model_flags(dilate, dilate_model);
  add_output_flags(dilate, dilate_out, "json");

  // verify ----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Check every dilation identity")->configurable();
  ModelFlags verify_model;
  OutputFlags verify_out;
  int verify_trials = 20;
  double verify_tmax = 10.0;
  std::size_t verify_tsteps = 21;
  std::uint64_t verify_seed = 1;
  double verify_tol = 1e-8;
  add_model_flags(verify, verify_model);
  add_output_flags(verify, verify_out, "json");
  verify->add_option("--trials", verify_trials, "Random states per time sample")
      ->capture_default_str();
  verify->add_option("--t-max", verify_tmax, "Largest evolution time")->capture_default_str();
  verify->add_option("--t-steps", verify_tsteps, "Time samples in [0, t-max]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--seed", verify_seed, "Random-state seed")->capture_default_str();
  verify->add_option("--tolerance", verify_tol, "Residual tolerance")->capture_default_str();

  // evolve ----------------------------------------------------------------
  auto* evolve = app.add_subcommand("evolve", "Post-selected evolution trace")->configurable();
  ModelFlags evolve_model;
  OutputFlags evolve_out;
  std::vector<double> evolve_psi{1.0, 0.0, 0.0, 0.0};
  double evolve_tmax = 10.0;
  std::size_t evolve_tsteps = 21;
  std::string evolve_convention = "minus";
  add_model_flags(evolve, evolve_model);
  add_output_flags(evolve, evolve_out, "csv");
  evolve->add_option("--psi", evolve_psi, "System state as re im re im")->expected(4);
  evolve->add_option("--t-max", evolve_tmax, "Largest evolution time")->capture_default_str();
  evolve->add_option("--t-steps", evolve_tsteps, "Time samples in [0, t-max]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evolve->add_option("--convention", evolve_convention, "Dilated-state pairing")
      ->check(CLI::IsMember({"plus", "minus"}))
      ->capture_default_str();

  // bell ------------------------------------------------------------------
  auto* bell = app.add_subcommand("bell", "One Bell report for one picture")->configurable();
  ModelFlags bell_model;
  OutputFlags bell_out;
  std::string bell_picture = "simulation";
  AliceFlags bell_alice;
  LocalFlags bell_local;
  double bell_p_plus = 1.0;
  add_model_flags(bell, bell_model);
  add_output_flags(bell, bell_out, "csv");
  bell->add_option("--picture", bell_picture, "Correlation picture")
      ->check(CLI::IsMember({"simulation", "classical", "local_hermitian"}))
      ->capture_default_str();
  add_alice_flags(bell, bell_alice);
  add_local_flags(bell, bell_local);
  bell->add_option("--p-plus", bell_p_plus, "Classical probability of lambda+")
      ->capture_default_str();

  // scan ------------------------------------------------------------------
  auto* scan = app.add_subcommand("scan", "Bell reports over an alpha grid")->configurable();
  OutputFlags scan_out;
  double scan_e0 = 0.0, scan_s = 1.0;
  double scan_alpha_min = 0.0, scan_alpha_max = 0.49 * kPi;
  std::size_t scan_steps = 25;
  std::vector<std::string> scan_pictures{"simulation", "classical", "local_hermitian"};
  add_output_flags(scan, scan_out, "csv");
  scan->add_option("--e0", scan_e0, "Mean energy E0")->capture_default_str();
  scan->add_option("--s", scan_s, "Coupling strength s")->capture_default_str();
  scan->add_option("--alpha-min", scan_alpha_min, "Grid start (radians)")->capture_default_str();
  scan->add_option("--alpha-max", scan_alpha_max, "Grid end (radians)")->capture_default_str();
  scan->add_option("--steps", scan_steps, "Grid points (>= 2)")->capture_default_str();
  scan->add_option("--pictures", scan_pictures, "Comma-separated picture list")
      ->delimiter(',');

  // sample ----------------------------------------------------------------
  auto* sample = app.add_subcommand("sample", "Finite-shot Monte Carlo estimate")->configurable();
  ModelFlags sample_model;
  OutputFlags sample_out;
  std::string sample_picture = "simulation";
  AliceFlags sample_alice;
  LocalFlags sample_local;
  double sample_p_plus = 1.0;
  std::uint64_t sample_shots = 100000;
  std::uint64_t sample_seed = 1;
  std::string sample_table_path;
  add_model_flags(sample, sample_model);
  add_output_flags(sample, sample_out, "json");
  sample->add_option("--picture", sample_picture, "Correlation picture")
      ->check(CLI::IsMember({"simulation", "classical", "local_hermitian"}))
      ->capture_default_str();
  add_alice_flags(sample, sample_alice);
  add_local_flags(sample, sample_local);
  sample->add_option("--p-plus", sample_p_plus, "Classical probability of lambda+")
      ->capture_default_str();
  sample->add_option("--shots", sample_shots, "Shots per setting pair")->capture_default_str();
  sample->add_option("--seed", sample_seed, "Stream seed")->capture_default_str();
  sample->add_option("--table-output", sample_table_path,
                     "Write the classical shot table as CSV to this file");

  // chsh ------------------------------------------------------------------
  auto* chsh = app.add_subcommand("chsh", "Singlet CHSH baseline")->configurable();
  OutputFlags chsh_out;
  add_output_flags(chsh, chsh_out, "json");

  // classify --------------------------------------------------------------
  auto* classify = app.add_subcommand("classify", "Place an observed Bell value")->configurable();
  ModelFlags classify_model;
  OutputFlags classify_out;
  double classify_observed = 0.0;
  add_model_flags(classify, classify_model);
  add_output_flags(classify, classify_out, "json");
  classify->add_option("--observed", classify_observed, "Observed Bell value")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return PTD_CONTRACT_VIOLATION;
  }

  if (dilate->parsed()) {
    if (dilate_out.format != "json") {
      std::cerr << "error: dilate reports are JSON only\n";
      return PTD_CONTRACT_VIOLATION;
    }
    Dilation d = make_dilation(dilate_model);
    std::string json = c_string(
        [&](char** out) { return ptd_dilation_report_json(d.get(), nullptr, out); });
    emit(dilate_out, json);
    return 0;
  }

  if (verify->parsed()) {
    if (verify_out.format != "json") {
      std::cerr << "error: verify reports are JSON only\n";
      return PTD_CONTRACT_VIOLATION;
    }
    Dilation d = make_dilation(verify_model);
    std::vector<double> ts = time_grid(verify_tmax, verify_tsteps);
    ptd_residuals r{};
    check(ptd_dilation_verify(d.get(), verify_trials, ts.data(), ts.size(), verify_seed,
                              verify_tol, &r));
    std::string body =
        c_string([&](char** out) { return ptd_dilation_report_json(d.get(), &r, out); });
    std::string payload = std::string("{\"report\":") + body +
                          ",\"residual_check\":" + residuals_json(r) +
                          ",\"tolerance\":" + fmt17(verify_tol) + "}";
    emit(verify_out, payload);
    if (!r.pass) {
      std::cerr << "error: a dilation residual exceeded tolerance " << verify_tol << "\n";
      return PTD_VERIFICATION_FAILURE;
    }
    return 0;
  }

  if (evolve->parsed()) {
    Dilation d = make_dilation(evolve_model);
    ptd_convention conv =
        evolve_convention == "plus" ? PTD_CONVENTION_PLUS : PTD_CONVENTION_MINUS;
    std::vector<double> ts = time_grid(evolve_tmax, evolve_tsteps);
    std::string payload;
    bool json = evolve_out.format == "json";
    if (json) payload = "[";
    else
      payload = c_string([](char** out) { return ptd_evolution_csv_header(out); }) + "\n";
    bool first = true;
    for (double t : ts) {
      double dev = 0.0, prob = 0.0;
      check(ptd_evolve(d.get(), evolve_psi.data(), t, conv, &dev, &prob));
      if (json) {
        if (!first) payload += ',';
        payload += "{\"t\":" + fmt17(t) + ",\"deviation\":" + fmt17(dev) +
                   ",\"success_probability\":" + fmt17(prob) + "}";
      } else {
        payload +=
            c_string([&](char** out) { return ptd_evolution_csv_row(t, dev, prob, out); });
        payload += '\n';
      }
      first = false;
    }
    if (json) payload += "]";
    emit(evolve_out, payload);
    return 0;
  }

  if (bell->parsed()) {
    ptd_bell_report r{};
    double alpha = bell_model.resolved_alpha();
    if (bell_picture == "simulation") {
      Dilation d = make_dilation(bell_model);
      check(ptd_bell_simulation(d.get(), bell_alice.u.data(), bell_alice.v.data(), &r));
    } else if (bell_picture == "classical") {
      check(ptd_bell_classical(bell_model.e0, bell_model.s, alpha, bell_p_plus, &r));
    } else {
      check(ptd_bell_local_hermitian(bell_model.e0, bell_model.s, alpha, bell_alice.u.data(),
                                     bell_alice.v.data(), bell_local.s_plus.data(),
                                     bell_local.s_minus.data(), &r));
    }
    emit(bell_out, bell_report_payload(r, bell_out.format));
    return 0;
  }

  if (scan->parsed()) {
    std::vector<ptd_picture> pics;
    for (const auto& name : scan_pictures) {
      if (name == "simulation") pics.push_back(PTD_PICTURE_SIMULATION);
      else if (name == "classical") pics.push_back(PTD_PICTURE_CLASSICAL);
      else if (name == "local_hermitian") pics.push_back(PTD_PICTURE_LOCAL_HERMITIAN);
      else {
        std::cerr << "error: unknown picture '" << name << "'\n";
        return PTD_CONTRACT_VIOLATION;
      }
    }
    std::vector<ptd_bell_report> rows(scan_steps * pics.size());
    check(ptd_scan(scan_e0, scan_s, scan_alpha_min, scan_alpha_max, scan_steps, pics.data(),
                   pics.size(), rows.data()));
    std::string payload;
    if (scan_out.format == "json") {
      payload = "[";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) payload += ',';
        payload +=
            c_string([&](char** out) { return ptd_bell_report_to_json(&rows[i], out); });
      }
      payload += "]";
    } else {
      payload = c_string([](char** out) { return ptd_bell_csv_header(out); }) + "\n";
      for (const auto& row : rows) {
        payload += c_string([&](char** out) { return ptd_bell_report_to_csv(&row, out); });
        payload += '\n';
      }
    }
    emit(scan_out, payload);
    return 0;
  }

  if (sample->parsed()) {
    if (sample_out.format != "json") {
      std::cerr << "error: sample reports are JSON only (shot tables go to --table-output)\n";
      return PTD_CONTRACT_VIOLATION;
    }
    double alpha = sample_model.resolved_alpha();
    std::string payload;
    if (sample_picture == "simulation") {
      Dilation d = make_dilation(sample_model);
      ptd_estimate terms[4];
      ptd_estimate combined{};
      check(ptd_sample_simulation(d.get(), sample_alice.u.data(), sample_alice.v.data(),
                                  sample_shots, sample_seed, terms, &combined));
      payload = "{\"picture\":\"simulation\",\"terms\":[";
      for (int i = 0; i < 4; ++i) {
        if (i) payload += ',';
        payload += estimate_json(terms[i]);
      }
      payload += "],\"bell\":" + estimate_json(combined) + "}";
    } else if (sample_picture == "classical") {
      ptd_estimate combined{};
      ptd_shot_table* table = nullptr;
      check(ptd_sample_classical(sample_model.e0, sample_model.s, alpha, sample_p_plus,
                                 sample_shots, sample_seed, &combined, &table));
      std::unique_ptr<ptd_shot_table, decltype(&ptd_shot_table_free)> guard(
          table, &ptd_shot_table_free);
      double defect = 0.0;
      check(ptd_shot_table_factorization_defect(table, &defect));
      if (!sample_table_path.empty()) {
        std::string csv =
            c_string([&](char** out) { return ptd_shot_table_to_csv(table, out); });
        OutputFlags table_out{sample_table_path, "csv"};
        emit(table_out, csv);
      }
      payload = "{\"picture\":\"classical\",\"bell\":" + estimate_json(combined) +
                ",\"factorization_defect\":" + fmt17(defect) + "}";
    } else {
      ptd_estimate combined{};
      check(ptd_sample_local_hermitian(sample_model.e0, sample_model.s, alpha,
                                       sample_alice.u.data(), sample_alice.v.data(),
                                       sample_local.s_plus.data(), sample_local.s_minus.data(),
                                       sample_shots, sample_seed, &combined));
      payload =
          "{\"picture\":\"local_hermitian\",\"bell\":" + estimate_json(combined) + "}";
    }
    emit(sample_out, payload);
    return 0;
  }

  if (chsh->parsed()) {
    if (chsh_out.format != "json") {
      std::cerr << "error: chsh reports are JSON only\n";
      return PTD_CONTRACT_VIOLATION;
    }
    double corr[4] = {0, 0, 0, 0};
    double singlet = 0.0, classical_max = 0.0;
    check(ptd_chsh(corr, &singlet, &classical_max));
    std::string payload = "{\"correlations\":[";
    for (int i = 0; i < 4; ++i) {
      if (i) payload += ',';
      payload += fmt17(corr[i]);
    }
    payload += "],\"singlet_value\":" + fmt17(singlet) +
               ",\"classical_max\":" + fmt17(classical_max) + "}";
    emit(chsh_out, payload);
    return 0;
  }

  if (classify->parsed()) {
    if (classify_out.format != "json") {
      std::cerr << "error: classify reports are JSON only\n";
      return PTD_CONTRACT_VIOLATION;
    }
    double alpha = classify_model.resolved_alpha();
    double bound_sim = 0.0, bound_cl = 0.0;
    check(ptd_bounds(classify_model.e0, classify_model.s, alpha, &bound_sim, &bound_cl));
    ptd_verdict v{};
    check(ptd_classify_picture(classify_observed, classify_model.e0, classify_model.s, alpha, &v));
    const char* name = v == PTD_CONSISTENT_SIMULATION     ? "consistent_simulation"
                       : v == PTD_INCONSISTENT_SIMULATION ? "inconsistent_simulation"
                                                          : "outside_all";
    std::string payload = std::string("{\"observed\":") + fmt17(classify_observed) +
                          ",\"mean_term\":" + fmt17(2.0 * classify_model.e0) +
                          ",\"bound_simulation\":" + fmt17(bound_sim) +
                          ",\"bound_classical_local\":" + fmt17(bound_cl) + ",\"verdict\":\"" +
                          name + "\"}";
    emit(classify_out, payload);
    return 0;
  }

  std::cerr << app.help();
  return PTD_CONTRACT_VIOLATION;
}
