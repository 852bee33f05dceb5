// Command-line front end: CSV sweeps of the analytic error bounds, the
// brute-force cross-check, and the Monte Carlo protocol simulation.
//
// Exit codes: 0 success, 1 numerical failure or a validation-run violation,
// 2 flag/configuration errors.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsc/fock_oracle.hpp"
#include "qsc/format.hpp"
#include "qsc/helstrom.hpp"
#include "qsc/keystream.hpp"
#include "qsc/protocol_sim.hpp"

namespace {

constexpr double kValidateTol = 1e-8;  // engine-vs-oracle agreement gate

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

std::uint64_t parse_hex(const std::string& text) {
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(text, &used, 16);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a hex number: " + text);
  }
  if (used != text.size())
    throw std::invalid_argument("not a hex number: " + text);
  return value;
}

qsc::LfsrState lfsr_from_flags(const std::string& seed_hex,
                               std::vector<int> taps) {
  if (taps.empty()) throw std::invalid_argument("tap list must be non-empty");
  const int length = *std::max_element(taps.begin(), taps.end());
  return qsc::make_lfsr(length, taps, parse_hex(seed_hex));
}

struct PeCurveFlags {
  std::vector<double> nbar{1.0, 10.0, 100.0, 1000.0};
  int m_min = 1;
  int m_max = 200;
  int m_step = 1;
  std::string encoding = "phase";
  double p0 = 0.5;
  std::string out = "-";
};

int run_pe_curve(const PeCurveFlags& f) {
  if (f.m_min < 1) throw std::invalid_argument("--m-min must be >= 1");
  if (f.m_max < f.m_min)
    throw std::invalid_argument("--m-max must be >= --m-min");
  if (f.m_step < 1) throw std::invalid_argument("--m-step must be >= 1");
  if (!(f.p0 >= 0.0 && f.p0 <= 1.0))
    throw std::invalid_argument("--p0 must be in [0, 1]");
  if (f.nbar.empty()) throw std::invalid_argument("--nbar list is empty");
  for (double v : f.nbar)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("--nbar values must be finite and >= 0");

  std::vector<int> ms;
  for (int m = f.m_min; m <= f.m_max; m += f.m_step) ms.push_back(m);
  std::vector<double> nbars = f.nbar;
  std::sort(nbars.begin(), nbars.end());

  const auto rows =
      qsc::pe_curve(ms, nbars, qsc::parse_encoding(f.encoding),
                    qsc::Priors{f.p0, 1.0 - f.p0});

  std::string csv = "m,nbar,pe_eve,pe_bob,rank\n";
  for (const qsc::PeCurveRow& row : rows) {
    csv += std::to_string(row.m);
    csv += ',';
    csv += qsc::format_number(row.nbar);
    csv += ',';
    csv += qsc::format_probability(row.pe_eve);
    csv += ',';
    csv += qsc::format_probability(row.pe_bob);
    csv += ',';
    csv += std::to_string(row.rank);
    csv += '\n';
  }
  write_output(f.out, csv);
  return 0;
}

struct BobErrorFlags {
  std::vector<double> nbar{1.0, 10.0, 100.0, 1000.0};
  std::string out = "-";
};

int run_bob_error(const BobErrorFlags& f) {
  if (f.nbar.empty()) throw std::invalid_argument("--nbar list is empty");
  std::vector<double> nbars = f.nbar;
  std::sort(nbars.begin(), nbars.end());
  std::string csv = "nbar,pe_bob\n";
  for (double nbar : nbars) {
    csv += qsc::format_number(nbar);
    csv += ',';
    csv += qsc::format_probability(qsc::bob_error(nbar));
    csv += '\n';
  }
  write_output(f.out, csv);
  return 0;
}

struct SimulateFlags {
  int m = 2;
  double nbar = 1.0;
  std::int64_t bits = 10000;
  double loss_db = 0.0;
  std::uint64_t seed = 1;
  std::string lfsr_seed = "0xace1";
  std::vector<int> lfsr_taps{16, 14, 13, 11};
  std::string encoding = "phase";
  int threads = 1;
  std::string out = "-";
};

int run_simulate(const SimulateFlags& f) {
  qsc::SimConfig config;
  config.m = f.m;
  config.nbar = f.nbar;
  config.encoding = qsc::parse_encoding(f.encoding);
  config.bits = f.bits;
  config.loss_db = f.loss_db;
  config.seed = f.seed;
  config.lfsr = lfsr_from_flags(f.lfsr_seed, f.lfsr_taps);
  config.threads = f.threads;

  const qsc::SimReport report = qsc::run_session(config);
  std::string text = qsc::report_text(report);
  text += '\n';
  text += qsc::report_csv_header();
  text += '\n';
  text += qsc::report_csv_row(report);
  text += '\n';
  write_output(f.out, text);
  return 0;
}

struct ValidateFlags {
  int max_m = 8;
  std::vector<double> nbar{0.25, 1.0, 2.0};
  double tail_tol = 1e-12;
  std::string encoding = "phase";
  std::string out = "-";
};

int run_validate(const ValidateFlags& f) {
  if (f.max_m < 1) throw std::invalid_argument("--max-m must be >= 1");
  if (f.nbar.empty()) throw std::invalid_argument("--nbar list is empty");
  const qsc::EncodingKind encoding = qsc::parse_encoding(f.encoding);

  std::vector<double> nbars = f.nbar;
  std::sort(nbars.begin(), nbars.end());

  std::string table = "m,nbar,pe_subspace,pe_oracle,abs_diff,cutoff\n";
  bool all_ok = true;
  for (double nbar : nbars) {
    for (int m = 1; m <= f.max_m; ++m) {
      const double pe_subspace =
          qsc::eve_error(m, nbar, encoding).pe;
      const qsc::OracleResult oracle =
          qsc::oracle_min_error(m, nbar, encoding, {}, f.tail_tol);
      const double diff = std::abs(pe_subspace - oracle.discrimination.pe);
      all_ok = all_ok && diff < kValidateTol;
      table += std::to_string(m);
      table += ',';
      table += qsc::format_number(nbar);
      table += ',';
      table += qsc::format_probability(pe_subspace);
      table += ',';
      table += qsc::format_probability(oracle.discrimination.pe);
      table += ',';
      table += qsc::format_probability(diff);
      table += ',';
      table += std::to_string(oracle.cutoff);
      table += '\n';
    }
  }
  table += all_ok ? "result = PASS\n" : "result = FAIL\n";
  write_output(f.out, table);
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherent-state cipher analysis and simulation"};
  app.require_subcommand(1);

  PeCurveFlags pe_flags;
  CLI::App* pe = app.add_subcommand(
      "pe-curve", "eavesdropper/receiver error bounds vs M (CSV)");
  pe->add_option("--nbar", pe_flags.nbar,
                 "mean photon numbers (comma separated)")
      ->delimiter(',');
  pe->add_option("--m-min", pe_flags.m_min, "smallest M");
  pe->add_option("--m-max", pe_flags.m_max, "largest M");
  pe->add_option("--m-step", pe_flags.m_step, "M stride");
  pe->add_option("--encoding", pe_flags.encoding, "phase | polarization");
  pe->add_option("--p0", pe_flags.p0, "prior probability of bit 0");
  pe->add_option("--out", pe_flags.out, "output path or - for stdout");

  BobErrorFlags bob_flags;
  CLI::App* bob = app.add_subcommand(
      "bob-error", "keyed receiver's closed-form error (CSV)");
  bob->add_option("--nbar", bob_flags.nbar,
                  "mean photon numbers (comma separated)")
      ->delimiter(',');
  bob->add_option("--out", bob_flags.out, "output path or - for stdout");

  SimulateFlags sim_flags;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Monte Carlo protocol run (report + CSV row)");
  sim->add_option("--m", sim_flags.m, "ciphering levels (power of two)");
  sim->add_option("--nbar", sim_flags.nbar, "source mean photon number");
  sim->add_option("--bits", sim_flags.bits, "message length in symbols");
  sim->add_option("--loss-db", sim_flags.loss_db, "channel loss in dB");
  sim->add_option("--seed", sim_flags.seed, "measurement RNG seed");
  sim->add_option("--lfsr-seed", sim_flags.lfsr_seed,
                  "key seed as hex (nonzero)");
  sim->add_option("--lfsr-taps", sim_flags.lfsr_taps,
                  "LFSR tap positions (comma separated)")
      ->delimiter(',');
  sim->add_option("--encoding", sim_flags.encoding, "phase | polarization");
  sim->add_option("--threads", sim_flags.threads,
                  "worker threads (results are identical for any value)");
  sim->add_option("--out", sim_flags.out, "output path or - for stdout");

  ValidateFlags val_flags;
  CLI::App* val = app.add_subcommand(
      "validate", "cross-check the subspace engine against the brute-force "
                  "photon-number oracle");
  val->add_option("--max-m", val_flags.max_m, "check M = 1..max-m");
  val->add_option("--nbar", val_flags.nbar,
                  "mean photon numbers (comma separated)")
      ->delimiter(',');
  val->add_option("--tail-tol", val_flags.tail_tol,
                  "oracle truncation budget");
  val->add_option("--encoding", val_flags.encoding, "phase | polarization");
  val->add_option("--out", val_flags.out, "output path or - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help/message
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(pe)) return run_pe_curve(pe_flags);
    if (app.got_subcommand(bob)) return run_bob_error(bob_flags);
    if (app.got_subcommand(sim)) return run_simulate(sim_flags);
    if (app.got_subcommand(val)) return run_validate(val_flags);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;  // unreachable: require_subcommand(1)
}
