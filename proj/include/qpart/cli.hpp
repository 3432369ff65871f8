#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpart/bound_report.hpp"
#include "qpart/matrix_io.hpp"
#include "qpart/partition.hpp"
#include "qpart/spin_flip.hpp"
#include "qpart/tavis_cummings.hpp"
#include "qpart/verify.hpp"

namespace qpart {

/// Exit codes of the command-line surface. Nothing else is ever returned.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitBadInput = 2,
  kExitNumericalFailure = 3,
};

namespace cli_detail {

inline Complex parse_complex(const std::string& text) {
  std::size_t used = 0;
  double re = 0.0;
  double im = 0.0;
  try {
    re = std::stod(text, &used);
    if (used < text.size()) {
      if (text[used] != ',') throw ParseError("expected re[,im], got \"" + text + "\"");
      std::size_t used_im = 0;
      const std::string rest = text.substr(used + 1);
      im = std::stod(rest, &used_im);
      if (used_im != rest.size()) throw ParseError("expected re[,im], got \"" + text + "\"");
    }
  } catch (const std::logic_error&) {
    throw ParseError("expected re[,im], got \"" + text + "\"");
  }
  return Complex(re, im);
}

// Writes to the path when given, otherwise to fallback. Keeps the stream
// alive through the returned holder.
struct OutputTarget {
  std::ofstream file;
  std::ostream* stream;

  explicit OutputTarget(const std::optional<std::string>& path, std::ostream& fallback) {
    if (path) {
      file.open(*path);
      if (!file) throw ParseError("cannot open output file: " + *path);
      stream = &file;
    } else {
      stream = &fallback;
    }
  }
};

inline void write_bound_report(std::ostream& out, const BoundReport& full,
                               const BoundReport& part) {
  write_csv_row(out, {"quantity", "full", "partition", "delta"});
  for (std::size_t k = 0; k < full.per_pair.size(); ++k) {
    const double a = full.per_pair[k].concurrence;
    const double b = part.per_pair[k].concurrence;
    write_csv_row(out, {"C_" + full.per_pair[k].pair.label(), format_double(a), format_double(b),
                        format_double(std::abs(a - b))});
  }
  write_csv_row(out, {"C_db", format_double(full.c_db), format_double(part.c_db),
                      format_double(std::abs(full.c_db - part.c_db))});
  write_csv_row(out, {"EOF", format_double(full.eof), format_double(part.eof),
                      format_double(std::abs(full.eof - part.eof))});
}

}  // namespace cli_detail

struct BoundConfig {
  std::string input_path;
  std::optional<std::string> output_path;
};

inline int cmd_bound(const BoundConfig& cfg, std::ostream& out) {
  std::ifstream in(cfg.input_path);
  if (!in) throw ParseError("cannot open input file: " + cfg.input_path);
  const DensityMatrix rho = read_density_matrix(in);
  const BoundReport full = c_db_full(rho);
  const BoundReport part = c_db_partition(rho);
  cli_detail::OutputTarget target(cfg.output_path, out);
  cli_detail::write_bound_report(*target.stream, full, part);
  return kExitOk;
}

struct TCConfig {
  int n = 0;
  Complex alpha{1.0 / std::numbers::sqrt2, 0.0};
  Complex beta{1.0 / std::numbers::sqrt2, 0.0};
  std::optional<double> tau_max;
  std::optional<double> gt_max;
  int steps = 201;
  std::optional<std::string> output_path;
};

inline int cmd_tc(const TCConfig& cfg, std::ostream& out) {
  if (cfg.n < 0) throw OutOfRange("n must be nonnegative");
  if (cfg.steps < 1) throw OutOfRange("steps must be at least 1");
  const double norm2 = std::norm(cfg.alpha) + std::norm(cfg.beta);
  if (std::abs(norm2 - 1.0) > 1e-9)
    throw OutOfRange("normalization: |alpha|^2 + |beta|^2 = " + format_double(norm2));
  // Renormalize the 1e-9-accurate input to the tighter internal tolerance.
  const double scale = 1.0 / std::sqrt(norm2);
  const Complex alpha = cfg.alpha * scale;
  const Complex beta = cfg.beta * scale;

  const bool has_tau_convention = cfg.n == 0 || cfg.n == 2;
  if (cfg.tau_max && cfg.gt_max) throw OutOfRange("give only one of tau-max and gt-max");
  if (cfg.tau_max && !has_tau_convention)
    throw UnsupportedTauConvention("no tau convention for n = " + std::to_string(cfg.n) +
                                   "; use gt-max");
  if (!has_tau_convention && !cfg.gt_max)
    throw OutOfRange("gt-max is required for n outside {0, 2}");
  const bool tau_grid = !cfg.gt_max;
  double grid_max = 0.0;
  if (tau_grid)
    grid_max = cfg.tau_max ? *cfg.tau_max : (cfg.n == 0 ? 2.0 : 1.0);
  else
    grid_max = *cfg.gt_max;
  if (grid_max < 0.0 || !std::isfinite(grid_max)) throw OutOfRange("grid bound must be finite and nonnegative");

  cli_detail::OutputTarget target(cfg.output_path, out);
  std::ostream& os = *target.stream;

  std::vector<std::string> header{"tau", "gt", "C_db", "EOF"};
  for (const BlockPair& pair : enumerate_pairs(QuditDim(cavity_dim(cfg.n))))
    header.push_back("C_" + pair.label());
  if (cfg.n != 1) header.push_back("C_closed");
  write_csv_row(os, header);

  for (int row = 0; row < cfg.steps; ++row) {
    const double x = cfg.steps == 1 ? 0.0 : grid_max * row / (cfg.steps - 1);
    double tau = 0.0;
    double gt = 0.0;
    if (tau_grid) {
      tau = x;
      gt = tau_to_gt(tau, cfg.n);
    } else {
      gt = x;
      tau = has_tau_convention ? gt_to_tau(gt, cfg.n) : gt;
    }
    const TCAmplitudes a = amplitudes(TCParams(alpha, beta, cfg.n, gt));
    const ReducedState red = reduce_over_b(build_state(a, cfg.n), cfg.n);
    const BoundReport report = c_db_partition(red.rho_ac);

    std::vector<std::string> cells{format_double(tau), format_double(gt),
                                   format_double(report.c_db), format_double(report.eof)};
    for (const PairConcurrence& pc : report.per_pair) cells.push_back(format_double(pc.concurrence));
    if (cfg.n == 0)
      cells.push_back(format_double(c_ac_qutrit_closed(a)));
    else if (cfg.n >= 2)
      cells.push_back(format_double(c_b5_closed(a)));
    write_csv_row(os, cells);
  }
  return kExitOk;
}

struct SflipConfig {
  int d = 3;
  std::optional<std::string> pair_text;
};

inline int cmd_sflip(const SflipConfig& cfg, std::ostream& out) {
  const QuditDim d(cfg.d);
  std::vector<BlockPair> pairs;
  if (cfg.pair_text) {
    const std::size_t comma = cfg.pair_text->find(',');
    if (comma == std::string::npos) throw ParseError("pair must be given as i,j");
    int i = 0;
    int j = 0;
    try {
      i = std::stoi(cfg.pair_text->substr(0, comma));
      j = std::stoi(cfg.pair_text->substr(comma + 1));
    } catch (const std::logic_error&) {
      throw ParseError("pair must be given as i,j");
    }
    const BlockPair pair(i, j);
    require_pair_in_dim(pair, d);
    pairs.push_back(pair);
  } else {
    pairs = enumerate_pairs(d);
  }

  bool first = true;
  for (const BlockPair& pair : pairs) {
    if (!first) out << '\n';
    first = false;
    out << "S[" << pair.i << "," << pair.j << "] (d=" << d.value << ")\n";
    const ComplexMatrix s = build_s_full(d, pair);
    for (int r = 0; r < s.rows(); ++r) {
      for (int c = 0; c < s.cols(); ++c) {
        if (c) out << ' ';
        out << static_cast<int>(s(r, c).real());
      }
      out << '\n';
    }
  }
  return kExitOk;
}

struct VerifyConfig {
  VerifyOptions options;
};

inline int cmd_verify(const VerifyConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.options.trials < 1) throw OutOfRange("trials must be at least 1");
  if (cfg.options.d_list.empty()) throw OutOfRange("d-list must not be empty");
  for (int d : cfg.options.d_list)
    if (d < 2) throw OutOfRange("every d must be at least 2");

  const VerifyReport report = run_verify(cfg.options);
  for (const SuiteResult& s : report.suites) {
    out << s.name << ": " << (s.passed ? "PASS" : "FAIL")
        << " max_deviation=" << format_double(s.max_deviation)
        << " threshold=" << format_double(s.threshold);
    if (!s.detail.empty()) out << " [" << s.detail << "]";
    out << '\n';
  }
  out << "verify: " << (report.all_passed() ? "PASS" : "FAIL") << '\n';
  // Wall-clock comparison is informational and deliberately kept off the
  // deterministic report stream.
  err << "timing: full-route " << format_double(report.full_route_seconds)
      << " s, partition-route " << format_double(report.partition_route_seconds) << " s\n";
  return report.all_passed() ? kExitOk : kExitVerifyFailed;
}

/// Full command-line surface; returns one of the four ExitCode values.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lower bounds on qubit-qudit concurrence and entanglement of formation"};
  app.require_subcommand(1);

  BoundConfig bound_cfg;
  CLI::App* bound = app.add_subcommand("bound", "Bound report for a density-matrix file");
  bound->add_option("--input", bound_cfg.input_path, "JSON density-matrix document")->required();
  std::string bound_output;
  CLI::Option* bound_out_opt = bound->add_option("--output", bound_output, "Report destination");

  TCConfig tc_cfg;
  std::string alpha_text;
  std::string beta_text;
  double tau_max_value = 0.0;
  double gt_max_value = 0.0;
  std::string tc_output;
  CLI::App* tc = app.add_subcommand("tc", "Two-atom cavity evolution curve as CSV");
  tc->add_option("--n", tc_cfg.n, "Initial cavity Fock number")->required();
  CLI::Option* alpha_opt = tc->add_option("--alpha", alpha_text, "Initial amplitude of |0 0>, re[,im]");
  CLI::Option* beta_opt = tc->add_option("--beta", beta_text, "Initial amplitude of |1 1>, re[,im]");
  CLI::Option* tau_opt = tc->add_option("--tau-max", tau_max_value, "Grid end in dimensionless tau");
  CLI::Option* gt_opt = tc->add_option("--gt-max", gt_max_value, "Grid end in g*t");
  tc->add_option("--steps", tc_cfg.steps, "Number of grid rows");
  CLI::Option* tc_out_opt = tc->add_option("--output", tc_output, "CSV destination");

  SflipConfig sflip_cfg;
  std::string pair_text;
  CLI::App* sflip = app.add_subcommand("sflip", "Print spin-flip matrices as integer grids");
  sflip->add_option("--d", sflip_cfg.d, "Qudit dimension")->required();
  CLI::Option* pair_opt = sflip->add_option("--pair", pair_text, "Single pair i,j");

  VerifyConfig verify_cfg;
  CLI::App* verify = app.add_subcommand("verify", "Run the verification suites");
  verify->add_option("--trials", verify_cfg.options.trials, "Random draws per suite and dimension");
  verify->add_option("--d-list", verify_cfg.options.d_list, "Qudit dimensions to sample")
      ->delimiter(',');
  verify->add_option("--seed", verify_cfg.options.seed, "Generator seed");

  try {
    app.parse(argc, argv);

    if (bound->parsed()) {
      if (*bound_out_opt) bound_cfg.output_path = bound_output;
      return cmd_bound(bound_cfg, out);
    }
    if (tc->parsed()) {
      if (*alpha_opt) tc_cfg.alpha = cli_detail::parse_complex(alpha_text);
      if (*beta_opt) tc_cfg.beta = cli_detail::parse_complex(beta_text);
      if (*tau_opt) tc_cfg.tau_max = tau_max_value;
      if (*gt_opt) tc_cfg.gt_max = gt_max_value;
      if (*tc_out_opt) tc_cfg.output_path = tc_output;
      return cmd_tc(tc_cfg, out);
    }
    if (sflip->parsed()) {
      if (*pair_opt) sflip_cfg.pair_text = pair_text;
      return cmd_sflip(sflip_cfg, out);
    }
    if (verify->parsed()) return cmd_verify(verify_cfg, out, err);
    return kExitBadInput;  // unreachable: a subcommand is required
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const InvalidState& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const OutOfRange& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const InvalidPair& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const UnsupportedTauConvention& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const Error& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumericalFailure;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumericalFailure;
  }
}

}  // namespace qpart
