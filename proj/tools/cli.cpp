#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrpower/generators.hpp"
#include "mrpower/io.hpp"
#include "mrpower/powers.hpp"
#include "mrpower/resources.hpp"
#include "mrpower/verify.hpp"

namespace mrpower::cli {

namespace {

constexpr double kCertificateGapTol = 1e-9;

std::string sig12(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int report_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << '\n';
  return e.kind() == ErrorKind::ParseError ? kBadInput : kInvalidChannel;
}

struct PowerArgs {
  std::string channel_file;
  std::string what = "both";
};

int cmd_power(const PowerArgs& a, std::ostream& out, std::ostream& err) {
  try {
    const QuantumChannel e = read_channel_file(a.channel_file);
    if (!e.is_square()) {
      throw Error(ErrorKind::DimensionMismatch, "channel must be square (dim_in == dim_out)");
    }
    std::string body = "{";
    if (a.what == "c" || a.what == "both") body += "\"c\": " + sig12(measurement_cohering_power(e));
    if (a.what == "both") body += ", ";
    if (a.what == "cg" || a.what == "both") body += "\"cg\": " + sig12(state_cohering_power(e));
    out << body << "}\n";
    return kOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

struct ConvertArgs {
  std::string channel_file;
  std::string out_file;
  std::size_t cap = kDefaultConversionCap;
};

int cmd_convert(const ConvertArgs& a, std::ostream& out, std::ostream& err) {
  try {
    const QuantumChannel e = read_channel_file(a.channel_file);
    if (!e.is_square()) {
      throw Error(ErrorKind::DimensionMismatch, "channel must be square (dim_in == dim_out)");
    }
    const QuantumChannel conv = conversion_channel(e, a.cap);
    const ConversionCertificate cert = conversion_ent_lower_bound(e, a.cap);
    write_channel_file(a.out_file, conv);

    nlohmann::ordered_json j;
    j["cohering_power"] = cert.cohering_power;
    j["avg_ere_lower_bound"] = cert.avg_ere_lower_bound;
    j["gap"] = cert.gap;
    j["per_element_bounds"] = cert.per_element_bounds;
    out << j.dump() << '\n';
    if (!(cert.gap <= kCertificateGapTol)) {
      err << "error: certificate gap " << cert.gap << " exceeds " << kCertificateGapTol << '\n';
      return kInconsistent;
    }
    return kOk;
  } catch (const Error& e) {
    return report_error(e, err);
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
}

struct PovmArgs {
  std::string povm_file;
};

int cmd_povm(const PovmArgs& a, std::ostream& out, std::ostream& err) {
  try {
    const Povm m = read_povm_file(a.povm_file);
    nlohmann::ordered_json j;
    j["dim"] = m.dim();
    j["outcomes"] = m.size();
    j["cm"] = measurement_coherence(m);
    j["incoherent"] = is_incoherent_measurement(m);
    if (m.size() <= m.dim()) {
      j["c_of_measurement_channel"] = measurement_cohering_power(square_measurement_channel(m));
    }
    out << j.dump() << '\n';
    return kOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

struct VerifyArgs {
  std::string suite = "all";
  std::size_t dim = 2;
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::string out_file;
  std::string format = "json";
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.suite != "all" && !is_suite(a.suite)) {
    err << "error: unknown suite '" << a.suite << "'\n";
    return kBadInput;
  }
  std::vector<std::string> names;
  if (a.suite == "all") {
    for (auto n : suite_names()) {
      if (n == "cm_oracle" && a.dim != 2) {
        out << "cm_oracle            skipped (oracle runs at dim 2 only)\n";
        continue;
      }
      names.emplace_back(n);
    }
  } else {
    names.push_back(a.suite);
  }

  SuiteConfig config;
  config.dim = a.dim;
  config.trials = a.trials;
  config.seed = a.seed;
  config.tolerance = a.tol;

  std::vector<VerificationReport> reports;
  try {
    for (const auto& n : names) {
      reports.push_back(run_suite(n, config));
      out << report_summary_line(reports.back()) << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  if (!a.out_file.empty()) {
    std::ofstream f(a.out_file, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << a.out_file << '\n';
      return kBadInput;
    }
    if (a.format == "csv") {
      f << reports_to_csv(reports);
    } else if (a.suite == "all") {
      f << reports_to_json(reports) << '\n';
    } else {
      f << report_to_json(reports.front()) << '\n';
    }
  }
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
  return ok ? kOk : kSuiteFailed;
}

struct ExamplesArgs {
  std::string out_dir = ".";
};

int cmd_examples(const ExamplesArgs& a, std::ostream& out, std::ostream& err) {
  std::error_code ec;
  std::filesystem::create_directories(a.out_dir, ec);
  try {
    for (const auto& [name, ch] : paper_examples()) {
      const auto path = std::filesystem::path(a.out_dir) / (name + ".json");
      write_channel_file(path, ch);
      out << path.string() << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measurement-cohering power toolkit"};
  app.name("mrpower");
  app.require_subcommand(1);

  PowerArgs power;
  auto* power_cmd = app.add_subcommand("power", "Measurement- and state-cohering power of a channel");
  power_cmd->add_option("channel_file", power.channel_file, "Channel JSON file")->required();
  power_cmd->add_option("--what", power.what, "Which power to print")
      ->check(CLI::IsMember({"c", "cg", "both"}));

  ConvertArgs convert;
  auto* convert_cmd = app.add_subcommand("convert", "Build the CNOT conversion channel and certificate");
  convert_cmd->add_option("channel_file", convert.channel_file, "Channel JSON file")->required();
  convert_cmd->add_option("--out", convert.out_file, "Where to write the conversion channel")
      ->required();
  convert_cmd->add_option("--cap", convert.cap, "Largest accepted input dimension")
      ->check(CLI::PositiveNumber);

  PovmArgs povm;
  auto* povm_cmd = app.add_subcommand("povm", "Measurement-coherence of a POVM file");
  povm_cmd->add_option("povm_file", povm.povm_file, "POVM JSON file")->required();

  VerifyArgs verify;
  double tol_value = 1e-8;
  auto* verify_cmd = app.add_subcommand("verify", "Run randomized verification suites");
  verify_cmd->add_option("--suite", verify.suite, "Suite name or 'all'");
  verify_cmd->add_option("--dim", verify.dim, "System dimension")->check(CLI::Range(2, 64));
  verify_cmd->add_option("--trials", verify.trials, "Trials per suite")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.seed, "Master seed");
  auto* tol_opt = verify_cmd->add_option(
      "--tol", tol_value, "Tolerance override (default: each suite's pinned tolerance, 1e-8 for property suites)");
  tol_opt->check(CLI::PositiveNumber);
  verify_cmd->add_option("--out", verify.out_file, "Report file");
  verify_cmd->add_option("--format", verify.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));

  ExamplesArgs examples;
  auto* examples_cmd = app.add_subcommand("examples", "Write the built-in example channels as JSON");
  examples_cmd->add_option("--out-dir", examples.out_dir, "Output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  if (*power_cmd) return cmd_power(power, out, err);
  if (*convert_cmd) return cmd_convert(convert, out, err);
  if (*povm_cmd) return cmd_povm(povm, out, err);
  if (*verify_cmd) {
    if (tol_opt->count() > 0) verify.tol = tol_value;
    return cmd_verify(verify, out, err);
  }
  if (*examples_cmd) return cmd_examples(examples, out, err);
  return kBadInput;
}

}  // namespace mrpower::cli
