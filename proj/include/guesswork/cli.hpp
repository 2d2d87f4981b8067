#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// that tests can drive it in-process.
//
// Exit status: 0 on success, 1 on a domain error (stable error code on
// stderr), 2 on a usage error. verify-* subcommands exit 1 when any trial
// fails.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "guesswork/designs.hpp"
#include "guesswork/distribution.hpp"
#include "guesswork/divergence.hpp"
#include "guesswork/error.hpp"
#include "guesswork/guesswork.hpp"
#include "guesswork/io.hpp"
#include "guesswork/oracle.hpp"
#include "guesswork/scan.hpp"

namespace guesswork::cli {

struct CliConfig {
  std::string p, q, g, s1, s2;
  int n = 0;
  std::string epsilon = "0.2";
  std::string gamma = "0.5";
  int resolution = 200;
  int inner_resolution = kDefaultInnerResolution;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::uint64_t cap = kDefaultEnumerationCap;
  std::string out;
  std::string format = "text";
};

namespace detail {

// "@path" reads the argument from a file.
inline std::string resolve_argument(const std::string& value) {
  if (value.empty() || value.front() != '@') return value;
  std::ifstream in(value.substr(1));
  if (!in) throw Error(ErrorCode::Parse, "cannot read file '" + value.substr(1) + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Distribution read_distribution(const std::string& value) {
  return parse_distribution(resolve_argument(value));
}

inline GuessingFunction read_function(const std::string& value) {
  return parse_guessing_function(resolve_argument(value));
}

inline unsigned scan_threads() {
  const char* env = std::getenv("GUESSWORK_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    const long v = std::stol(env);
    return v > 0 ? static_cast<unsigned>(v) : 0;
  } catch (const std::exception&) {
    throw Error(ErrorCode::Usage, "GUESSWORK_THREADS must be a non-negative integer");
  }
}

inline nlohmann::json envelope(const std::string& command) {
  return {{"schema", io::kSchemaVersion}, {"command", command}};
}

inline std::string report_text(const OracleReport& report) {
  std::string out = report.check + ": trials=" + std::to_string(report.trials) +
                    " skipped=" + std::to_string(report.skipped) +
                    " failures=" + std::to_string(report.failures.size()) +
                    " max_discrepancy=" + to_string(report.max_discrepancy);
  if (report.max_ratio) out += " max_ratio=" + to_string(*report.max_ratio);
  out += "\n";
  for (const auto& f : report.failures) {
    out += "  FAIL " + f.input + " expected " + f.expected + " got " + f.got + "\n";
  }
  return out;
}

inline std::string design_text(const TournamentDesign& d) {
  std::string out;
  for (std::size_t r = 0; r < d.rounds.size(); ++r) {
    out += "M" + std::to_string(r + 1) + ":";
    for (const auto& pair : d.rounds[r]) out += " " + format_pair(pair);
    if (d.parity == Parity::Odd) out += "  (missing " + std::to_string(d.missing[r]) + ")";
    out += "\n";
  }
  return out;
}

inline std::string certificate_text(const BoundCertificate& cert) {
  std::string out = "epsilon " + to_string(cert.epsilon) + "\n";
  out += "delta   " + to_string(cert.delta) + "\n";
  out += "total   " + to_string(cert.total) + "\n";
  out += "bound   " + to_string(cert.bound) + "\n";
  for (std::size_t k = 0; k < cert.groups.size(); ++k) {
    const auto& g = cert.groups[k];
    out += "group " + std::to_string(k + 1) + ": sum " + to_string(g.sum) + " <= " +
           to_string(g.lemma_bound) + (g.within_bound ? " yes" : " no") +
           (g.hypothesis_holds ? "" : " (hypothesis-slack)") + "\n";
  }
  out += std::string("chain ") + (cert.chain_applies ? "applies" : "does not apply") + "\n";
  out += std::string("holds ") + (cert.holds ? "yes" : "no") + "\n";
  return out;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact guesswork under distribution mismatch", "guesswork"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto add_format = [&](CLI::App* sub, std::vector<std::string> allowed = {"text", "json"}) {
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember(std::move(allowed)));
    sub->add_option("--out", cfg.out, "Write output to this file instead of stdout");
  };

  auto* delta = app.add_subcommand("delta", "Expected cost of mismatch delta(p, q)");
  delta->add_option("--p", cfg.p, "True distribution (JSON array, CSV list or @file)")->required();
  delta->add_option("--q", cfg.q, "Mismatched distribution")->required();
  add_format(delta);

  auto* guess = app.add_subcommand("guesswork", "Expected number of guesses E_p[G]");
  guess->add_option("--p", cfg.p, "Distribution")->required();
  guess->add_option("--g", cfg.g, "Guessing function as 1-based ranks (default: optimal for p)");
  add_format(guess);

  auto* kendall = app.add_subcommand("kendall", "Kendall tau distance");
  kendall->add_option("--s1", cfg.s1, "First permutation (1-based ranks)")->required();
  kendall->add_option("--s2", cfg.s2, "Second permutation")->required();
  add_format(kendall);

  auto* wkendall = app.add_subcommand("wkendall", "Probability-weighted signed Kendall divergence");
  wkendall->add_option("--p", cfg.p, "Distribution")->required();
  wkendall->add_option("--s1", cfg.s1, "First permutation")->required();
  wkendall->add_option("--s2", cfg.s2, "Second permutation")->required();
  add_format(wkendall);

  auto* optimal = app.add_subcommand("optimal", "Optimal guessing functions of p");
  optimal->add_option("--p", cfg.p, "Distribution")->required();
  optimal->add_option("--cap", cfg.cap, "Refuse to enumerate more functions than this")
      ->check(CLI::PositiveNumber);
  add_format(optimal);

  auto* tournament = app.add_subcommand("tournament", "Tournament design on n symbols");
  tournament->add_option("--n", cfg.n, "Number of symbols")->required();
  add_format(tournament);

  auto* certificate = app.add_subcommand("certificate", "Round-by-round certificate of delta <= 2(n-1) TV");
  certificate->add_option("--p", cfg.p, "True distribution")->required();
  certificate->add_option("--q", cfg.q, "Mismatched distribution")->required();
  add_format(certificate);

  auto* thm1 = app.add_subcommand("verify-thm1", "Randomized check: expected cost equals weighted Kendall");
  thm1->add_option("--n", cfg.n, "Alphabet size (2..7)")->required();
  thm1->add_option("--trials", cfg.trials, "Number of random trials");
  thm1->add_option("--seed", cfg.seed, "Random seed");
  add_format(thm1);

  auto* thm2 = app.add_subcommand("verify-thm2", "Randomized check: delta <= 2(n-1) TV");
  thm2->add_option("--n", cfg.n, "Alphabet size (>= 2)")->required();
  thm2->add_option("--trials", cfg.trials, "Number of random trials");
  thm2->add_option("--seed", cfg.seed, "Random seed");
  add_format(thm2);

  auto* scan = app.add_subcommand("scan", "Worst-case mismatch over the 3-symbol simplex (CSV)");
  scan->add_option("--resolution", cfg.resolution, "Outer lattice subdivision");
  scan->add_option("--epsilon", cfg.epsilon, "Total variation radius");
  scan->add_option("--inner-resolution", cfg.inner_resolution, "Inner lattice subdivision");
  add_format(scan, {"csv", "json"});

  auto* example = app.add_subcommand("example-optimal", "Pair (p, q) with delta = gamma * 2(n-1) eps");
  example->add_option("--n", cfg.n, "Alphabet size")->required();
  example->add_option("--epsilon", cfg.epsilon, "Total variation radius, at most 1/n")->required();
  example->add_option("--gamma", cfg.gamma, "Fraction of the bound, in (0, 1)")->required();
  add_format(example);

  auto* oracle = app.add_subcommand("oracle-delta", "delta(p, q) by enumerating optimal guessing functions");
  oracle->add_option("--p", cfg.p, "True distribution (n <= 8)")->required();
  oracle->add_option("--q", cfg.q, "Mismatched distribution")->required();
  add_format(oracle);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "USAGE: " << e.what() << "\n";
    return 2;
  }

  if (scan->parsed() && cfg.format == "text") cfg.format = "csv";
  const bool json = cfg.format == "json";
  std::ostringstream text;
  nlohmann::json doc;
  int status = 0;

  try {
    if (delta->parsed()) {
      const auto value = mismatch_cost(detail::read_distribution(cfg.p), detail::read_distribution(cfg.q));
      doc = detail::envelope("delta");
      doc["delta"] = io::to_json(value);
      text << to_string(value) << "\n";
    } else if (guess->parsed()) {
      const auto p = detail::read_distribution(cfg.p);
      const auto g = cfg.g.empty() ? canonical_optimal(p) : detail::read_function(cfg.g);
      const auto value = expected_guesswork(g, p);
      doc = detail::envelope("guesswork");
      doc["g"] = io::to_json(g);
      doc["guesswork"] = io::to_json(value);
      text << to_string(value) << "\n";
    } else if (kendall->parsed()) {
      const auto value = kendall_tau(detail::read_function(cfg.s1), detail::read_function(cfg.s2));
      doc = detail::envelope("kendall");
      doc["kendall"] = value;
      text << value << "\n";
    } else if (wkendall->parsed()) {
      const auto value = weighted_kendall(detail::read_distribution(cfg.p), detail::read_function(cfg.s1),
                                          detail::read_function(cfg.s2));
      doc = detail::envelope("wkendall");
      doc["wkendall"] = io::to_json(value);
      text << to_string(value) << "\n";
    } else if (optimal->parsed()) {
      const auto p = detail::read_distribution(cfg.p);
      const auto set = optimal_set(p, cfg.cap);
      const auto functions = set.to_vector();  // throws above the cap
      doc = detail::envelope("optimal");
      doc["count"] = set.count().get_str();
      doc["functions"] = nlohmann::json::array();
      text << "count " << set.count().get_str() << "\n";
      for (const auto& g : functions) {
        doc["functions"].push_back(io::to_json(g));
        text << format_guessing_function(g) << "\n";
      }
    } else if (tournament->parsed()) {
      const auto d = make_design(cfg.n);
      doc = detail::envelope("tournament");
      doc["design"] = io::to_json(d);
      text << detail::design_text(d);
    } else if (certificate->parsed()) {
      const auto cert = bound_certificate(detail::read_distribution(cfg.p), detail::read_distribution(cfg.q));
      doc = detail::envelope("certificate");
      doc["certificate"] = io::to_json(cert);
      text << detail::certificate_text(cert);
      if (!cert.holds) status = 1;
    } else if (thm1->parsed() || thm2->parsed()) {
      const auto report = thm1->parsed() ? check_theorem1(cfg.n, cfg.trials, cfg.seed)
                                         : check_theorem2(cfg.n, cfg.trials, cfg.seed);
      doc = detail::envelope(thm1->parsed() ? "verify-thm1" : "verify-thm2");
      doc["report"] = io::to_json(report);
      text << detail::report_text(report);
      if (!report.ok()) status = 1;
    } else if (scan->parsed()) {
      const auto grid = scan_simplex(cfg.resolution, parse_rational(cfg.epsilon), cfg.inner_resolution,
                                     detail::scan_threads());
      if (json) {
        doc = io::scan_sidecar(grid);
        doc["command"] = "scan";
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& cell : grid.cells) {
          cells.push_back({{"counts", cell.counts},
                           {"max_delta", io::to_json(cell.max_delta)},
                           {"argmax_q", io::to_json(cell.argmax_q)},
                           {"max_kendall", cell.max_kendall}});
        }
        doc["cells"] = std::move(cells);
      } else {
        write_scan_csv(grid, text);
        if (!cfg.out.empty()) {
          std::ofstream sidecar(cfg.out + ".json");
          if (!sidecar) throw Error(ErrorCode::Usage, "cannot write '" + cfg.out + ".json'");
          sidecar << io::scan_sidecar(grid).dump(2) << "\n";
        }
      }
    } else if (example->parsed()) {
      const auto ex = example_optimal(cfg.n, parse_rational(cfg.epsilon), parse_rational(cfg.gamma));
      doc = detail::envelope("example-optimal");
      doc["p"] = io::to_json(ex.p);
      doc["q"] = io::to_json(ex.q);
      doc["delta"] = io::to_json(ex.delta);
      text << "p " << format_distribution(ex.p) << "\n"
           << "q " << format_distribution(ex.q) << "\n"
           << "delta " << to_string(ex.delta) << "\n";
    } else if (oracle->parsed()) {
      const auto value = brute_force_delta(detail::read_distribution(cfg.p), detail::read_distribution(cfg.q));
      doc = detail::envelope("oracle-delta");
      doc["delta"] = io::to_json(value);
      text << to_string(value) << "\n";
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Usage ? 2 : 1;
  }

  const std::string payload = json ? doc.dump(2) + "\n" : text.str();
  if (cfg.out.empty()) {
    out << payload;
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: USAGE: cannot write '" << cfg.out << "'\n";
      return 2;
    }
    file << payload;
  }
  return status;
}

}  // namespace guesswork::cli
