#pragma once

// JSON forms of library results. Rationals are written as strings in exact
// form ("0.1", "1/3") so nothing is lost to binary floating point.

#include <json.hpp>

#include <string>

#include "guesswork/designs.hpp"
#include "guesswork/distribution.hpp"
#include "guesswork/divergence.hpp"
#include "guesswork/guesswork.hpp"
#include "guesswork/oracle.hpp"
#include "guesswork/scan.hpp"

namespace guesswork::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json to_json(const Rational& r) { return to_string(r); }

inline json to_json(const Distribution& p) {
  json out = json::array();
  for (const auto& v : p) out.push_back(to_string(v));
  return out;
}

inline json to_json(const GuessingFunction& g) {
  return json(std::vector<int>(g.ranks().begin(), g.ranks().end()));
}

inline json to_json(const TranspositionPath& path) { return json(path.slots); }

inline json to_json(const SymbolPair& pair) { return json::array({pair.first, pair.second}); }

inline json to_json(const std::vector<SymbolPair>& pairs) {
  json out = json::array();
  for (const auto& pair : pairs) out.push_back(to_json(pair));
  return out;
}

/// {"n":5,"parity":"odd","rounds":[[[2,5],[3,4]],...]}; odd designs also
/// carry "missing" (the symbol each round leaves out).
inline json to_json(const TournamentDesign& d) {
  json out{{"n", d.n}, {"parity", std::string(parity_name(d.parity))}};
  json rounds = json::array();
  for (const auto& round : d.rounds) rounds.push_back(to_json(round));
  out["rounds"] = std::move(rounds);
  if (d.parity == Parity::Odd) out["missing"] = d.missing;
  return out;
}

inline TournamentDesign design_from_json(const json& j) {
  TournamentDesign d;
  d.n = j.at("n").get<int>();
  d.parity = j.at("parity").get<std::string>() == "odd" ? Parity::Odd : Parity::Even;
  for (const auto& round : j.at("rounds")) {
    PairSet set;
    for (const auto& pair : round) set.push_back({pair.at(0).get<int>(), pair.at(1).get<int>()});
    d.rounds.push_back(std::move(set));
  }
  if (j.contains("missing")) d.missing = j.at("missing").get<std::vector<int>>();
  return d;
}

inline json to_json(const BoundCertificate& cert) {
  json groups = json::array();
  for (const auto& g : cert.groups) {
    groups.push_back({{"pairs", to_json(g.pairs)},
                      {"sum", to_json(g.sum)},
                      {"lemma_bound", to_json(g.lemma_bound)},
                      {"hypothesis_holds", g.hypothesis_holds},
                      {"within_bound", g.within_bound}});
  }
  std::vector<std::size_t> relabel;
  for (auto s : cert.relabel) relabel.push_back(s + 1);
  return {{"p", to_json(cert.p)},
          {"q", to_json(cert.q)},
          {"epsilon", to_json(cert.epsilon)},
          {"parity", std::string(parity_name(cert.parity))},
          {"relabel", relabel},
          {"groups", std::move(groups)},
          {"total", to_json(cert.total)},
          {"delta", to_json(cert.delta)},
          {"bound", to_json(cert.bound)},
          {"chain_applies", cert.chain_applies},
          {"holds", cert.holds}};
}

inline json to_json(const OracleReport& report) {
  json failures = json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"input", f.input}, {"expected", f.expected}, {"got", f.got}});
  }
  json out{{"check", report.check},
           {"trials", report.trials},
           {"skipped", report.skipped},
           {"failures", std::move(failures)},
           {"max_discrepancy", to_json(report.max_discrepancy)}};
  if (report.max_ratio) out["max_ratio"] = to_json(*report.max_ratio);
  return out;
}

/// Metadata written next to a scan CSV.
inline json scan_sidecar(const ScanGrid& grid) {
  return {{"schema", kSchemaVersion},
          {"resolution", grid.resolution},
          {"inner_resolution", grid.inner_resolution},
          {"epsilon", to_json(grid.epsilon)},
          {"cells", grid.cells.size()}};
}

}  // namespace guesswork::io
