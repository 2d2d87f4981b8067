// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "guesswork/designs.hpp"
#include "guesswork/divergence.hpp"
#include "guesswork/guesswork.hpp"
#include "guesswork/oracle.hpp"
#include "guesswork/scan.hpp"

using namespace guesswork;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > limit_seconds) {
    outcome.pass = false;
    outcome.detail += " (over time limit)";
  }
  if (!outcome.pass) ++failures;
  std::printf("[%s] %d. %s: %s (%.2fs, limit %.0fs)\n", outcome.pass ? "PASS" : "FAIL", id, title,
              outcome.detail.c_str(), seconds, limit_seconds);
  std::fflush(stdout);
}

Rational R(const char* s) { return parse_rational(s); }

std::string report_detail(const OracleReport& r) {
  return std::to_string(r.trials) + " trials, " + std::to_string(r.failures.size()) + " failures";
}

}  // namespace

int main() {
  criterion(1, "tie example", 1, [] {
    const auto p = parse_distribution("[0.40,0.30,0.20,0.10]");
    const auto q = parse_distribution("[0.60,0.20,0.10,0.10]");
    const auto set_q = optimal_set(q).to_vector();
    bool ok = optimal_set(p).count() == 1 && set_q.size() == 2 && optimal_set(q).count() == 2;
    const auto g_p = canonical_optimal(p);
    Rational other = -1;
    for (const auto& g : set_q) {
      if (g != g_p) other = expected_cost(g_p, g, p);
    }
    const auto delta = mismatch_cost(p, q);
    ok = ok && other == R("1/10") && delta == 0;
    return Outcome{ok, "alternative cost " + to_string(other) + ", delta " + to_string(delta)};
  });

  criterion(2, "expected cost equals weighted Kendall, n=2..7", 30, [] {
    std::uint64_t trials = 0, bad = 0;
    for (int n = 2; n <= 7; ++n) {
      const auto r = check_theorem1(n, 1000, 1000 + n);
      trials += r.trials;
      bad += r.failures.size();
    }
    return Outcome{bad == 0, std::to_string(trials) + " trials, " + std::to_string(bad) + " failures"};
  });

  criterion(3, "weighted Kendall telescopes", 10, [] {
    Sampler sampler(3);
    int bad = 0;
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) {
      const int n = sampler.between(2, 10);
      const auto p = sampler.distribution(n, kDefaultDenominator);
      const auto s1 = sampler.permutation(n), s2 = sampler.permutation(n), s3 = sampler.permutation(n);
      if (weighted_kendall(p, s1, s3) != weighted_kendall(p, s1, s2) + weighted_kendall(p, s2, s3)) ++bad;
    }
    return Outcome{bad == 0, std::to_string(trials) + " triples, " + std::to_string(bad) + " failures"};
  });

  criterion(4, "closed-form delta equals brute force, all denominator-10 pairs", 300, [] {
    std::uint64_t trials = 0, bad = 0;
    for (int n = 2; n <= 4; ++n) {
      const auto r = check_delta_sweep(n, 10);
      trials += r.trials;
      bad += r.failures.size();
    }
    return Outcome{bad == 0, std::to_string(trials) + " pairs, " + std::to_string(bad) + " failures"};
  });

  criterion(5, "delta <= 2(n-1) TV, n=2..50", 60, [] {
    std::uint64_t trials = 0, bad = 0;
    Rational worst = 0;
    for (int n = 2; n <= 50; ++n) {
      const auto r = check_theorem2(n, 250, 5000 + n);
      trials += r.trials;
      bad += r.failures.size();
      if (r.max_ratio && *r.max_ratio > worst) worst = *r.max_ratio;
    }
    return Outcome{bad == 0 && trials >= 10000,
                   std::to_string(trials) + " trials, " + std::to_string(bad) +
                       " violations, max ratio " + to_decimal(worst, 6)};
  });

  criterion(6, "tight example reaches gamma of the bound", 1, [] {
    int bad = 0, cases = 0;
    for (const char* g : {"1/2", "9/10", "99/100"}) {
      for (int n : {3, 5, 8}) {
        const Rational gamma = R(g), eps(1, n);
        const auto ex = example_optimal(n, eps, gamma);
        const Rational bound = 2 * (n - 1) * eps;
        const Rational delta = mismatch_cost(ex.p, ex.q);
        ++cases;
        if (ex.delta != gamma * bound || delta != ex.delta || delta / bound != gamma ||
            total_variation(ex.p, ex.q) > eps) {
          ++bad;
        }
      }
    }
    return Outcome{bad == 0, std::to_string(cases) + " cases, " + std::to_string(bad) + " mismatches"};
  });

  criterion(7, "tournament designs", 10, [] {
    int checked = 0;
    for (int n = 2; n <= 100; ++n) {
      const auto d = make_design(n);
      if (!verify_design(d).ok()) return Outcome{false, "design for n=" + std::to_string(n) + " invalid"};
      if (d.parity == Parity::Odd) {
        std::set<SymbolPair> bridges;
        for (const auto& pair : d.rounds[0]) {
          if (bridge_pair(d, pair.first, pair.second) != pair) return Outcome{false, "bridge label n=" + std::to_string(n)};
          bridges.insert(pair);
        }
        if (bridges.size() != d.rounds[0].size()) return Outcome{false, "repeated bridge n=" + std::to_string(n)};
        for (int k = 0; k < n; ++k) {
          if (d.missing[static_cast<std::size_t>(k)] != k + 1) return Outcome{false, "missing label n=" + std::to_string(n)};
        }
      }
      ++checked;
    }
    const std::vector<std::set<SymbolPair>> table{
        {{2, 5}, {3, 4}}, {{1, 3}, {4, 5}}, {{2, 4}, {1, 5}}, {{3, 5}, {1, 2}}, {{1, 4}, {2, 3}}};
    const auto five = odd_design(5);
    for (std::size_t r = 0; r < 5; ++r) {
      if (std::set<SymbolPair>(five.rounds[r].begin(), five.rounds[r].end()) != table[r]) {
        return Outcome{false, "n=5 round " + std::to_string(r + 1) + " differs from table"};
      }
    }
    return Outcome{true, std::to_string(checked) + " designs valid, n=5 table reproduced"};
  });

  criterion(8, "round lemma (2 eps) and bridge lemma (4 eps)", 30, [] {
    const auto a = check_round_lemma(2000, 8);
    const auto b = check_bridge_lemma(2000, 9);
    return Outcome{a.ok() && b.ok() && a.trials >= 1000 && b.trials >= 1000,
                   "round: " + report_detail(a) + "; bridge: " + report_detail(b)};
  });

  criterion(9, "simplex scan, resolution 200, eps 0.2, inner 400", 600, [] {
    const auto grid = scan_simplex(200, R("0.2"), 400);
    Rational best = -1, centroid = -1;
    bool capped = true, kendall_ok = true;
    const Rational tol = R("0.02");
    const Rational caps[4] = {0, R("0.4"), R("0.6"), R("0.8")};
    for (const auto& cell : grid.cells) {
      if (cell.max_delta > best) best = cell.max_delta;
      if (cell.max_delta > R("0.8")) capped = false;
      if (cell.max_kendall < 0 || cell.max_kendall > 3) {
        kendall_ok = false;
      } else if (cell.max_kendall > 0 && cell.max_delta > caps[cell.max_kendall] + tol) {
        kendall_ok = false;
      } else if (cell.max_kendall == 0 && cell.max_delta != 0) {
        kendall_ok = false;
      }
    }
    // 200 is not divisible by 3, so the centroid is evaluated directly.
    centroid = max_delta_in_ball(Distribution::uniform(3), R("0.2"), 400).first;
    const bool a = best >= R("0.78") && best <= R("0.8");
    const bool ok = a && centroid == 0 && capped && kendall_ok;
    return Outcome{ok, "max " + to_decimal(best, 6) + ", centroid " + to_string(centroid) +
                           (capped ? ", all <= 0.8" : ", cell above 0.8") +
                           (kendall_ok ? ", plateau caps hold" : ", plateau cap violated")};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
