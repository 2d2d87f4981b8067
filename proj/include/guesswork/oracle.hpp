#pragma once

// Brute-force ground truth for the closed forms in guesswork.hpp and
// divergence.hpp, and seeded randomized checks of the two main identities:
//
//   expected_cost(G1, G2, p) == weighted_kendall(p, G1, G2)   (exact)
//   mismatch_cost(p, q) <= 2(n-1) * total_variation(p, q)     (exact)
//
// Randomized distributions are integer compositions of a fixed denominator,
// so all arithmetic stays exact. Every check is deterministic in its seed.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "guesswork/designs.hpp"
#include "guesswork/distribution.hpp"
#include "guesswork/divergence.hpp"
#include "guesswork/error.hpp"
#include "guesswork/guesswork.hpp"
#include "guesswork/lattice.hpp"
#include "guesswork/rational.hpp"

namespace guesswork {

inline constexpr std::size_t kMaxBruteForceSize = 8;
inline constexpr int kDefaultDenominator = 1000;

/// Seeded generator for random test inputs. Draws are built from raw
/// mt19937_64 output so sequences do not depend on the standard library's
/// distribution implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  int between(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Integer counts summing to `denominator`, from sorted uniform cut points.
  std::vector<int> composition(int n, int denominator) {
    std::vector<int> cuts(static_cast<std::size_t>(n - 1));
    for (int& c : cuts) c = between(0, denominator);
    std::sort(cuts.begin(), cuts.end());
    std::vector<int> counts(static_cast<std::size_t>(n));
    int prev = 0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      counts[i] = cuts[i] - prev;
      prev = cuts[i];
    }
    counts.back() = denominator - prev;
    return counts;
  }

  Distribution distribution(int n, int denominator = kDefaultDenominator) {
    return lattice_point(composition(n, denominator), denominator);
  }

  GuessingFunction permutation(std::size_t n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[below(i)]);
    return GuessingFunction::from_order(order);
  }

 private:
  std::mt19937_64 engine_;
};

struct OracleFailure {
  std::string input;
  std::string expected;
  std::string got;
};

struct OracleReport {
  explicit OracleReport(std::string name = {}) : check(std::move(name)) {}

  std::string check;
  std::uint64_t trials = 0;
  std::uint64_t skipped = 0;
  std::vector<OracleFailure> failures;
  Rational max_discrepancy = 0;
  /// Largest observed delta / (2(n-1) * eps); TV-bound checks only.
  std::optional<Rational> max_ratio;

  bool ok() const noexcept { return failures.empty(); }

  void fail(std::string input, std::string expected, std::string got, const Rational& gap) {
    failures.push_back({std::move(input), std::move(expected), std::move(got)});
    if (gap > max_discrepancy) max_discrepancy = gap;
  }
};

namespace detail {

inline void require_brute_force_size(std::size_t n) {
  if (n > kMaxBruteForceSize) {
    throw Error(ErrorCode::TooLarge, "brute force limited to n <= " +
                                         std::to_string(kMaxBruteForceSize) + ", got " +
                                         std::to_string(n));
  }
}

}  // namespace detail

/// Exact argmin of E_p[G] over all n! guessing functions, in lexicographic
/// order of rank vectors.
inline std::vector<GuessingFunction> brute_force_optimal_set(const Distribution& p) {
  detail::require_brute_force_size(p.size());
  std::vector<int> ranks(p.size());
  std::iota(ranks.begin(), ranks.end(), 1);
  std::vector<GuessingFunction> best;
  std::optional<Rational> best_value;
  do {
    GuessingFunction g(ranks);
    Rational value = expected_guesswork(g, p);
    if (!best_value || value < *best_value) {
      best_value = value;
      best.clear();
    }
    if (value == *best_value) best.push_back(std::move(g));
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return best;
}

/// min over G_q in the enumerated optimal set of q of E_p[G_q - G_p], with
/// G_p taken from the enumerated optimal set of p.
inline Rational brute_force_delta(const Distribution& p, const Distribution& q) {
  detail::require_same_size(p.size(), q.size(), "brute_force_delta");
  detail::require_brute_force_size(p.size());
  const GuessingFunction g_p = brute_force_optimal_set(p).front();
  std::optional<Rational> best;
  for (const auto& g_q : brute_force_optimal_set(q)) {
    Rational cost = expected_cost(g_p, g_q, p);
    if (!best || cost < *best) best = cost;
  }
  return *best;
}

/// Random (p, G1, G2) triples: expected_cost must equal weighted_kendall.
/// Every third trial draws p with denominator 10 so ties are common.
inline OracleReport check_theorem1(int n, std::uint64_t trials, std::uint64_t seed) {
  if (n < 2 || n > 7) throw Error(ErrorCode::Range, "theorem 1 check needs 2 <= n <= 7");
  OracleReport report{"theorem1"};
  Sampler sampler(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Distribution p = sampler.distribution(n, t % 3 == 2 ? 10 : kDefaultDenominator);
    const GuessingFunction g1 = sampler.permutation(static_cast<std::size_t>(n));
    const GuessingFunction g2 = sampler.permutation(static_cast<std::size_t>(n));
    const Rational cost = expected_cost(g1, g2, p);
    const Rational divergence = weighted_kendall(p, g1, g2);
    ++report.trials;
    if (cost != divergence) {
      report.fail("p=" + format_distribution(p) + " g1=" + format_guessing_function(g1) +
                      " g2=" + format_guessing_function(g2),
                  to_string(cost), to_string(divergence), abs(cost - divergence));
    }
  }
  return report;
}

/// Checks delta <= 2(n-1) * TV on explicit pairs. Pairs with TV = 0 are
/// skipped (after checking delta = 0).
inline OracleReport check_theorem2_pairs(
    const std::vector<std::pair<Distribution, Distribution>>& pairs) {
  OracleReport report{"theorem2"};
  for (const auto& [p, q] : pairs) {
    const Rational eps = total_variation(p, q);
    const Rational delta = mismatch_cost(p, q);
    const Rational bound = 2 * static_cast<long>(p.size() - 1) * eps;
    ++report.trials;
    if (delta > bound) {
      report.fail("p=" + format_distribution(p) + " q=" + format_distribution(q),
                  "<= " + to_string(bound), to_string(delta), delta - bound);
      continue;
    }
    if (eps == 0) {
      ++report.skipped;
      continue;
    }
    Rational ratio = delta / bound;
    if (!report.max_ratio || ratio > *report.max_ratio) report.max_ratio = ratio;
  }
  return report;
}

namespace detail {

// q = (1 - lambda) p + lambda r, where r puts more mass on less likely
// symbols. Small lambda inverts the close pairs of p at small TV cost.
inline Distribution reversed_blend(const Distribution& p, const Rational& lambda) {
  const auto order = canonical_optimal(p).order();
  const std::size_t n = p.size();
  const Rational norm(static_cast<long>(n * (n + 1) / 2));
  std::vector<Rational> probs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Rational r = Rational(static_cast<long>(k + 1)) / norm;
    probs[order[k]] = (1 - lambda) * p[order[k]] + lambda * r;
  }
  return Distribution(std::move(probs));
}

// Moves `steps` units of 1/denominator between random coordinates of p.
inline Distribution perturb(Sampler& sampler, const std::vector<int>& counts, int denominator,
                            int steps) {
  std::vector<int> moved = counts;
  const int n = static_cast<int>(moved.size());
  for (int s = 0; s < steps; ++s) {
    const int from = sampler.between(0, n - 1);
    const int to = sampler.between(0, n - 1);
    if (moved[static_cast<std::size_t>(from)] > 0) {
      --moved[static_cast<std::size_t>(from)];
      ++moved[static_cast<std::size_t>(to)];
    }
  }
  return lattice_point(moved, denominator);
}

}  // namespace detail

/// Random (p, q) pairs drawn from four families (independent, local
/// perturbation, order-reversing blend, tie-rich), checked as in
/// `check_theorem2_pairs`.
inline OracleReport check_theorem2(int n, std::uint64_t trials, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::Range, "theorem 2 check needs n >= 2");
  Sampler sampler(seed);
  std::vector<std::pair<Distribution, Distribution>> pairs;
  pairs.reserve(trials);
  for (std::uint64_t t = 0; t < trials; ++t) {
    switch (t % 4) {
      case 0:
        pairs.emplace_back(sampler.distribution(n), sampler.distribution(n));
        break;
      case 1: {
        const auto counts = sampler.composition(n, kDefaultDenominator);
        pairs.emplace_back(lattice_point(counts, kDefaultDenominator),
                           detail::perturb(sampler, counts, kDefaultDenominator,
                                           sampler.between(1, 4 * n)));
        break;
      }
      case 2: {
        Distribution p = sampler.distribution(n);
        const Rational lambda = ratio(sampler.between(1, 100), 100);
        Distribution q = detail::reversed_blend(p, lambda);
        pairs.emplace_back(std::move(p), std::move(q));
        break;
      }
      default: {
        const int denominator = std::max(2, n / 2);
        pairs.emplace_back(sampler.distribution(n, denominator),
                           sampler.distribution(n, denominator));
        break;
      }
    }
  }
  return check_theorem2_pairs(pairs);
}

/// Exhaustive sweep over every pair of lattice distributions with the given
/// denominator: brute_force_delta must equal mismatch_cost, and the brute
/// force optimal set must match optimal_set (count and members).
inline OracleReport check_delta_sweep(int n, int denominator) {
  detail::require_brute_force_size(static_cast<std::size_t>(n));
  OracleReport report{"delta_sweep"};
  std::vector<Distribution> points;
  for_each_composition(denominator, n, [&](const std::vector<int>& counts) {
    points.push_back(lattice_point(counts, denominator));
  });
  std::vector<std::vector<GuessingFunction>> optimal;
  optimal.reserve(points.size());
  for (const auto& p : points) {
    auto brute = brute_force_optimal_set(p);
    auto fast = optimal_set(p).to_vector();
    std::sort(fast.begin(), fast.end());
    if (brute != fast) {
      report.fail("optimal set of p=" + format_distribution(p), std::to_string(brute.size()),
                  std::to_string(fast.size()), Rational(1));
    }
    optimal.push_back(std::move(brute));
  }
  for (std::size_t a = 0; a < points.size(); ++a) {
    const GuessingFunction& g_p = optimal[a].front();
    for (std::size_t b = 0; b < points.size(); ++b) {
      std::optional<Rational> best;
      for (const auto& g_q : optimal[b]) {
        Rational cost = expected_cost(g_p, g_q, points[a]);
        if (!best || cost < *best) best = cost;
      }
      const Rational closed = mismatch_cost(points[a], points[b]);
      ++report.trials;
      if (*best != closed) {
        report.fail("p=" + format_distribution(points[a]) + " q=" + format_distribution(points[b]),
                    to_string(*best), to_string(closed), abs(*best - closed));
      }
    }
  }
  return report;
}

/// Random instances of the round lemma: M a random set of disjoint pairs,
/// p and q arranged so every pair is ordered one way by p and the other way
/// by q. Checks sum_M (p_i - p_j) <= 2 * TV(p, q).
inline OracleReport check_round_lemma(std::uint64_t trials, std::uint64_t seed, int max_n = 12) {
  OracleReport report{"round_lemma"};
  Sampler sampler(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const int n = sampler.between(2, max_n);
    const int denominator = t % 2 == 0 ? kDefaultDenominator : 2 * n;
    // Random matching on a shuffled prefix of the symbols.
    const auto shuffled = sampler.permutation(static_cast<std::size_t>(n)).order();
    const int size = sampler.between(1, n / 2);
    std::vector<SymbolPair> pairs;
    for (int k = 0; k < size; ++k) {
      pairs.push_back({static_cast<int>(shuffled[2 * k] + 1), static_cast<int>(shuffled[2 * k + 1] + 1)});
    }
    auto p_counts = sampler.composition(n, denominator);
    auto q_counts = sampler.composition(n, denominator);
    for (auto& [i, j] : pairs) {
      if (p_counts[i - 1] < p_counts[j - 1]) std::swap(i, j);
      if (q_counts[i - 1] > q_counts[j - 1]) std::swap(q_counts[i - 1], q_counts[j - 1]);
    }
    const Distribution p = lattice_point(p_counts, denominator);
    const Distribution q = lattice_point(q_counts, denominator);
    ++report.trials;
    if (!anti_ordered(p, q, pairs)) {
      report.fail("construction", "anti-ordered instance", "hypotheses violated", Rational(1));
      continue;
    }
    const Rational sum = pair_sum(p, pairs);
    const Rational bound = 2 * total_variation(p, q);
    if (sum > bound) {
      report.fail("p=" + format_distribution(p) + " q=" + format_distribution(q),
                  "<= " + to_string(bound), to_string(sum), sum - bound);
    }
  }
  return report;
}

/// Random instances of the bridge-group lemma for odd n: M = M_a, M_b and
/// their bridge pair; pairs are oriented by p and q is drawn with the
/// opposite order. Checks sum_M (p_i - p_j) <= 4 * TV(p, q).
inline OracleReport check_bridge_lemma(std::uint64_t trials, std::uint64_t seed, int max_n = 15) {
  OracleReport report{"bridge_lemma"};
  Sampler sampler(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const int n = 2 * sampler.between(1, (max_n - 1) / 2) + 1;
    const int denominator = t % 2 == 0 ? kDefaultDenominator : n;
    const TournamentDesign design = odd_design(n);
    const int a = sampler.between(1, n);
    int b = sampler.between(1, n - 1);
    if (b >= a) ++b;
    std::vector<SymbolPair> pairs = bridge_group(design, a, b);

    auto p_counts = sampler.composition(n, denominator);
    // q takes its values in the reverse order of p (ties in p broken the
    // same way for both), so p_i >= p_j implies q_i <= q_j.
    auto q_values = sampler.composition(n, denominator);
    std::sort(q_values.begin(), q_values.end());
    std::vector<std::size_t> by_p(static_cast<std::size_t>(n));
    std::iota(by_p.begin(), by_p.end(), std::size_t{0});
    std::stable_sort(by_p.begin(), by_p.end(),
                     [&](std::size_t x, std::size_t y) { return p_counts[x] > p_counts[y]; });
    std::vector<int> q_counts(static_cast<std::size_t>(n));
    std::vector<std::size_t> position(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < by_p.size(); ++k) {
      q_counts[by_p[k]] = q_values[k];
      position[by_p[k]] = k;
    }
    for (auto& [i, j] : pairs) {
      if (position[static_cast<std::size_t>(i - 1)] > position[static_cast<std::size_t>(j - 1)]) std::swap(i, j);
    }
    const Distribution p = lattice_point(p_counts, denominator);
    const Distribution q = lattice_point(q_counts, denominator);
    ++report.trials;
    if (!anti_ordered(p, q, pairs)) {
      report.fail("construction", "anti-ordered instance", "hypotheses violated", Rational(1));
      continue;
    }
    const Rational sum = pair_sum(p, pairs);
    const Rational bound = 4 * total_variation(p, q);
    if (sum > bound) {
      report.fail("p=" + format_distribution(p) + " q=" + format_distribution(q),
                  "<= " + to_string(bound), to_string(sum), sum - bound);
    }
  }
  return report;
}

}  // namespace guesswork
