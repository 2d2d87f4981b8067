#pragma once

// Worst-case mismatch inside a total-variation ball, evaluated on a
// barycentric lattice, and the simplex-wide sweep built on it.
//
// For a centre p, radius eps and inner resolution R, the search visits every
// q = (c_1/R, ..., c_n/R) with TV(p, q) <= eps and records
//
//   max_delta   = max delta(p, q)                       (with one argmax q)
//   max_kendall = max over q and over every q-optimal G_q of
//                 kendall_tau(canonical_optimal(p), G_q)
//
// Both are lower bounds on the continuum maxima and converge as R grows.
//
// For a fixed q the inner maximum over G_q has a closed form: pairs ordered
// strictly by q are fixed, and within a tie group of q the order can be
// chosen to disagree with G_p everywhere, so
//   max_G_q K(G_p, G_q) = #{(i, j) : G_p(i) < G_p(j), q_i <= q_j}.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <thread>
#include <utility>
#include <vector>

#include "guesswork/distribution.hpp"
#include "guesswork/error.hpp"
#include "guesswork/guesswork.hpp"
#include "guesswork/lattice.hpp"
#include "guesswork/rational.hpp"

namespace guesswork {

inline constexpr int kDefaultInnerResolution = 400;

struct BallSearch {
  Rational max_delta;
  Distribution argmax_q;
  int max_kendall;
};

namespace detail {

inline void validate_ball(const Rational& epsilon, int inner_resolution) {
  if (epsilon < 0 || epsilon > 1) {
    throw Error(ErrorCode::Range, "epsilon must lie in [0, 1], got " + to_string(epsilon));
  }
  if (inner_resolution < 1) throw Error(ErrorCode::Range, "inner resolution must be at least 1");
}

// A pair (i, j) with G_p(i) < G_p(j) and weight p_i - p_j >= 0 (in units of
// 1/D for the integer kernel).
template <typename Weight>
struct OrderedPair {
  std::size_t i;
  std::size_t j;
  Weight weight;
};

template <typename Weight, typename Value>
std::vector<OrderedPair<Weight>> ordered_pairs(const Distribution& p,
                                               const std::vector<Value>& scaled) {
  const auto order = canonical_optimal(p).order();
  std::vector<OrderedPair<Weight>> pairs;
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      pairs.push_back({order[a], order[b], Weight(scaled[order[a]] - scaled[order[b]])});
    }
  }
  return pairs;
}

// Integer kernel: every quantity is scaled by D = lcm(inner, denominators of
// p), so TV and delta comparisons are exact int64 arithmetic.
inline BallSearch ball_search_integer(const Distribution& p, const Rational& epsilon,
                                      int inner, std::int64_t denominator) {
  const int n = static_cast<int>(p.size());
  const std::int64_t scale = denominator / inner;
  std::vector<std::int64_t> scaled(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    Integer v = p[i].get_num() * (Integer(static_cast<long>(denominator)) / p[i].get_den());
    scaled[i] = v.get_si();
  }
  // L1 distance (in units of 1/D) may not exceed floor(2 * eps * D).
  const Integer limit_big = 2 * epsilon.get_num() * Integer(static_cast<long>(denominator)) / epsilon.get_den();
  const std::int64_t limit = limit_big.get_si();
  const std::int64_t half = limit / 2;

  const auto pairs = ordered_pairs<std::int64_t>(p, scaled);

  std::vector<int> counts(p.size(), 0);
  std::vector<int> lo(p.size()), hi(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::int64_t low = scaled[i] - half;
    const std::int64_t high = scaled[i] + half;
    lo[i] = static_cast<int>(std::max<std::int64_t>(0, low <= 0 ? 0 : (low + scale - 1) / scale));
    hi[i] = static_cast<int>(std::min<std::int64_t>(inner, high / scale));
  }

  std::int64_t best_delta = -1;
  std::vector<int> best_counts;
  int best_kendall = 0;

  auto evaluate = [&]() {
    std::int64_t delta = 0;
    int kendall = 0;
    for (const auto& pair : pairs) {
      const int ci = counts[pair.i];
      const int cj = counts[pair.j];
      if (ci < cj) {
        delta += pair.weight;
        ++kendall;
      } else if (ci == cj) {
        ++kendall;
      }
    }
    if (delta > best_delta) {
      best_delta = delta;
      best_counts = counts;
    }
    best_kendall = std::max(best_kendall, kendall);
  };

  auto recurse = [&](auto& self, int index, int remaining, std::int64_t l1) -> void {
    if (index == n - 1) {
      if (remaining < lo[index] || remaining > hi[index]) return;
      const std::int64_t d = remaining * scale - scaled[index];
      if (l1 + (d < 0 ? -d : d) > limit) return;
      counts[index] = remaining;
      evaluate();
      return;
    }
    const int top = std::min(hi[index], remaining);
    for (int c = lo[index]; c <= top; ++c) {
      const std::int64_t d = c * scale - scaled[index];
      const std::int64_t next = l1 + (d < 0 ? -d : d);
      if (next > limit) {
        if (d > 0) break;  // larger c only moves further away
        continue;
      }
      counts[index] = c;
      self(self, index + 1, remaining - c, next);
    }
  };
  recurse(recurse, 0, inner, 0);

  if (best_delta < 0) {
    throw Error(ErrorCode::Range, "no lattice point of resolution " + std::to_string(inner) +
                                      " lies within the ball");
  }
  return {ratio(best_delta, denominator), lattice_point(best_counts, inner), best_kendall};
}

// Exact fallback for centres whose denominators do not fit the integer
// kernel.
inline BallSearch ball_search_rational(const Distribution& p, const Rational& epsilon, int inner) {
  const std::vector<Rational> probs(p.begin(), p.end());
  const auto pairs = ordered_pairs<Rational>(p, probs);
  std::optional<BallSearch> best;
  int best_kendall = 0;
  for_each_composition(inner, static_cast<int>(p.size()), [&](const std::vector<int>& counts) {
    Rational l1 = 0;
    for (std::size_t i = 0; i < p.size(); ++i) l1 += abs(ratio(counts[i], inner) - p[i]);
    if (l1 > 2 * epsilon) return;
    Rational delta = 0;
    int kendall = 0;
    for (const auto& pair : pairs) {
      if (counts[pair.i] < counts[pair.j]) {
        delta += pair.weight;
        ++kendall;
      } else if (counts[pair.i] == counts[pair.j]) {
        ++kendall;
      }
    }
    best_kendall = std::max(best_kendall, kendall);
    if (!best || delta > best->max_delta) {
      best = BallSearch{delta, lattice_point(counts, inner), 0};
    }
  });
  if (!best) {
    throw Error(ErrorCode::Range, "no lattice point of resolution " + std::to_string(inner) +
                                      " lies within the ball");
  }
  best->max_kendall = best_kendall;
  return *best;
}

}  // namespace detail

/// Single pass computing both ball maxima for centre `p`.
inline BallSearch ball_search(const Distribution& p, const Rational& epsilon,
                              int inner_resolution = kDefaultInnerResolution) {
  detail::validate_ball(epsilon, inner_resolution);
  Integer denominator(inner_resolution);
  for (const auto& v : p) mpz_lcm(denominator.get_mpz_t(), denominator.get_mpz_t(), v.get_den_mpz_t());
  // Keep n * D * epsilon-numerator products comfortably inside int64.
  if (denominator.fits_slong_p() && denominator < Integer(1) << 40 &&
      epsilon.get_den() < Integer(1) << 20 && p.size() < 64) {
    return detail::ball_search_integer(p, epsilon, inner_resolution, denominator.get_si());
  }
  return detail::ball_search_rational(p, epsilon, inner_resolution);
}

/// Largest delta(p, q) over lattice q with TV(p, q) <= epsilon, and the
/// lexicographically first q attaining it.
inline std::pair<Rational, Distribution> max_delta_in_ball(
    const Distribution& p, const Rational& epsilon,
    int inner_resolution = kDefaultInnerResolution) {
  auto result = ball_search(p, epsilon, inner_resolution);
  return {std::move(result.max_delta), std::move(result.argmax_q)};
}

/// Largest Kendall tau between canonical_optimal(p) and any optimal guessing
/// function of any lattice q with TV(p, q) <= epsilon.
inline int max_kendall_in_ball(const Distribution& p, const Rational& epsilon,
                               int inner_resolution = kDefaultInnerResolution) {
  return ball_search(p, epsilon, inner_resolution).max_kendall;
}

struct ScanCell {
  std::array<int, 3> counts;  // p = counts / resolution
  Rational max_delta;
  Distribution argmax_q;
  int max_kendall;
};

struct ScanGrid {
  int resolution;
  int inner_resolution;
  Rational epsilon;
  std::vector<ScanCell> cells;  // lexicographic in counts
};

/// Evaluates both ball maxima at every lattice point of the 3-symbol simplex
/// with the given resolution. `threads == 0` uses the hardware concurrency.
/// The output does not depend on the number of threads.
inline ScanGrid scan_simplex(int resolution, const Rational& epsilon,
                             int inner_resolution = kDefaultInnerResolution,
                             unsigned threads = 0) {
  if (resolution < 1) throw Error(ErrorCode::Range, "resolution must be at least 1");
  detail::validate_ball(epsilon, inner_resolution);

  std::vector<std::array<int, 3>> points;
  for_each_composition(resolution, 3, [&](const std::vector<int>& c) {
    points.push_back({c[0], c[1], c[2]});
  });

  std::vector<std::optional<ScanCell>> cells(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < points.size(); k = next++) {
      const auto& c = points[k];
      const Distribution p = lattice_point({c[0], c[1], c[2]}, resolution);
      auto result = ball_search(p, epsilon, inner_resolution);
      cells[k] = ScanCell{c, std::move(result.max_delta), std::move(result.argmax_q),
                          result.max_kendall};
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, points.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ScanGrid grid{resolution, inner_resolution, epsilon, {}};
  grid.cells.reserve(cells.size());
  for (auto& cell : cells) grid.cells.push_back(std::move(*cell));
  return grid;
}

/// CSV with header `p1,p2,p3,max_delta,max_kendall`; decimals carry 12
/// significant digits.
inline void write_scan_csv(const ScanGrid& grid, std::ostream& out) {
  out << "p1,p2,p3,max_delta,max_kendall\n";
  for (const auto& cell : grid.cells) {
    for (int c : cell.counts) out << to_decimal(ratio(c, grid.resolution)) << ',';
    out << to_decimal(cell.max_delta) << ',' << cell.max_kendall << '\n';
  }
}

struct ExampleOptimal {
  Distribution p;
  Distribution q;
  Rational delta;
};

/// A pair (p, q) whose mismatch cost is exactly gamma * 2(n-1) * epsilon:
///
///   p = (1/n + gamma*eps, 1/n, ..., 1/n, 1/n - gamma*eps)
///   q_i = 1/n + (i - (n+1)/2) * eta,   eta = 2 * eps * (1 - gamma) / S
///
/// with S = sum_i |i - (n+1)/2|. Then TV(p, q) = eps exactly and q is
/// strictly increasing, so every pair ordered by p is inverted by q.
inline ExampleOptimal example_optimal(int n, const Rational& epsilon, const Rational& gamma) {
  if (n < 2) throw Error(ErrorCode::Range, "n must be at least 2");
  if (gamma <= 0 || gamma >= 1) throw Error(ErrorCode::Range, "gamma must lie in (0, 1)");
  if (epsilon <= 0 || epsilon > Rational(1, n)) {
    throw Error(ErrorCode::Range, "epsilon must lie in (0, 1/n]");
  }
  const Rational uniform(1, n);
  const Rational centre = ratio(n + 1, 2);
  Rational spread = 0;
  for (int i = 1; i <= n; ++i) spread += abs(Rational(i) - centre);
  const Rational eta = 2 * epsilon * (1 - gamma) / spread;

  std::vector<Rational> p_probs(static_cast<std::size_t>(n), uniform);
  p_probs.front() += gamma * epsilon;
  p_probs.back() -= gamma * epsilon;
  std::vector<Rational> q_probs;
  for (int i = 1; i <= n; ++i) q_probs.emplace_back(uniform + (Rational(i) - centre) * eta);

  Distribution p(std::move(p_probs));
  Distribution q(std::move(q_probs));
  for (int i = 0; i + 1 < n; ++i) {
    if (!(q[i] < q[i + 1])) throw Error(ErrorCode::Range, "constructed q is not strictly increasing");
  }
  if (total_variation(p, q) > epsilon) throw Error(ErrorCode::Range, "constructed q leaves the ball");
  Rational delta = mismatch_cost(p, q);
  return {std::move(p), std::move(q), std::move(delta)};
}

}  // namespace guesswork
