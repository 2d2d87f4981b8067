#pragma once

// Kendall tau distance, the probability-weighted signed Kendall divergence
// K_p, and adjacent-transposition paths between guessing functions.
//
// Two views of an adjacent transposition are used here:
//
//  * Slot view. A transposition is named by a rank slot j (1 <= j < n). It
//    acts on the *values* of a guessing function: applying slot j to G swaps
//    the symbols guessed at steps j and j+1, i.e. the result is tau_j o G
//    where tau_j exchanges the numbers j and j+1.
//
//  * Element view. The same step moves two original symbols: x, which was
//    guessed at step j and is now guessed at step j+1, and y, which moves from
//    j+1 to j. `moved_symbols` recovers (x, y). For that single step
//    K_p(before, after) = p_x - p_y.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "guesswork/distribution.hpp"
#include "guesswork/error.hpp"
#include "guesswork/guesswork.hpp"
#include "guesswork/rational.hpp"

namespace guesswork {

namespace detail {

inline std::uint64_t count_inversions(std::vector<int>& values, std::vector<int>& scratch,
                                      std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t count = count_inversions(values, scratch, lo, mid) +
                        count_inversions(values, scratch, mid, hi);
  std::size_t a = lo, b = mid, out = lo;
  while (a < mid && b < hi) {
    if (values[b] < values[a]) {
      count += mid - a;
      scratch[out++] = values[b++];
    } else {
      scratch[out++] = values[a++];
    }
  }
  while (a < mid) scratch[out++] = values[a++];
  while (b < hi) scratch[out++] = values[b++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            values.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

}  // namespace detail

/// Number of symbol pairs ordered one way by s1 and the other way by s2.
/// Equals the minimum number of adjacent transpositions taking s1 to s2.
inline std::uint64_t kendall_tau(const GuessingFunction& s1, const GuessingFunction& s2) {
  detail::require_same_size(s1.size(), s2.size(), "kendall_tau");
  // s2's ranks listed in s1's guess order; inversions of that sequence are
  // exactly the discordant pairs.
  std::vector<int> values;
  values.reserve(s1.size());
  for (std::size_t symbol : s1.order()) values.push_back(s2.rank(symbol));
  std::vector<int> scratch(values.size());
  return detail::count_inversions(values, scratch, 0, values.size());
}

/// K_p(s1, s2) = sum over (i, j) with s1(i) < s1(j) of
/// (p_i - p_j) * [s2(i) > s2(j)].
///
/// Signed and asymmetric; equals expected_cost(s1, s2, p) for every p.
inline Rational weighted_kendall(const Distribution& p, const GuessingFunction& s1,
                                 const GuessingFunction& s2) {
  detail::require_same_size(s1.size(), s2.size(), "weighted_kendall");
  detail::require_same_size(s1.size(), p.size(), "weighted_kendall");
  Rational sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (s1.rank(i) < s1.rank(j) && s2.rank(i) > s2.rank(j)) sum += p[i] - p[j];
    }
  }
  return sum;
}

/// (outer o inner)(i) = outer(inner(i)).
inline GuessingFunction compose(const GuessingFunction& outer, const GuessingFunction& inner) {
  detail::require_same_size(outer.size(), inner.size(), "compose");
  std::vector<int> ranks(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) ranks[i] = outer.rank(inner.rank(i) - 1);
  return GuessingFunction(std::move(ranks));
}

/// tau_slot o g: swaps which symbols are guessed at steps `slot` and
/// `slot + 1` (1-based).
inline GuessingFunction apply_adjacent(const GuessingFunction& g, int slot) {
  if (slot < 1 || static_cast<std::size_t>(slot) >= g.size()) {
    throw Error(ErrorCode::Range, "transposition slot " + std::to_string(slot) +
                                      " outside [1, " + std::to_string(g.size() - 1) + "]");
  }
  std::vector<int> ranks(g.ranks().begin(), g.ranks().end());
  for (int& r : ranks) {
    if (r == slot) {
      r = slot + 1;
    } else if (r == slot + 1) {
      r = slot;
    }
  }
  return GuessingFunction(std::move(ranks));
}

/// The 0-based symbols (x, y) moved by applying `slot` to `g`: x is guessed
/// one step later afterwards, y one step earlier.
inline std::pair<std::size_t, std::size_t> moved_symbols(const GuessingFunction& g, int slot) {
  if (slot < 1 || static_cast<std::size_t>(slot) >= g.size()) {
    throw Error(ErrorCode::Range, "transposition slot out of range");
  }
  const auto order = g.order();
  return {order[slot - 1], order[slot]};
}

struct TranspositionPath {
  GuessingFunction source;
  GuessingFunction target;
  std::vector<int> slots;  // 1-based, applied in order

  std::size_t size() const noexcept { return slots.size(); }

  /// source, then every intermediate function, ending at target.
  std::vector<GuessingFunction> replay() const {
    std::vector<GuessingFunction> out{source};
    for (int slot : slots) out.push_back(apply_adjacent(out.back(), slot));
    return out;
  }
};

/// A shortest adjacent-transposition path from s1 to s2, generated by
/// bubble-sorting the guess order of s1 against the ranks of s2. Each step
/// removes one discordant pair, so the length equals kendall_tau(s1, s2).
inline TranspositionPath minimal_path(const GuessingFunction& s1, const GuessingFunction& s2) {
  detail::require_same_size(s1.size(), s2.size(), "minimal_path");
  TranspositionPath path{s1, s2, {}};
  auto order = s1.order();
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      if (s2.rank(order[k]) > s2.rank(order[k + 1])) {
        std::swap(order[k], order[k + 1]);
        path.slots.push_back(static_cast<int>(k + 1));
        swapped = true;
      }
    }
  }
  return path;
}

inline std::string format_path(const TranspositionPath& path) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.slots.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(path.slots[i]);
  }
  return out + "]";
}

}  // namespace guesswork
