#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "guesswork/distribution.hpp"
#include "guesswork/error.hpp"
#include "guesswork/rational.hpp"

namespace guesswork {

/// A guessing function G on {1, ..., n}: a bijection where G(i) is the number
/// of guesses spent before symbol i is tried (inclusive).
///
/// `rank(i)` takes a 0-based symbol index and returns the 1-based guess
/// number, so `rank(0) == 3` means symbol 1 is the third guess.
class GuessingFunction {
 public:
  /// `ranks[i]` is the 1-based guess number of symbol i + 1.
  explicit GuessingFunction(std::vector<int> ranks) : ranks_(std::move(ranks)) {
    if (ranks_.empty()) throw Error(ErrorCode::Empty, "guessing function has no entries");
    std::vector<bool> seen(ranks_.size(), false);
    for (std::size_t i = 0; i < ranks_.size(); ++i) {
      const int r = ranks_[i];
      if (r < 1 || static_cast<std::size_t>(r) > ranks_.size() || seen[r - 1]) {
        throw Error(ErrorCode::InvalidPermutation,
                    "ranks are not a bijection on [" + std::to_string(ranks_.size()) +
                        "] (entry " + std::to_string(i + 1) + " = " + std::to_string(r) + ")");
      }
      seen[r - 1] = true;
    }
  }

  static GuessingFunction identity(std::size_t n) {
    std::vector<int> ranks(n);
    std::iota(ranks.begin(), ranks.end(), 1);
    return GuessingFunction(std::move(ranks));
  }

  static GuessingFunction reverse(std::size_t n) {
    std::vector<int> ranks(n);
    for (std::size_t i = 0; i < n; ++i) ranks[i] = static_cast<int>(n - i);
    return GuessingFunction(std::move(ranks));
  }

  /// Builds G from the guess order: `order[k]` is the 0-based symbol guessed
  /// at step k + 1.
  static GuessingFunction from_order(std::span<const std::size_t> order) {
    std::vector<int> ranks(order.size(), 0);
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (order[k] >= order.size()) {
        throw Error(ErrorCode::InvalidPermutation, "guess order names an unknown symbol");
      }
      ranks[order[k]] = static_cast<int>(k + 1);
    }
    return GuessingFunction(std::move(ranks));
  }

  std::size_t size() const noexcept { return ranks_.size(); }
  int rank(std::size_t symbol) const { return ranks_[symbol]; }
  std::span<const int> ranks() const noexcept { return ranks_; }

  /// Inverse view: `order()[k]` is the 0-based symbol guessed at step k + 1.
  std::vector<std::size_t> order() const {
    std::vector<std::size_t> out(ranks_.size());
    for (std::size_t i = 0; i < ranks_.size(); ++i) out[ranks_[i] - 1] = i;
    return out;
  }

  friend bool operator==(const GuessingFunction&, const GuessingFunction&) = default;
  friend auto operator<=>(const GuessingFunction&, const GuessingFunction&) = default;

 private:
  std::vector<int> ranks_;
};

inline std::string format_guessing_function(const GuessingFunction& g) {
  std::string out = "[";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(g.rank(i));
  }
  return out + "]";
}

/// Parses a JSON array of 1-based ranks such as "[1,2,4,3]". Brackets are
/// optional.
inline GuessingFunction parse_guessing_function(std::string_view text) {
  std::string cleaned;
  for (char c : text) {
    if (c != '[' && c != ']' && c != ' ' && c != '\t' && c != '\n' && c != '\r') cleaned += c;
  }
  if (cleaned.empty()) throw Error(ErrorCode::Empty, "guessing function has no entries");
  std::vector<int> ranks;
  std::size_t start = 0;
  while (true) {
    const auto comma = cleaned.find(',', start);
    const std::string token =
        cleaned.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (token.empty() || token.size() > 9 ||
        !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw Error(ErrorCode::Parse, "malformed rank '" + token + "'");
    }
    ranks.push_back(std::stoi(token));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return GuessingFunction(std::move(ranks));
}

/// E_p[G(X)] = sum_i p_i * G(i).
inline Rational expected_guesswork(const GuessingFunction& g, const Distribution& p) {
  detail::require_same_size(g.size(), p.size(), "expected_guesswork");
  Rational sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += p[i] * g.rank(i);
  return sum;
}

/// Guesses symbols by non-increasing probability, breaking ties by ascending
/// symbol index.
inline GuessingFunction canonical_optimal(const Distribution& p) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
  return GuessingFunction::from_order(order);
}

/// True when `g` guesses every strictly more likely symbol first.
inline bool is_optimal(const GuessingFunction& g, const Distribution& p) {
  detail::require_same_size(g.size(), p.size(), "is_optimal");
  const auto order = g.order();
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    if (p[order[k]] < p[order[k + 1]]) return false;
  }
  return true;
}

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// The set of optimal guessing functions for a distribution.
///
/// Symbols with equal probability form a tie group; any ordering inside a
/// group is optimal, so the set has prod(|group|!) members. The count is
/// always available; enumeration is refused above the cap.
class OptimalSet {
 public:
  /// Yields each member exactly once, in lexicographic order of the
  /// per-group orderings (first group varies slowest).
  class Cursor {
   public:
    std::optional<GuessingFunction> next() {
      if (done_) return std::nullopt;
      std::vector<std::size_t> order;
      order.reserve(size_);
      for (const auto& group : current_) order.insert(order.end(), group.begin(), group.end());
      advance();
      return GuessingFunction::from_order(order);
    }

   private:
    friend class OptimalSet;
    Cursor(std::vector<std::vector<std::size_t>> groups, std::size_t size)
        : current_(std::move(groups)), size_(size) {}

    void advance() {
      for (std::size_t g = current_.size(); g-- > 0;) {
        // next_permutation returns false (and re-sorts) when the group wraps.
        if (std::next_permutation(current_[g].begin(), current_[g].end())) return;
      }
      done_ = true;
    }

    std::vector<std::vector<std::size_t>> current_;
    std::size_t size_;
    bool done_ = false;
  };

  OptimalSet(const Distribution& p, std::uint64_t cap) : size_(p.size()), cap_(cap) {
    if (cap < 1) throw Error(ErrorCode::Range, "enumeration cap must be at least 1");
    const auto order = canonical_optimal(p).order();
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (k == 0 || p[order[k]] != p[order[k - 1]]) groups_.emplace_back();
      groups_.back().push_back(order[k]);
    }
    count_ = 1;
    for (const auto& group : groups_) {
      Integer f;
      mpz_fac_ui(f.get_mpz_t(), group.size());
      count_ *= f;
    }
  }

  const Integer& count() const noexcept { return count_; }
  bool enumerable() const { return count_ <= Integer(static_cast<unsigned long>(cap_)); }

  /// Symbols grouped by equal probability, most likely group first; each
  /// group lists 0-based symbols in ascending order.
  const std::vector<std::vector<std::size_t>>& tie_groups() const noexcept { return groups_; }

  Cursor cursor() const {
    if (!enumerable()) {
      throw Error(ErrorCode::EnumerationTooLarge,
                  "optimal set has " + count_.get_str() + " members, cap is " +
                      std::to_string(cap_));
    }
    return Cursor(groups_, size_);
  }

  std::vector<GuessingFunction> to_vector() const {
    std::vector<GuessingFunction> out;
    auto c = cursor();
    while (auto g = c.next()) out.push_back(std::move(*g));
    return out;
  }

 private:
  std::size_t size_;
  std::uint64_t cap_;
  std::vector<std::vector<std::size_t>> groups_;
  Integer count_;
};

inline OptimalSet optimal_set(const Distribution& p,
                              std::uint64_t cap = kDefaultEnumerationCap) {
  return OptimalSet(p, cap);
}

/// Delta_p(G1, G2) = E_p[G2 - G1]. Signed; antisymmetric in (g1, g2).
inline Rational expected_cost(const GuessingFunction& g1, const GuessingFunction& g2,
                              const Distribution& p) {
  detail::require_same_size(g1.size(), g2.size(), "expected_cost");
  detail::require_same_size(g1.size(), p.size(), "expected_cost");
  Rational sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += p[i] * (g2.rank(i) - g1.rank(i));
  return sum;
}

/// Expected cost of guessing with a q-optimal function when X ~ p, minimised
/// over the q-optimal functions:
///
///   delta(p, q) = sum over (i, j) with p_i > p_j and q_i < q_j of (p_i - p_j).
///
/// Both comparisons are strict. O(n^2), independent of the size of the
/// optimal set for q.
inline Rational mismatch_cost(const Distribution& p, const Distribution& q) {
  detail::require_same_size(p.size(), q.size(), "mismatch_cost");
  Rational sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[i] > p[j] && q[i] < q[j]) sum += p[i] - p[j];
    }
  }
  return sum;
}

}  // namespace guesswork
