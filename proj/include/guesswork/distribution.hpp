#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "guesswork/error.hpp"
#include "guesswork/rational.hpp"

namespace guesswork {

/// An exact probability vector over the alphabet {1, ..., n}.
///
/// Entries are non-negative rationals summing to exactly one. Storage is
/// 0-based; every message shown to a user numbers symbols from 1.
class Distribution {
 public:
  /// Validates and takes ownership of `probs`.
  explicit Distribution(std::vector<Rational> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw Error(ErrorCode::Empty, "distribution has no entries");
    Rational total = 0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      probs_[i].canonicalize();
      if (probs_[i] < 0) {
        throw Error(ErrorCode::NegativeEntry, "entry " + std::to_string(i + 1) + " is " +
                                                  to_string(probs_[i]));
      }
      total += probs_[i];
    }
    if (total != 1) {
      throw Error(ErrorCode::NotNormalized, "entries sum to " + to_string(total));
    }
  }

  /// Maps each double to its exact binary value, so {0.1, 0.9} is rejected as
  /// not normalized while {0.5, 0.25, 0.25} is accepted.
  static Distribution from_doubles(std::span<const double> values) {
    std::vector<Rational> probs;
    probs.reserve(values.size());
    for (double v : values) probs.push_back(from_double(v));
    return Distribution(std::move(probs));
  }

  static Distribution uniform(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::Empty, "distribution has no entries");
    return Distribution(std::vector<Rational>(n, Rational(1, static_cast<unsigned long>(n))));
  }

  /// Point mass on the 1-based symbol `symbol`.
  static Distribution point_mass(std::size_t n, std::size_t symbol) {
    if (symbol < 1 || symbol > n) throw Error(ErrorCode::Range, "symbol out of range");
    std::vector<Rational> probs(n, Rational(0));
    probs[symbol - 1] = 1;
    return Distribution(std::move(probs));
  }

  std::size_t size() const noexcept { return probs_.size(); }
  const Rational& operator[](std::size_t i) const { return probs_[i]; }
  std::span<const Rational> probs() const noexcept { return probs_; }

  auto begin() const noexcept { return probs_.begin(); }
  auto end() const noexcept { return probs_.end(); }

  friend bool operator==(const Distribution& a, const Distribution& b) {
    return a.probs_ == b.probs_;
  }

 private:
  std::vector<Rational> probs_;
};

/// Parses either a JSON array ("[0.4, 0.3, \"1/3\"]") or a bare
/// comma-separated list ("0.4,0.3,0.3"). Decimals are converted exactly.
inline Distribution parse_distribution(std::string_view text) {
  auto trim = [](std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return std::string_view{};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
  };

  std::string_view body = trim(text);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw Error(ErrorCode::Parse, "unterminated JSON array");
    body = trim(body.substr(1, body.size() - 2));
  } else if (!body.empty() && body.back() == ']') {
    throw Error(ErrorCode::Parse, "unbalanced ']'");
  }
  if (body.empty()) throw Error(ErrorCode::Empty, "distribution has no entries");

  std::vector<Rational> probs;
  std::size_t start = 0;
  while (true) {
    const auto comma = body.find(',', start);
    std::string_view token =
        trim(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start));
    if (token.size() >= 2 && token.front() == '"' && token.back() == '"') {
      token = trim(token.substr(1, token.size() - 2));
    }
    probs.push_back(parse_rational(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Distribution(std::move(probs));
}

/// JSON-array text with each entry in exact form (see `to_string(Rational)`).
/// Non-terminating entries are quoted so the result is valid JSON.
inline std::string format_distribution(const Distribution& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    std::string entry = to_string(p[i]);
    if (entry.find('/') != std::string::npos) entry = "\"" + entry + "\"";
    out += entry;
  }
  return out + "]";
}

/// Half the L1 distance between `p` and `q`.
inline Rational total_variation(const Distribution& p, const Distribution& q) {
  detail::require_same_size(p.size(), q.size(), "total_variation");
  Rational sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += abs(p[i] - q[i]);
  return sum / 2;
}

}  // namespace guesswork
