#pragma once

// Tournament designs (round-robin schedules) over the symbols {1, ..., n}
// and the certificates they yield for the bound delta(p, q) <= 2(n-1) * TV.
//
// Every unordered pair of symbols is placed in exactly one round; within a
// round no symbol appears twice. For even n there are n-1 rounds of n/2
// pairs. For odd n there are n rounds of (n-1)/2 pairs and each round leaves
// out one symbol; rounds are labeled so that round k leaves out symbol k,
// which makes (i, j) the bridge pair of rounds i and j.

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "guesswork/distribution.hpp"
#include "guesswork/error.hpp"
#include "guesswork/guesswork.hpp"
#include "guesswork/rational.hpp"

namespace guesswork {

/// A pair of 1-based symbols.
struct SymbolPair {
  int first;
  int second;

  friend bool operator==(const SymbolPair&, const SymbolPair&) = default;
  friend auto operator<=>(const SymbolPair&, const SymbolPair&) = default;
};

inline std::string format_pair(const SymbolPair& pair) {
  return "(" + std::to_string(pair.first) + "," + std::to_string(pair.second) + ")";
}

/// One round: a set of pairs in which no symbol should repeat. Validity is
/// checked by `is_disjoint` / `verify_design` rather than on construction so
/// that faulty designs can still be represented and diagnosed.
using PairSet = std::vector<SymbolPair>;

inline bool is_disjoint(const PairSet& round, int n) {
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  for (const auto& [a, b] : round) {
    if (a == b || a < 1 || b < 1 || a > n || b > n) return false;
    if (used[a] || used[b]) return false;
    used[a] = used[b] = true;
  }
  return true;
}

enum class Parity { Even, Odd };

inline std::string_view parity_name(Parity parity) {
  return parity == Parity::Even ? "even" : "odd";
}

struct TournamentDesign {
  int n = 0;
  Parity parity = Parity::Even;
  std::vector<PairSet> rounds;
  /// Odd designs only: missing[k] is the symbol absent from round k + 1.
  std::vector<int> missing;
};

namespace detail {

inline SymbolPair ordered_pair(int a, int b) { return a < b ? SymbolPair{a, b} : SymbolPair{b, a}; }

}  // namespace detail

/// Circle method: symbol n stays fixed while 1..n-1 rotate. Round r pairs n
/// with r and r+k with r-k (mod n-1) for k = 1..n/2-1.
inline TournamentDesign even_design(int n) {
  if (n < 2) throw Error(ErrorCode::Range, "even design needs n >= 2, got " + std::to_string(n));
  if (n % 2 != 0) throw Error(ErrorCode::Parity, "even design needs even n, got " + std::to_string(n));
  const int m = n - 1;
  TournamentDesign d{n, Parity::Even, {}, {}};
  d.rounds.reserve(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    PairSet round;
    round.reserve(static_cast<std::size_t>(n / 2));
    round.push_back(detail::ordered_pair(r + 1, n));
    for (int k = 1; k < n / 2; ++k) {
      round.push_back(detail::ordered_pair((r + k) % m + 1, (r - k + m) % m + 1));
    }
    d.rounds.push_back(std::move(round));
  }
  return d;
}

/// Circle method without a fixed symbol: round k leaves out symbol k and
/// pairs k+t with k-t (mod n) for t = 1..(n-1)/2. For n = 5 this gives
/// M_1 = {(2,5),(3,4)}, M_2 = {(1,3),(4,5)}, ..., M_5 = {(1,4),(2,3)}.
inline TournamentDesign odd_design(int n) {
  if (n < 3) throw Error(ErrorCode::Range, "odd design needs n >= 3, got " + std::to_string(n));
  if (n % 2 == 0) throw Error(ErrorCode::Parity, "odd design needs odd n, got " + std::to_string(n));
  TournamentDesign d{n, Parity::Odd, {}, {}};
  d.rounds.reserve(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    PairSet round;
    for (int t = 1; t <= (n - 1) / 2; ++t) {
      round.push_back(detail::ordered_pair((r + t) % n + 1, (r - t + n) % n + 1));
    }
    d.rounds.push_back(std::move(round));
    d.missing.push_back(r + 1);
  }
  return d;
}

inline TournamentDesign make_design(int n) { return n % 2 == 0 ? even_design(n) : odd_design(n); }

/// The bridge pair of rounds a and b (1-based): the symbols they leave out.
inline SymbolPair bridge_pair(const TournamentDesign& d, int a, int b) {
  if (d.parity != Parity::Odd) throw Error(ErrorCode::Parity, "bridge pairs exist only for odd designs");
  if (a == b) throw Error(ErrorCode::SameRound, "rounds must differ");
  const int rounds = static_cast<int>(d.missing.size());
  if (a < 1 || b < 1 || a > rounds || b > rounds) {
    throw Error(ErrorCode::Range, "round index outside [1, " + std::to_string(rounds) + "]");
  }
  return {d.missing[a - 1], d.missing[b - 1]};
}

struct DesignReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Lists every way `d` fails to be a tournament design (with correct bridge
/// labels when odd). An empty report means the design is valid.
inline DesignReport verify_design(const TournamentDesign& d) {
  DesignReport report;
  auto add = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
  const int n = d.n;
  if (n < 2) {
    add("n = " + std::to_string(n) + " is below 2");
    return report;
  }
  const bool odd = n % 2 != 0;
  if ((d.parity == Parity::Odd) != odd) {
    add("parity is " + std::string(parity_name(d.parity)) + " but n = " + std::to_string(n));
  }
  const std::size_t expected_rounds = static_cast<std::size_t>(odd ? n : n - 1);
  const std::size_t expected_size = static_cast<std::size_t>(n / 2);
  if (d.rounds.size() != expected_rounds) {
    add("expected " + std::to_string(expected_rounds) + " rounds, found " +
        std::to_string(d.rounds.size()));
  }

  std::vector<std::vector<int>> cover(static_cast<std::size_t>(n) + 1,
                                      std::vector<int>(static_cast<std::size_t>(n) + 1, 0));
  std::vector<int> omitted(d.rounds.size(), 0);
  for (std::size_t r = 0; r < d.rounds.size(); ++r) {
    const std::string label = "round " + std::to_string(r + 1);
    if (d.rounds[r].size() != expected_size) {
      add(label + " has " + std::to_string(d.rounds[r].size()) + " pairs, expected " +
          std::to_string(expected_size));
    }
    std::vector<int> uses(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& pair : d.rounds[r]) {
      if (pair.first < 1 || pair.second < 1 || pair.first > n || pair.second > n ||
          pair.first == pair.second) {
        add(label + " contains invalid pair " + format_pair(pair));
        continue;
      }
      ++uses[pair.first];
      ++uses[pair.second];
      const auto [lo, hi] = detail::ordered_pair(pair.first, pair.second);
      ++cover[lo][hi];
    }
    int absent = 0;
    for (int s = 1; s <= n; ++s) {
      if (uses[s] > 1) add(label + ": symbol " + std::to_string(s) + " appears in more than one pair");
      if (uses[s] == 0) {
        ++absent;
        omitted[r] = s;
      }
    }
    if (odd && absent != 1) {
      add(label + " leaves out " + std::to_string(absent) + " symbols, expected exactly 1");
      omitted[r] = 0;
    }
  }

  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (cover[i][j] == 0) add("pair " + format_pair({i, j}) + " is not covered");
      if (cover[i][j] > 1) {
        add("pair " + format_pair({i, j}) + " appears " + std::to_string(cover[i][j]) + " times");
      }
    }
  }

  if (!odd) {
    if (!d.missing.empty()) add("even design carries missing-symbol labels");
    return report;
  }

  if (d.missing.size() != d.rounds.size()) {
    add("expected " + std::to_string(d.rounds.size()) + " missing-symbol labels, found " +
        std::to_string(d.missing.size()));
    return report;
  }
  std::vector<int> label_uses(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t r = 0; r < d.missing.size(); ++r) {
    const int label = d.missing[r];
    const std::string name = "round " + std::to_string(r + 1);
    if (label < 1 || label > n) {
      add(name + " has out-of-range missing label " + std::to_string(label));
      continue;
    }
    if (++label_uses[label] > 1) add("missing symbol " + std::to_string(label) + " labels several rounds");
    if (omitted[r] != 0 && omitted[r] != label) {
      add(name + " is labeled as missing " + std::to_string(label) + " but leaves out " +
          std::to_string(omitted[r]));
    }
    if (label != static_cast<int>(r + 1)) {
      add(name + " should leave out symbol " + std::to_string(r + 1) + ", labeled " +
          std::to_string(label));
    }
  }
  // Grouping rounds i and j for each (i, j) in round 1 must use every other
  // round exactly once.
  if (!d.rounds.empty() && static_cast<int>(d.missing.size()) == n) {
    std::vector<int> grouped(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [i, j] : d.rounds.front()) {
      if (i < 1 || j < 1 || i > n || j > n) continue;
      ++grouped[i];
      ++grouped[j];
    }
    for (int s = 2; s <= n; ++s) {
      if (grouped[s] != 1) {
        add("round " + std::to_string(s) + " is bridged by " + std::to_string(grouped[s]) +
            " pairs of round 1, expected exactly 1");
      }
    }
  }
  return report;
}

/// Sum of (p_i - p_j) over 1-based pairs (i, j).
inline Rational pair_sum(const Distribution& p, const std::vector<SymbolPair>& pairs) {
  Rational sum = 0;
  for (const auto& [i, j] : pairs) sum += p[i - 1] - p[j - 1];
  return sum;
}

/// True when p_i >= p_j and q_i <= q_j for every pair (i, j): the pairs are
/// all ordered one way by p and the other way by q.
inline bool anti_ordered(const Distribution& p, const Distribution& q,
                         const std::vector<SymbolPair>& pairs) {
  for (const auto& [i, j] : pairs) {
    if (p[i - 1] < p[j - 1] || q[i - 1] > q[j - 1]) return false;
  }
  return true;
}

/// Rounds i and j plus their bridge pair (i, j), for an odd design labeled
/// so that round k leaves out symbol k.
inline std::vector<SymbolPair> bridge_group(const TournamentDesign& d, int i, int j) {
  const SymbolPair bridge = bridge_pair(d, i, j);
  std::vector<SymbolPair> group = d.rounds[i - 1];
  group.insert(group.end(), d.rounds[j - 1].begin(), d.rounds[j - 1].end());
  group.push_back(bridge);
  return group;
}

struct CertificateGroup {
  /// Original 1-based symbols, oriented so that p_first >= p_second.
  std::vector<SymbolPair> pairs;
  Rational sum;          // sum of (p_first - p_second)
  Rational lemma_bound;  // 2*eps for a round, 4*eps for a bridge group
  bool hypothesis_holds = false;  // q_first <= q_second on every pair
  bool within_bound = false;      // sum <= lemma_bound
};

/// Decomposes sum_{i<j}(p_i - p_j) (symbols relabeled so p is
/// non-increasing) over the rounds of a tournament design, or over bridge
/// groups when n is odd, and checks each part against the 2*eps / 4*eps
/// per-group bound with eps = TV(p, q).
///
/// When q is anti-ordered on every pair the chain
/// delta <= total <= 2(n-1)*eps is certified group by group. Otherwise the
/// affected groups are only reported and the bound is checked against delta
/// directly.
struct BoundCertificate {
  Distribution p;
  Distribution q;
  Rational epsilon;
  Parity parity = Parity::Even;
  /// relabel[k] is the original 0-based symbol given sorted label k + 1.
  std::vector<std::size_t> relabel;
  TournamentDesign design;  // over sorted labels
  std::vector<CertificateGroup> groups;
  Rational total;  // sum of group sums
  Rational delta;
  Rational bound;  // 2(n-1)*eps
  bool chain_applies = false;
  bool holds = false;
};

inline BoundCertificate bound_certificate(const Distribution& p, const Distribution& q) {
  detail::require_same_size(p.size(), q.size(), "bound_certificate");
  const int n = static_cast<int>(p.size());
  if (n < 2) throw Error(ErrorCode::Range, "certificate needs n >= 2");

  BoundCertificate cert{p, q, total_variation(p, q), n % 2 == 0 ? Parity::Even : Parity::Odd,
                        canonical_optimal(p).order(), make_design(n), {}, 0, 0, 0, false, false};
  cert.delta = mismatch_cost(p, q);
  cert.bound = 2 * (n - 1) * cert.epsilon;

  auto add_group = [&](const std::vector<SymbolPair>& sorted_pairs, const Rational& lemma_bound) {
    CertificateGroup group;
    group.lemma_bound = lemma_bound;
    group.sum = 0;
    group.hypothesis_holds = true;
    for (const auto& [a, b] : sorted_pairs) {
      const std::size_t hi = cert.relabel[a < b ? a - 1 : b - 1];
      const std::size_t lo = cert.relabel[a < b ? b - 1 : a - 1];
      group.pairs.push_back({static_cast<int>(hi + 1), static_cast<int>(lo + 1)});
      group.sum += p[hi] - p[lo];
      if (q[hi] > q[lo]) group.hypothesis_holds = false;
    }
    group.within_bound = group.sum <= group.lemma_bound;
    cert.groups.push_back(std::move(group));
  };

  if (cert.parity == Parity::Even) {
    for (const auto& round : cert.design.rounds) add_group(round, 2 * cert.epsilon);
  } else {
    for (const auto& [i, j] : cert.design.rounds.front()) {
      add_group(bridge_group(cert.design, i, j), 4 * cert.epsilon);
    }
  }

  cert.total = 0;
  cert.chain_applies = true;
  for (const auto& group : cert.groups) {
    cert.total += group.sum;
    cert.chain_applies = cert.chain_applies && group.hypothesis_holds;
  }
  const bool chain_ok = !cert.chain_applies ||
                        (std::all_of(cert.groups.begin(), cert.groups.end(),
                                     [](const CertificateGroup& g) { return g.within_bound; }) &&
                         cert.total <= cert.bound);
  cert.holds = cert.delta <= cert.total && cert.delta <= cert.bound && chain_ok;
  return cert;
}

}  // namespace guesswork
