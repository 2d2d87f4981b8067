#include <gtest/gtest.h>

#include <sstream>

#include "guesswork/lattice.hpp"
#include "guesswork/oracle.hpp"
#include "guesswork/scan.hpp"
#include "test_util.hpp"

using namespace guesswork;
using guesswork::testing::D;
using guesswork::testing::R;

namespace {

struct Oracle {
  Rational max_delta;
  int max_kendall;
};

// Independent ball search: every lattice point, exact TV, brute-force delta
// and Kendall tau against every enumerated optimal function of q.
Oracle brute_force_ball(const Distribution& p, const Rational& eps, int inner) {
  Oracle best{-1, 0};
  const auto g_p = canonical_optimal(p);
  for_each_composition(inner, static_cast<int>(p.size()), [&](const std::vector<int>& counts) {
    const auto q = lattice_point(counts, inner);
    if (total_variation(p, q) > eps) return;
    const Rational delta = brute_force_delta(p, q);
    if (delta > best.max_delta) best.max_delta = delta;
    for (const auto& g_q : brute_force_optimal_set(q)) {
      best.max_kendall = std::max(best.max_kendall, static_cast<int>(kendall_tau(g_p, g_q)));
    }
  });
  return best;
}

}  // namespace

TEST(BallSearch, MatchesBruteForce) {
  Sampler sampler(71);
  for (int t = 0; t < 60; ++t) {
    const int n = t % 4 == 0 ? 4 : 3;
    const int inner = n == 4 ? 12 : 24;
    // p on the inner lattice (or a coarser one) so the ball is never empty.
    const auto p = sampler.distribution(n, t % 2 ? inner : inner / 2);
    const Rational eps = ratio(sampler.between(0, 10), 20);
    const auto fast = ball_search(p, eps, inner);
    const auto slow = brute_force_ball(p, eps, inner);
    EXPECT_EQ(fast.max_delta, slow.max_delta) << format_distribution(p) << " eps " << to_string(eps);
    EXPECT_EQ(fast.max_kendall, slow.max_kendall) << format_distribution(p) << " eps " << to_string(eps);
    EXPECT_EQ(mismatch_cost(p, fast.argmax_q), fast.max_delta);
    EXPECT_LE(total_variation(p, fast.argmax_q), eps);
  }
}

TEST(BallSearch, RationalFallbackAgrees) {
  // Denominators too large for the integer kernel take the exact path.
  const Distribution p({Rational(Integer("1099511627777"), Integer("3298534883331")),
                        Rational(Integer("1099511627777"), Integer("3298534883331")),
                        Rational(Integer("1099511627777"), Integer("3298534883331"))});
  const auto result = ball_search(p, R("0.1"), 10);
  EXPECT_EQ(result.max_delta, 0);
  EXPECT_EQ(result.max_kendall, 3);
}

TEST(MaxDeltaInBall, Examples) {
  EXPECT_EQ(max_delta_in_ball(Distribution::uniform(3), R("0.2"), 60).first, 0);
  EXPECT_EQ(max_delta_in_ball(Distribution::uniform(3), R("0.9"), 60).first, 0);

  const Distribution tight({Rational(1, 3) + Rational(1, 10), Rational(1, 3), Rational(1, 3) - Rational(1, 10)});
  const auto [value, q] = max_delta_in_ball(tight, R("0.2"));
  EXPECT_EQ(value, R("0.4"));
  EXPECT_LE(total_variation(tight, q), R("0.2"));

  const auto corner = D("[1,0,0]");
  EXPECT_EQ(brute_force_ball(corner, R("0.2"), 100).max_delta, 0);
  const auto corner_value = max_delta_in_ball(corner, R("0.2")).first;
  EXPECT_EQ(corner_value, 0);
  EXPECT_LE(corner_value, R("0.8"));
}

TEST(MaxDeltaInBall, Errors) {
  const auto p = Distribution::uniform(3);
  EXPECT_THROW(max_delta_in_ball(p, R("-0.1")), Error);
  EXPECT_THROW(max_delta_in_ball(p, R("1.5")), Error);
  EXPECT_THROW(max_delta_in_ball(p, R("0.1"), 0), Error);
}

TEST(MaxKendallInBall, Examples) {
  EXPECT_EQ(max_kendall_in_ball(Distribution::uniform(3), R("0.01"), 60), 3);
  EXPECT_EQ(brute_force_ball(Distribution::uniform(3), R("0.05"), 30).max_kendall, 3);
  EXPECT_EQ(max_kendall_in_ball(D("[0.5,0.3,0.2]"), 0, 10), 0);
  EXPECT_EQ(brute_force_ball(D("[0.6,0.3,0.1]"), R("0.05"), 100).max_kendall, 0);
  EXPECT_EQ(max_kendall_in_ball(D("[0.6,0.3,0.1]"), R("0.05")), 0);
}

TEST(BallSearch, MonotoneInEpsilon) {
  Sampler sampler(73);
  for (int t = 0; t < 40; ++t) {
    const auto p = sampler.distribution(3, 20);
    BallSearch previous{-1, p, 0};
    for (int k = 0; k <= 8; ++k) {
      const auto current = ball_search(p, ratio(k, 20), 40);
      EXPECT_GE(current.max_delta, previous.max_delta);
      EXPECT_GE(current.max_kendall, previous.max_kendall);
      EXPECT_LE(current.max_delta, 2 * 2 * ratio(k, 20));
      previous = current;
    }
  }
}

TEST(BallSearch, EquivariantUnderRelabeling) {
  Sampler sampler(79);
  for (int t = 0; t < 30; ++t) {
    const auto counts = sampler.composition(3, 40);
    // Distinct entries keep the canonical tie-break out of the picture.
    if (counts[0] == counts[1] || counts[1] == counts[2] || counts[0] == counts[2]) continue;
    const auto base = ball_search(lattice_point(counts, 40), R("0.15"), 40);
    const std::vector<int> rotated{counts[2], counts[0], counts[1]};
    const auto moved = ball_search(lattice_point(rotated, 40), R("0.15"), 40);
    EXPECT_EQ(base.max_delta, moved.max_delta);
    EXPECT_EQ(base.max_kendall, moved.max_kendall);
  }
}

TEST(ScanSimplex, CornersAndGridSize) {
  const auto grid = scan_simplex(1, R("0.2"), 40, 1);
  ASSERT_EQ(grid.cells.size(), 3u);
  EXPECT_EQ(grid.cells[0].counts, (std::array<int, 3>{0, 0, 1}));
  EXPECT_EQ(grid.cells[1].counts, (std::array<int, 3>{0, 1, 0}));
  EXPECT_EQ(grid.cells[2].counts, (std::array<int, 3>{1, 0, 0}));
  for (const auto& cell : grid.cells) EXPECT_EQ(cell.max_delta, 0);
  EXPECT_EQ(scan_simplex(10, R("0.2"), 20, 1).cells.size(), 66u);
  EXPECT_THROW(scan_simplex(0, R("0.2"), 20, 1), Error);
}

TEST(ScanSimplex, CentroidAndBounds) {
  const auto grid = scan_simplex(12, R("0.2"), 60, 2);
  for (const auto& cell : grid.cells) {
    EXPECT_LE(cell.max_delta, R("0.8"));
    EXPECT_LE(cell.max_delta, 2);
    EXPECT_GE(cell.max_kendall, 0);
    EXPECT_LE(cell.max_kendall, 3);
    if (cell.counts == std::array<int, 3>{4, 4, 4}) {
      EXPECT_EQ(cell.max_delta, 0);
    }
  }
}

TEST(ScanSimplex, ThreadCountDoesNotChangeOutput) {
  std::ostringstream one, many;
  write_scan_csv(scan_simplex(16, R("0.2"), 48, 1), one);
  write_scan_csv(scan_simplex(16, R("0.2"), 48, 4), many);
  EXPECT_EQ(one.str(), many.str());
}

TEST(ScanSimplex, CsvFormat) {
  std::ostringstream csv;
  write_scan_csv(scan_simplex(3, R("0.2"), 30, 1), csv);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "p1,p2,p3,max_delta,max_kendall");
  std::getline(lines, line);
  // Zero-probability symbols tie, so q can reorder them at no cost.
  EXPECT_EQ(line, "0,0,1,0,1");
  int rows = 1;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 10);
  EXPECT_NE(csv.str().find("0.333333333333,0.333333333333,0.333333333333,0,3"), std::string::npos);
}

TEST(ExampleOptimal, Examples) {
  const auto five = example_optimal(5, R("0.1"), R("0.5"));
  EXPECT_EQ(five.delta, R("0.4"));
  EXPECT_LE(total_variation(five.p, five.q), R("0.1"));

  const auto three = example_optimal(3, Rational(1, 3), R("0.99"));
  EXPECT_EQ(three.delta, R("0.99") * Rational(4, 3));

  const auto two = example_optimal(2, R("0.5"), R("0.5"));
  EXPECT_EQ(two.p, D("[0.75,0.25]"));
  EXPECT_EQ(brute_force_delta(two.p, two.q), R("0.5"));
  EXPECT_EQ(two.delta, R("0.5"));
}

TEST(ExampleOptimal, AgreesWithOracle) {
  for (int n = 2; n <= 8; ++n) {
    for (const auto* gamma : {"0.1", "0.5", "0.9", "0.999"}) {
      for (const Rational& eps : {Rational(1, n), Rational(1, 2 * n), Rational(1, 7 * n)}) {
        const auto ex = example_optimal(n, eps, R(gamma));
        EXPECT_EQ(ex.delta, R(gamma) * 2 * (n - 1) * eps);
        EXPECT_EQ(ex.delta, brute_force_delta(ex.p, ex.q));
        EXPECT_LE(total_variation(ex.p, ex.q), eps);
        for (int i = 0; i + 1 < n; ++i) EXPECT_LT(ex.q[i], ex.q[i + 1]);
      }
    }
  }
}

TEST(ExampleOptimal, Errors) {
  EXPECT_THROW(example_optimal(3, R("0.1"), R("1")), Error);
  EXPECT_THROW(example_optimal(3, R("0.1"), R("0")), Error);
  EXPECT_THROW(example_optimal(3, R("0.4"), R("0.5")), Error);
  EXPECT_THROW(example_optimal(3, R("0"), R("0.5")), Error);
  EXPECT_THROW(example_optimal(1, R("0.1"), R("0.5")), Error);
}
