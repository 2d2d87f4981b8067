#include <gtest/gtest.h>

#include <vector>

#include "guesswork/distribution.hpp"
#include "guesswork/oracle.hpp"
#include "test_util.hpp"

using namespace guesswork;
using guesswork::testing::D;
using guesswork::testing::R;

TEST(Rational, ParsesDecimalsExactly) {
  EXPECT_EQ(parse_rational("0.3"), Rational(3, 10));
  EXPECT_EQ(parse_rational("-1.25e-2"), Rational(-1, 80));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  EXPECT_EQ(parse_rational("2E3"), Rational(2000));
  EXPECT_EQ(parse_rational("3/7"), Rational(3, 7));
  EXPECT_EQ(parse_rational("0.1/0.3"), Rational(1, 3));
}

TEST(Rational, RejectsMalformedTokens) {
  for (const char* bad : {"", "abc", "1.2.3", "1e", "--1", "1/0", "0x10", "1 2"}) {
    try {
      parse_rational(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Parse) << bad;
    }
  }
}

TEST(Rational, ExactTextForm) {
  EXPECT_EQ(to_string(Rational(1, 10)), "0.1");
  EXPECT_EQ(to_string(Rational(3, 8)), "0.375");
  EXPECT_EQ(to_string(Rational(-1, 40)), "-0.025");
  EXPECT_EQ(to_string(Rational(2)), "2");
  EXPECT_EQ(to_string(Rational(0)), "0");
  EXPECT_EQ(to_string(Rational(1, 3)), "1/3");
  EXPECT_EQ(to_string(Rational(-2, 7)), "-2/7");
}

TEST(Rational, DecimalRounding) {
  EXPECT_EQ(to_decimal(Rational(1, 3)), "0.333333333333");
  EXPECT_EQ(to_decimal(Rational(2, 3)), "0.666666666667");
  EXPECT_EQ(to_decimal(Rational(4, 5)), "0.8");
  EXPECT_EQ(to_decimal(Rational(0)), "0");
  EXPECT_EQ(to_decimal(Rational(200, 3)), "66.6666666667");
  EXPECT_EQ(to_decimal(Rational(1, 3), 3), "0.333");
  EXPECT_EQ(to_decimal(Rational(-5, 3), 2), "-1.7");
}

TEST(Rational, FromDoubleIsTheBinaryValue) {
  EXPECT_EQ(from_double(0.5), Rational(1, 2));
  EXPECT_NE(from_double(0.1), Rational(1, 10));
  EXPECT_EQ(from_double(0.1), Rational(Integer("3602879701896397"), Integer("36028797018963968")));
}

TEST(Rational, TextFormRoundTrips) {
  Sampler sampler(7);
  for (int t = 0; t < 500; ++t) {
    const Rational r = ratio(sampler.between(-5000, 5000), sampler.between(1, 999));
    EXPECT_EQ(parse_rational(to_string(r)), r);
  }
}

TEST(Distribution, ParsesJsonArray) {
  const auto p = D("[0.40,0.30,0.20,0.10]");
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p[0], Rational(2, 5));
  EXPECT_EQ(p[1], Rational(3, 10));
  EXPECT_EQ(p[2], Rational(1, 5));
  EXPECT_EQ(p[3], Rational(1, 10));
}

TEST(Distribution, ParsesCommaListAndQuotedRationals) {
  EXPECT_EQ(D("0.4, 0.3,0.2 ,0.1"), D("[0.40,0.30,0.20,0.10]"));
  EXPECT_EQ(D("[\"1/3\", \"2/3\"]"), Distribution({Rational(1, 3), Rational(2, 3)}));
  EXPECT_EQ(D("[1.0]"), Distribution({Rational(1)}));
}

TEST(Distribution, ValidationErrors) {
  auto code_of = [](const std::string& text) {
    try {
      parse_distribution(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Usage;  // sentinel: no error
  };
  EXPECT_EQ(code_of("[0.5,0.6]"), ErrorCode::NotNormalized);
  EXPECT_EQ(code_of("[1.5,-0.5]"), ErrorCode::NegativeEntry);
  EXPECT_EQ(code_of("[]"), ErrorCode::Empty);
  EXPECT_EQ(code_of(""), ErrorCode::Empty);
  EXPECT_EQ(code_of("[0.5,x]"), ErrorCode::Parse);
  EXPECT_EQ(code_of("[0.5,,0.5]"), ErrorCode::Parse);
  EXPECT_EQ(code_of("[0.5,0.5"), ErrorCode::Parse);
}

TEST(Distribution, NegativeEntryMessageIsOneBased) {
  try {
    D("[0.5,0.7,-0.2]");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("entry 3"), std::string::npos) << e.what();
  }
}

TEST(Distribution, FromDoubles) {
  const std::vector<double> exact{0.5, 0.25, 0.25};
  EXPECT_EQ(Distribution::from_doubles(exact), D("[0.5,0.25,0.25]"));
  const std::vector<double> inexact{0.1, 0.2, 0.7};
  EXPECT_THROW(Distribution::from_doubles(inexact), Error);
}

TEST(Distribution, FormatIsParseable) {
  const Distribution p({Rational(1, 3), Rational(1, 6), Rational(1, 2)});
  EXPECT_EQ(format_distribution(p), "[\"1/3\",\"1/6\",0.5]");
  EXPECT_EQ(parse_distribution(format_distribution(p)), p);
}

TEST(TotalVariation, Examples) {
  EXPECT_EQ(total_variation(D("[0.40,0.30,0.20,0.10]"), D("[0.60,0.20,0.10,0.10]")), R("0.2"));
  EXPECT_EQ(total_variation(D("[0.3,0.7]"), D("[0.3,0.7]")), 0);
  EXPECT_EQ(total_variation(D("[1,0]"), D("[0,1]")), 1);
}

TEST(TotalVariation, DimensionMismatch) {
  try {
    total_variation(D("[1]"), D("[0.5,0.5]"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(TotalVariation, MetricProperties) {
  Sampler sampler(11);
  for (int t = 0; t < 2000; ++t) {
    const int n = sampler.between(1, 9);
    const int den = t % 2 ? 12 : 1000;
    const auto p = sampler.distribution(n, den);
    const auto q = sampler.distribution(n, den);
    const auto r = sampler.distribution(n, den);
    const Rational pq = total_variation(p, q);
    EXPECT_EQ(pq, total_variation(q, p));
    EXPECT_GE(pq, 0);
    EXPECT_LE(pq, 1);
    EXPECT_EQ(pq == 0, p == q);
    EXPECT_LE(total_variation(p, r), pq + total_variation(q, r));
  }
}
