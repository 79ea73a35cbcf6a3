#include <gtest/gtest.h>

#include "evendct/complexity.hpp"

using namespace evendct;
using namespace evendct::complexity;

namespace {

const BaseCounts& base(long long q) { return ComplexityRegistry::standard().at(q); }

}  // namespace

TEST(Registry, Contents) {
  const auto& reg = ComplexityRegistry::standard();
  EXPECT_EQ(reg.entries().size(), 7u);
  EXPECT_EQ(base(15).unscaled, (OpCount{14, 70, 4}));
  EXPECT_EQ(base(15).scaled, (OpCount{10, 67, 8}));
  EXPECT_FALSE(reg.find(7).has_value());
  try {
    reg.at(7);
    FAIL();
  } catch (const std::out_of_range& e) {
    EXPECT_NE(std::string(e.what()).find("2, 3, 4, 5, 8, 15, 16"), std::string::npos);
  }
}

TEST(ClosedForms, Kok) {
  EXPECT_EQ(kok_counts(base(3), 1), (OpCount{5, 16, 3}));
  EXPECT_EQ(kok_counts(base(2), 1), (OpCount{4, 9, 1}));
  EXPECT_EQ(kok_counts(base(3), 0), (OpCount{1, 4, 1}));
}

TEST(ClosedForms, Scaled) {
  EXPECT_EQ(scaled_counts(base(15), 3), (OpCount{183, 1090, 43}));
  EXPECT_EQ(scaled_counts(base(5), 1), (OpCount{6, 40, 3}));
  EXPECT_EQ(scaled_counts(base(2), 2).mu, 5);
}

TEST(ClosedForms, Savings) {
  for (const BaseCounts& b : ComplexityRegistry::standard().entries())
    for (unsigned m = 0; m <= 10; ++m) {
      const long long n = b.q << m;
      // mu(N) - mu~(N) = mu(q) - mu~(q) + (1 - 2^-m) N
      EXPECT_EQ(savings(b, m), b.unscaled.mu - b.scaled.mu + n - b.q) << b.q << " " << m;
    }
}

TEST(ClosedForms, FoldedFamilies) {
  EXPECT_EQ(dyadic_scaled_folded(3), (OpCount{5, 29, 0}));
  EXPECT_EQ(dyadic_scaled_folded(4), (OpCount{17, 81, 0}));
  EXPECT_EQ(three_scaled_folded(1), (OpCount{1, 16, 2}));
  EXPECT_EQ(three_scaled_folded(4), (OpCount{66, 337, 16}));
  EXPECT_THROW(dyadic_scaled_folded(0), std::invalid_argument);
}

TEST(ClosedForms, PrimeFactor) {
  EXPECT_EQ(pfa_scaled_bound(base(5), 4), 142);
  EXPECT_EQ(pfa_scaled_bound(base(3), 4), 63);
  EXPECT_EQ(pfa_scaled_bound(base(15), 1), 27);
  EXPECT_EQ(pfa_scaled_bound(base(15), 4), 505);
  for (unsigned m = 1; m <= 16; ++m) EXPECT_EQ(matches_pfa(m), m <= 2) << m;
  for (long long q : {3, 5, 15}) EXPECT_EQ(kok_excess_over_pfa(base(q), 3), q);
  EXPECT_THROW(pfa_scaled_bound(base(3), 0), std::invalid_argument);
}

TEST(Tables, Table2Csv) {
  const std::string csv = table2_csv();
  EXPECT_EQ(csv.rfind("q,m,N,mu,alpha,sigma,fl_mu\n", 0), 0u);
  EXPECT_NE(csv.find("3,4,48,66,337,16,63\n"), std::string::npos);
  EXPECT_NE(csv.find("15,3,120,183,1090,43,"), std::string::npos);
  EXPECT_EQ(table2().size(), 12u);
  EXPECT_EQ(csv, table2_csv());
}

TEST(Tables, Fig5) {
  const auto pts = fig5_data(7);
  bool found = false;
  for (const Fig5Point& p : pts)
    if (p.family == "2^m" && p.n == 8) {
      EXPECT_DOUBLE_EQ(p.mu_norm, 0.625);
      found = true;
    }
  EXPECT_TRUE(found);
  const std::string csv = fig5_csv(7);
  EXPECT_EQ(csv.rfind("family,N,mu_norm\n", 0), 0u);
  EXPECT_NE(csv.find("2^m,8,0.625\n"), std::string::npos);
}
