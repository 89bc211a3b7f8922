#include <cmath>

#include "algodecon/stats.hpp"
#include "support.hpp"

using namespace algodecon::stats;
using Catch::Approx;

// Reference values from scipy.stats (mannwhitneyu asymptotic with continuity
// correction, spearmanr, rankdata, sem).

TEST_CASE("descriptive statistics", "[stats]") {
  CHECK(mean({1, 2, 3, 4, 10}) == Approx(4.0));
  CHECK(stderr_of_mean({1, 2, 3, 4, 10}) == Approx(1.5811388300841895));
  CHECK(stderr_of_mean({5}) == 0.0);
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 3, 2}) == 2.5);
}

TEST_CASE("average ranks", "[stats]") {
  CHECK(ranks({3, 1, 4, 1, 5}) == std::vector<double>{3, 1.5, 4, 1.5, 5});
}

TEST_CASE("Mann-Whitney U", "[stats]") {
  CHECK(mann_whitney_p({1, 2, 3, 4, 5}, {6, 7, 8, 9, 10}) == Approx(0.012185780355344813).epsilon(1e-9));
  CHECK(mann_whitney_p({1, 2, 2, 3, 5, 7}, {2, 4, 6, 6, 8, 9, 10}) == Approx(0.07216011300239511).epsilon(1e-9));
  // symmetric in its arguments
  CHECK(mann_whitney_p({6, 7, 8, 9, 10}, {1, 2, 3, 4, 5}) == Approx(0.012185780355344813).epsilon(1e-9));
}

TEST_CASE("Spearman correlation", "[stats]") {
  CHECK(spearman({1, 2, 3, 4, 5}, {5, 6, 7, 8, 7}) == Approx(0.8207826816681233));
  CHECK(spearman({1, 2, 3}, {3, 2, 1}) == Approx(-1.0));
}

TEST_CASE("least-squares slope", "[stats]") {
  CHECK(ols_slope({1, 2, 3, 4}, {3, 5, 7, 9}) == Approx(2.0));
  CHECK(ols_slope({0, 1, 2}, {1, 0, 2}) == Approx(0.5));
}
