#pragma once

// Small descriptive and rank statistics for experiment aggregation.

#include <vector>

namespace algodecon::stats {

double mean(const std::vector<double>& v);
/// Standard error of the mean (sample standard deviation / sqrt(n)); 0 for n < 2.
double stderr_of_mean(const std::vector<double>& v);
double median(std::vector<double> v);

/// Average ranks (1-based), ties share the mean of their positions.
std::vector<double> ranks(const std::vector<double>& v);

/// Two-sided Mann-Whitney U test, normal approximation with tie and
/// continuity corrections. Returns the p-value.
double mann_whitney_p(const std::vector<double>& a, const std::vector<double>& b);

/// Spearman rank correlation (Pearson correlation of average ranks).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Least-squares slope of y on x.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace algodecon::stats
