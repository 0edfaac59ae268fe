#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pogdd {

// Linearly interpolated empirical quantile at index p*(n-1), the numpy
// convention. Input must be sorted ascending.
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty range");
  if (p <= 0.0) return sorted.front();
  if (p >= 1.0) return sorted.back();
  double idx = p * static_cast<double>(sorted.size() - 1);
  size_t lo = static_cast<size_t>(idx);
  double frac = idx - static_cast<double>(lo);
  if (frac == 0.0 || lo + 1 >= sorted.size()) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double quantile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, p);
}

inline double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

inline double iqr_sorted(const std::vector<double>& sorted) {
  return quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
}

// Median absolute deviation from the median (unscaled).
inline double mad(const std::vector<double>& values) {
  double med = median(values);
  std::vector<double> dev(values.size());
  for (size_t i = 0; i < values.size(); ++i) dev[i] = std::fabs(values[i] - med);
  return median(std::move(dev));
}

inline double mean(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("mean of empty range");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

// Population standard deviation (divide by n).
inline double stddev_pop(const std::vector<double>& values) {
  double m = mean(values);
  double s = 0.0;
  for (double v : values) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(values.size()));
}

}  // namespace pogdd
