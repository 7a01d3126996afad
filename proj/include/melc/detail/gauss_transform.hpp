#ifndef MELC_DETAIL_GAUSS_TRANSFORM_HPP
#define MELC_DETAIL_GAUSS_TRANSFORM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace melc::detail {

// Smallest (a_i - b_j)^2 over all pairs, computed with the same expression the
// pairwise sums use so that every shifted exponent is exactly <= 0.
inline double min_squared_gap(std::span<const double> a, std::span<const double> b)
{
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  double best = std::numeric_limits<double>::infinity();
  std::size_t j = 0;
  for (double x : sa) {
    while (j + 1 < sb.size() && sb[j + 1] <= x)
      ++j;
    // neighbours of x in sb are sb[j] and sb[j + 1]
    for (std::size_t k = j; k < std::min(sb.size(), j + 2); ++k) {
      const double d = x - sb[k];
      best = std::min(best, d * d);
    }
  }
  return best;
}

/// log of sum_{i,j} exp(-(a_i - b_j)^2 * inv_two_var), shifted by the largest
/// term so nothing over- or underflows.
inline double log_pairwise_gauss_sum(std::span<const double> a, std::span<const double> b,
                                     double inv_two_var)
{
  const double shift = min_squared_gap(a, b) * inv_two_var;
  double total = 0.0;
  for (double x : a) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t j = 0;
    for (; j + 4 <= b.size(); j += 4) {
      const double d0 = x - b[j], d1 = x - b[j + 1], d2 = x - b[j + 2], d3 = x - b[j + 3];
      s0 += std::exp(shift - d0 * d0 * inv_two_var);
      s1 += std::exp(shift - d1 * d1 * inv_two_var);
      s2 += std::exp(shift - d2 * d2 * inv_two_var);
      s3 += std::exp(shift - d3 * d3 * inv_two_var);
    }
    for (; j < b.size(); ++j) {
      const double d = x - b[j];
      s0 += std::exp(shift - d * d * inv_two_var);
    }
    total += (s0 + s1) + (s2 + s3);
  }
  return std::log(total) - shift;
}

// Hermite-expansion fast Gauss transform (Greengard & Strain) in one dimension.
// Computes sum_{i,j} exp(-(t_i - s_j)^2 / delta). Sources are binned into boxes
// of width sqrt(delta); each box keeps kTerms moments and targets interact with
// boxes within kReach boxes. Absolute error per pair is below ~1e-16 of the peak
// term, so callers must fall back to the direct sum when the result is small.
class HermiteGaussSum {
public:
  static constexpr int kTerms = 26;
  static constexpr long kReach = 8;
  static constexpr long kMaxBoxes = 1L << 22;

  static bool suitable(std::span<const double> sources, double delta)
  {
    if (sources.empty() || !(delta > 0.0))
      return false;
    const auto [lo, hi] = std::minmax_element(sources.begin(), sources.end());
    return (*hi - *lo) / std::sqrt(delta) < static_cast<double>(kMaxBoxes);
  }

  HermiteGaussSum(std::span<const double> sources, double delta) : h_(std::sqrt(delta))
  {
    lo_ = *std::min_element(sources.begin(), sources.end());
    const double hi = *std::max_element(sources.begin(), sources.end());
    boxes_ = static_cast<long>(std::floor((hi - lo_) / h_)) + 1;
    moments_.assign(static_cast<std::size_t>(boxes_) * kTerms, 0.0);
    occupied_.assign(static_cast<std::size_t>(boxes_), false);
    for (double s : sources) {
      const long k = std::min(boxes_ - 1, static_cast<long>((s - lo_) / h_));
      const double u = (s - center(k)) / h_;
      double term = 1.0;
      double* m = &moments_[static_cast<std::size_t>(k) * kTerms];
      for (int n = 0; n < kTerms; ++n) {
        m[n] += term;
        term *= u / (n + 1);
      }
      occupied_[static_cast<std::size_t>(k)] = true;
    }
  }

  double at(double t) const
  {
    const double kd = std::clamp(std::floor((t - lo_) / h_), -2.0 * kReach,
                                 static_cast<double>(boxes_ + 2 * kReach));
    const long kt = static_cast<long>(kd);
    const long first = std::max(0L, kt - kReach);
    const long last = std::min(boxes_ - 1, kt + kReach);
    double acc = 0.0;
    for (long k = first; k <= last; ++k) {
      if (!occupied_[static_cast<std::size_t>(k)])
        continue;
      const double tau = (t - center(k)) / h_;
      const double* m = &moments_[static_cast<std::size_t>(k) * kTerms];
      double hm2 = std::exp(-tau * tau);
      if (hm2 == 0.0)
        continue;
      double hm1 = 2.0 * tau * hm2;
      double s = m[0] * hm2 + m[1] * hm1;
      for (int n = 2; n < kTerms; ++n) {
        const double hn = 2.0 * tau * hm1 - 2.0 * (n - 1) * hm2;
        s += m[n] * hn;
        hm2 = hm1;
        hm1 = hn;
      }
      acc += s;
    }
    return acc;
  }

  double sum(std::span<const double> targets) const
  {
    double total = 0.0;
    for (double t : targets)
      total += at(t);
    return total;
  }

private:
  double center(long k) const noexcept { return lo_ + (static_cast<double>(k) + 0.5) * h_; }

  double h_;
  double lo_ = 0.0;
  long boxes_ = 0;
  std::vector<double> moments_;
  std::vector<bool> occupied_;
};

} // namespace melc::detail

#endif
