// Independent reference computations used only by the tests. Nothing here calls
// into the library's density, integral or risk code.
#ifndef MELC_TESTS_ORACLES_HPP
#define MELC_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline double mixture_pdf(const std::vector<double>& centers, double sigma, double x)
{
  double s = 0.0;
  for (double c : centers)
    s += std::exp(-(x - c) * (x - c) / (2.0 * sigma * sigma)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
  return s / static_cast<double>(centers.size());
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Probability mass of the mixture on [a, b].
inline double mixture_mass(const std::vector<double>& centers, double sigma, double a, double b)
{
  double s = 0.0;
  for (double c : centers)
    s += normal_cdf((b - c) / sigma) - normal_cdf((a - c) / sigma);
  return s / static_cast<double>(centers.size());
}

inline double trapezoid(const std::function<double(double)>& f, double a, double b, std::size_t n)
{
  const double h = (b - a) / static_cast<double>(n);
  double s = 0.5 * (f(a) + f(b));
  for (std::size_t i = 1; i < n; ++i)
    s += f(a + h * static_cast<double>(i));
  return s * h;
}

/// Trapezoid rule with interval doubling until two successive levels agree to rtol.
inline double trapezoid_doubling(const std::function<double(double)>& f, double a, double b,
                                 double rtol = 1e-10, int max_level = 22)
{
  std::size_t n = 1;
  double h = b - a;
  double prev = 0.5 * h * (f(a) + f(b));
  for (int level = 1; level <= max_level; ++level) {
    double mid = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      mid += f(a + h * (static_cast<double>(i) + 0.5));
    const double next = 0.5 * prev + 0.5 * h * mid;
    n *= 2;
    h *= 0.5;
    if (level >= 6 && std::abs(next - prev) <= rtol * std::abs(next))
      return next;
    prev = next;
  }
  return prev;
}

/// Mean hinge loss of score x - b evaluated directly.
inline double hinge_at(const std::vector<double>& minus, const std::vector<double>& plus, double b)
{
  double s = 0.0;
  for (double c : minus)
    s += std::max(0.0, 1.0 + (c - b));
  for (double c : plus)
    s += std::max(0.0, 1.0 - (c - b));
  return s / static_cast<double>(minus.size() + plus.size());
}

/// Balanced error of "predict +1 when x > t" (or its flip), checked point by point.
inline double threshold_error(const std::vector<double>& minus, const std::vector<double>& plus,
                              double t, int sign_above)
{
  double wm = 0.0, wp = 0.0;
  for (double c : minus)
    wm += (c > t ? sign_above : -sign_above) != -1;
  for (double c : plus)
    wp += (c > t ? sign_above : -sign_above) != 1;
  return 0.5 * wm / static_cast<double>(minus.size()) + 0.5 * wp / static_cast<double>(plus.size());
}

/// Exhaustive single-threshold scan: every midpoint of every pair of values.
inline double best_threshold_brute(const std::vector<double>& minus, const std::vector<double>& plus)
{
  std::vector<double> all(minus);
  all.insert(all.end(), plus.begin(), plus.end());
  std::vector<double> cands{-1e300, 1e300};
  for (double a : all)
    for (double b : all)
      if (a != b)
        cands.push_back(0.5 * (a + b));
  double best = 1.0;
  for (double t : cands)
    for (int s : {-1, 1})
      best = std::min(best, threshold_error(minus, plus, t, s));
  return best;
}

inline std::vector<double> uniform_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi)
{
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v)
    x = u(rng);
  return v;
}

} // namespace oracle

#endif
