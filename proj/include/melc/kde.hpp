#ifndef MELC_KDE_HPP
#define MELC_KDE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "melc/detail/gauss_transform.hpp"
#include "melc/geometry.hpp"

namespace melc {

/// Population (divide-by-N) standard deviation.
inline double population_std(std::span<const double> samples)
{
  if (samples.empty())
    return 0.0;
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples)
    mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : samples)
    ss += (x - mean) * (x - mean);
  return std::sqrt(ss / n);
}

/// Silverman's rule of thumb, (4 / (3N))^(1/5) * std.
inline double silverman_bandwidth(std::span<const double> samples)
{
  if (samples.size() < 2)
    throw Error("degenerate bandwidth");
  const double sd = population_std(samples);
  if (!(sd > 0.0))
    throw Error("degenerate bandwidth");
  return std::pow(4.0 / (3.0 * static_cast<double>(samples.size())), 0.2) * sd;
}

/// Equally weighted Gaussian mixture on the real line.
class Kde1d {
public:
  Kde1d(Vector centers, double bandwidth) : centers_(std::move(centers)), bandwidth_(bandwidth)
  {
    if (centers_.empty())
      throw Error("kde needs at least one center");
    if (!(bandwidth_ > 0.0) || !std::isfinite(bandwidth_))
      throw Error("kde bandwidth must be positive and finite");
    const auto [lo, hi] = std::minmax_element(centers_.begin(), centers_.end());
    lo_ = *lo;
    hi_ = *hi;
  }

  const Vector& centers() const noexcept { return centers_; }
  double bandwidth() const noexcept { return bandwidth_; }
  std::size_t size() const noexcept { return centers_.size(); }
  double min_center() const noexcept { return lo_; }
  double max_center() const noexcept { return hi_; }

  double operator()(double x) const
  {
    const double a = 0.5 / (bandwidth_ * bandwidth_);
    double s = 0.0;
    for (double c : centers_) {
      const double d = c - x;
      s += std::exp(-d * d * a);
    }
    return s * normalizer();
  }

  // Density at x0 + k * step for k in [0, n). Each center contributes within
  // kReach bandwidths; on fine grids the Gaussian is advanced by the two-term
  // multiplicative recurrence and re-anchored with a true exp every kAnchor steps.
  Vector evaluate_grid(double x0, double step, std::size_t n) const
  {
    if (!(step > 0.0))
      throw Error("grid step must be positive");
    constexpr double kReach = 37.0;
    constexpr std::size_t kAnchor = 8;

    Vector out(n, 0.0);
    if (n == 0)
      return out;
    const double a = 0.5 / (bandwidth_ * bandwidth_);
    const double reach = kReach * bandwidth_;
    const double last = static_cast<double>(n - 1);
    const bool recurrence = step <= 0.25 * bandwidth_;
    const double q = std::exp(-2.0 * step * step * a);

    for (double c : centers_) {
      const double klo = std::max(0.0, std::ceil((c - reach - x0) / step));
      const double khi = std::min(last, std::floor((c + reach - x0) / step));
      if (klo > khi)
        continue;
      const auto first = static_cast<std::size_t>(klo);
      const auto stop = static_cast<std::size_t>(khi) + 1;
      if (!recurrence) {
        for (std::size_t k = first; k < stop; ++k) {
          const double u = x0 + static_cast<double>(k) * step - c;
          out[k] += std::exp(-u * u * a);
        }
        continue;
      }
      for (std::size_t k = first; k < stop; k += kAnchor) {
        const double u = x0 + static_cast<double>(k) * step - c;
        double e = std::exp(-u * u * a);
        double r = std::exp(-(2.0 * u * step + step * step) * a);
        const std::size_t block_end = std::min(stop, k + kAnchor);
        for (std::size_t j = k; j < block_end; ++j) {
          out[j] += e;
          e *= r;
          r *= q;
        }
      }
    }
    const double norm = normalizer();
    for (double& v : out)
      v *= norm;
    return out;
  }

private:
  double normalizer() const noexcept
  {
    return 1.0 / (static_cast<double>(centers_.size()) * bandwidth_ *
                  std::sqrt(2.0 * std::numbers::pi));
  }

  Vector centers_;
  double bandwidth_;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// exact: direct double sum. fast: Hermite fast Gauss transform (relative error
/// ~1e-12), falling back to the direct sum for tiny integrals. automatic picks
/// fast for large mixtures.
enum class SumMethod { exact, fast, automatic };

namespace detail {

// Fixed operand order so that swapping f and g yields a bitwise-identical sum.
inline bool kde_precedes(const Kde1d& f, const Kde1d& g)
{
  if (f.size() != g.size())
    return f.size() < g.size();
  if (f.bandwidth() != g.bandwidth())
    return f.bandwidth() < g.bandwidth();
  return std::lexicographical_compare(f.centers().begin(), f.centers().end(),
                                      g.centers().begin(), g.centers().end());
}

inline constexpr double kFastMinRelativeIntegral = 1e-4;
inline constexpr double kAutomaticPairThreshold = 65536.0;

} // namespace detail

/// log of the integral of f * g over the real line, in closed form:
/// the mean over center pairs of N(c_i - d_j; 0, sigma_f^2 + sigma_g^2).
inline double log_cross_integral(const Kde1d& f, const Kde1d& g,
                                 SumMethod method = SumMethod::exact)
{
  const Kde1d& a = detail::kde_precedes(g, f) ? g : f;
  const Kde1d& b = &a == &f ? g : f;
  const double var = a.bandwidth() * a.bandwidth() + b.bandwidth() * b.bandwidth();
  const double pairs = static_cast<double>(a.size()) * static_cast<double>(b.size());
  const double log_norm = -std::log(pairs) - 0.5 * std::log(2.0 * std::numbers::pi * var);

  if (method == SumMethod::automatic)
    method = pairs >= detail::kAutomaticPairThreshold ? SumMethod::fast : SumMethod::exact;
  if (method == SumMethod::fast && detail::HermiteGaussSum::suitable(b.centers(), 2.0 * var)) {
    const double total = detail::HermiteGaussSum(b.centers(), 2.0 * var).sum(a.centers());
    if (total >= detail::kFastMinRelativeIntegral * pairs)
      return std::log(total) + log_norm;
  }
  return detail::log_pairwise_gauss_sum(a.centers(), b.centers(), 0.5 / var) + log_norm;
}

inline double cross_integral(const Kde1d& f, const Kde1d& g, SumMethod method = SumMethod::exact)
{
  return std::exp(log_cross_integral(f, g, method));
}

inline double log_self_integral(const Kde1d& f, SumMethod method = SumMethod::exact)
{
  return log_cross_integral(f, f, method);
}

inline double self_integral(const Kde1d& f, SumMethod method = SumMethod::exact)
{
  return cross_integral(f, f, method);
}

/// Push f forward through x -> map.apply(x); the result g satisfies
/// g(map(x)) = f(x) / map.scale.
inline Kde1d rescale_kde(const Kde1d& f, const AffineMap1d& map)
{
  if (map.is_identity())
    return f;
  Vector centers;
  centers.reserve(f.size());
  for (double c : f.centers())
    centers.push_back(map.apply(c));
  return Kde1d(std::move(centers), f.bandwidth() * map.scale);
}

} // namespace melc

#endif
