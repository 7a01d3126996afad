#ifndef MELC_OBJECTIVES_HPP
#define MELC_OBJECTIVES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "melc/geometry.hpp"
#include "melc/kde.hpp"

namespace melc {

struct BandwidthPair {
  double minus;
  double plus;
};

/// Class densities of one projection, on a common (possibly rescaled) axis.
struct ProjectedPair {
  Kde1d minus;
  Kde1d plus;
  AffineMap1d map;

  double max_bandwidth() const noexcept { return std::max(minus.bandwidth(), plus.bandwidth()); }
  double min_center() const noexcept { return std::min(minus.min_center(), plus.min_center()); }
  double max_center() const noexcept { return std::max(minus.max_center(), plus.max_center()); }
};

/// Silverman bandwidths unless `bandwidths` is given.
inline ProjectedPair make_projected_pair(ProjectedClasses classes,
                                         std::optional<BandwidthPair> bandwidths = std::nullopt)
{
  if (classes.minus.empty() || classes.plus.empty())
    throw Error("empty class");
  const double sm = bandwidths ? bandwidths->minus : silverman_bandwidth(classes.minus);
  const double sp = bandwidths ? bandwidths->plus : silverman_bandwidth(classes.plus);
  return {Kde1d(std::move(classes.minus), sm), Kde1d(std::move(classes.plus), sp),
          AffineMap1d::identity()};
}

inline ProjectedPair make_projected_pair(const LabeledDataset& data, const UnitDirection& v,
                                         std::optional<BandwidthPair> bandwidths = std::nullopt)
{
  return make_projected_pair(project(data, v), bandwidths);
}

/// Affinely squeeze both densities so that centers +/- tail_k bandwidths fill [0, 1].
inline ProjectedPair rescale_to_unit(const ProjectedPair& p, double tail_k)
{
  auto r = unit_rescale(p.minus.centers(), p.plus.centers(), p.minus.bandwidth(),
                        p.plus.bandwidth(), tail_k);
  const AffineMap1d composed(r.map.scale * p.map.scale, r.map.scale * p.map.offset + r.map.offset);
  return {Kde1d(std::move(r.minus), p.minus.bandwidth() * r.map.scale),
          Kde1d(std::move(r.plus), p.plus.bandwidth() * r.map.scale), composed};
}

/// Cross information potential, the integral of f_minus * f_plus.
inline double cip(const ProjectedPair& p, SumMethod method = SumMethod::exact)
{
  return cross_integral(p.minus, p.plus, method);
}

/// Renyi quadratic cross entropy, -ln cip. Computed in log space, so finite
/// even when cip underflows.
inline double renyi_cross_entropy(const ProjectedPair& p, SumMethod method = SumMethod::exact)
{
  return -log_cross_integral(p.minus, p.plus, method);
}

inline double renyi_entropy(const Kde1d& f, SumMethod method = SumMethod::exact)
{
  return -log_self_integral(f, method);
}

/// 2 H(f-, f+) - H(f-) - H(f+); zero iff the mixtures coincide.
inline double cauchy_schwarz_divergence(const ProjectedPair& p, SumMethod method = SumMethod::exact)
{
  return 2.0 * renyi_cross_entropy(p, method) - renyi_entropy(p.minus, method) -
         renyi_entropy(p.plus, method);
}

/// Radial Gaussian N(mean, sigma^2 I).
struct GaussianSpec {
  Vector mean;
  double sigma;

  GaussianSpec(Vector m, double s) : mean(std::move(m)), sigma(s)
  {
    if (!(sigma > 0.0))
      throw Error("gaussian sigma must be positive");
  }
};

/// Cross information potential of two radial Gaussians projected on v.
inline double gaussian_cip_closed_form(const GaussianSpec& minus, const GaussianSpec& plus,
                                       const UnitDirection& v)
{
  if (minus.mean.size() != v.dim() || plus.mean.size() != v.dim())
    throw Error("dimension mismatch");
  const double var = minus.sigma * minus.sigma + plus.sigma * plus.sigma;
  const double gap = dot(v.components(), minus.mean) - dot(v.components(), plus.mean);
  return std::exp(-gap * gap / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

/// Mean of max(0, 1 - p*y) over margin products p*y.
inline double hinge_loss(std::span<const double> margin_products)
{
  if (margin_products.empty())
    throw Error("hinge loss of an empty set");
  double s = 0.0;
  for (double m : margin_products)
    s += std::max(0.0, 1.0 - m);
  return s / static_cast<double>(margin_products.size());
}

struct HingeFit {
  double bias;
  double loss;
};

// Minimizes mean hinge loss of the score x - b over b. The loss is convex and
// piecewise linear with kinks at c + 1 (class -1) and c - 1 (class +1), so the
// kinks are scanned with prefix sums. Ties go to the smallest b.
inline HingeFit best_bias_hinge(std::span<const double> minus, std::span<const double> plus)
{
  if (minus.empty() || plus.empty())
    throw Error("empty class");

  std::vector<double> m(minus.begin(), minus.end());
  std::vector<double> p(plus.begin(), plus.end());
  std::sort(m.begin(), m.end());
  std::sort(p.begin(), p.end());
  std::vector<double> msum(m.size() + 1, 0.0), psum(p.size() + 1, 0.0);
  std::partial_sum(m.begin(), m.end(), msum.begin() + 1);
  std::partial_sum(p.begin(), p.end(), psum.begin() + 1);
  const double n = static_cast<double>(m.size() + p.size());

  auto loss_at = [&](double b) {
    // class -1 points with c > b - 1 pay 1 + c - b
    const auto mi = static_cast<std::size_t>(std::upper_bound(m.begin(), m.end(), b - 1.0) - m.begin());
    const double mcount = static_cast<double>(m.size() - mi);
    const double mpart = (1.0 - b) * mcount + (msum.back() - msum[mi]);
    // class +1 points with c < b + 1 pay 1 - c + b
    const auto pi = static_cast<std::size_t>(std::lower_bound(p.begin(), p.end(), b + 1.0) - p.begin());
    const double ppart = (1.0 + b) * static_cast<double>(pi) - psum[pi];
    return std::max(0.0, (mpart + ppart) / n);
  };

  std::vector<double> kinks;
  kinks.reserve(m.size() + p.size());
  for (double c : m)
    kinks.push_back(c + 1.0);
  for (double c : p)
    kinks.push_back(c - 1.0);
  std::sort(kinks.begin(), kinks.end());

  std::vector<double> losses(kinks.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < kinks.size(); ++i) {
    losses[i] = loss_at(kinks[i]);
    best = std::min(best, losses[i]);
  }
  const double slack = 1e-12 * std::max(1.0, best);
  for (std::size_t i = 0; i < kinks.size(); ++i)
    if (losses[i] <= best + slack)
      return {kinks[i], losses[i]};
  return {kinks.front(), losses.front()};
}

} // namespace melc

#endif
