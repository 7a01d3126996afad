#ifndef MELC_RISK_HPP
#define MELC_RISK_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "melc/geometry.hpp"
#include "melc/kde.hpp"
#include "melc/objectives.hpp"
#include "melc/quadrature.hpp"

namespace melc {

inline constexpr std::size_t default_grid_points = 4096;
inline constexpr std::size_t min_grid_points = 64;
inline constexpr double default_refine_tol = 1e-10;
/// Half-width of the integration window beyond the extreme centers, in units of
/// the larger bandwidth.
inline constexpr double window_bandwidths = 8.0;
/// Overlap at or below this is treated as numerically separable.
inline constexpr double separable_overlap = 1e-300;

struct Interval {
  double lo;
  double hi;
};

inline Interval integration_window(const ProjectedPair& p)
{
  const double pad = window_bandwidths * p.max_bandwidth();
  return {p.min_center() - pad, p.max_center() + pad};
}

namespace detail {

inline void require_grid(std::size_t grid_points)
{
  if (grid_points < min_grid_points)
    throw Error("grid_points must be at least 64");
}

} // namespace detail

/// Trapezoid quadrature of min(f-, f+) over [lo, hi].
inline double overlap_on_interval(const ProjectedPair& p, double lo, double hi,
                                  std::size_t grid_points = default_grid_points)
{
  detail::require_grid(grid_points);
  if (!(hi > lo))
    throw Error("empty integration interval");
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  auto fm = p.minus.evaluate_grid(lo, step, grid_points);
  const auto fp = p.plus.evaluate_grid(lo, step, grid_points);
  for (std::size_t i = 0; i < grid_points; ++i)
    fm[i] = std::min(fm[i], fp[i]);
  return trapezoid(fm, step);
}

/// Integral of min(f-, f+) over the window centers +/- 8 max bandwidth.
inline double overlap_integral(const ProjectedPair& p, std::size_t grid_points = default_grid_points)
{
  const auto w = integration_window(p);
  return overlap_on_interval(p, w.lo, w.hi, grid_points);
}

/// Raw overlap and the class-balanced risk, which weights each class by 1/2.
struct RiskEstimate {
  double overlap;
  double eaa_risk;
  std::size_t grid_points;
};

inline RiskEstimate risk_from_overlap(double overlap, std::size_t grid_points)
{
  return {overlap, overlap / 2.0, grid_points};
}

inline RiskEstimate eaa_bayes_risk(const ProjectedPair& p,
                                   std::size_t grid_points = default_grid_points)
{
  return risk_from_overlap(overlap_integral(p, grid_points), grid_points);
}

inline RiskEstimate eaa_bayes_risk_for_direction(const LabeledDataset& data, const UnitDirection& v,
                                                 std::optional<BandwidthPair> bandwidths = std::nullopt,
                                                 std::size_t grid_points = default_grid_points)
{
  data.require_both_classes();
  return eaa_bayes_risk(make_projected_pair(data, v, bandwidths), grid_points);
}

/// Piecewise-constant classifier on a 1D projection: the sign alternates across
/// sorted thresholds, starting from leftmost_sign.
class MultithresholdModel {
public:
  MultithresholdModel(UnitDirection direction, std::vector<double> thresholds, int leftmost_sign,
                      AffineMap1d map = AffineMap1d::identity())
      : direction_(std::move(direction)), thresholds_(std::move(thresholds)),
        leftmost_sign_(leftmost_sign), map_(map)
  {
    if (leftmost_sign_ != -1 && leftmost_sign_ != 1)
      throw Error("leftmost sign must be -1 or +1");
    for (std::size_t i = 1; i < thresholds_.size(); ++i)
      if (!(thresholds_[i - 1] < thresholds_[i]))
        throw Error("thresholds must be strictly increasing");
  }

  const UnitDirection& direction() const noexcept { return direction_; }
  const std::vector<double>& thresholds() const noexcept { return thresholds_; }
  int leftmost_sign() const noexcept { return leftmost_sign_; }
  const AffineMap1d& map() const noexcept { return map_; }

  /// Sign for a coordinate already on the model's (mapped) axis.
  int classify_projected(double s) const
  {
    const auto below = std::lower_bound(thresholds_.begin(), thresholds_.end(), s) - thresholds_.begin();
    return below % 2 == 0 ? leftmost_sign_ : -leftmost_sign_;
  }

  int classify(std::span<const double> x) const
  {
    if (x.size() != direction_.dim())
      throw Error("dimension mismatch");
    return classify_projected(map_.apply(dot(x, direction_.components())));
  }

  MultithresholdModel flipped() const
  {
    return MultithresholdModel(direction_, thresholds_, -leftmost_sign_, map_);
  }

private:
  UnitDirection direction_;
  std::vector<double> thresholds_;
  int leftmost_sign_;
  AffineMap1d map_;
};

inline int classify(const MultithresholdModel& model, std::span<const double> x)
{
  return model.classify(x);
}

namespace detail {

inline int sign_of(double x) noexcept { return (x > 0.0) - (x < 0.0); }

} // namespace detail

// Thresholds are the zeros of g = f+ - f- on the integration window. Sign
// changes are found on the uniform grid merged with all kernel centers, then
// bisected to width refine_tol. A run of exact zeros (both densities underflow)
// between opposite signs puts the threshold at the run's midpoint.
inline MultithresholdModel build_multithreshold_model(const ProjectedPair& p, const UnitDirection& v,
                                                      std::size_t grid_points = default_grid_points,
                                                      double refine_tol = default_refine_tol)
{
  detail::require_grid(grid_points);
  if (!(refine_tol > 0.0))
    throw Error("refine_tol must be positive");

  const auto w = integration_window(p);
  const double step = (w.hi - w.lo) / static_cast<double>(grid_points - 1);
  const auto fm = p.minus.evaluate_grid(w.lo, step, grid_points);
  const auto fp = p.plus.evaluate_grid(w.lo, step, grid_points);
  auto g = [&p](double x) { return p.plus(x) - p.minus(x); };

  std::vector<std::pair<double, double>> samples;
  samples.reserve(grid_points + p.minus.size() + p.plus.size());
  for (std::size_t i = 0; i < grid_points; ++i)
    samples.emplace_back(w.lo + static_cast<double>(i) * step, fp[i] - fm[i]);
  for (const auto* f : {&p.minus, &p.plus})
    for (double c : f->centers())
      samples.emplace_back(c, g(c));
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  samples.erase(std::unique(samples.begin(), samples.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                samples.end());

  std::vector<double> thresholds;
  int leftmost = 0;
  int last_sign = 0;
  double last_x = 0.0;
  std::optional<Interval> zero_run;
  for (const auto& [x, gx] : samples) {
    const int s = detail::sign_of(gx);
    if (s == 0) {
      if (last_sign != 0)
        zero_run = zero_run ? Interval{zero_run->lo, x} : Interval{x, x};
      continue;
    }
    if (leftmost == 0)
      leftmost = s;
    if (last_sign != 0 && s != last_sign) {
      double t;
      if (zero_run) {
        t = 0.5 * (zero_run->lo + zero_run->hi);
      } else {
        double a = last_x, b = x;
        t = 0.5 * (a + b);
        while (b - a > refine_tol) {
          const double mid = 0.5 * (a + b);
          if (mid <= a || mid >= b)
            break;
          const int sm = detail::sign_of(g(mid));
          if (sm == 0) {
            a = b = mid;
            break;
          }
          (sm == last_sign ? a : b) = mid;
        }
        t = 0.5 * (a + b);
      }
      if (thresholds.empty() || t > thresholds.back())
        thresholds.push_back(t);
    }
    last_sign = s;
    last_x = x;
    zero_run.reset();
  }
  return MultithresholdModel(v, std::move(thresholds), leftmost == 0 ? 1 : leftmost, p.map);
}

/// Half the error rate on class -1 plus half the error rate on class +1.
inline double empirical_balanced_error(const MultithresholdModel& model, const LabeledDataset& data)
{
  data.require_both_classes();
  std::size_t wrong_minus = 0, wrong_plus = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int y = data.label(i);
    if (model.classify(data.point(i)) != y)
      ++(y < 0 ? wrong_minus : wrong_plus);
  }
  return 0.5 * static_cast<double>(wrong_minus) / static_cast<double>(data.count(-1)) +
         0.5 * static_cast<double>(wrong_plus) / static_cast<double>(data.count(1));
}

struct ThresholdFit {
  double error;
  double threshold;   // +/-inf for the constant classifiers
  int sign_above;     // prediction for x > threshold
};

// Best single-threshold rule sign(x - t) or sign(t - x) by balanced error.
// Candidates are midpoints between distinct sorted values plus +/-inf; ties go
// to the earliest candidate.
inline ThresholdFit best_single_threshold(std::span<const double> minus, std::span<const double> plus)
{
  if (minus.empty() || plus.empty())
    throw Error("empty class");
  std::vector<std::pair<double, int>> all;
  all.reserve(minus.size() + plus.size());
  for (double c : minus)
    all.emplace_back(c, -1);
  for (double c : plus)
    all.emplace_back(c, 1);
  std::sort(all.begin(), all.end());

  const double nm = static_cast<double>(minus.size());
  const double np = static_cast<double>(plus.size());
  const double inf = std::numeric_limits<double>::infinity();
  // predict +1 above t
  auto error_above_plus = [&](std::size_t minus_below, std::size_t plus_below) {
    return 0.5 * (nm - static_cast<double>(minus_below)) / nm + 0.5 * static_cast<double>(plus_below) / np;
  };

  ThresholdFit best{0.5, -inf, 1};
  std::size_t mb = 0, pb = 0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) {
      ++(all[j].second < 0 ? mb : pb);
      ++j;
    }
    const double t = j < all.size() ? 0.5 * (all[i].first + all[j].first) : inf;
    const double e = error_above_plus(mb, pb);
    if (e < best.error)
      best = {e, t, 1};
    if (1.0 - e < best.error)
      best = {1.0 - e, t, -1};
    i = j;
  }
  return best;
}

inline double best_single_threshold_error(std::span<const double> minus, std::span<const double> plus)
{
  return best_single_threshold(minus, plus).error;
}

struct BoundCheck {
  double lhs;        // -ln(overlap on [0, 1])
  double rhs;        // half the Renyi quadratic cross entropy
  bool holds;
  bool separable;    // overlap underflowed; the bound is vacuous
};

inline constexpr double bound_check_tolerance = 1e-9;

/// -ln(overlap on [0,1]) >= H(f-, f+) / 2 for a pair already rescaled to [0, 1].
inline BoundCheck bound_check(const ProjectedPair& unit_pair,
                              std::size_t grid_points = default_grid_points,
                              SumMethod method = SumMethod::exact)
{
  const double overlap = overlap_on_interval(unit_pair, 0.0, 1.0, grid_points);
  const double rhs = 0.5 * renyi_cross_entropy(unit_pair, method);
  if (!(overlap > separable_overlap))
    return {std::numeric_limits<double>::infinity(), rhs, true, true};
  const double lhs = -std::log(overlap);
  return {lhs, rhs, lhs >= rhs - bound_check_tolerance, false};
}

} // namespace melc

#endif
