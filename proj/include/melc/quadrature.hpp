#ifndef MELC_QUADRATURE_HPP
#define MELC_QUADRATURE_HPP

#include <cstddef>
#include <span>

#include "melc/geometry.hpp"

namespace melc {

/// Composite trapezoid rule over uniformly spaced samples.
inline double trapezoid(std::span<const double> values, double step)
{
  if (values.size() < 2)
    return 0.0;
  double s = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i)
    s += values[i];
  return s * step;
}

template <class F>
double trapezoid(F&& f, double lo, double hi, std::size_t points)
{
  if (points < 2)
    throw Error("trapezoid needs at least two points");
  const double step = (hi - lo) / static_cast<double>(points - 1);
  double s = 0.5 * (f(lo) + f(hi));
  for (std::size_t i = 1; i + 1 < points; ++i)
    s += f(lo + static_cast<double>(i) * step);
  return s * step;
}

} // namespace melc

#endif
