#pragma once

#include <cmath>

namespace qhf {

struct LineMinimum {
  double x;
  double value;
};

/// Golden-section search for a unimodal f on [lo, hi], stopped once the
/// bracket is narrower than `width`. Ties keep the lower sub-interval.
template <typename F>
LineMinimum golden_section_minimize(F&& f, double lo, double hi, double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > width) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return LineMinimum{x, f(x)};
}

}  // namespace qhf
