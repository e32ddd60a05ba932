#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace pedkin {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares y = slope * x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Fit of log(y) against log(x); slope is the scaling exponent.
LineFit fit_power_law(std::span<const double> x, std::span<const double> y);

// Minimum wall time in seconds over `repeats` calls.
double min_wall_seconds(const std::function<void()>& fn, int repeats);

}  // namespace pedkin
