#include "qfock/decay_fit.hpp"

#include <cmath>

#include "qfock/errors.hpp"

namespace qfock {

DecayFit decay_fit(const std::vector<std::pair<int, double>>& series, int window_lo,
                   int window_hi) {
  if (window_hi < window_lo) throw ArgumentError("decay fit window is empty");
  DecayFit fit;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;

  int in_window = 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, value] : series) {
    if (n < window_lo || n > window_hi) continue;
    ++in_window;
    if (value < 0.0) throw ArgumentError("decay fit values must be nonnegative");
    if (value == 0.0) continue;
    const double x = n, y = std::log(value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++fit.points_used;
  }
  if (fit.points_used == 0) {
    if (in_window == 0) throw ArgumentError("decay fit window contains no samples");
    fit.exact_zero = true;  // rate 0 by convention, flagged
    return fit;
  }
  if (fit.points_used < 3)
    throw PreconditionError("decay fit needs >= 3 strictly positive values in the window, got " +
                            std::to_string(fit.points_used));

  const double k = fit.points_used;
  const double denom = k * sxx - sx * sx;
  const double slope = (k * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / k;
  fit.fitted_rate = std::exp(slope);
  fit.c_hat = std::exp(intercept);
  return fit;
}

}  // namespace qfock
