#pragma once

#include <utility>
#include <vector>

namespace qfock {

// Least-squares geometric fit value ~ C * rate^n over a degree window.
// Fitted on (n, log value) using only strictly positive values; an all-zero
// window is reported as exact zero decay (rate 0 by convention) instead of
// fitted.
struct DecayFit {
  double fitted_rate = 0.0;
  double c_hat = 0.0;
  int window_lo = 0;
  int window_hi = 0;
  int points_used = 0;
  bool exact_zero = false;
};

// series: (n, value) pairs, value >= 0. Requires at least 3 strictly
// positive values inside [window_lo, window_hi] unless all values there
// are exactly zero.
DecayFit decay_fit(const std::vector<std::pair<int, double>>& series, int window_lo,
                   int window_hi);

}  // namespace qfock
