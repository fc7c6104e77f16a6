#pragma once

#include <cmath>

namespace proxsmooth {

// Neumaier-compensated running sum; the result is independent of how callers
// chunk their loops as long as the visit order is fixed.
struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }

  // Multiply the accumulated total (used when a running reference point
  // moves and previously added terms must be re-expressed against it).
  void rescale(double factor) {
    sum *= factor;
    comp *= factor;
  }
};

}  // namespace proxsmooth
