#pragma once

#include <functional>
#include <vector>

namespace proxsmooth::gl {

struct Rule {
  std::vector<double> nodes;    // on (-1, 1), ascending
  std::vector<double> weights;  // sum = 2
};

// p-point Gauss-Legendre rule; computed once per order and cached.
const Rule& rule(int p);

// Composite rule over consecutive panels [b[0],b[1]], [b[1],b[2]], ...
double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& breakpoints, int p);

// Composite rule with panel doubling until two successive levels agree to
// rel_tol (relative to the magnitude of the finer value, floored at `floor`).
// Starts from `initial_panels` uniform panels on [lo, hi]. Throws
// AccuracyError after max_doublings without agreement.
double integrate_doubling(const std::function<double(double)>& f, double lo,
                          double hi, double rel_tol, int p = 12,
                          int initial_panels = 4, int max_doublings = 22,
                          double floor = 0.0);

}  // namespace proxsmooth::gl
