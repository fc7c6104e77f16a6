#include "proxsmooth/gauss_legendre.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "proxsmooth/errors.hpp"

namespace proxsmooth::gl {

namespace {

Rule compute_rule(int p) {
  Rule r;
  r.nodes.resize(p);
  r.weights.resize(p);
  // Newton on P_p with cosine initial guesses; converges to machine precision
  // in a handful of steps for the orders used here.
  for (int i = 0; i < p; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (p + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= p; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = p * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[p - 1 - i] = x;
    r.weights[p - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return r;
}

}  // namespace

const Rule& rule(int p) {
  if (p < 1 || p > 128) throw ParameterError("gauss-legendre order out of range");
  static std::map<int, Rule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, compute_rule(p)).first;
  return it->second;
}

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& breakpoints, int p) {
  const Rule& r = rule(p);
  double sum = 0.0, comp = 0.0;  // Neumaier compensation
  for (std::size_t j = 0; j + 1 < breakpoints.size(); ++j) {
    const double a = breakpoints[j], b = breakpoints[j + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < p; ++i) {
      const double term = half * r.weights[i] * f(mid + half * r.nodes[i]);
      const double t = sum + term;
      comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
      sum = t;
    }
  }
  return sum + comp;
}

double integrate_doubling(const std::function<double(double)>& f, double lo,
                          double hi, double rel_tol, int p, int initial_panels,
                          int max_doublings, double floor) {
  int panels = initial_panels;
  double prev = 0.0;
  bool have_prev = false;
  for (int level = 0; level <= max_doublings; ++level, panels *= 2) {
    std::vector<double> bp(panels + 1);
    for (int j = 0; j <= panels; ++j) bp[j] = lo + (hi - lo) * j / panels;
    const double cur = integrate_panels(f, bp, p);
    if (have_prev) {
      const double scale = std::max({std::abs(cur), std::abs(prev), floor});
      if (std::abs(cur - prev) <= rel_tol * scale) return cur;
    }
    prev = cur;
    have_prev = true;
  }
  throw AccuracyError("1-D integration did not converge within the doubling limit");
}

}  // namespace proxsmooth::gl
