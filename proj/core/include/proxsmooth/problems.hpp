#pragma once

#include <Eigen/Dense>

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace proxsmooth {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// A weakly convex target f. `rho` is the declared weak-convexity modulus
// (f + rho/2 |.|^2 convex); `hessian_lipschitz` is NaN unless f is C^2 with a
// globally Lipschitz Hessian, in which case the linear-in-delta error bound
// applies with that constant.
struct FunctionSpec {
  std::string name;
  int dim = 1;
  double rho = 0.0;
  double hessian_lipschitz = kNaN;
  bool domain_has_interior = true;
  std::function<double(const Vec&)> evaluate;          // may return +inf
  std::function<Vec(const Vec&, double)> exact_prox;   // may be empty
};

enum class BoundaryClass { lipschitz, c21 };

// Constants of a local boundary chart: valid radius, Hessian bound, and
// Hessian Lipschitz constant of the graph function.
struct ChartConstants {
  double rho = 0.0;
  double L = 0.0;
  double M = 0.0;
};

struct SetSpec {
  std::string name;
  int dim = 1;
  std::function<bool(const Vec&)> contains;
  std::function<Vec(const Vec&)> exact_proj;
  BoundaryClass boundary_class = BoundaryClass::lipschitz;
  ChartConstants chart;
};

// Where the integrand stops being smooth; deterministic grids split there.
enum class Geometry { smooth, axis_kinks, halfspace, ball, cone };

struct GeometryInfo {
  Geometry kind = Geometry::smooth;
  std::vector<std::vector<double>> axis_kinks;  // per-axis kink positions
  Vec center;                                   // ball
  double radius = 0.0;                          // ball
  Vec normal;                                   // halfspace (unit)
  double offset = 0.0;                          // halfspace
  double cone_alpha = 0.0;                      // cone half-angle, axis e1
};

// One runnable problem: a target (function or set), an anchor x, and the
// prox scale lambda. For sets lambda is fixed to 1 and the smoothed
// projection p_delta is the object of study.
struct ProxInstance {
  std::string id;
  bool is_set = false;
  FunctionSpec fn;   // engaged when !is_set
  SetSpec set;       // engaged when is_set
  Vec x;             // anchor
  double lambda = 1.0;
  GeometryInfo geometry;

  int dim() const { return is_set ? set.dim : fn.dim; }
  double rho() const { return is_set ? 0.0 : fn.rho; }
  // curvature of y -> f(y) + |x-y|^2/(2 lambda)
  double mu() const { return 1.0 / lambda - rho(); }

  double f(const Vec& y) const;        // indicator for sets
  bool member(const Vec& y) const;     // sets only
  Vec exact(const Vec& q) const;       // prox/projection at this lambda
  bool has_exact() const;

  void validate() const;  // throws ParameterError on bad lambda/shape
};

FunctionSpec make_quadratic(const Mat& A, const Vec& b, double c);
FunctionSpec make_sum_max(int n);
FunctionSpec make_log_cosh(double scale = 1.0);
SetSpec make_halfspace(const Vec& nu, double offset);
SetSpec make_ball(const Vec& center, double radius);
SetSpec make_circular_cone(double alpha, int n);

// f = 0 on the set, +inf outside; its prox at any lambda is the projection.
FunctionSpec indicator_of(const SetSpec& set);

// Independent 1-D prox oracle: dense 10^6-point scan of
// g(t) = f(t) + (t-x)^2/(2 lambda) over [x-window, x+window], then
// golden-section refinement to interval width 1e-12. Throws WindowError if
// the minimizer sits at the window edge.
double brute_force_prox_1d(const FunctionSpec& f, double x, double lambda,
                           double window);

}  // namespace proxsmooth
