#include "proxsmooth/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <utility>

#include "proxsmooth/errors.hpp"

namespace proxsmooth::catalog {

namespace {

std::string fmt10(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct ParsedId {
  std::string name;
  std::map<std::string, std::string> kv;
};

ParsedId parse_id(const std::string& id) {
  ParsedId out;
  const auto colon = id.find(':');
  out.name = id.substr(0, colon);
  if (out.name.empty()) throw ParameterError("catalog id: empty name in '" + id + "'");
  if (colon == std::string::npos) return out;
  std::string rest = id.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = rest.find(',', pos);
    const std::string item =
        rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= item.size()) {
      throw ParameterError("catalog id: expected key=value, got '" + item + "' in '" + id + "'");
    }
    const std::string key = item.substr(0, eq);
    if (!out.kv.emplace(key, item.substr(eq + 1)).second) {
      throw ParameterError("catalog id: duplicate key '" + key + "' in '" + id + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

class Params {
 public:
  Params(ParsedId parsed, std::string id) : parsed_(std::move(parsed)), id_(std::move(id)) {}

  double real(const std::string& key, double fallback) {
    const auto it = parsed_.kv.find(key);
    if (it == parsed_.kv.end()) return fallback;
    used_.push_back(key);
    char* end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    if (end != it->second.c_str() + it->second.size() || !std::isfinite(v)) {
      throw ParameterError("catalog id: bad numeric value '" + it->second + "' for key '" +
                           key + "' in '" + id_ + "'");
    }
    return v;
  }

  int integer(const std::string& key, int fallback) {
    const double v = real(key, fallback);
    if (v != std::floor(v)) {
      throw ParameterError("catalog id: key '" + key + "' must be an integer in '" + id_ + "'");
    }
    return static_cast<int>(v);
  }

  std::string token(const std::string& key, const std::string& fallback) {
    const auto it = parsed_.kv.find(key);
    if (it == parsed_.kv.end()) return fallback;
    used_.push_back(key);
    return it->second;
  }

  void finish() const {
    for (const auto& [key, value] : parsed_.kv) {
      if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
        throw ParameterError("catalog id: unknown key '" + key + "' for '" + parsed_.name + "'");
      }
    }
  }

 private:
  ParsedId parsed_;
  std::string id_;
  std::vector<std::string> used_;
};

ProxInstance make_sum_max_instance(Params& p) {
  const int n = p.integer("n", 1);
  ProxInstance inst;
  inst.fn = make_sum_max(n);
  inst.id = "sum_max:n=" + fmt10(n);
  inst.x = Vec::Zero(n);
  inst.lambda = 1.0;
  inst.geometry.kind = Geometry::axis_kinks;
  inst.geometry.axis_kinks.assign(n, {0.0});
  return inst;
}

ProxInstance make_quadratic_instance(Params& p) {
  const std::string which = p.token("id", "iso1");
  ProxInstance inst;
  if (which == "iso1") {
    inst.fn = make_quadratic(Mat::Identity(1, 1), Vec::Zero(1), 0.0);
    inst.x = Vec::Constant(1, 2.0);
  } else if (which == "iso2") {
    inst.fn = make_quadratic(Mat::Identity(2, 2), Vec::Zero(2), 0.0);
    inst.x = Vec(2);
    inst.x << 2.0, 0.0;
  } else if (which == "diag12") {
    Mat A = Mat::Zero(2, 2);
    A.diagonal() << 1.0, 2.0;
    Vec b(2);
    b << 1.0, 0.0;
    inst.fn = make_quadratic(A, b, 0.0);
    inst.x = Vec(2);
    inst.x << 2.0, -1.0;
  } else if (which == "zero2") {
    inst.fn = make_quadratic(Mat::Zero(2, 2), Vec::Zero(2), 0.0);
    inst.x = Vec(2);
    inst.x << 0.3, -0.7;
  } else {
    throw ParameterError("catalog id: unknown quadratic id '" + which + "'");
  }
  inst.id = "quadratic:id=" + which;
  inst.lambda = 1.0;
  inst.geometry.kind = Geometry::smooth;
  return inst;
}

ProxInstance make_log_cosh_instance(Params&) {
  ProxInstance inst;
  inst.fn = make_log_cosh();
  inst.id = "logcosh";
  inst.x = Vec::Constant(1, 1.0);
  inst.lambda = 1.0;
  inst.geometry.kind = Geometry::smooth;
  return inst;
}

ProxInstance make_halfspace_instance(Params& p) {
  const double d = p.real("d", 1.0);
  const int n = p.integer("n", 2);
  if (n < 1) throw ParameterError("halfspace: n must be >= 1");
  ProxInstance inst;
  inst.is_set = true;
  Vec nu = Vec::Zero(n);
  nu[0] = 1.0;
  inst.set = make_halfspace(nu, 0.0);
  inst.id = "halfspace:d=" + fmt10(d) + ",n=" + fmt10(n);
  inst.x = d * nu;
  inst.lambda = 1.0;
  inst.geometry.kind = Geometry::halfspace;
  inst.geometry.normal = nu;
  inst.geometry.offset = 0.0;
  return inst;
}

ProxInstance make_ball_instance(Params& p) {
  const int n = p.integer("n", 2);
  const double r = p.real("r", 1.0);
  if (n < 1) throw ParameterError("ball: n must be >= 1");
  ProxInstance inst;
  inst.is_set = true;
  inst.set = make_ball(Vec::Zero(n), r);
  inst.id = "ball:n=" + fmt10(n) + ",r=" + fmt10(r);
  inst.x = Vec::Zero(n);
  inst.x[0] = 2.0 * r;
  inst.lambda = 1.0;
  inst.geometry.kind = Geometry::ball;
  inst.geometry.center = Vec::Zero(n);
  inst.geometry.radius = r;
  return inst;
}

ProxInstance make_cone_instance(Params& p) {
  const double alpha = p.real("alpha", M_PI / 4.0);
  const int n = p.integer("n", 2);
  ProxInstance inst;
  inst.is_set = true;
  inst.set = make_circular_cone(alpha, n);
  inst.id = "cone:alpha=" + fmt10(alpha) + ",n=" + fmt10(n);
  inst.x = Vec::Zero(n);
  inst.lambda = 1.0;
  inst.geometry.kind = Geometry::cone;
  inst.geometry.cone_alpha = alpha;
  return inst;
}

}  // namespace

ProxInstance make_instance(const std::string& id) {
  ParsedId parsed = parse_id(id);
  Params p(parsed, id);
  ProxInstance inst;
  if (parsed.name == "sum_max") {
    inst = make_sum_max_instance(p);
  } else if (parsed.name == "quadratic") {
    inst = make_quadratic_instance(p);
  } else if (parsed.name == "logcosh") {
    inst = make_log_cosh_instance(p);
  } else if (parsed.name == "halfspace") {
    inst = make_halfspace_instance(p);
  } else if (parsed.name == "ball") {
    inst = make_ball_instance(p);
  } else if (parsed.name == "cone") {
    inst = make_cone_instance(p);
  } else {
    throw ParameterError("catalog id: unknown name '" + parsed.name + "'");
  }
  p.finish();
  inst.validate();
  return inst;
}

std::string canonical_id(const std::string& id) { return make_instance(id).id; }

std::vector<EntryInfo> list_entries() {
  static const std::pair<const char*, const char*> kEntries[] = {
      {"sum_max:n=1", "separable hinge sum max(y_i,0); kink at 0 per axis"},
      {"sum_max:n=2", "separable hinge sum max(y_i,0); kink at 0 per axis"},
      {"sum_max:n=3", "separable hinge sum max(y_i,0); kink at 0 per axis"},
      {"quadratic:id=iso1", "f(t) = t^2/2; prox by exact linear solve"},
      {"quadratic:id=iso2", "f(y) = |y|^2/2 in n=2"},
      {"quadratic:id=diag12", "f(y) = y'diag(1,2)y/2 + y_1 in n=2"},
      {"quadratic:id=zero2", "f = 0 in n=2; prox is the identity"},
      {"logcosh", "f(t) = ln cosh t; smooth, |f'''| <= 4/(3*sqrt(3))"},
      {"halfspace:d=1,n=2", "C = {y_1 <= 0}; anchor at distance d"},
      {"ball:n=2,r=1", "C = ball of radius r at 0; anchor at 2r*e1"},
      {"cone:alpha=0.7853981634,n=2", "C = circular cone about e1, half-angle alpha"},
  };
  std::vector<EntryInfo> out;
  out.reserve(std::size(kEntries));
  for (const auto& [id, note] : kEntries) {
    const ProxInstance inst = make_instance(id);
    EntryInfo info;
    info.id = inst.id;
    info.n = inst.dim();
    info.is_set = inst.is_set;
    info.rho = inst.rho();
    info.hessian_lipschitz = inst.is_set ? kNaN : inst.fn.hessian_lipschitz;
    info.exact_available = inst.has_exact();
    info.note = note;
    out.push_back(std::move(info));
  }
  return out;
}

}  // namespace proxsmooth::catalog
