#pragma once

#include <string>
#include <vector>

#include "proxsmooth/problems.hpp"

namespace proxsmooth::catalog {

// Listing metadata for one built-in entry.
struct EntryInfo {
  std::string id;  // canonical identifier
  int n = 1;
  bool is_set = false;
  double rho = 0.0;
  double hessian_lipschitz = kNaN;  // NaN: bound kind sqrt(delta) only
  bool exact_available = true;
  std::string note;
};

// The built-in entries, in listing order.
std::vector<EntryInfo> list_entries();

// Identifier grammar: name(:key=value)*, keys unique and in any order,
// numeric values in decimal. Builds the instance with its default anchor
// and lambda; unknown names/keys or malformed text throw ParameterError.
//
//   sum_max:n=<int>                       anchor 0, lambda 1
//   quadratic:id={iso1,iso2,diag12,zero2} fixed matrices, see list_entries
//   logcosh                               anchor 1, lambda 1
//   halfspace:d=<real>,n=<int>            normal e1, offset 0, anchor d*e1
//   ball:n=<int>,r=<real>                 center 0, anchor 2r*e1
//   cone:alpha=<real>,n=<int>             axis e1, anchor 0
ProxInstance make_instance(const std::string& id);

// Canonical spelling: keys sorted, defaults materialized, numeric values
// rendered with up to 10 significant digits.
std::string canonical_id(const std::string& id);

}  // namespace proxsmooth::catalog
