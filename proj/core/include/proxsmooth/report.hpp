#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proxsmooth/rates.hpp"

namespace proxsmooth {

// Fixed CSV contract: this exact column set and order, one row per
// (instance, delta), decimals with 17 significant digits. The `stderr`
// column carries the Monte Carlo standard-error norm or the quadrature
// error estimate, whichever the sweep's method produces.
inline constexpr const char* kCsvHeader =
    "instance,method,n,lambda,mu,delta,err,stderr,bound,bound_kind,ess,"
    "acceptance,status,seed";

inline constexpr const char* kToolVersion = "0.1.0";

// 17 significant digits; non-finite values spelled nan/inf/-inf.
std::string format_csv_number(double v);

// RFC 4180 quoting: fields holding a comma, quote, or newline are wrapped in
// double quotes with embedded quotes doubled; everything else passes through.
std::string csv_field(const std::string& raw);

std::string csv_row(const RateSweep& sweep, const SweepPoint& point);
std::string to_csv(const RateSweep& sweep);  // header + all rows, LF endings

// Self-contained log-log chart (no external assets): error marks, the bound
// curve, and, when given, the fitted power law with a slope annotation.
std::string to_svg(const RateSweep& sweep,
                   const std::optional<RateFit>& fit = std::nullopt);

void write_text_file(const std::string& path, const std::string& content);

// Everything needed to reproduce a run byte for byte (with the documented
// generator): the exact command, the seed, the instances and grid it acted
// on, and where the artifacts went.
struct RunManifest {
  std::string command_line;
  std::uint64_t seed = 0;
  std::vector<std::string> instance_ids;
  std::string grid;  // human-readable grid/delta spec, empty when unused
  std::string version = kToolVersion;
  std::vector<std::string> outputs;
};

std::string to_text(const RunManifest& manifest);

}  // namespace proxsmooth
