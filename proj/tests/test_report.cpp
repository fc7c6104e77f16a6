#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "proxsmooth/catalog.hpp"
#include "proxsmooth/errors.hpp"
#include "proxsmooth/report.hpp"

using namespace proxsmooth;

namespace {

RateSweep small_sweep(std::string id = "synthetic") {
  RateSweep sweep;
  sweep.instance_id = std::move(id);
  sweep.n = 2;
  sweep.lambda = 1.0;
  sweep.mu = 1.0;
  sweep.method = Method::quadrature;
  sweep.bound_kind = BoundKind::prox_sqrt;
  for (double d : {1e-1, 1e-2, 1e-3}) {
    SweepPoint pt;
    pt.delta = d;
    pt.estimate = Vec::Constant(2, 0.5 * std::sqrt(d));
    pt.err = 0.7 * std::sqrt(d);
    pt.spread = 1e-3 * std::sqrt(d);
    pt.bound = std::sqrt(2.0 * d);
    pt.ess = 1000.0;
    pt.acceptance = kNaN;
    sweep.points.push_back(pt);
  }
  return sweep;
}

// Split one CSV line honoring RFC 4180 quoting.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("csv header is the fixed fourteen-column contract") {
  CHECK(std::string(kCsvHeader) ==
        "instance,method,n,lambda,mu,delta,err,stderr,bound,bound_kind,ess,"
        "acceptance,status,seed");
  CHECK(split_csv(kCsvHeader).size() == 14);
}

TEST_CASE("csv numbers carry 17 significant digits and round-trip exactly") {
  for (double v : {0.1, 1.0 / 3.0, -0.0373007934251684231, 1e-300, 123456.75,
                   0.79788456080286536}) {
    const std::string text = format_csv_number(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
  CHECK(format_csv_number(kNaN) == "nan");
  CHECK(format_csv_number(kInf) == "inf");
  CHECK(format_csv_number(-kInf) == "-inf");
  CHECK(format_csv_number(0.1) == "0.10000000000000001");
}

TEST_CASE("csv fields quote commas and double embedded quotes") {
  CHECK(csv_field("sum_max:n=1") == "sum_max:n=1");
  CHECK(csv_field("ball:n=2,r=1") == "\"ball:n=2,r=1\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  CHECK(split_csv("\"ball:n=2,r=1\",mc").size() == 2);
  CHECK(split_csv("\"ball:n=2,r=1\",mc")[0] == "ball:n=2,r=1");
}

TEST_CASE("csv rows: one per delta, parseable, value-faithful") {
  auto sweep = small_sweep("ball:n=2,r=1");
  sweep.points[2].status = "zero-mass";
  sweep.points[2].err = kNaN;
  const std::string csv = to_csv(sweep);
  CHECK(csv.back() == '\n');

  const auto lines = split_lines(csv);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == kCsvHeader);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_csv(lines[r]);
    REQUIRE(fields.size() == 14);
    CHECK(fields[0] == "ball:n=2,r=1");
    CHECK(fields[1] == "quadrature");
    CHECK(fields[2] == "2");
    CHECK(fields[9] == "prox-sqrt");
    CHECK(std::strtod(fields[5].c_str(), nullptr) ==
          sweep.points[r - 1].delta);
  }
  const auto last = split_csv(lines[3]);
  CHECK(last[6] == "nan");
  CHECK(last[12] == "zero-mass");
  CHECK(last[13] == "0");

  // deterministic: same sweep, same bytes
  CHECK(to_csv(sweep) == csv);
}

TEST_CASE("csv emission for a real sweep matches the run values") {
  const auto inst = catalog::make_instance("sum_max:n=1");
  SweepConfig config;
  const RateSweep sweep = run_sweep(inst, geometric_grid(1e-1, 1e-3, 3), config);
  const auto lines = split_lines(to_csv(sweep));
  REQUIRE(lines.size() == 4);
  const auto row = split_csv(lines[1]);
  CHECK(row[0] == "sum_max:n=1");
  CHECK(std::strtod(row[6].c_str(), nullptr) == sweep.points[0].err);
  CHECK(std::strtod(row[8].c_str(), nullptr) == sweep.points[0].bound);
  CHECK(row[11] == "nan");  // quadrature has no acceptance rate
  CHECK(row[12] == "ok");
}

TEST_CASE("svg chart is self-contained with error, bound, and fit series") {
  const auto sweep = small_sweep();
  RateFit fit;
  fit.slope = 0.5;
  fit.intercept = std::log(0.7);
  fit.r_squared = 0.9999;
  fit.window = {0, 1, 2};
  const std::string svg = to_svg(sweep, fit);

  CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("http://") == svg.find("http://www.w3.org/2000/svg"));  // no other refs
  std::size_t series = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1)) {
    ++series;
  }
  CHECK(series == 3);
  CHECK(svg.find("fit: slope 0.5") != std::string::npos);
  CHECK(svg.find("R^2") != std::string::npos);
  CHECK(svg.find(">error<") != std::string::npos);
  CHECK(svg.find(">bound<") != std::string::npos);
  CHECK(svg.find("1e-1") != std::string::npos);  // decade tick labels
  CHECK(svg.find("nan") == std::string::npos);
  CHECK(to_svg(sweep, fit) == svg);  // deterministic bytes
}

TEST_CASE("svg escapes markup in ids and survives all-failed sweeps") {
  auto sweep = small_sweep("weird<id>&\"x\"");
  const std::string svg = to_svg(sweep);
  CHECK(svg.find("weird&lt;id&gt;&amp;&quot;x&quot;") != std::string::npos);
  CHECK(svg.find("weird<id>") == std::string::npos);

  for (auto& pt : sweep.points) pt.status = "zero-mass";
  const std::string empty = to_svg(sweep);
  CHECK(empty.find("no plottable points") != std::string::npos);
  CHECK(empty.find("</svg>") != std::string::npos);
}

TEST_CASE("text files are written byte-exactly; bad paths throw") {
  const std::string path = "report_test_artifact.txt";
  const std::string content = "line1\nline2 0.10000000000000001\n";
  write_text_file(path, content);
  std::ifstream in(path, std::ios::binary);
  std::stringstream readback;
  readback << in.rdbuf();
  CHECK(readback.str() == content);
  std::remove(path.c_str());
  CHECK_THROWS_AS(write_text_file("no_such_dir/x.csv", "data"), ParameterError);
}

TEST_CASE("manifest text block is stable and complete") {
  RunManifest manifest;
  manifest.command_line = "proxsmooth sweep --id sum_max:n=1 --seed 7";
  manifest.seed = 7;
  manifest.instance_ids = {"sum_max:n=1"};
  manifest.grid = "geometric(delta_max=0.1, delta_min=1e-05, points=9)";
  manifest.outputs = {"out.csv", "out.svg"};
  const std::string text = to_text(manifest);
  CHECK(text ==
        "manifest:\n"
        "  version: 0.1.0\n"
        "  command: proxsmooth sweep --id sum_max:n=1 --seed 7\n"
        "  seed: 7\n"
        "  instances: sum_max:n=1\n"
        "  grid: geometric(delta_max=0.1, delta_min=1e-05, points=9)\n"
        "  outputs: out.csv; out.svg\n");

  RunManifest bare;
  bare.command_line = "proxsmooth catalog";
  const std::string empty = to_text(bare);
  CHECK(empty.find("  instances: -\n") != std::string::npos);
  CHECK(empty.find("  grid: -\n") != std::string::npos);
  CHECK(empty.find("  outputs: -\n") != std::string::npos);
  CHECK(empty.find("  seed: 0\n") != std::string::npos);
}
