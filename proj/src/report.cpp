#include "qpolar/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "json.hpp"

namespace qpolar {

using nlohmann::ordered_json;

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::size_t> histogram(const std::vector<double>& capacities, int bins) {
  std::vector<std::size_t> h(static_cast<std::size_t>(bins), 0);
  for (double c : capacities) {
    const int b = std::clamp(static_cast<int>(std::floor(c * bins)), 0, bins - 1);
    ++h[static_cast<std::size_t>(b)];
  }
  return h;
}

std::string header_lines(const ReportHeader& header) {
  std::string s = "# qpolar " + std::string(kToolVersion) + "\n# command: " + header.command_line + "\n";
  if (header.seed) s += "# seed: " + std::to_string(*header.seed) + "\n";
  return s;
}

namespace {

ordered_json header_json(const ReportHeader& header) {
  ordered_json h;
  h["tool"] = "qpolar";
  h["version"] = kToolVersion;
  h["command"] = header.command_line;
  h["seed"] = header.seed ? ordered_json(*header.seed) : ordered_json(nullptr);
  return h;
}

}  // namespace

std::string report_document(const ReportHeader& header, const PolarizationReport& r, const PathSample* paths) {
  ordered_json doc;
  doc["header"] = header_json(header);
  doc["depth"] = r.depth;
  doc["delta"] = r.delta;
  doc["root_capacity"] = r.root_capacity;
  doc["erasure_fast_path"] = r.erasure_fast_path;
  doc["fraction_high"] = r.fraction_high;
  doc["fraction_low"] = r.fraction_low;
  doc["mean_capacity"] = r.mean_capacity;
  doc["mean_abs_increment"] = r.mean_abs_increment;

  ordered_json per_depth = ordered_json::array();
  for (int k = 0; k <= r.depth; ++k) {
    const auto f = polarization_fractions(r, k, r.delta);
    ordered_json level;
    level["depth"] = k;
    level["mean_capacity"] = r.level_mean(k);
    level["fraction_high"] = f.high;
    level["fraction_low"] = f.low;
    level["histogram"] = histogram(r.levels[static_cast<std::size_t>(k)], 10);
    per_depth.push_back(std::move(level));
  }
  doc["per_depth"] = std::move(per_depth);

  ordered_json leaves = ordered_json::array();
  for (std::size_t i = 0; i < r.leaves().size(); ++i) {
    ordered_json leaf;
    leaf["sign"] = SignSequence::from_index(i, r.depth).str();
    leaf["capacity"] = r.leaves()[i];
    leaves.push_back(std::move(leaf));
  }
  doc["leaves"] = std::move(leaves);

  if (paths) {
    ordered_json p;
    p["paths"] = paths->traces.size();
    p["mean"] = paths->summary.mean;
    p["standard_error"] = paths->summary.standard_error;
    p["mean_abs_increment"] = paths->summary.mean_abs_increment;
    ordered_json traces = ordered_json::array();
    for (const auto& t : paths->traces) {
      ordered_json tj;
      tj["seed"] = t.seed;
      tj["signs"] = t.signs.str();
      tj["capacities"] = t.capacities;
      traces.push_back(std::move(tj));
    }
    p["traces"] = std::move(traces);
    doc["sampled_paths"] = std::move(p);
  }
  return doc.dump(1) + "\n";
}

std::string leaf_table(const PolarizationReport& r) {
  std::string s = "sign,capacity\n";
  for (std::size_t i = 0; i < r.leaves().size(); ++i)
    s += SignSequence::from_index(i, r.depth).str() + "," + format_real(r.leaves()[i]) + "\n";
  return s;
}

std::string path_table(const PathSample& paths) {
  const auto& sum = paths.summary;
  std::string s = "depth,mean,standard_error,mean_abs_increment\n";
  for (std::size_t k = 0; k < sum.mean.size(); ++k) {
    s += std::to_string(k) + "," + format_real(sum.mean[k]) + "," + format_real(sum.standard_error[k]) + ",";
    s += k < sum.mean_abs_increment.size() ? format_real(sum.mean_abs_increment[k]) : std::string{};
    s += "\n";
  }
  return s;
}

}  // namespace qpolar
