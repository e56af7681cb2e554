#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qpolar/polarize.hpp"

namespace qpolar {

inline constexpr const char* kToolVersion = "1.0.0";

struct ReportHeader {
  std::string command_line;
  std::optional<std::uint64_t> seed;
};

/// Header as '#'-prefixed lines for text reports.
std::string header_lines(const ReportHeader& header);

/// Machine-readable JSON report with every PolarizationReport field, the
/// per-depth capacity histograms and, if given, the sampled-path summary.
std::string report_document(const ReportHeader& header, const PolarizationReport& report,
                            const PathSample* paths = nullptr);

/// "sign,capacity" table, one row per leaf in sign-sequence order.
std::string leaf_table(const PolarizationReport& report);

/// "depth,mean,standard_error,mean_abs_increment" table of a path sample.
std::string path_table(const PathSample& paths);

/// Shortest round-trip decimal for a double.
std::string format_real(double v);

/// Counts of capacities in `bins` equal-width bins over [0, 1].
std::vector<std::size_t> histogram(const std::vector<double>& capacities, int bins);

}  // namespace qpolar
