#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "swinf/geometry.hpp"
#include "swinf/inference.hpp"

namespace swinf {

/// Headerless CSV of finite reals, one observation per row. Blank lines are
/// skipped; every other row must have the same number of fields. Throws
/// ParseError carrying the 1-based line number of the first bad row.
SampleMatrix parse_sample_csv(std::istream& in);

SampleMatrix read_sample_csv(const std::string& path);

enum class ReportFormat { kJson, kCsv };

/// Output of the estimate and test commands. `statistic`/`p_value` and the
/// variance fields are absent when they were not computed.
struct Report {
  std::string command;
  std::uint64_t seed = 0;
  InferenceReport inference;
  bool has_variance = true;  ///< false for p != 2 without the w^2-only mode
  bool include_test = false;
};

void write_report(const Report& report, ReportFormat format, std::ostream& out);

}  // namespace swinf
