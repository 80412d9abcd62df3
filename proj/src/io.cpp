#include "swinf/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "swinf/error.hpp"
#include "swinf/format.hpp"
#include "swinf/normal.hpp"
#include "swinf/rng.hpp"

namespace swinf {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_field(std::string_view field, std::size_t line, std::size_t column) {
  field = trim(field);
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (!field.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("field " + std::to_string(column) + " is not a number: '" +
                         std::string(field) + "'",
                     line);
  }
  if (!std::isfinite(v)) {
    throw ParseError("field " + std::to_string(column) + " is not finite", line);
  }
  return v;
}

}  // namespace

SampleMatrix parse_sample_csv(std::istream& in) {
  std::vector<double> data;
  std::size_t d = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    std::size_t fields = 0;
    std::size_t start = 0;
    for (;;) {
      const auto comma = row.find(',', start);
      const auto field = row.substr(start, comma == std::string_view::npos ? row.npos : comma - start);
      data.push_back(parse_field(field, line_no, fields + 1));
      ++fields;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows == 0) {
      d = fields;
    } else if (fields != d) {
      throw ParseError("expected " + std::to_string(d) + " fields, found " + std::to_string(fields),
                       line_no);
    }
    ++rows;
  }
  if (rows < 2) throw ParseError("need at least 2 observations, found " + std::to_string(rows));
  return SampleMatrix(rows, d, std::move(data));
}

SampleMatrix read_sample_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return parse_sample_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

namespace {

using Field = std::pair<std::string, nlohmann::json>;

std::vector<Field> report_fields(const Report& report) {
  const auto& r = report.inference;
  using nlohmann::json;
  auto opt = [](bool present, double v) { return present ? json(v) : json(nullptr); };
  std::vector<Field> f{
      {"command", report.command},
      {"p", r.p},
      {"n", r.n},
      {"m", r.m},
      {"k", r.k},
      {"d", r.d},
      {"seed", report.seed},
      {"estimate", r.estimate},
      {"w_hat_sq", r.variance.w_hat_sq},
      {"w_hat_sq_clamped", r.w_clamped},
      {"v_hat_pq_sq", opt(report.has_variance && !r.w_only, r.variance.v_hat_pq_sq)},
      {"v_hat_qp_sq", opt(report.has_variance && !r.w_only, r.variance.v_hat_qp_sq)},
      {"tau_hat", r.variance.tau_hat},
      {"lambda_hat", r.variance.lambda_hat},
      {"combined_variance", opt(report.has_variance, r.variance.combined)},
      {"w_only", r.w_only},
      {"effective_rate", r.effective_rate},
      {"level", r.level},
      {"ci_low", opt(report.has_variance, r.ci_low)},
      {"ci_high", opt(report.has_variance, r.ci_high)},
  };
  if (report.include_test) {
    f.emplace_back("delta", r.delta);
    f.emplace_back("statistic", r.statistic ? json(*r.statistic) : json(nullptr));
    f.emplace_back("p_value", r.p_value ? json(*r.p_value) : json(nullptr));
    f.emplace_back("reject", r.reject());
  }
  f.emplace_back("gaussian_method", kGaussianMethod);
  return f;
}

std::string csv_cell(const nlohmann::json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    return quoted + '"';
  }
  return v.dump();
}

}  // namespace

void write_report(const Report& report, ReportFormat format, std::ostream& out) {
  const auto fields = report_fields(report);
  if (format == ReportFormat::kJson) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto& [key, value] : fields) doc[key] = value;
    out << doc.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].first;
  out << '\n';
  for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_cell(fields[i].second);
  out << '\n';
}

}  // namespace swinf
