#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gmlab/gm_classes.hpp"
#include "gmlab/series_lab.hpp"
#include "json.hpp"

namespace gmlab {

enum class Format { Csv, Json };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scientific notation, 17 significant digits ("%.16e"); inf/nan as "inf", "-inf", "nan".
[[nodiscard]] std::string format_real(double v);

using Cell = std::variant<std::int64_t, double, std::string>;

/// A frozen-column CSV table. Columns may be appended, never reordered.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// Header row then one line per row, comma separated, LF endings.
[[nodiscard]] std::string render_csv(const Table& table);

// Flat summary rows, used by `embed` and `report`.
struct SummaryRow {
  std::string family;
  Index r = 0;
  double c = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  double max_ratio = 0.0;
  double slope = 0.0;
};

struct SummaryReport {
  std::vector<SummaryRow> rows;
};

[[nodiscard]] Table to_table(const DefectReport& report);
[[nodiscard]] Table to_table(const ConvergenceReport& report);
[[nodiscard]] Table to_table(const Lemma1Report& report);
[[nodiscard]] Table to_table(const DivergeReport& report);
[[nodiscard]] Table to_table(const SummaryReport& report);

[[nodiscard]] nlohmann::json to_json(const DefectReport& report);
[[nodiscard]] nlohmann::json to_json(const ConvergenceReport& report);
[[nodiscard]] nlohmann::json to_json(const Lemma1Report& report);
[[nodiscard]] nlohmann::json to_json(const DivergeReport& report);
[[nodiscard]] nlohmann::json to_json(const SummaryReport& report);

/// Replaces the file at path with content. Throws IoError naming the path.
void write_text_file(const std::filesystem::path& path, const std::string& content);

template <typename Report>
[[nodiscard]] std::string render_report(const Report& report, Format format) {
  if (format == Format::Csv) return render_csv(to_table(report));
  return to_json(report).dump(2) + "\n";
}

template <typename Report>
void write_report(const Report& report, Format format, const std::filesystem::path& path) {
  write_text_file(path, render_report(report, format));
}

}  // namespace gmlab
