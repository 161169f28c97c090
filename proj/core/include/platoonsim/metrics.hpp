#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace platoonsim::metrics {

enum class Group { kChannel, kLink, kApp, kMobility };

const char* to_string(Group group);

struct Summary {
  std::size_t count = 0;
  std::optional<double> mean;  // nullopt marks an empty window
  std::optional<double> min;
  std::optional<double> max;
};

/// Arithmetic mean, min and max. dB quantities are averaged in dB.
Summary aggregate(std::span<const double> samples);

/// Running form of aggregate() for one window.
class WindowAccumulator {
 public:
  void add(double value);
  std::size_t count() const { return count_; }
  Summary summary() const;
  Summary take();

 private:
  std::size_t count_ = 0;
  double sum_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

struct MetricRecord {
  double window_t = 0.0;  // window end [s]
  Group group = Group::kChannel;
  std::vector<std::string> keys;  // entity columns, e.g. veh and dir
  std::vector<std::pair<std::string, std::optional<double>>> values;
  std::vector<std::pair<std::string, std::uint64_t>> counts;
};

/// Locale-independent, 6 significant digits, shortest form ("%.6g").
std::string format_number(double value);

/// Empty field for missing values.
std::string format_optional(const std::optional<double>& value);

class DuplicateWindow : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Append-only CSV file with a fixed header. Each window is written with one
/// stream write and flushed; a window can be flushed only once.
class CsvSink {
 public:
  CsvSink(const std::string& path, std::vector<std::string> header);

  const std::vector<std::string>& header() const { return header_; }

  /// Rows for window `window_t`; rejects a repeated window with DuplicateWindow.
  void flush_window(double window_t, const std::vector<std::vector<std::string>>& rows);

  /// Rows without window bookkeeping (per-event files).
  void append(const std::vector<std::vector<std::string>>& rows);

 private:
  void write(const std::vector<std::vector<std::string>>& rows);

  std::string path_;
  std::vector<std::string> header_;
  std::ofstream out_;
  std::set<std::int64_t> flushed_;
};

/// Converts records to rows: window_t, keys..., values..., counts...
std::vector<std::string> to_row(const MetricRecord& record);

/// Writes records grouped by window_t; records must be ordered by window_t.
void flush(std::span<const MetricRecord> records, CsvSink& sink);

}  // namespace platoonsim::metrics
