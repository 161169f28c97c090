#include "platoonsim/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace platoonsim::metrics {

const char* to_string(Group group) {
  switch (group) {
    case Group::kChannel:
      return "channel";
    case Group::kLink:
      return "link";
    case Group::kApp:
      return "app";
    case Group::kMobility:
      return "mobility";
  }
  return "?";
}

Summary aggregate(std::span<const double> samples) {
  WindowAccumulator acc;
  for (double v : samples) acc.add(v);
  return acc.summary();
}

void WindowAccumulator::add(double value) {
  if (count_ == 0) {
    min_ = max_ = value;
  } else {
    min_ = std::min(min_, value);
    max_ = std::max(max_, value);
  }
  sum_ += value;
  ++count_;
}

Summary WindowAccumulator::summary() const {
  Summary s;
  s.count = count_;
  if (count_ > 0) {
    s.mean = sum_ / static_cast<double>(count_);
    s.min = min_;
    s.max = max_;
  }
  return s;
}

Summary WindowAccumulator::take() {
  Summary s = summary();
  *this = {};
  return s;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string();
}

CsvSink::CsvSink(const std::string& path, std::vector<std::string> header)
    : path_(path), header_(std::move(header)), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
  write({header_});
}

void CsvSink::flush_window(double window_t, const std::vector<std::vector<std::string>>& rows) {
  const auto key = std::llround(window_t * 1e9);
  if (!flushed_.insert(key).second) {
    throw DuplicateWindow(path_ + ": window " + format_number(window_t) + " already flushed");
  }
  write(rows);
}

void CsvSink::append(const std::vector<std::vector<std::string>>& rows) { write(rows); }

void CsvSink::write(const std::vector<std::vector<std::string>>& rows) {
  std::string text;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) text += ',';
      text += row[i];
    }
    text += '\n';
  }
  out_.write(text.data(), static_cast<std::streamsize>(text.size()));
  out_.flush();
  if (!out_) throw std::runtime_error("write to " + path_ + " failed");
}

std::vector<std::string> to_row(const MetricRecord& record) {
  std::vector<std::string> row;
  row.push_back(format_number(record.window_t));
  for (const auto& k : record.keys) row.push_back(k);
  for (const auto& [name, v] : record.values) row.push_back(format_optional(v));
  for (const auto& [name, n] : record.counts) row.push_back(std::to_string(n));
  return row;
}

void flush(std::span<const MetricRecord> records, CsvSink& sink) {
  std::size_t i = 0;
  while (i < records.size()) {
    const double t = records[i].window_t;
    std::vector<std::vector<std::string>> rows;
    for (; i < records.size() && records[i].window_t == t; ++i) rows.push_back(to_row(records[i]));
    sink.flush_window(t, rows);
  }
}

}  // namespace platoonsim::metrics
