#pragma once

// Waveform containers with window metrics. CSV is the exchange format.
//
// CSV layout:
//   time,<name1>,<name2>,...
//   # units: time=s,<name1>=V,<name2>=A,...
//   <one row per sample, every value printed as %.8e>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rectsim/units.hpp"

namespace rectsim {

class WaveformError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Unit { Volt, Amp, Second, Watt, None };

inline const char* unit_symbol(Unit u) {
  switch (u) {
    case Unit::Volt: return "V";
    case Unit::Amp: return "A";
    case Unit::Second: return "s";
    case Unit::Watt: return "W";
    case Unit::None: break;
  }
  return "-";
}

inline Unit unit_from_symbol(std::string_view s) {
  if (s == "V") return Unit::Volt;
  if (s == "A") return Unit::Amp;
  if (s == "s") return Unit::Second;
  if (s == "W") return Unit::Watt;
  return Unit::None;
}

using TimeBase = std::shared_ptr<const std::vector<double>>;

inline TimeBase make_time_base(std::vector<double> t) {
  return std::make_shared<const std::vector<double>>(std::move(t));
}

struct Window {
  double t_start = 0.0;
  double t_end = 0.0;
};

class Waveform {
 public:
  Waveform(std::string name, TimeBase times, std::vector<double> values)
      : name_(std::move(name)), times_(std::move(times)), values_(std::move(values)) {
    if (!times_ || times_->size() != values_.size()) throw WaveformError(name_ + ": times/values length mismatch");
    if (values_.size() < 2) throw WaveformError(name_ + ": a waveform needs at least two samples");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite((*times_)[i]) || !std::isfinite(values_[i])) throw WaveformError(name_ + ": non-finite sample");
      if (i > 0 && !((*times_)[i] > (*times_)[i - 1])) throw WaveformError(name_ + ": time is not strictly increasing");
    }
  }
  Waveform(std::string name, std::vector<double> times, std::vector<double> values)
      : Waveform(std::move(name), make_time_base(std::move(times)), std::move(values)) {}

  const std::string& name() const noexcept { return name_; }
  const std::vector<double>& times() const noexcept { return *times_; }
  const TimeBase& time_base() const noexcept { return times_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double t_begin() const { return times_->front(); }
  double t_end() const { return times_->back(); }

  /// Linear interpolation; exact at sample points.
  double at(double t) const {
    const auto& ts = *times_;
    if (t < ts.front() || t > ts.back()) throw WaveformError(name_ + ": time outside the waveform span");
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    std::size_t i = static_cast<std::size_t>(it - ts.begin());
    if (ts[i] == t) return values_[i];
    const double a = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
    return values_[i - 1] + a * (values_[i] - values_[i - 1]);
  }

 private:
  std::string name_;
  TimeBase times_;
  std::vector<double> values_;
};

class WaveformSet {
 public:
  WaveformSet() = default;

  /// Appends a waveform; the first one fixes the shared time base.
  void add(Waveform w, Unit unit) {
    if (find(w.name())) throw WaveformError("duplicate waveform '" + w.name() + "'");
    if (!waves_.empty() && w.time_base() != waves_.front().time_base()) {
      if (w.times() != waves_.front().times()) shared_time_ = false;
    }
    units_[w.name()] = unit;
    waves_.push_back(std::move(w));
  }

  /// Convenience for building a shared-time set column by column.
  void add(std::string name, std::vector<double> values, Unit unit) {
    if (waves_.empty()) throw WaveformError("add a waveform with explicit times first");
    add(Waveform(std::move(name), waves_.front().time_base(), std::move(values)), unit);
  }

  bool shared_time() const noexcept { return shared_time_; }
  bool empty() const noexcept { return waves_.empty(); }
  const std::vector<Waveform>& waveforms() const noexcept { return waves_; }
  const std::vector<double>& times() const {
    if (waves_.empty()) throw WaveformError("empty waveform set");
    return waves_.front().times();
  }

  const Waveform* find(std::string_view name) const {
    for (const auto& w : waves_) {
      if (w.name() == name) return &w;
    }
    return nullptr;
  }
  const Waveform& get(std::string_view name) const {
    if (const auto* w = find(name)) return *w;
    throw WaveformError("missing waveform '" + std::string(name) + "'");
  }
  Unit unit(std::string_view name) const {
    auto it = units_.find(std::string(name));
    return it == units_.end() ? Unit::None : it->second;
  }

 private:
  std::vector<Waveform> waves_;
  std::map<std::string, Unit> units_;
  bool shared_time_ = true;
};

namespace detail {

inline void check_window(const Waveform& w, Window win) {
  if (!(win.t_end > win.t_start)) throw WaveformError("empty window");
  if (win.t_start < w.t_begin() || win.t_end > w.t_end()) throw WaveformError(w.name() + ": window outside span");
}

/// Trapezoidal integral of f(value) over the window, with linear
/// interpolation of the waveform at the window edges.
template <typename F>
double integrate(const Waveform& w, Window win, F&& f) {
  check_window(w, win);
  const auto& ts = w.times();
  const auto& vs = w.values();
  double acc = 0.0;
  double t_prev = win.t_start;
  double f_prev = f(w.at(win.t_start));
  auto it = std::upper_bound(ts.begin(), ts.end(), win.t_start);
  for (std::size_t i = static_cast<std::size_t>(it - ts.begin()); i < ts.size() && ts[i] < win.t_end; ++i) {
    double fi = f(vs[i]);
    acc += 0.5 * (fi + f_prev) * (ts[i] - t_prev);
    t_prev = ts[i];
    f_prev = fi;
  }
  double f_end = f(w.at(win.t_end));
  acc += 0.5 * (f_end + f_prev) * (win.t_end - t_prev);
  return acc;
}

}  // namespace detail

inline double mean(const Waveform& w, Window win) {
  return detail::integrate(w, win, [](double v) { return v; }) / (win.t_end - win.t_start);
}

inline double rms(const Waveform& w, Window win) {
  double ms = detail::integrate(w, win, [](double v) { return v * v; }) / (win.t_end - win.t_start);
  return std::sqrt(std::max(ms, 0.0));
}

inline double rms(const Waveform& w) { return rms(w, {w.t_begin(), w.t_end()}); }

inline Waveform resample(const Waveform& w, const std::vector<double>& times) {
  std::vector<double> values;
  values.reserve(times.size());
  for (double t : times) {
    if (t < w.t_begin() || t > w.t_end()) throw WaveformError(w.name() + ": resample would extrapolate");
    values.push_back(w.at(t));
  }
  return Waveform(w.name(), times, std::move(values));
}

/// Samplewise a - b on a shared time base.
inline Waveform difference(const Waveform& a, const Waveform& b, std::string name) {
  if (a.times() != b.times()) throw WaveformError("difference needs a shared time base");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] - b.values()[i];
  return Waveform(std::move(name), a.time_base(), std::move(v));
}

inline std::string format_csv_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

/// Writes a table with the shared CSV number format. Columns must have equal length.
inline void write_table_csv(std::ostream& os, const std::vector<std::string>& header,
                            const std::vector<std::vector<double>>& columns, std::string_view units_line = {}) {
  if (header.size() != columns.size()) throw WaveformError("header/column count mismatch");
  for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
  os << '\n';
  if (!units_line.empty()) os << units_line << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& col : columns) {
    if (col.size() != rows) throw WaveformError("ragged columns");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << format_csv_value(columns[c][r]);
    os << '\n';
  }
}

inline void write_csv(const WaveformSet& ws, std::ostream& os) {
  if (ws.empty()) throw WaveformError("cannot write an empty waveform set");
  if (!ws.shared_time()) throw WaveformError("CSV output needs a shared time base");
  std::vector<std::string> header{"time"};
  std::vector<std::vector<double>> cols{ws.times()};
  std::string units = "# units: time=s";
  for (const auto& w : ws.waveforms()) {
    header.push_back(w.name());
    cols.push_back(w.values());
    units += "," + w.name() + "=" + unit_symbol(ws.unit(w.name()));
  }
  write_table_csv(os, header, cols, units);
}

inline WaveformSet read_csv(std::istream& is) {
  std::string line;
  std::vector<std::string> header;
  std::map<std::string, Unit> units;
  std::vector<std::vector<double>> cols;
  int lineno = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::string(detail::trim(cell)));
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view tag = "# units:";
      if (line.rfind(tag, 0) == 0) {
        for (const auto& kv : split(line.substr(tag.size()))) {
          auto eq = kv.find('=');
          if (eq != std::string::npos) units[kv.substr(0, eq)] = unit_from_symbol(kv.substr(eq + 1));
        }
      }
      continue;
    }
    auto cells = split(line);
    if (header.empty()) {
      if (cells.empty() || cells.front() != "time") throw WaveformError("CSV header must start with 'time'");
      header = std::move(cells);
      cols.resize(header.size());
      continue;
    }
    if (cells.size() != header.size()) {
      throw WaveformError("ragged row at line " + std::to_string(lineno));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      auto v = try_parse_number(cells[c]);
      if (!v) throw WaveformError("bad number '" + cells[c] + "' at line " + std::to_string(lineno));
      cols[c].push_back(*v);
    }
  }
  if (header.empty()) throw WaveformError("CSV has no header");
  if (cols.front().empty()) throw WaveformError("CSV has no data rows");
  for (std::size_t i = 1; i < cols.front().size(); ++i) {
    if (!(cols.front()[i] > cols.front()[i - 1])) {
      throw WaveformError("time is not strictly increasing at row " + std::to_string(i + 1));
    }
  }
  WaveformSet ws;
  TimeBase tb = make_time_base(cols.front());
  for (std::size_t c = 1; c < header.size(); ++c) {
    auto it = units.find(header[c]);
    ws.add(Waveform(header[c], tb, std::move(cols[c])), it == units.end() ? Unit::None : it->second);
  }
  return ws;
}

/// Pearson correlation of two equally sampled series.
inline double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw WaveformError("correlation needs equal-length series");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

/// Rectifier precision metrics. Errors are normalized by the input
/// half-amplitude; zero_crossing_width is seconds per period.
struct PrecisionReport {
  double rms_error_plus = 0.0;
  double rms_error_minus = 0.0;
  double peak_error_plus = 0.0;
  double peak_error_minus = 0.0;
  double zero_crossing_width = 0.0;
  double dc_power = 0.0;
  Window window;
};

}  // namespace rectsim
