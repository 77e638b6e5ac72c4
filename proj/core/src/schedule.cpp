#include "refocus/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "refocus/error.hpp"

namespace refocus {

using ordered_json = nlohmann::ordered_json;

PulseSchedule schedule_from_sign_matrix(const SignMatrix& m, double total_time,
                                        bool omit_final,
                                        std::vector<std::string> names) {
  if (!(total_time > 0.0) || !std::isfinite(total_time)) {
    throw Error(ErrorCode::InvalidArgument, "total_time must be positive");
  }
  if (names.empty()) {
    for (int s = 0; s < m.rows(); ++s) names.push_back("s" + std::to_string(s));
  } else if (static_cast<int>(names.size()) != m.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "got " + std::to_string(names.size()) + " names for " +
                    std::to_string(m.rows()) + " spins");
  }
  PulseSchedule schedule;
  schedule.total_time = total_time;
  schedule.intervals = m.cols();
  schedule.names = std::move(names);
  schedule.pulses.resize(m.rows());
  for (int s = 0; s < m.rows(); ++s) {
    for (int b = 1; b < m.cols(); ++b) {
      if (m.changes_at(s, b)) schedule.pulses[s].push_back({b, false});
    }
    if (!omit_final && schedule.pulses[s].size() % 2 == 1) {
      schedule.pulses[s].push_back({m.cols(), true});
    }
  }
  return schedule;
}

SignMatrix sign_matrix_from_schedule(const PulseSchedule& s) {
  SignMatrix m(s.spin_count(), s.intervals);
  for (int spin = 0; spin < s.spin_count(); ++spin) {
    const auto& pulses = s.pulses[spin];
    int sign = 1;
    size_t next = 0;
    for (int c = 1; c < s.intervals; ++c) {
      if (next < pulses.size() && pulses[next].boundary == c) {
        sign = -sign;
        ++next;
      }
      m.set(spin, c, sign);
    }
  }
  return m;
}

int pulse_count(const PulseSchedule& s, bool include_final) {
  int count = 0;
  for (const auto& spin : s.pulses) {
    for (const auto& p : spin) {
      if (include_final || !p.parity) ++count;
    }
  }
  return count;
}

std::string render_ascii(const PulseSchedule& s,
                         const std::vector<std::string>& labels, int width) {
  const std::vector<std::string>& names = labels.empty() ? s.names : labels;
  if (static_cast<int>(names.size()) != s.spin_count()) {
    throw Error(ErrorCode::DimensionMismatch,
                "got " + std::to_string(names.size()) + " labels for " +
                    std::to_string(s.spin_count()) + " spins");
  }
  if (width <= 0) width = std::max(4 * s.intervals, 32);
  size_t label_width = 0;
  for (const auto& n : names) label_width = std::max(label_width, n.size());

  std::ostringstream out;
  for (int spin = 0; spin < s.spin_count(); ++spin) {
    std::string line(width + 2, '-');
    for (const auto& p : s.pulses[spin]) {
      // Box center sits at the boundary's proportional position.
      const int center =
          static_cast<int>(std::lround(static_cast<double>(p.boundary) * width /
                                       s.intervals));
      const int start = std::clamp(center - 1, 0, width - 1);
      line[start] = '[';
      line[start + 1] = p.parity ? '.' : '#';
      line[start + 2] = ']';
    }
    out << names[spin] << std::string(label_width - names[spin].size(), ' ')
        << " " << line << "\n";
  }
  return out.str();
}

namespace {

// Round-trippable but stable: 12 significant digits survive a parse while
// hiding last-bit noise from the division.
double quantize_time(double t) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", t);
  return std::stod(buffer);
}

[[noreturn]] void schedule_fail(const std::string& what) {
  throw Error(ErrorCode::Parse, "schedule document: " + what);
}

}  // namespace

std::string to_json(const PulseSchedule& s) {
  ordered_json doc;
  doc["total_time"] = s.total_time;
  doc["intervals"] = s.intervals;
  doc["spins"] = ordered_json::array();
  for (int spin = 0; spin < s.spin_count(); ++spin) {
    ordered_json entry;
    entry["name"] = s.names[spin];
    entry["pulses"] = ordered_json::array();
    for (const auto& p : s.pulses[spin]) {
      ordered_json pulse;
      pulse["boundary"] = p.boundary;
      pulse["time"] = quantize_time(s.time_of(p));
      pulse["parity"] = p.parity;
      entry["pulses"].push_back(std::move(pulse));
    }
    doc["spins"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

PulseSchedule parse_schedule(std::string_view document) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(document);
  } catch (const ordered_json::exception& e) {
    schedule_fail(e.what());
  }
  if (!doc.is_object()) schedule_fail("expected a JSON object");
  for (const char* key : {"total_time", "intervals", "spins"}) {
    if (!doc.contains(key)) schedule_fail(std::string("missing \"") + key + "\"");
  }
  if (!doc["total_time"].is_number()) schedule_fail("\"total_time\" must be a number");
  if (!doc["intervals"].is_number_integer()) {
    schedule_fail("\"intervals\" must be an integer");
  }
  if (!doc["spins"].is_array()) schedule_fail("\"spins\" must be an array");

  PulseSchedule s;
  s.total_time = doc["total_time"].get<double>();
  s.intervals = doc["intervals"].get<int>();
  if (!(s.total_time > 0.0)) schedule_fail("\"total_time\" must be positive");
  if (s.intervals < 1) schedule_fail("\"intervals\" must be at least 1");

  for (const auto& entry : doc["spins"]) {
    if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string() ||
        !entry.contains("pulses") || !entry["pulses"].is_array()) {
      schedule_fail("each spin needs a \"name\" and a \"pulses\" array");
    }
    s.names.push_back(entry["name"].get<std::string>());
    std::vector<Pulse> pulses;
    for (const auto& p : entry["pulses"]) {
      if (!p.is_object() || !p.contains("boundary") ||
          !p["boundary"].is_number_integer()) {
        schedule_fail("each pulse needs an integer \"boundary\"");
      }
      Pulse pulse;
      pulse.boundary = p["boundary"].get<int>();
      if (pulse.boundary < 1 || pulse.boundary > s.intervals) {
        schedule_fail("pulse boundary " + std::to_string(pulse.boundary) +
                      " outside 1.." + std::to_string(s.intervals));
      }
      if (p.contains("parity")) {
        if (!p["parity"].is_boolean()) schedule_fail("\"parity\" must be a boolean");
        pulse.parity = p["parity"].get<bool>();
      }
      pulses.push_back(pulse);
    }
    if (!std::is_sorted(pulses.begin(), pulses.end())) {
      schedule_fail("pulses must be sorted by boundary");
    }
    if (std::adjacent_find(pulses.begin(), pulses.end()) != pulses.end()) {
      schedule_fail("duplicate pulse boundary");
    }
    s.pulses.push_back(std::move(pulses));
  }
  return s;
}

}  // namespace refocus
