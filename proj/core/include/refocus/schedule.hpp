#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "refocus/sign_matrix.hpp"

namespace refocus {

struct Pulse {
  int boundary = 0;    // 1..intervals; the pulse sits at time boundary·T/C
  bool parity = false; // appended at t = T solely to even out the count
  auto operator<=>(const Pulse&) const = default;
};

/// Timed π-pulse program over equal free-evolution intervals.
struct PulseSchedule {
  double total_time = 1.0;
  int intervals = 1;
  std::vector<std::string> names;          // one label per spin
  std::vector<std::vector<Pulse>> pulses;  // per spin, sorted by boundary

  int spin_count() const noexcept { return static_cast<int>(pulses.size()); }
  double time_of(const Pulse& p) const {
    return p.boundary * total_time / intervals;
  }

  bool operator==(const PulseSchedule&) const = default;
};

/// Spin i is pulsed at boundary k iff its sign flips between columns k-1
/// and k. Unless omit_final is set, a parity pulse at t = T evens out any
/// odd per-spin count. Names default to "s0", "s1", ...
PulseSchedule schedule_from_sign_matrix(const SignMatrix& m, double total_time,
                                        bool omit_final,
                                        std::vector<std::string> names = {});

/// Inverse of schedule_from_sign_matrix: rows start at +1 and flip at each
/// internal pulse boundary. Pulses at boundary C (parity or not) do not
/// affect any interval and are ignored.
SignMatrix sign_matrix_from_schedule(const PulseSchedule& s);

/// Total pulses across all spins; include_final=false drops parity pulses.
int pulse_count(const PulseSchedule& s, bool include_final);

/// One line per spin (spin 0 on top), '-' timeline with "[#]" pulse boxes
/// at proportional positions and "[.]" for parity pulses. width is the
/// body width in characters; 0 picks one from the interval count.
std::string render_ascii(const PulseSchedule& s,
                         const std::vector<std::string>& labels = {},
                         int width = 0);

/// Schedule JSON, fixed field order:
///   {"total_time": number, "intervals": int,
///    "spins": [{"name": str,
///               "pulses": [{"boundary": int, "time": number, "parity": bool}]}]}
/// Pulse times carry 12 significant digits; consumers needing exactness
/// should use the boundary indices.
std::string to_json(const PulseSchedule& s);

/// Lossless inverse of to_json (pulse times are recomputed from boundaries).
PulseSchedule parse_schedule(std::string_view document);

}  // namespace refocus
