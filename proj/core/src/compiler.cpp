#include "refocus/compiler.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace refocus {

void validate_target(const CouplingGraph& g, const TargetSpec& target) {
  const int n = g.spin_count();
  if (const auto* rs = std::get_if<RetainShift>(&target)) {
    if (rs->spin < 0 || rs->spin >= n) {
      throw Error(ErrorCode::InvalidArgument,
                  "retained spin index " + std::to_string(rs->spin) +
                      " out of range for " + std::to_string(n) + " spins");
    }
  } else if (const auto* rc = std::get_if<RetainCoupling>(&target)) {
    if (rc->a < 0 || rc->a >= n || rc->b < 0 || rc->b >= n) {
      throw Error(ErrorCode::InvalidArgument,
                  "retained coupling endpoint out of range");
    }
    if (rc->a == rc->b) {
      throw Error(ErrorCode::InvalidArgument,
                  "retained coupling needs two distinct spins");
    }
    if (!g.has_edge(rc->a, rc->b)) {
      throw Error(ErrorCode::InvalidArgument,
                  "no coupling between '" + g.name(rc->a) + "' and '" +
                      g.name(rc->b) + "' to retain");
    }
  }
}

std::string describe_target(const CouplingGraph& g, const TargetSpec& target) {
  validate_target(g, target);
  if (const auto* rs = std::get_if<RetainShift>(&target)) {
    return "retain the shift of '" + g.name(rs->spin) + "'";
  }
  if (const auto* rc = std::get_if<RetainCoupling>(&target)) {
    return "retain the coupling between '" + g.name(rc->a) + "' and '" +
           g.name(rc->b) + "'";
  }
  return "refocus all interactions";
}

SignMatrix conventional_nested(int n_spins) {
  if (n_spins < 1 || n_spins > 16) {
    throw Error(ErrorCode::SizeLimit,
                "nested baseline is limited to 16 spins, got " +
                    std::to_string(n_spins));
  }
  const int cols = 1 << (n_spins - 1);
  SignMatrix m(n_spins, cols);
  for (int i = 1; i < n_spins; ++i) {
    const int step = 1 << (n_spins - 1 - i);
    int sign = 1;
    for (int c = 0; c < cols; ++c) {
      if (c % step == 0 && (c / step) % 2 == 1) sign = -sign;
      m.set(i, c, sign);
    }
  }
  return m;
}

namespace {

// Colors the graph with the target's spins pinned to color 0 and reports
// whether color 0 may take the all-ones row (only when retaining a shift).
struct ColoredProblem {
  Coloring coloring;
  std::vector<int> group_size;  // spins per color
  bool first_color_all_ones = false;
};

ColoredProblem color_for_target(const CouplingGraph& g, const TargetSpec& target) {
  ColoredProblem p;
  if (const auto* rs = std::get_if<RetainShift>(&target)) {
    p.coloring = greedy_coloring(g, {{rs->spin}});
    p.first_color_all_ones = true;
  } else if (const auto* rc = std::get_if<RetainCoupling>(&target)) {
    // The retained pair shares one row; drop their edge so the pin is legal.
    p.coloring = greedy_coloring(g.without_edge(rc->a, rc->b), {{rc->a, rc->b}});
  } else {
    p.coloring = greedy_coloring(g);
  }
  p.group_size.assign(p.coloring.color_count, 0);
  for (int c : p.coloring.assignment) ++p.group_size[c];
  return p;
}

// Number of ordered choices of `slots` distinct rows out of `rows`,
// saturating just above `limit`.
std::int64_t falling_factorial_capped(int rows, int slots, std::int64_t limit) {
  std::int64_t total = 1;
  for (int i = 0; i < slots; ++i) {
    total *= rows - i;
    if (total > limit) return limit + 1;
  }
  return total;
}

struct AssignmentCost {
  const HadamardMatrix& h;
  const std::vector<int>& group_size;
  Objective objective;

  // rows[c] is the Hadamard row assigned to color c.
  std::int64_t operator()(const std::vector<int>& rows) const {
    const int order = h.order();
    if (objective == Objective::TotalPulses) {
      std::int64_t total = 0;
      for (size_t c = 0; c < rows.size(); ++c) {
        total += static_cast<std::int64_t>(group_size[c]) *
                 h.row_sign_changes(rows[c]);
      }
      return total;
    }
    std::int64_t worst = 0;
    for (int b = 1; b < order; ++b) {
      std::int64_t at_boundary = 0;
      for (size_t c = 0; c < rows.size(); ++c) {
        if (h.at(rows[c], b - 1) != h.at(rows[c], b)) {
          at_boundary += group_size[c];
        }
      }
      worst = std::max(worst, at_boundary);
    }
    return worst;
  }
};

// Lexicographic enumeration of ordered tuples of distinct rows taken from
// `candidates`; the first tuple attaining the minimum cost wins.
void enumerate_rows(const std::vector<int>& candidates, size_t slots,
                    std::vector<int>& tuple, std::vector<char>& used,
                    const AssignmentCost& cost, std::int64_t& best,
                    std::vector<int>& best_tuple) {
  if (tuple.size() == slots) {
    const std::int64_t c = cost(tuple);
    if (c < best) {
      best = c;
      best_tuple = tuple;
    }
    return;
  }
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (used[i]) continue;
    used[i] = 1;
    tuple.push_back(candidates[i]);
    enumerate_rows(candidates, slots, tuple, used, cost, best, best_tuple);
    tuple.pop_back();
    used[i] = 0;
  }
}

// Pairs the largest groups with the quietest rows: colors in descending
// group size (ties by color index), rows in ascending sign-change count
// (ties by row index). Optimal for TotalPulses, a heuristic otherwise.
std::vector<int> greedy_assignment(const HadamardMatrix& h,
                                   const std::vector<int>& colors,
                                   const std::vector<int>& candidates,
                                   const std::vector<int>& group_size) {
  std::vector<int> color_order = colors;
  std::stable_sort(color_order.begin(), color_order.end(), [&](int a, int b) {
    return group_size[a] > group_size[b];
  });
  std::vector<int> row_order = candidates;
  std::stable_sort(row_order.begin(), row_order.end(), [&](int a, int b) {
    return h.row_sign_changes(a) < h.row_sign_changes(b);
  });
  std::vector<int> rows(group_size.size(), -1);
  for (size_t i = 0; i < color_order.size(); ++i) {
    rows[color_order[i]] = row_order[i];
  }
  return rows;
}

}  // namespace

SignMatrix compile(const CouplingGraph& g, const TargetSpec& target,
                   const CompileOptions& opts) {
  validate_target(g, target);
  const ColoredProblem p = color_for_target(g, target);
  const int colors = p.coloring.color_count;

  // Retaining a shift lets the pinned color ride the all-ones row; every
  // other case needs a balanced (non-first) row for every color.
  const int non_first_slots = p.first_color_all_ones ? colors - 1 : colors;
  const int order = smallest_admissible_order(non_first_slots + 1);
  const HadamardMatrix h = hadamard_of_order(order);

  std::vector<int> free_colors;  // colors still needing a row
  for (int c = p.first_color_all_ones ? 1 : 0; c < colors; ++c) {
    free_colors.push_back(c);
  }
  std::vector<int> candidates;  // balanced rows of h
  for (int r = 1; r < order; ++r) candidates.push_back(r);

  std::vector<int> row_of_color(colors, 0);  // color 0 defaults to row 0
  if (falling_factorial_capped(static_cast<int>(candidates.size()),
                               static_cast<int>(free_colors.size()),
                               opts.exhaustive_row_search_limit) <=
      opts.exhaustive_row_search_limit) {
    std::vector<int> tuple;
    std::vector<char> used(candidates.size(), 0);
    std::vector<int> best_tuple;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    // Cost only sees the free slots; the fixed all-ones row adds nothing.
    std::vector<int> free_sizes;
    for (int c : free_colors) free_sizes.push_back(p.group_size[c]);
    const AssignmentCost free_cost{h, free_sizes, opts.objective};
    enumerate_rows(candidates, free_colors.size(), tuple, used, free_cost,
                   best, best_tuple);
    for (size_t i = 0; i < free_colors.size(); ++i) {
      row_of_color[free_colors[i]] = best_tuple[i];
    }
  } else {
    const auto rows = greedy_assignment(h, free_colors, candidates, p.group_size);
    for (int c : free_colors) row_of_color[c] = rows[c];
  }

  SignMatrix m(g.spin_count(), order);
  for (int s = 0; s < g.spin_count(); ++s) {
    const int r = row_of_color[p.coloring.assignment[s]];
    for (int c = 1; c < order; ++c) m.set(s, c, h.at(r, c));
  }
  return m;
}

const char* to_string(InteractionStatus s) {
  switch (s) {
    case InteractionStatus::Refocused:
      return "refocused";
    case InteractionStatus::Retained:
      return "retained";
    case InteractionStatus::Partial:
      return "partial";
  }
  return "?";
}

const CouplingCheck& VerificationReport::coupling(int a, int b) const {
  const int lo = std::min(a, b);
  const int hi = std::max(a, b);
  for (const auto& c : couplings) {
    if (c.a == lo && c.b == hi) return c;
  }
  throw Error(ErrorCode::InvalidArgument, "no such coupling check");
}

VerificationReport verify_combinatorial(const SignMatrix& m,
                                        const CouplingGraph& g,
                                        const TargetSpec& target) {
  validate_target(g, target);
  if (m.rows() != g.spin_count()) {
    throw Error(ErrorCode::DimensionMismatch,
                "sign matrix has " + std::to_string(m.rows()) +
                    " rows but the graph has " + std::to_string(g.spin_count()) +
                    " spins");
  }
  const int cols = m.cols();
  const auto* rs = std::get_if<RetainShift>(&target);
  const auto* rc = std::get_if<RetainCoupling>(&target);

  VerificationReport report;
  report.intervals = cols;
  auto status_of = [cols](int value) {
    if (value == 0) return InteractionStatus::Refocused;
    if (value == cols) return InteractionStatus::Retained;
    return InteractionStatus::Partial;
  };

  for (int s = 0; s < m.rows(); ++s) {
    ShiftCheck check;
    check.spin = s;
    check.row_sum = m.row_sum(s);
    check.status = status_of(check.row_sum);
    check.expected_retained = rs != nullptr && rs->spin == s;
    check.ok = check.status == (check.expected_retained
                                    ? InteractionStatus::Retained
                                    : InteractionStatus::Refocused);
    report.shifts.push_back(check);
  }
  for (int a = 0; a < m.rows(); ++a) {
    for (int b = a + 1; b < m.rows(); ++b) {
      CouplingCheck check;
      check.a = a;
      check.b = b;
      check.dot = m.row_dot(a, b);
      check.edge = g.has_edge(a, b);
      check.status = status_of(check.dot);
      check.expected_retained =
          rc != nullptr && std::min(rc->a, rc->b) == a && std::max(rc->a, rc->b) == b;
      // Pairs with no physical coupling cannot fail.
      check.ok = !check.edge ||
                 check.status == (check.expected_retained
                                      ? InteractionStatus::Retained
                                      : InteractionStatus::Refocused);
      report.couplings.push_back(check);
    }
  }

  report.pass = true;
  for (const auto& check : report.shifts) {
    if (check.ok) continue;
    report.pass = false;
    std::ostringstream msg;
    msg << "shift of '" << g.name(check.spin) << "' is " << to_string(check.status)
        << " (row sum " << check.row_sum << "/" << cols << ") but should be "
        << (check.expected_retained ? "retained" : "refocused");
    report.first_failure = msg.str();
    break;
  }
  if (report.pass) {
    for (const auto& check : report.couplings) {
      if (check.ok) continue;
      report.pass = false;
      std::ostringstream msg;
      msg << "coupling '" << g.name(check.a) << "'-'" << g.name(check.b) << "' is "
          << to_string(check.status) << " (dot " << check.dot << "/" << cols
          << ") but should be " << (check.expected_retained ? "retained" : "refocused");
      report.first_failure = msg.str();
      break;
    }
  }
  return report;
}

ComparisonReport efficiency_report(const CouplingGraph& g, const TargetSpec& target,
                                   const CompileOptions& opts) {
  const SignMatrix efficient = compile(g, target, opts);
  const SignMatrix baseline = conventional_nested(g.spin_count());
  ComparisonReport report;
  report.efficient = {efficient.cols(), efficient.total_sign_changes()};
  report.conventional = {baseline.cols(), baseline.total_sign_changes()};
  report.interval_ratio =
      static_cast<double>(report.conventional.intervals) / report.efficient.intervals;
  return report;
}

}  // namespace refocus
