#include "refocus/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "refocus/compiler.hpp"
#include "refocus/error.hpp"
#include "refocus/graph.hpp"
#include "refocus/hadamard.hpp"
#include "refocus/schedule.hpp"
#include "refocus/simulator.hpp"

namespace refocus::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_document(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path);
  if (!file) {
    throw Error(ErrorCode::Parse, "cannot read '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return buffer;
}

// Shared target flags: exactly one of the three must be given.
struct TargetFlags {
  std::string shift_name;
  std::vector<std::string> coupling_names;
  bool refocus_all = false;

  void attach(CLI::App* cmd, bool required = true) {
    auto* group = cmd->add_option_group("target", "effective Hamiltonian to keep");
    group->add_option("--retain-shift", shift_name,
                      "keep the named spin's chemical shift");
    group->add_option("--retain-coupling", coupling_names,
                      "keep the coupling between two named spins")
        ->expected(2);
    group->add_flag("--refocus-all", refocus_all, "suppress every interaction");
    if (required) {
      group->require_option(1);
    } else {
      group->require_option(0, 1);
    }
  }

  bool any() const {
    return !shift_name.empty() || !coupling_names.empty() || refocus_all;
  }

  TargetSpec resolve(const CouplingGraph& g) const {
    if (!shift_name.empty()) {
      return RetainShift{g.index_of(shift_name)};
    }
    if (!coupling_names.empty()) {
      return RetainCoupling{g.index_of(coupling_names[0]),
                            g.index_of(coupling_names[1])};
    }
    return RefocusAll{};
  }
};

struct CommonState {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  int exit_code = kExitOk;
};

Objective parse_objective(const std::string& name) {
  if (name == "total") return Objective::TotalPulses;
  if (name == "max") return Objective::MaxSimultaneous;
  throw CLI::ValidationError("--objective must be 'total' or 'max'");
}

// Document-provided numbers override the seeded draw entry by entry.
SpinSystemParams resolve_params(const GraphDocument& doc, std::uint64_t seed,
                                double total_time) {
  SpinSystemParams p = random_params(doc.graph, seed, total_time);
  for (int s = 0; s < doc.graph.spin_count(); ++s) {
    if (doc.shifts[s]) p.shifts[s] = *doc.shifts[s];
  }
  const auto& edges = doc.graph.edges();
  for (size_t e = 0; e < edges.size(); ++e) {
    if (doc.couplings[e]) p.couplings[edges[e]] = *doc.couplings[e];
  }
  return p;
}

void write_output(const std::string& path, const std::string& text,
                  std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) {
    throw Error(ErrorCode::Parse, "cannot write '" + path + "'");
  }
  file << text;
}

ordered_json verification_to_json(const VerificationReport& report,
                                  const CouplingGraph& g,
                                  const std::string& target) {
  ordered_json doc;
  doc["target"] = target;
  doc["pass"] = report.pass;
  doc["intervals"] = report.intervals;
  doc["shifts"] = ordered_json::array();
  for (const auto& check : report.shifts) {
    doc["shifts"].push_back({{"spin", g.name(check.spin)},
                             {"row_sum", check.row_sum},
                             {"status", to_string(check.status)},
                             {"ok", check.ok}});
  }
  doc["couplings"] = ordered_json::array();
  for (const auto& check : report.couplings) {
    if (!check.edge) continue;
    doc["couplings"].push_back({{"spins", {g.name(check.a), g.name(check.b)}},
                                {"dot", check.dot},
                                {"status", to_string(check.status)},
                                {"ok", check.ok}});
  }
  if (!report.pass) doc["first_failure"] = report.first_failure;
  return doc;
}

void print_verification(const VerificationReport& report, const CouplingGraph& g,
                        const std::string& target, std::ostream& out) {
  out << "target: " << target << "\n";
  out << "intervals: " << report.intervals << "\n";
  for (const auto& check : report.shifts) {
    out << "shift '" << g.name(check.spin) << "': " << to_string(check.status)
        << " (row sum " << check.row_sum << "/" << report.intervals << ") "
        << (check.ok ? "ok" : "FAIL") << "\n";
  }
  for (const auto& check : report.couplings) {
    if (!check.edge) continue;
    out << "coupling '" << g.name(check.a) << "'-'" << g.name(check.b)
        << "': " << to_string(check.status) << " (dot " << check.dot << "/"
        << report.intervals << ") " << (check.ok ? "ok" : "FAIL") << "\n";
  }
  out << "result: " << (report.pass ? "PASS" : "FAIL") << "\n";
  if (!report.pass) out << "first failure: " << report.first_failure << "\n";
}

// Left-multiplies the propagator by π_x pulses on the masked spins; the
// per-pulse -i factors are global phase and may be dropped.
void apply_final_flips(PropagatorResult& u, int mask) {
  if (mask == 0) return;
  PropagatorResult flipped;
  flipped.dim = u.dim;
  flipped.entries.resize(u.entries.size());
  for (int r = 0; r < u.dim; ++r) {
    for (int c = 0; c < u.dim; ++c) {
      flipped.entries[r * u.dim + c] = u.at(r ^ mask, c);
    }
  }
  u = std::move(flipped);
}

void register_generate(CLI::App& app, CommonState& state) {
  auto* cmd = app.add_subcommand(
      "generate", "compile a refocussing schedule for a coupling graph");
  auto graph_path = std::make_shared<std::string>();
  auto target = std::make_shared<TargetFlags>();
  auto total_time = std::make_shared<double>(1.0);
  auto omit_final = std::make_shared<bool>(false);
  auto objective = std::make_shared<std::string>("total");
  auto search_limit = std::make_shared<std::int64_t>(100000);
  auto output = std::make_shared<std::string>("-");
  auto format = std::make_shared<std::string>("json");

  cmd->add_option("--graph", *graph_path, "graph JSON file, '-' for stdin")
      ->required();
  target->attach(cmd);
  cmd->add_option("--total-time", *total_time, "sequence duration in seconds");
  cmd->add_flag("--omit-final", *omit_final, "skip the trailing parity pulses");
  cmd->add_option("--objective", *objective,
                  "row assignment objective: 'total' or 'max'");
  cmd->add_option("--search-limit", *search_limit,
                  "exhaustive assignment search cutoff");
  cmd->add_option("--output", *output, "output file, '-' for stdout");
  cmd->add_option("--format", *format, "output format: 'json' or 'ascii'");

  cmd->callback([&state, graph_path, target, total_time, omit_final, objective,
                 search_limit, output, format] {
    const GraphDocument doc =
        parse_graph_document(read_document(*graph_path, state.in));
    const TargetSpec spec = target->resolve(doc.graph);
    CompileOptions opts;
    opts.objective = parse_objective(*objective);
    opts.exhaustive_row_search_limit = *search_limit;
    const SignMatrix m = compile(doc.graph, spec, opts);
    const PulseSchedule schedule =
        schedule_from_sign_matrix(m, *total_time, *omit_final, doc.graph.names());
    if (*format == "ascii") {
      write_output(*output, render_ascii(schedule), state.out);
    } else if (*format == "json") {
      write_output(*output, to_json(schedule), state.out);
    } else {
      throw CLI::ValidationError("--format must be 'json' or 'ascii'");
    }
  });
}

void register_verify(CLI::App& app, CommonState& state) {
  auto* cmd = app.add_subcommand(
      "verify", "check a schedule combinatorially against a graph and target");
  auto graph_path = std::make_shared<std::string>();
  auto schedule_path = std::make_shared<std::string>();
  auto target = std::make_shared<TargetFlags>();
  auto format = std::make_shared<std::string>("ascii");

  cmd->add_option("--graph", *graph_path, "graph JSON file, '-' for stdin")
      ->required();
  cmd->add_option("--schedule", *schedule_path, "schedule JSON file")->required();
  target->attach(cmd);
  cmd->add_option("--format", *format, "output format: 'json' or 'ascii'");

  cmd->callback([&state, graph_path, schedule_path, target, format] {
    const GraphDocument doc =
        parse_graph_document(read_document(*graph_path, state.in));
    const PulseSchedule schedule =
        parse_schedule(read_document(*schedule_path, state.in));
    const TargetSpec spec = target->resolve(doc.graph);
    const SignMatrix m = sign_matrix_from_schedule(schedule);
    const VerificationReport report = verify_combinatorial(m, doc.graph, spec);
    const std::string description = describe_target(doc.graph, spec);
    if (*format == "json") {
      state.out << verification_to_json(report, doc.graph, description).dump(2)
                << "\n";
    } else if (*format == "ascii") {
      print_verification(report, doc.graph, description, state.out);
    } else {
      throw CLI::ValidationError("--format must be 'json' or 'ascii'");
    }
    if (!report.pass) state.exit_code = kExitVerification;
  });
}

void register_simulate(CLI::App& app, CommonState& state) {
  auto* cmd = app.add_subcommand(
      "simulate", "propagate the schedule numerically and compare to the target");
  auto graph_path = std::make_shared<std::string>();
  auto schedule_path = std::make_shared<std::string>();
  auto target = std::make_shared<TargetFlags>();
  auto seed = std::make_shared<std::uint64_t>(0);
  auto tolerance = std::make_shared<double>(kDefaultTolerance);
  auto format = std::make_shared<std::string>("ascii");

  cmd->add_option("--graph", *graph_path, "graph JSON file, '-' for stdin")
      ->required();
  cmd->add_option("--schedule", *schedule_path, "schedule JSON file")->required();
  target->attach(cmd);
  cmd->add_option("--seed", *seed, "seed for parameters absent from the graph");
  cmd->add_option("--tolerance", *tolerance, "Frobenius distance bound");
  cmd->add_option("--format", *format, "output format: 'json' or 'ascii'");

  cmd->callback([&state, graph_path, schedule_path, target, seed, tolerance,
                 format] {
    const GraphDocument doc =
        parse_graph_document(read_document(*graph_path, state.in));
    const PulseSchedule schedule =
        parse_schedule(read_document(*schedule_path, state.in));
    const TargetSpec spec = target->resolve(doc.graph);
    const SignMatrix m = sign_matrix_from_schedule(schedule);
    const SpinSystemParams params =
        resolve_params(doc, *seed, schedule.total_time);

    // Replay the schedule exactly: internal pulses via the sign matrix,
    // then whatever end-of-sequence pulses the document actually lists.
    PropagatorResult actual = simulate(m, doc.graph, params, false);
    int final_mask = 0;
    for (int s = 0; s < schedule.spin_count(); ++s) {
      for (const auto& p : schedule.pulses[s]) {
        if (p.boundary == schedule.intervals) {
          final_mask ^= 1 << (schedule.spin_count() - 1 - s);
        }
      }
    }
    PropagatorResult expected = target_propagator(doc.graph, spec, params);
    if (final_mask != 0) {
      // The schedule spells out its end-of-sequence pulses, so the full
      // propagator must hit the target exactly.
      apply_final_flips(actual, final_mask);
    } else {
      // No final pulses at all: accept the inverted frame of the spins
      // left at -1, exactly as an omit-final generate would produce.
      int residual_mask = 0;
      for (int s = 0; s < m.rows(); ++s) {
        if (m.row_sign_changes(s) % 2 == 1) {
          residual_mask |= 1 << (m.rows() - 1 - s);
        }
      }
      apply_final_flips(expected, residual_mask);
    }
    actual.normalize_global_phase();
    expected.normalize_global_phase();
    const double distance = frobenius_distance(actual, expected);
    const bool pass = distance <= *tolerance;

    const std::string description = describe_target(doc.graph, spec);
    if (*format == "json") {
      ordered_json report;
      report["target"] = description;
      report["seed"] = *seed;
      report["tolerance"] = *tolerance;
      report["frobenius_distance"] = distance;
      report["pass"] = pass;
      state.out << report.dump(2) << "\n";
    } else if (*format == "ascii") {
      state.out << "target: " << description << "\n"
                << "seed: " << *seed << "\n"
                << "tolerance: " << format_double(*tolerance) << "\n"
                << "frobenius_distance: " << format_double(distance) << "\n"
                << "result: " << (pass ? "PASS" : "FAIL") << "\n";
    } else {
      throw CLI::ValidationError("--format must be 'json' or 'ascii'");
    }
    if (!pass) state.exit_code = kExitVerification;
  });
}

void register_compare(CLI::App& app, CommonState& state) {
  auto* cmd = app.add_subcommand(
      "compare", "cost of the compiled schedule next to the nested baseline");
  auto graph_path = std::make_shared<std::string>();
  auto target = std::make_shared<TargetFlags>();
  auto objective = std::make_shared<std::string>("total");
  auto format = std::make_shared<std::string>("ascii");

  cmd->add_option("--graph", *graph_path, "graph JSON file, '-' for stdin")
      ->required();
  target->attach(cmd);
  cmd->add_option("--objective", *objective,
                  "row assignment objective: 'total' or 'max'");
  cmd->add_option("--format", *format, "output format: 'json' or 'ascii'");

  cmd->callback([&state, graph_path, target, objective, format] {
    const GraphDocument doc =
        parse_graph_document(read_document(*graph_path, state.in));
    const TargetSpec spec = target->resolve(doc.graph);
    CompileOptions opts;
    opts.objective = parse_objective(*objective);
    const ComparisonReport report = efficiency_report(doc.graph, spec, opts);
    const std::string description = describe_target(doc.graph, spec);
    if (*format == "json") {
      ordered_json out;
      out["target"] = description;
      out["efficient"] = {{"intervals", report.efficient.intervals},
                          {"pulses", report.efficient.internal_pulses}};
      out["conventional"] = {{"intervals", report.conventional.intervals},
                             {"pulses", report.conventional.internal_pulses}};
      out["interval_ratio"] = report.interval_ratio;
      state.out << out.dump(2) << "\n";
    } else if (*format == "ascii") {
      state.out << "target: " << description << "\n"
                << "efficient: " << report.efficient.intervals << " intervals, "
                << report.efficient.internal_pulses << " pulses\n"
                << "conventional: " << report.conventional.intervals
                << " intervals, " << report.conventional.internal_pulses
                << " pulses\n"
                << "interval ratio: " << format_double(report.interval_ratio)
                << "\n";
    } else {
      throw CLI::ValidationError("--format must be 'json' or 'ascii'");
    }
  });
}

void register_diagram(CLI::App& app, CommonState& state) {
  auto* cmd = app.add_subcommand(
      "diagram", "ASCII pulse diagram from a schedule or a fresh compile");
  auto schedule_path = std::make_shared<std::string>();
  auto graph_path = std::make_shared<std::string>();
  auto target = std::make_shared<TargetFlags>();
  auto total_time = std::make_shared<double>(1.0);
  auto omit_final = std::make_shared<bool>(false);
  auto width = std::make_shared<int>(0);

  auto* schedule_opt =
      cmd->add_option("--schedule", *schedule_path, "schedule JSON file");
  auto* graph_opt =
      cmd->add_option("--graph", *graph_path, "graph JSON file, '-' for stdin");
  target->attach(cmd, /*required=*/false);
  // Either replay a schedule or compile one on the spot.
  schedule_opt->excludes(graph_opt);
  cmd->add_option("--total-time", *total_time, "sequence duration in seconds");
  cmd->add_flag("--omit-final", *omit_final, "skip the trailing parity pulses");
  cmd->add_option("--width", *width, "diagram body width in characters");

  cmd->callback([&state, schedule_path, graph_path, target, total_time,
                 omit_final, width] {
    if (!schedule_path->empty()) {
      if (target->any()) {
        throw CLI::ValidationError("--schedule replays as-is; drop the target flag");
      }
      const PulseSchedule schedule =
          parse_schedule(read_document(*schedule_path, state.in));
      state.out << render_ascii(schedule, {}, *width);
      return;
    }
    if (graph_path->empty()) {
      throw CLI::RequiredError("--schedule or --graph");
    }
    if (!target->any()) {
      throw CLI::RequiredError("a target flag");
    }
    const GraphDocument doc =
        parse_graph_document(read_document(*graph_path, state.in));
    const TargetSpec spec = target->resolve(doc.graph);
    const SignMatrix m = compile(doc.graph, spec);
    const PulseSchedule schedule =
        schedule_from_sign_matrix(m, *total_time, *omit_final, doc.graph.names());
    state.out << render_ascii(schedule, {}, *width);
  });
}

void register_hadamard(CLI::App& app, CommonState& state) {
  auto* cmd = app.add_subcommand(
      "hadamard", "dump a constructed matrix as rows of '+'/'-'");
  auto order = std::make_shared<int>(0);
  auto list = std::make_shared<bool>(false);

  auto* order_opt = cmd->add_option("--order", *order, "matrix order to build");
  auto* list_opt =
      cmd->add_flag("--list", *list, "print the constructible orders");
  order_opt->excludes(list_opt);

  cmd->callback([&state, order, list, order_opt] {
    if (*list) {
      const auto& orders = admissible_orders();
      for (size_t i = 0; i < orders.size(); ++i) {
        state.out << (i ? " " : "") << orders[i];
      }
      state.out << "\n";
      return;
    }
    if (order_opt->count() == 0) {
      throw CLI::RequiredError("--order or --list");
    }
    state.out << hadamard_of_order(*order).to_string();
  });
}

}  // namespace

int run(std::span<const std::string> args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"refocussing pulse sequence compiler"};
  app.require_subcommand(1);
  CommonState state{in, out, err};

  register_generate(app, state);
  register_verify(app, state);
  register_simulate(app, state);
  register_compare(app, state);
  register_diagram(app, state);
  register_hadamard(app, state);

  // CLI11 wants the arguments reversed and without the program name.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return state.exit_code;
}

}  // namespace refocus::cli
