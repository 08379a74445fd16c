#pragma once

// Run configuration and subcommand dispatch for the command-line front end.
// Options arrive as a flat key -> string map (from a JSON config file and/or
// flags), are parsed into a RunConfig, and run() turns that into a table.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "finphase/cli/result_table.hpp"
#include "finphase/coherent_states.hpp"
#include "finphase/dynamics.hpp"
#include "finphase/uncertainty.hpp"

namespace finphase::cli {

enum class Command { kernel, wigner, marginals, evolve, bound, table1, fig1, fig2, figA1, figB1 };
enum class BoundFamily { rs_qp, massar_spindel, sincos, gup };
enum class WignerRoute { automatic, closed, trace };

/// Odd dimensions start, start + step, ..., up to stop inclusive.
struct NRange {
  int start = 5;
  int stop = 5;
  int step = 1;

  std::vector<int> values() const {
    std::vector<int> out;
    for (int n = start; n <= stop; n += step) out.push_back(n);
    return out;
  }
  std::string str() const {
    return std::to_string(start) + ":" + std::to_string(stop) + ":" + std::to_string(step);
  }
};

struct StateSpec {
  enum class Kind { vacuum, coherent, basis_u, basis_v, mixed, random };
  Kind kind = Kind::vacuum;
  long long first = 0;   ///< kappa, alpha or beta
  long long second = 0;  ///< tau

  bool coherent_family() const { return kind == Kind::vacuum || kind == Kind::coherent; }
  long long kappa() const { return kind == Kind::coherent ? first : 0; }
  long long tau() const { return kind == Kind::coherent ? second : 0; }

  std::string str() const {
    switch (kind) {
      case Kind::vacuum: return "vacuum";
      case Kind::coherent:
        return "coherent:" + std::to_string(first) + "," + std::to_string(second);
      case Kind::basis_u: return "basis-u:" + std::to_string(first);
      case Kind::basis_v: return "basis-v:" + std::to_string(first);
      case Kind::mixed: return "mixed";
      case Kind::random: return "random";
    }
    return "";
  }
};

struct ScaleSpec {
  double delta = 1.0;
  std::optional<PresetKind> preset;
  double s = 1.0;
};

struct RunConfig {
  Command command = Command::wigner;
  NRange n_range;
  StateSpec state;
  std::uint64_t seed = 1;
  ScaleSpec scale;
  double hbar = 1.0;
  Format format = Format::csv;
  std::string out_path;  ///< empty: standard output
  BoundFamily family = BoundFamily::massar_spindel;
  double t = 1.0;
  double t0 = 0.0;
  PropagatorMode mode = PropagatorMode::exact();
  int order = 4;
  WignerRoute method = WignerRoute::automatic;
};

using OptionMap = std::map<std::string, std::string>;

namespace run_detail {

inline const std::map<std::string, Command>& command_names() {
  static const std::map<std::string, Command> m = {
      {"kernel", Command::kernel}, {"wigner", Command::wigner},
      {"marginals", Command::marginals}, {"evolve", Command::evolve},
      {"bound", Command::bound}, {"table1", Command::table1},
      {"fig1", Command::fig1}, {"fig2", Command::fig2},
      {"figA1", Command::figA1}, {"figB1", Command::figB1}};
  return m;
}

inline std::string command_name(Command c) {
  for (const auto& [k, v] : command_names()) {
    if (v == c) return k;
  }
  return "";
}

inline std::string family_name(BoundFamily f) {
  switch (f) {
    case BoundFamily::rs_qp: return "rs-qp";
    case BoundFamily::massar_spindel: return "massar-spindel";
    case BoundFamily::sincos: return "sincos";
    case BoundFamily::gup: return "gup";
  }
  return "";
}

inline std::string preset_name(const std::optional<PresetKind>& p) {
  if (!p) return "none";
  switch (*p) {
    case PresetKind::delta0: return "planck-d0";
    case PresetKind::delta1: return "planck-d1";
    case PresetKind::delta2: return "planck-d2";
    case PresetKind::scaled: return "scaled";
  }
  return "none";
}

inline std::string method_name(WignerRoute r) {
  switch (r) {
    case WignerRoute::automatic: return "auto";
    case WignerRoute::closed: return "closed";
    case WignerRoute::trace: return "trace";
  }
  return "";
}

inline std::string mode_name(const PropagatorMode& m) {
  return m.kind == PropagatorMode::Kind::exact ? "exact" : "series:" + std::to_string(m.order);
}

inline double parse_real(const std::string& key, const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size() || !std::isfinite(v)) {
    throw ValidationError("--" + key + ": expected a real number, got '" + s + "'");
  }
  return v;
}

inline long long parse_integer(const std::string& key, const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) {
    throw ValidationError("--" + key + ": expected an integer, got '" + s + "'");
  }
  return v;
}

inline std::uint64_t parse_seed(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    if (!s.empty() && s[0] != '-') v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) {
    throw ValidationError("--seed: expected an unsigned integer, got '" + s + "'");
  }
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  for (;;) {
    const std::size_t end = s.find(sep, begin);
    out.push_back(s.substr(begin, end - begin));
    if (end == std::string::npos) break;
    begin = end + 1;
  }
  return out;
}

/// "n", "start:stop" (step 2) or "start:stop:step".
inline NRange parse_n_range(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.empty() || parts.size() > 3) {
    throw ValidationError("--n: expected start[:stop[:step]], got '" + s + "'");
  }
  NRange r;
  r.start = static_cast<int>(parse_integer("n", parts[0]));
  r.stop = parts.size() > 1 ? static_cast<int>(parse_integer("n", parts[1])) : r.start;
  r.step = parts.size() > 2 ? static_cast<int>(parse_integer("n", parts[2])) : 2;
  if (r.step <= 0) throw ValidationError("--n: step must be positive");
  if (r.stop < r.start) throw ValidationError("--n: stop must not be below start");
  for (int n : r.values()) {
    if (n < 3 || n % 2 == 0) {
      throw ValidationError("--n: range yields n=" + std::to_string(n) +
                            "; every n must be odd and >= 3");
    }
  }
  return r;
}

inline StateSpec parse_state(const std::string& s) {
  using K = StateSpec::Kind;
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
  auto need_arg = [&] {
    if (arg.empty()) throw ValidationError("--state: '" + head + "' needs a label argument");
  };
  StateSpec st;
  if (head == "vacuum" && arg.empty()) {
    st.kind = K::vacuum;
  } else if (head == "mixed" && arg.empty()) {
    st.kind = K::mixed;
  } else if (head == "random" && arg.empty()) {
    st.kind = K::random;
  } else if (head == "coherent") {
    need_arg();
    const auto parts = split(arg, ',');
    if (parts.size() != 2) throw ValidationError("--state: expected coherent:kappa,tau");
    st.kind = K::coherent;
    st.first = parse_integer("state", parts[0]);
    st.second = parse_integer("state", parts[1]);
  } else if (head == "basis-u" || head == "basis-v") {
    need_arg();
    st.kind = head == "basis-u" ? K::basis_u : K::basis_v;
    st.first = parse_integer("state", arg);
  } else {
    throw ValidationError(
        "--state: expected vacuum | coherent:k,t | basis-u:a | basis-v:b | mixed | random, got '" +
        s + "'");
  }
  return st;
}

inline PropagatorMode parse_mode(const std::string& s) {
  if (s == "exact") return PropagatorMode::exact();
  if (s.rfind("series:", 0) == 0) {
    const long long k = parse_integer("mode", s.substr(7));
    if (k < 0 || k > 64) throw ValidationError("--mode: series order must be in [0, 64]");
    return PropagatorMode::series(static_cast<int>(k));
  }
  throw ValidationError("--mode: expected exact or series:<k>, got '" + s + "'");
}

inline std::string default_n(Command c) {
  switch (c) {
    case Command::kernel: return "3:9:2";
    case Command::bound: return "3:25:2";
    case Command::fig1: return "3:57:2";
    case Command::fig2: return "5:25:2";
    case Command::figA1: return "21:21:1";
    case Command::figB1: return "3:21:2";
    default: return "5:5:1";
  }
}

/// Labels of the state must be in [-l, l] for every n swept.
inline void check_state_labels(const StateSpec& st, const NRange& r) {
  using K = StateSpec::Kind;
  if (st.kind != K::coherent && st.kind != K::basis_u && st.kind != K::basis_v) return;
  for (int n : r.values()) {
    const long long ell = (n - 1) / 2;
    const bool bad = std::abs(st.first) > ell ||
                     (st.kind == K::coherent && std::abs(st.second) > ell);
    if (bad) {
      throw ValidationError("--state: labels of '" + st.str() + "' lie outside [-" +
                            std::to_string(ell) + ", " + std::to_string(ell) +
                            "] for n=" + std::to_string(n));
    }
  }
}

}  // namespace run_detail

/// Flattens a JSON config object into option strings. Keys are the long
/// flag names without dashes ("n", "state", "scale-s", ...).
inline OptionMap options_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("--config: top level must be a JSON object");
  OptionMap out;
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      out[key] = value.get<std::string>();
    } else if (value.is_number_integer() || value.is_number_unsigned()) {
      out[key] = value.dump();
    } else if (value.is_number_float()) {
      out[key] = format_real(value.get<double>());
    } else {
      throw ValidationError("--config: value of '" + key + "' must be a string or number");
    }
  }
  return out;
}

/// Builds and validates a RunConfig. Unknown keys are rejected.
inline RunConfig make_config(const OptionMap& opts) {
  using namespace run_detail;
  static const char* known[] = {"command", "n",    "state",  "seed", "hbar",  "delta",
                                "preset",  "scale-s", "format", "out",  "family", "t",
                                "t0",      "mode", "order",  "method"};
  for (const auto& [k, v] : opts) {
    bool ok = false;
    for (const char* name : known) ok = ok || k == name;
    if (!ok) throw ValidationError("unknown option '" + k + "'");
  }
  auto get = [&](const std::string& k) -> std::optional<std::string> {
    if (auto it = opts.find(k); it != opts.end()) return it->second;
    return std::nullopt;
  };
  RunConfig c;
  const auto cmd = get("command");
  if (!cmd) throw ValidationError("no command given");
  if (auto it = command_names().find(*cmd); it != command_names().end()) {
    c.command = it->second;
  } else {
    throw ValidationError("unknown command '" + *cmd + "'");
  }
  c.n_range = parse_n_range(get("n").value_or(default_n(c.command)));
  if (auto s = get("state")) c.state = parse_state(*s);
  if (auto s = get("seed")) c.seed = parse_seed(*s);
  if (auto s = get("hbar")) c.hbar = parse_real("hbar", *s);
  if (!(c.hbar > 0.0)) throw ValidationError("--hbar must be positive");
  if (auto s = get("delta")) c.scale.delta = parse_real("delta", *s);
  if (!(c.scale.delta >= 0.0 && c.scale.delta <= 2.0)) {
    throw ValidationError("--delta must lie in [0, 2]");
  }
  if (auto s = get("scale-s")) {
    c.scale.s = parse_real("scale-s", *s);
    if (!(c.scale.s > 0.0)) throw ValidationError("--scale-s must be positive");
    c.scale.preset = PresetKind::scaled;
  }
  if (auto s = get("preset")) {
    if (*s == "planck-d0") {
      c.scale.preset = PresetKind::delta0;
    } else if (*s == "planck-d1") {
      c.scale.preset = PresetKind::delta1;
    } else if (*s == "planck-d2") {
      c.scale.preset = PresetKind::delta2;
    } else if (*s == "scaled") {
      c.scale.preset = PresetKind::scaled;
    } else if (*s != "none") {
      throw ValidationError("--preset: expected planck-d0 | planck-d1 | planck-d2 | scaled");
    }
    if (get("scale-s") && *s != "scaled") {
      throw ValidationError("--scale-s only combines with the scaled preset");
    }
  }
  if (c.scale.preset && c.hbar != 1.0) {
    throw ValidationError("Planck presets work in units with hbar = 1; drop --hbar");
  }
  if (auto s = get("format")) {
    if (*s == "csv") {
      c.format = Format::csv;
    } else if (*s == "json") {
      c.format = Format::json;
    } else {
      throw ValidationError("--format: expected csv or json");
    }
  }
  if (auto s = get("out")) c.out_path = *s;
  if (auto s = get("family")) {
    if (*s == "rs-qp") {
      c.family = BoundFamily::rs_qp;
    } else if (*s == "massar-spindel") {
      c.family = BoundFamily::massar_spindel;
    } else if (*s == "sincos") {
      c.family = BoundFamily::sincos;
    } else if (*s == "gup") {
      c.family = BoundFamily::gup;
    } else {
      throw ValidationError("--family: expected rs-qp | massar-spindel | sincos | gup");
    }
  }
  if (auto s = get("t")) c.t = parse_real("t", *s);
  if (auto s = get("t0")) c.t0 = parse_real("t0", *s);
  if (auto s = get("mode")) c.mode = parse_mode(*s);
  if (auto s = get("order")) {
    const long long k = parse_integer("order", *s);
    if (k != 2 && k != 4) throw ValidationError("--order must be 2 or 4");
    c.order = static_cast<int>(k);
  }
  if (auto s = get("method")) {
    if (*s == "auto") {
      c.method = WignerRoute::automatic;
    } else if (*s == "closed") {
      c.method = WignerRoute::closed;
    } else if (*s == "trace") {
      c.method = WignerRoute::trace;
    } else {
      throw ValidationError("--method: expected auto | closed | trace");
    }
  }
  if (c.method == WignerRoute::closed && !c.state.coherent_family()) {
    throw ValidationError("--method closed needs a vacuum or coherent state");
  }
  const bool needs_coherent = c.command == Command::table1 || c.command == Command::fig1 ||
                              c.command == Command::figB1;
  if (needs_coherent && !c.state.coherent_family()) {
    throw ValidationError(command_name(c.command) + " needs a vacuum or coherent state");
  }
  check_state_labels(c.state, c.n_range);
  return c;
}

/// Canonical echo of every option that affects the computed values.
inline nlohmann::ordered_json echo(const RunConfig& c) {
  using namespace run_detail;
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  j["command"] = command_name(c.command);
  j["n"] = c.n_range.str();
  j["state"] = c.state.str();
  j["seed"] = c.seed;
  j["hbar"] = c.hbar;
  j["delta"] = c.scale.delta;
  j["preset"] = preset_name(c.scale.preset);
  j["scale-s"] = c.scale.s;
  j["format"] = c.format == Format::csv ? "csv" : "json";
  j["family"] = family_name(c.family);
  j["t"] = c.t;
  j["t0"] = c.t0;
  j["mode"] = mode_name(c.mode);
  j["order"] = c.order;
  j["method"] = method_name(c.method);
  return j;
}

namespace run_detail {

inline Operator build_state(const RunConfig& c, const Dimension& dim) {
  using K = StateSpec::Kind;
  switch (c.state.kind) {
    case K::vacuum: return vacuum(dim).projector();
    case K::coherent: return coherent_state(dim, c.state.first, c.state.second).projector();
    case K::basis_u: return basis_u(dim, c.state.first).projector();
    case K::basis_v: return basis_v(dim, c.state.first).projector();
    case K::mixed: return maximally_mixed(dim);
    case K::random: return random_pure_state(dim, c.seed).projector();
  }
  throw ValidationError("unknown state");
}

inline ScaleParams build_scale(const RunConfig& c, const Dimension& dim) {
  if (c.scale.preset) return planck_preset(*c.scale.preset, dim, c.scale.s, c.scale.delta);
  return ScaleParams::from_q0(dim, c.scale.delta, 1.0, c.hbar);
}

inline PhaseFunction state_wigner(const RunConfig& c, const Dimension& dim) {
  const bool closed = c.method == WignerRoute::closed ||
                      (c.method == WignerRoute::automatic && c.state.coherent_family());
  if (closed) return coherent_wigner(dim, c.state.kappa(), c.state.tau(), WignerMethod::closed);
  return wigner(build_state(c, dim));
}

inline std::vector<Column> real_columns(std::initializer_list<const char*> names) {
  std::vector<Column> cols;
  for (const char* n : names) cols.push_back({n, CellKind::real});
  return cols;
}

inline ResultTable kernel_table(const RunConfig& c) {
  ResultTable t({{"n", CellKind::integer},
                 {"resolution_dev", CellKind::real},
                 {"unit_trace_dev", CellKind::real},
                 {"orthonormality_dev", CellKind::real},
                 {"triple_product_dev", CellKind::real},
                 {"triples_checked", CellKind::integer}});
  for (int n : c.n_range.values()) {
    const auto r = kernel_properties(Dimension(n), 20000, c.seed);
    t.add_row({(long long)n, r.resolution, r.unit_trace, r.orthonormality, r.triple_product,
               r.triples_checked});
  }
  return t;
}

inline ResultTable wigner_table(const RunConfig& c) {
  ResultTable t({{"n", CellKind::integer},
                 {"mu", CellKind::integer},
                 {"nu", CellKind::integer},
                 {"W", CellKind::real}});
  for (int n : c.n_range.values()) {
    const Dimension dim(n);
    const PhaseFunction w = state_wigner(c, dim);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        t.add_row({(long long)n, (long long)dim.label_at(i), (long long)dim.label_at(j),
                   w.values()(i, j).real()});
      }
    }
  }
  return t;
}

inline ResultTable marginals_table(const RunConfig& c) {
  std::vector<Column> cols = {{"n", CellKind::integer},
                              {"label", CellKind::integer},
                              {"coordinate", CellKind::real},
                              {"momentum", CellKind::real}};
  const bool closed = c.state.coherent_family();
  if (closed) {
    cols.push_back({"coordinate_closed", CellKind::real});
    cols.push_back({"momentum_closed", CellKind::real});
  }
  ResultTable t(cols);
  for (int n : c.n_range.values()) {
    const Dimension dim(n);
    const Marginals sums = marginals_from_grid(state_wigner(c, dim));
    std::optional<Marginals> cf;
    if (closed) cf = marginals_closed(dim, c.state.kappa(), c.state.tau());
    for (int i = 0; i < n; ++i) {
      std::vector<Cell> row = {(long long)n, (long long)dim.label_at(i),
                               sums.coordinate.values[i], sums.momentum.values[i]};
      if (cf) {
        row.push_back(cf->coordinate.values[i]);
        row.push_back(cf->momentum.values[i]);
      }
      t.add_row(std::move(row));
    }
  }
  return t;
}

inline ResultTable evolve_table(const RunConfig& c) {
  ResultTable t({{"n", CellKind::integer},
                 {"mu", CellKind::integer},
                 {"nu", CellKind::integer},
                 {"W0", CellKind::real},
                 {"Wt", CellKind::real}});
  for (int n : c.n_range.values()) {
    const Dimension dim(n);
    const PhaseFunction w0 = wigner(build_state(c, dim));
    const PhasePropagator p =
        propagator(dim, harper_hamiltonian(dim), c.t, c.t0, c.mode, HbarConfig{c.hbar});
    const PhaseFunction wt = evolve_wigner(w0, p);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        t.add_row({(long long)n, (long long)dim.label_at(i), (long long)dim.label_at(j),
                   w0.values()(i, j).real(), wt.values()(i, j).real()});
      }
    }
  }
  return t;
}

inline UncertaintyReport bound_report(const RunConfig& c, const Dimension& dim) {
  const Operator rho = build_state(c, dim);
  switch (c.family) {
    case BoundFamily::rs_qp: return rs_qp(rho, build_scale(c, dim));
    case BoundFamily::massar_spindel: return massar_spindel(rho);
    case BoundFamily::sincos: return sincos_suite(rho);
    case BoundFamily::gup: return gup_expansion(rho, build_scale(c, dim), c.order);
  }
  throw ValidationError("unknown bound family");
}

inline ResultTable bound_table(const RunConfig& c) {
  std::optional<ResultTable> t;
  for (int n : c.n_range.values()) {
    const UncertaintyReport r = bound_report(c, Dimension(n));
    if (!t) {
      std::vector<Column> cols = {{"n", CellKind::integer}};
      for (const auto& [k, v] : r.entries) cols.push_back({k, CellKind::real});
      for (const char* k : {"lhs", "rhs", "slack"}) cols.push_back({k, CellKind::real});
      t.emplace(cols);
    }
    std::vector<Cell> row = {(long long)n};
    for (const auto& [k, v] : r.entries) row.push_back(v);
    row.push_back(r.lhs);
    row.push_back(r.rhs);
    row.push_back(r.slack);
    t->add_row(std::move(row));
  }
  return std::move(*t);
}

/// "[C_U,S_V]" -> "comm_CU_SV", "C_U^2" -> "C_U2".
inline std::string column_safe(const std::string& name) {
  std::string out;
  if (!name.empty() && name.front() == '[') {
    out = "comm_";
    for (char ch : name) {
      if (ch == ',') {
        out += '_';
      } else if (ch != '[' && ch != ']' && ch != '_') {
        out += ch;
      }
    }
    return out;
  }
  for (char ch : name) {
    if (ch != '^') out += ch;
  }
  return out;
}

inline ResultTable table1_table(const RunConfig& c) {
  std::optional<ResultTable> t;
  for (int n : c.n_range.values()) {
    const Dimension dim(n);
    const auto closed = coherent_table_means(dim, c.state.kappa(), c.state.tau(),
                                             build_scale(c, dim));
    const Operator rho = build_state(c, dim);
    const SinCosOperators ops = sincos_operators(dim);
    const Operator direct[] = {
        ops.c_u, ops.s_u, ops.c_v, ops.s_v,
        ops.c_u * ops.c_u, ops.s_u * ops.s_u, ops.c_v * ops.c_v, ops.s_v * ops.s_v,
        commutator(ops.c_u, ops.c_v), commutator(ops.c_u, ops.s_v),
        commutator(ops.s_u, ops.c_v), commutator(ops.s_u, ops.s_v)};
    if (!t) {
      std::vector<Column> cols = {{"n", CellKind::integer},
                                  {"kappa", CellKind::integer},
                                  {"tau", CellKind::integer}};
      for (const auto& [name, v] : closed) cols.push_back({column_safe(name), CellKind::complex});
      cols.push_back({"max_trace_diff", CellKind::real});
      t.emplace(cols);
    }
    std::vector<Cell> row = {(long long)n, c.state.kappa(), c.state.tau()};
    double worst = 0.0;
    for (std::size_t k = 0; k < closed.size(); ++k) {
      row.push_back(closed[k].second);
      worst = std::max(worst, std::abs(closed[k].second - overlap(direct[k], rho)));
    }
    row.push_back(worst);
    t->add_row(std::move(row));
  }
  return std::move(*t);
}

inline ResultTable fig1_table(const RunConfig& c) {
  ResultTable t({{"n", CellKind::integer},
                 {"V_U", CellKind::real},
                 {"V_V", CellKind::real},
                 {"n_V_over_pi", CellKind::real},
                 {"pi_over_n", CellKind::real}});
  for (int n : c.n_range.values()) {
    const Dimension dim(n);
    const UncertaintyReport r = unitary_variances(build_state(c, dim));
    const double vu = r.get("V_U");
    t.add_row({(long long)n, vu, r.get("V_V"), n * vu / std::numbers::pi,
               std::numbers::pi / n});
  }
  return t;
}

inline ResultTable fig2_table(const RunConfig& c) {
  ResultTable t({{"n", CellKind::integer},
                 {"V_U", CellKind::real},
                 {"V_V", CellKind::real},
                 {"A", CellKind::real},
                 {"U_UV", CellKind::real}});
  for (int n : c.n_range.values()) {
    const UncertaintyReport r = massar_spindel(build_state(c, Dimension(n)));
    t.add_row({(long long)n, r.get("V_U"), r.get("V_V"), r.get("A"), r.get("U_UV")});
  }
  return t;
}

inline ResultTable figA1_table(const RunConfig& c) {
  ResultTable t({{"n", CellKind::integer},
                 {"mu", CellKind::integer},
                 {"nu", CellKind::integer},
                 {"W", CellKind::real},
                 {"marginal_product", CellKind::real}});
  for (int n : c.n_range.values()) {
    const Dimension dim(n);
    const PhaseFunction w = state_wigner(c, dim);
    const Marginals m = marginals_from_grid(w);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        t.add_row({(long long)n, (long long)dim.label_at(i), (long long)dim.label_at(j),
                   w.values()(i, j).real(), m.momentum.values[i] * m.coordinate.values[j]});
      }
    }
  }
  return t;
}

inline ResultTable figB1_table(const RunConfig& c) {
  ResultTable t(real_columns({"n", "U_CuCv", "U_CuSv", "U_SuCv", "U_SuSv", "slack_CuCv",
                              "slack_CuSv", "slack_SuCv", "slack_SuSv", "sum_U", "sum_slack",
                              "S_closed"}));
  std::vector<Column> cols = t.columns();
  cols[0].kind = CellKind::integer;
  t = ResultTable(cols);
  for (int n : c.n_range.values()) {
    const Dimension dim(n);
    const UncertaintyReport r = sincos_suite(build_state(c, dim));
    std::vector<Cell> row = {(long long)n};
    for (std::size_t k = 1; k + 1 < cols.size(); ++k) row.push_back(r.get(cols[k].name));
    row.push_back(sincos_coherent_sum(dim));
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace run_detail

/// Dispatches to the subcommand. Deterministic for a fixed config.
inline ResultTable run(const RunConfig& c) {
  using namespace run_detail;
  ResultTable t;
  switch (c.command) {
    case Command::kernel: t = kernel_table(c); break;
    case Command::wigner: t = wigner_table(c); break;
    case Command::marginals: t = marginals_table(c); break;
    case Command::evolve: t = evolve_table(c); break;
    case Command::bound: t = bound_table(c); break;
    case Command::table1: t = table1_table(c); break;
    case Command::fig1: t = fig1_table(c); break;
    case Command::fig2: t = fig2_table(c); break;
    case Command::figA1: t = figA1_table(c); break;
    case Command::figB1: t = figB1_table(c); break;
  }
  t.meta()["library"] = "finphase";
  t.meta()["version"] = kLibraryVersion;
  t.meta()["command"] = command_name(c.command);
  t.meta()["config"] = echo(c);
  return t;
}

}  // namespace finphase::cli
