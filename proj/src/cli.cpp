#include "kplan/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kplan/automaton.hpp"
#include "kplan/complexity.hpp"
#include "kplan/cops.hpp"
#include "kplan/errors.hpp"
#include "kplan/export.hpp"
#include "kplan/gridworld.hpp"
#include "kplan/planner_dp.hpp"
#include "kplan/scap.hpp"

namespace kplan::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

Coord parse_coord_text(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError("expected X,Y but got '" + text + "'");
  try {
    std::size_t used = 0;
    const int x = std::stoi(text.substr(0, comma), &used);
    const std::string rest = text.substr(comma + 1);
    std::size_t used_y = 0;
    const int y = std::stoi(rest, &used_y);
    if (used != comma || used_y != rest.size()) throw std::invalid_argument(text);
    return {x, y};
  } catch (const std::logic_error&) {
    throw ParseError("expected X,Y but got '" + text + "'");
  }
}

Coord parse_coord(const json& j) {
  if (j.is_string()) return parse_coord_text(j.get<std::string>());
  if (!j.is_array() || j.size() != 2) throw ParseError("coordinates must be [x, y]");
  return {j.at(0).get<int>(), j.at(1).get<int>()};
}

GoalPlacement parse_goal(const std::string& text, Coord& explicit_goal) {
  if (text == "corner") return GoalPlacement::Corner;
  if (text == "middle") return GoalPlacement::Middle;
  explicit_goal = parse_coord_text(text);
  return GoalPlacement::Explicit;
}

// A stage parameter: number, "inf" or null for +infinity.
double parse_stage_number(const json& j, const char* what) {
  if (j.is_null()) return kInf;
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInf;
  }
  throw ParseError(std::string(what) + " entries must be numbers, \"inf\" or null");
}

/// The loaded environment: an automaton plus grid geometry when it is a room.
struct Problem {
  TimedDfa dfa;
  std::optional<GridCodec> codec;
  StateId start = 0;

  StateId state_of(const json& j) const {
    if (j.is_number_integer()) {
      const auto s = j.get<long long>();
      if (s < 0 || static_cast<std::size_t>(s) >= dfa.num_states()) {
        throw ValidationError("start state " + std::to_string(s) + " out of range");
      }
      return static_cast<StateId>(s);
    }
    if (!codec) throw ValidationError("coordinate starts need a gridworld");
    const Coord c = parse_coord(j);
    if (!codec->contains(c)) throw ValidationError("start outside the room");
    return codec->encode(c);
  }

  std::string label(StateId s) const {
    if (!codec) return std::to_string(s);
    const Coord c = codec->decode(s);
    return std::to_string(c.x) + "," + std::to_string(c.y);
  }
  std::string label_header() const { return codec ? "x,y" : "s"; }
};

RoomSpec room_spec_from_json(const json& j) {
  RoomSpec spec;
  spec.n = j.value("n", 10);
  if (j.contains("goal")) {
    const auto& g = j.at("goal");
    spec.goal = g.is_string() ? parse_goal(g.get<std::string>(), spec.explicit_goal)
                              : (spec.explicit_goal = parse_coord(g), GoalPlacement::Explicit);
  }
  if (j.contains("horizon") && !j.at("horizon").is_null()) {
    spec.horizon_override = j.at("horizon").get<std::size_t>();
  }
  if (j.contains("start")) spec.start = parse_coord(j.at("start"));
  return spec;
}

Problem load_problem(const json& doc, const fs::path& base) {
  std::optional<Problem> p;
  if (doc.contains("room")) {
    Room room = build_room(room_spec_from_json(doc.at("room")));
    p.emplace(Problem{std::move(room.dfa), room.codec, room.start});
  } else if (doc.contains("dfa")) {
    const std::string text = read_text(resolve(base, doc.at("dfa").get<std::string>()));
    std::optional<GridCodec> codec;
    StateId start = 0;
    if (auto info = grid_info_from_json(text)) {
      codec.emplace(info->n);
      start = codec->encode(info->start);
    }
    p.emplace(Problem{dfa_from_json(text), codec, start});
    if (p->codec && p->codec->num_states() != p->dfa.num_states()) p->codec.reset();
  } else {
    throw ValidationError("config needs a \"room\" or a \"dfa\" entry");
  }
  if (doc.contains("start")) p->start = p->state_of(doc.at("start"));
  return std::move(*p);
}

struct EstimatorFlags {
  std::optional<std::string> kind;
  std::optional<std::string> table;
  std::optional<std::size_t> block_length;
};

std::shared_ptr<const ComplexityEstimator> make_estimator(json spec, const fs::path& base,
                                                          std::size_t alphabet,
                                                          const EstimatorFlags& flags) {
  if (spec.is_string()) spec = json{{"kind", spec}};
  if (spec.is_null()) spec = json::object();
  fs::path table_base = base;
  if (flags.kind) spec["kind"] = *flags.kind;
  if (flags.table) {
    spec["table"] = *flags.table;
    table_base = fs::current_path();
  }
  if (flags.block_length) spec["block_length"] = *flags.block_length;

  const std::string kind = spec.value("kind", "lz76");
  if (kind == "lz76") return std::make_shared<Lz76Estimator>();
  if (kind != "bdm") throw ValidationError("unknown estimator '" + kind + "' (lz76 or bdm)");

  std::string table = spec.value("table", "");
  if (table.empty()) {
    if (const char* env = std::getenv("KPLAN_CTM_TABLE"); env && *env) {
      table = env;
      table_base = fs::current_path();
    }
  }
  if (table.empty()) {
    throw ValidationError(
        "bdm needs a CTM table: set estimator.table, --table or KPLAN_CTM_TABLE "
        "(\"synthetic\" builds an LZ76-backed stand-in)");
  }
  std::shared_ptr<const CtmTable> ctm;
  if (table == "synthetic") {
    ctm = std::make_shared<CtmTable>(
        synthetic_ctm_table(alphabet, spec.value("block_length", kDefaultBdmBlockLength)));
  } else {
    ctm = std::make_shared<CtmTable>(load_ctm_table(resolve(table_base, table)));
    if (ctm->alphabet_size() != alphabet) {
      throw ValidationError("CTM table alphabet " + std::to_string(ctm->alphabet_size()) +
                            " does not match " + std::to_string(alphabet) + " actions");
    }
  }
  const std::string remainder = spec.value("remainder", "table");
  RemainderMode mode;
  if (remainder == "table") {
    mode = RemainderMode::TableLookup;
  } else if (remainder == "lz76") {
    mode = RemainderMode::Lz76;
  } else {
    throw ValidationError("estimator.remainder must be \"table\" or \"lz76\"");
  }
  return std::make_shared<BdmEstimator>(std::move(ctm), mode);
}

struct ConfigFile {
  json doc;
  fs::path base;
};

ConfigFile load_config(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return {json::parse(text), fs::absolute(path).parent_path()};
  } catch (const json::parse_error& e) {
    throw ParseError("config " + path + ": " + e.what());
  }
}

fs::path output_dir(const ConfigFile& cfg, const std::string& flag) {
  fs::path dir = !flag.empty() ? fs::path(flag)
                               : resolve(cfg.base, cfg.doc.value("output", std::string(".")));
  fs::create_directories(dir);
  return dir;
}

void apply_threads(const ConfigFile& cfg, int flag) {
  const int threads = flag > 0 ? flag : cfg.doc.value("threads", 0);
  if (threads > 0) omp_set_num_threads(threads);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void write_heatmap(const Problem& p, const fs::path& dir, const std::string& stem,
                   std::span<const double> values) {
  if (p.codec) {
    const auto n = static_cast<std::size_t>(p.codec->side());
    write_file(dir / (stem + ".csv"), grid_csv(n, values));
    write_file(dir / (stem + ".pgm"), grid_pgm(n, values));
  } else {
    std::string csv = "s,value\n";
    for (std::size_t s = 0; s < values.size(); ++s) {
      csv += std::to_string(s) + "," + format_number(values[s]) + "\n";
    }
    write_file(dir / (stem + ".csv"), csv);
  }
}

// One trajectory block: "<id>,t,x,y" (rooms) or "<id>,t,state".
void append_trajectory(const Problem& p, std::size_t id, StateId s0, SymbolView seq,
                       std::string& csv) {
  const Trajectory traj = rollout(p.dfa, s0, seq);
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    csv += std::to_string(id) + "," + std::to_string(t) + "," + p.label(traj.states[t]) + "\n";
  }
}

std::string trajectory_header(const Problem& p, const char* id) {
  return std::string(id) + ",t," + (p.codec ? "x,y" : "state") + "\n";
}

// ---- estimate ------------------------------------------------------------

struct EstimateArgs {
  std::string est = "lz76";
  std::string table;
  std::size_t block_length = kDefaultBdmBlockLength;
  std::size_t alphabet = kGridActions;
  std::string remainder = "table";
  std::string sequence;
  std::string file;
  bool have_sequence = false;
};

int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
  std::string text = a.sequence;
  if (!a.file.empty()) {
    text = read_text(a.file);
    std::erase_if(text, [](unsigned char c) { return std::isspace(c); });
  }
  json spec{{"kind", a.est}, {"block_length", a.block_length}, {"remainder", a.remainder}};
  if (!a.table.empty()) spec["table"] = a.table;
  std::size_t alphabet = a.alphabet;
  if (a.est == "bdm" && !a.table.empty() && a.table != "synthetic") {
    alphabet = load_ctm_table(a.table).alphabet_size();
  }
  const auto est = make_estimator(spec, fs::current_path(), alphabet, {});
  const ActionSequence seq = from_digits(text, alphabet);
  out << "estimator,length,bits\n"
      << est->name() << "," << seq.size() << "," << format_number(est->estimate(seq)) << "\n";
  return kOk;
}

// ---- gen-room ------------------------------------------------------------

struct GenRoomArgs {
  int n = 10;
  std::string goal = "corner";
  long long horizon = -1;
  std::string start;
  std::string out;
};

int cmd_gen_room(const GenRoomArgs& a, std::ostream& out) {
  RoomSpec spec;
  spec.n = a.n;
  spec.goal = parse_goal(a.goal, spec.explicit_goal);
  if (a.horizon >= 0) spec.horizon_override = static_cast<std::size_t>(a.horizon);
  if (!a.start.empty()) spec.start = parse_coord_text(a.start);
  const Room room = build_room(spec);
  const std::string text = room_to_json(room);
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
    out << "wrote " << a.out << " (n=" << a.n << ", horizon=" << room.dfa.horizon() << ")\n";
  }
  return kOk;
}

// ---- plan-dp -------------------------------------------------------------

struct PlanArgs {
  std::string config;
  std::string out;
  int threads = 0;
  long long solutions = -1;
  long long budget = -1;
  EstimatorFlags est;
};

int cmd_plan_dp(const PlanArgs& a, std::ostream& out) {
  const ConfigFile cfg = load_config(a.config);
  apply_threads(cfg, a.threads);
  const Problem p = load_problem(cfg.doc, cfg.base);
  const fs::path dir = output_dir(cfg, a.out);

  const auto t0 = Clock::now();
  const PlanTables tables = backward_induction(p.dfa);
  const double wall = seconds_since(t0);

  write_file(dir / "values.csv", value_function_csv(tables));
  write_heatmap(p, dir, "v0_heatmap", tables.value_slice(0));
  json stats{{"num_states", p.dfa.num_states()},
             {"horizon", p.dfa.horizon()},
             {"start", p.label(p.start)},
             {"optimal_value", tables.value(0, p.start)},
             {"wall_time", wall}};
  write_file(dir / "stats.json", dump(stats));
  out << "V0(" << p.label(p.start) << ") = " << format_number(tables.value(0, p.start)) << "\n";
  return kOk;
}

// ---- plan-cops -----------------------------------------------------------

int cmd_plan_cops(const PlanArgs& a, std::ostream& out, std::ostream& err) {
  const ConfigFile cfg = load_config(a.config);
  apply_threads(cfg, a.threads);
  const Problem p = load_problem(cfg.doc, cfg.base);
  const auto est = make_estimator(cfg.doc.value("estimator", json()), cfg.base,
                                  p.dfa.num_actions(), a.est);
  const json cops = cfg.doc.value("cops", json::object());
  CopsOptions options;
  options.max_solutions = a.solutions >= 0 ? static_cast<std::size_t>(a.solutions)
                                           : cops.value("solutions", std::size_t{1});
  options.node_budget = a.budget >= 0 ? static_cast<std::size_t>(a.budget)
                                      : cops.value("budget", kDefaultNodeBudget);
  const fs::path dir = output_dir(cfg, a.out);

  const auto t0 = Clock::now();
  const PlanTables tables = backward_induction(p.dfa);
  CopsResult result;
  try {
    result = cops_search(p.dfa, tables, p.start, *est, options);
  } catch (const BudgetExhausted& e) {
    result.stats = e.stats();
  }
  const double wall = seconds_since(t0);
  const bool truncated = result.stats.budget_exhausted;

  std::string seq_csv = "rank,complexity,actions\n";
  std::string traj_csv = trajectory_header(p, "rank");
  for (std::size_t i = 0; i < result.sequences.size(); ++i) {
    seq_csv += std::to_string(i + 1) + "," + format_number(result.complexities[i]) + "," +
               to_digits(result.sequences[i]) + "\n";
    append_trajectory(p, i + 1, p.start, result.sequences[i], traj_csv);
  }
  write_file(dir / "sequences.csv", seq_csv);
  write_file(dir / "trajectories.csv", traj_csv);

  const auto& s = result.stats;
  json stats{{"estimator", est->name()},
             {"start", p.label(p.start)},
             {"optimal_value", tables.value(0, p.start)},
             {"solutions_requested", options.max_solutions},
             {"solutions_found", result.sequences.size()},
             {"node_budget", options.node_budget},
             {"nodes_expanded", s.nodes_expanded},
             {"nodes_generated", s.nodes_generated},
             {"monotonicity_violations", s.monotonicity_violations},
             {"parent_child_pairs", s.parent_child_pairs},
             {"truncated", truncated},
             {"wall_time", wall}};
  write_file(dir / "stats.json", dump(stats));

  out << result.sequences.size() << " sequence(s), " << s.nodes_expanded << " nodes expanded, "
      << s.monotonicity_violations << " monotonicity violation(s)\n";
  if (truncated) {
    err << "kplan: node budget of " << options.node_budget << " exhausted; results truncated\n";
    return kBudgetExhausted;
  }
  return kOk;
}

// ---- plan-scap -----------------------------------------------------------

std::vector<double> stage_values(const json& spec, const char* key, std::size_t stages,
                                 const std::function<double()>& constant_limit) {
  if (!spec.contains(key)) return {};
  const json& j = spec.at(key);
  auto one = [&](const json& v) {
    if (v.is_string() && v.get<std::string>() == "constant") return constant_limit();
    return parse_stage_number(v, key);
  };
  if (!j.is_array()) return std::vector<double>(stages, one(j));
  std::vector<double> out;
  for (const auto& v : j) out.push_back(one(v));
  return out;
}

int cmd_plan_scap(const PlanArgs& a, std::ostream& out) {
  const ConfigFile cfg = load_config(a.config);
  apply_threads(cfg, a.threads);
  const Problem p = load_problem(cfg.doc, cfg.base);
  const auto est = make_estimator(cfg.doc.value("estimator", json()), cfg.base,
                                  p.dfa.num_actions(), a.est);
  if (!cfg.doc.contains("scap")) throw ValidationError("config needs a \"scap\" entry");
  const json& sj = cfg.doc.at("scap");

  StageConfig sc;
  sc.stage_length = sj.at("l").get<std::size_t>();
  if (sc.stage_length == 0 || p.dfa.num_steps() % sc.stage_length != 0) {
    throw ValidationError("stage length " + std::to_string(sc.stage_length) +
                          " does not divide T+1 = " + std::to_string(p.dfa.num_steps()));
  }
  sc.num_stages = p.dfa.num_steps() / sc.stage_length;
  const std::string mode = sj.value("mode", "hard");
  if (mode != "hard" && mode != "soft") throw ValidationError("scap.mode must be hard or soft");
  sc.mode = mode == "hard" ? StageMode::Hard : StageMode::Soft;
  const std::string method = sj.value("admissible_method", "enumerate");
  if (method != "enumerate" && method != "ucs") {
    throw ValidationError("scap.admissible_method must be enumerate or ucs");
  }
  sc.admissible_method = method == "ucs" ? AdmissibleMethod::Ucs : AdmissibleMethod::Enumerate;

  EnumerationLimits limits;
  if (sj.contains("enumeration_cap")) limits.reject_above = sj.at("enumeration_cap").get<std::uint64_t>();

  std::optional<double> constant_limit;
  auto threshold = [&]() {
    if (!constant_limit) {
      const auto th = constant_macro_threshold(p.dfa.num_actions(), sc.stage_length, *est, limits);
      if (!th.limit) {
        throw ValidationError("no limit separates the constant macros under " + est->name());
      }
      constant_limit = th.limit;
    }
    return *constant_limit;
  };
  if (sc.mode == StageMode::Hard) {
    sc.limits = stage_values(sj, "limits", sc.num_stages, threshold);
    if (sc.limits.empty()) sc.limits.assign(sc.num_stages, kInf);
    sc.deltas = stage_values(sj, "deltas", sc.num_stages, threshold);
  } else {
    sc.betas = stage_values(sj, "betas", sc.num_stages, threshold);
    if (sc.betas.empty()) throw ValidationError("soft mode needs scap.betas");
  }

  std::vector<StateId> starts;
  if (sj.contains("starts")) {
    for (const auto& s : sj.at("starts")) starts.push_back(p.state_of(s));
  } else {
    starts.push_back(p.start);
  }
  const fs::path dir = output_dir(cfg, a.out);

  const auto t0 = Clock::now();
  const AdmissibleSet candidates = build_candidates(p.dfa, sc, *est, limits);
  const StageTables tables = solve_stages(p.dfa, sc, candidates);
  const double wall = seconds_since(t0);

  write_heatmap(p, dir, "v0_heatmap", tables.value_slice(0));
  for (std::size_t k = 0; k < sc.num_stages; ++k) {
    write_heatmap(p, dir, "stage_" + std::to_string(k) + "_heatmap", tables.value_slice(k));
  }

  std::string admissible = sc.mode == StageMode::Hard ? "stage,size,limit\n" : "stage,size,beta\n";
  json sizes = json::array();
  for (std::size_t k = 0; k < sc.num_stages; ++k) {
    const double param = sc.mode == StageMode::Hard ? sc.limits[k] : sc.betas[k];
    admissible += std::to_string(k) + "," + std::to_string(tables.candidates(k).size()) + "," +
                  format_number(param) + "\n";
    sizes.push_back(tables.candidates(k).size());
  }
  write_file(dir / "admissible.csv", admissible);

  std::string plans = "plan," + p.label_header() + ",value,reward,actions\n";
  std::string traj = trajectory_header(p, "plan");
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const ActionSequence seq = extract_actions(p.dfa, sc, tables, starts[i]);
    plans += std::to_string(i) + "," + p.label(starts[i]) + "," +
             format_number(tables.value(0, starts[i])) + "," +
             format_number(total_reward(p.dfa, starts[i], seq)) + "," + to_digits(seq) + "\n";
    append_trajectory(p, i, starts[i], seq, traj);
  }
  write_file(dir / "plans.csv", plans);
  write_file(dir / "trajectories.csv", traj);

  json stats{{"estimator", est->name()},
             {"mode", mode},
             {"stage_length", sc.stage_length},
             {"num_stages", sc.num_stages},
             {"admissible_method", method},
             {"admissible_sizes", sizes},
             {"wall_time", wall}};
  write_file(dir / "stats.json", dump(stats));
  out << "solved " << sc.num_stages << " stages of length " << sc.stage_length << "; V0("
      << p.label(starts.front()) << ") = " << format_number(tables.value(0, starts.front()))
      << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Low-complexity planning in finite-horizon automata", "kplan"};
  app.require_subcommand(1);

  EstimateArgs est_args;
  auto* estimate = app.add_subcommand("estimate", "Estimate the complexity of a digit string");
  estimate->add_option("--est", est_args.est, "lz76 or bdm")->check(CLI::IsMember({"lz76", "bdm"}));
  estimate->add_option("--table", est_args.table, "CTM table JSON, or \"synthetic\"");
  estimate->add_option("--block-length", est_args.block_length, "BDM block length (synthetic table)");
  estimate->add_option("--alphabet", est_args.alphabet, "Alphabet size");
  estimate->add_option("--remainder", est_args.remainder, "table or lz76");
  estimate->add_option("sequence", est_args.sequence, "Digit string");
  estimate->add_option("--file", est_args.file, "Read the digit string from a file");

  GenRoomArgs room_args;
  auto* gen_room = app.add_subcommand("gen-room", "Write a gridworld room automaton as JSON");
  gen_room->add_option("--n", room_args.n, "Room side")->required();
  gen_room->add_option("--goal", room_args.goal, "corner, middle or X,Y");
  gen_room->add_option("--horizon", room_args.horizon, "Horizon T (default 2(n-1)-1)");
  gen_room->add_option("--start", room_args.start, "Start cell X,Y");
  gen_room->add_option("--out", room_args.out, "Output file (default stdout)");

  PlanArgs plan_args;
  std::string est_kind, est_table;
  std::size_t est_block = 0;
  auto add_plan = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", plan_args.config, "Config JSON")->required();
    sub->add_option("--out", plan_args.out, "Output directory");
    sub->add_option("--threads", plan_args.threads, "Worker thread cap");
    sub->add_option("--est", est_kind, "Override estimator kind");
    sub->add_option("--table", est_table, "Override CTM table");
    sub->add_option("--block-length", est_block, "Override synthetic BDM block length");
    return sub;
  };
  auto* plan_dp = add_plan("plan-dp", "Backward induction; writes values and the V0 heatmap");
  auto* plan_cops = add_plan("plan-cops", "Complexity-ordered search over optimal sequences");
  plan_cops->add_option("--solutions", plan_args.solutions, "Sequences to collect");
  plan_cops->add_option("--budget", plan_args.budget, "Node expansion budget");
  auto* plan_scap = add_plan("plan-scap", "Staged complexity-aware dynamic programming");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  if (!est_kind.empty()) plan_args.est.kind = est_kind;
  if (!est_table.empty()) plan_args.est.table = est_table;
  if (est_block > 0) plan_args.est.block_length = est_block;

  try {
    if (*estimate) return cmd_estimate(est_args, out);
    if (*gen_room) return cmd_gen_room(room_args, out);
    if (*plan_dp) return cmd_plan_dp(plan_args, out);
    if (*plan_cops) return cmd_plan_cops(plan_args, out, err);
    if (*plan_scap) return cmd_plan_scap(plan_args, out);
  } catch (const InfeasibleStage& e) {
    err << "kplan: " << e.what() << "\n";
    return kInfeasibleStage;
  } catch (const json::exception& e) {
    err << "kplan: config: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "kplan: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace kplan::cli
