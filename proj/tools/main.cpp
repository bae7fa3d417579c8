// Copyright 2026 The LOIS Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "lois/json_io.hpp"

namespace fs = std::filesystem;
using namespace lois;

namespace {

// Exit codes are a stable contract: 0 success, 2 no solution exists,
// 3 limit reached, 4 input error. Mismatches in `check` exit 1.
constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitLimit = 3;
constexpr int kExitInputError = 4;

struct GenFlags {
  long long p_lo = 1, p_hi = 100, cost_lo = 1, cost_hi = 50;
  std::string rho_a = "3/10", rho_d = "3/10";
  std::string delta = "1/10", eta = "1/2", epsilon = "4/5", gamma = "1/20";

  void attach(CLI::App* cmd) {
    cmd->add_option("--p-lo", p_lo, "criticality lower bound");
    cmd->add_option("--p-hi", p_hi, "criticality upper bound");
    cmd->add_option("--cost-lo", cost_lo, "cost lower bound");
    cmd->add_option("--cost-hi", cost_hi, "cost upper bound");
    cmd->add_option("--rho-a", rho_a, "attack budget ratio (rational)");
    cmd->add_option("--rho-d", rho_d, "defense budget ratio (rational)");
    cmd->add_option("--param-delta", delta, "breach retention parameter");
    cmd->add_option("--param-eta", eta, "contested-share parameter");
    cmd->add_option("--param-epsilon", epsilon, "defended-share parameter");
    cmd->add_option("--param-gamma", gamma, "opportunity-cost parameter");
  }

  CngGenConfig to_config() const {
    auto rat = [](const std::string& s, const char* what) {
      auto r = Rational::parse(s);
      if (!r.has_value()) {
        throw Error(Error::Kind::kInvalidArgument,
                    std::string(what) + ": malformed rational \"" + s + "\"");
      }
      return *r;
    };
    CngGenConfig cfg;
    cfg.criticality_lo = p_lo;
    cfg.criticality_hi = p_hi;
    cfg.cost_lo = cost_lo;
    cfg.cost_hi = cost_hi;
    cfg.budget_ratio_a = rat(rho_a, "--rho-a");
    cfg.budget_ratio_d = rat(rho_d, "--rho-d");
    cfg.params.delta = rat(delta, "--param-delta");
    cfg.params.eta = rat(eta, "--param-eta");
    cfg.params.epsilon = rat(epsilon, "--param-epsilon");
    cfg.params.gamma = rat(gamma, "--param-gamma");
    return cfg;
  }
};

struct SolveFlags {
  double time_limit_s = 100.0;
  unsigned long long node_limit = 0;
  unsigned long long seed = 0;

  void attach(CLI::App* cmd, const char* seed_flag = "--seed") {
    cmd->add_option("--time-limit-s", time_limit_s, "per-solve time limit (s)");
    cmd->add_option("--node-limit", node_limit, "search node limit (0 = off)");
    cmd->add_option(seed_flag, seed, "search tie-break seed");
  }

  SolverConfig to_config() const {
    SolverConfig cfg;
    cfg.time_limit_s = time_limit_s;
    cfg.node_limit = node_limit;
    cfg.seed = seed;
    return cfg;
  }
};

std::string instance_file_name(int nodes, unsigned long long seed) {
  std::ostringstream name;
  name << "cng_v" << nodes << "_s" << seed << ".json";
  return name.str();
}

struct LoadedInstance {
  IPGInstance ipg;
  std::optional<CngInstance> cng;
  std::string stem;
};

LoadedInstance load_instance(const std::string& path) {
  LoadedInstance out;
  Json j = read_json_file(path);
  if (looks_like_cng(j)) {
    out.cng = cng_from_json(j);
    out.ipg = to_ipg(*out.cng);
  } else {
    out.ipg = ipg_from_json(j);
  }
  out.stem = fs::path(path).stem().string();
  return out;
}

QuadraticPayoff welfare_from_name(const LoadedInstance& inst,
                                  const std::string& name) {
  if (inst.cng.has_value()) {
    if (name == "fa") return inst.ipg.players[0].payoff;
    if (name == "fd") return inst.ipg.players[1].payoff;
  }
  if (name.rfind("player", 0) == 0) {
    int idx = std::stoi(name.substr(6));
    if (idx >= 0 && idx < inst.ipg.player_count()) {
      return inst.ipg.player(idx).payoff;
    }
  }
  throw Error(Error::Kind::kInvalidArgument,
              "unknown welfare \"" + name +
                  "\" (use fa|fd for node-game instances, playerN otherwise)");
}

int status_exit_code(GameStatus status) {
  switch (status) {
    case GameStatus::Found: return kExitOk;
    case GameStatus::Empty: return kExitNoSolution;
    case GameStatus::Limit: return kExitLimit;
  }
  return kExitInputError;
}

const char* status_name(GameStatus status) {
  switch (status) {
    case GameStatus::Found: return "ok";
    case GameStatus::Empty: return "no-solution";
    case GameStatus::Limit: return "limit";
  }
  return "error";
}

Json stats_json(const SolverStats& stats, double encode_ms) {
  Json j;
  j["nodes"] = stats.nodes;
  j["propagations"] = stats.propagations;
  j["bignum"] = stats.used_bignum;
  // Timing fields vary run to run; they are the documented exclusions from
  // byte-identity comparisons.
  j["encode_ms"] = encode_ms;
  j["solve_ms"] = stats.wall_ms;
  return j;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << dump_artifact(j);
  } else {
    write_text_file(out_path, dump_artifact(j));
  }
}

// ---------------------------------------------------------------- generate

int cmd_generate(const std::string& out_dir, int nodes,
                 unsigned long long seed, int count, const GenFlags& gen) {
  fs::create_directories(out_dir);
  CngGenConfig cfg = gen.to_config();
  for (int i = 0; i < count; ++i) {
    unsigned long long s = seed + static_cast<unsigned long long>(i);
    CngInstance inst = generate_instance(s, nodes, cfg);
    fs::path path = fs::path(out_dir) / instance_file_name(nodes, s);
    write_text_file(path.string(), dump_artifact(cng_to_json(inst)));
    std::cout << path.string() << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------------- solve

struct SolveOutcome {
  GameStatus status = GameStatus::Empty;
  Json report;
};

SolveOutcome run_solve(const LoadedInstance& inst, int order,
                       const std::string& welfare,
                       unsigned long long enumerate_k,
                       const std::string& stackelberg_leader,
                       bool with_metrics, MetricSide metric_side,
                       const SolverConfig& solver) {
  SolveOutcome out;
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed_ms = [&t0]() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };

  Json j;
  j["schema_version"] = kSchemaVersion;
  j["order"] = order;

  auto attach_metrics = [&](Json& target, const JointPoint& point) {
    if (!with_metrics || !inst.cng.has_value()) return;
    PriceMetrics m = price_metrics(*inst.cng, point, solver, metric_side);
    if (metric_side != MetricSide::AggressionOnly) {
      target["pos"] = m.pos.has_value() ? rational_to_json(*m.pos) : Json(nullptr);
    }
    if (metric_side != MetricSide::SecurityOnly) {
      target["poa"] = m.poa.has_value() ? rational_to_json(*m.poa) : Json(nullptr);
    }
    target["metrics_exact"] = m.exact;
  };

  if (!stackelberg_leader.empty()) {
    PlayerProgram leader;
    std::vector<PlayerProgram> followers;
    if (inst.cng.has_value()) {
      CngRole role;
      if (stackelberg_leader == "defender") {
        role = CngRole::Defender;
      } else if (stackelberg_leader == "attacker") {
        role = CngRole::Attacker;
      } else {
        throw Error(Error::Kind::kInvalidArgument,
                    "leader must be attacker or defender");
      }
      StackelbergForm form = to_stackelberg(*inst.cng, role);
      leader = form.leader;
      followers = form.followers;
    } else {
      int idx = -1;
      try {
        idx = std::stoi(stackelberg_leader);
      } catch (const std::exception&) {
        throw Error(Error::Kind::kInvalidArgument,
                    "leader must be a player index for general instances");
      }
      if (idx < 0 || idx >= inst.ipg.player_count()) {
        throw Error(Error::Kind::kInvalidArgument, "leader index out of range");
      }
      leader = inst.ipg.player(idx);
      for (int i = 0; i < inst.ipg.player_count(); ++i) {
        if (i != idx) followers.push_back(inst.ipg.player(i));
      }
    }
    GameResult r = solve_stackelberg(leader, followers, order, solver);
    out.status = r.status;
    j["method"] = "stackelberg-lois-" + std::to_string(order);
    j["status"] = status_name(r.status);
    j["ic_count"] = r.ic_count;
    if (r.report.has_value()) {
      j["report"] = equilibrium_report_to_json(*r.report);
      attach_metrics(j["report"], r.report->point);
    }
    j["stats"] = stats_json(r.stats, elapsed_ms() - r.stats.wall_ms);
    out.report = std::move(j);
    return out;
  }

  if (enumerate_k > 0) {
    EnumerationResult r = enumerate_lois(inst.ipg, order, enumerate_k, solver);
    out.status = !r.reports.empty()
                     ? GameStatus::Found
                     : (r.exhausted ? GameStatus::Empty : GameStatus::Limit);
    j["method"] = "lois-" + std::to_string(order);
    j["status"] = status_name(out.status);
    j["ic_count"] = r.ic_count;
    j["exhausted"] = r.exhausted;
    Json reports = Json::array();
    for (const auto& rep : r.reports) {
      Json rj = equilibrium_report_to_json(rep);
      attach_metrics(rj, rep.point);
      reports.push_back(std::move(rj));
    }
    j["reports"] = std::move(reports);
    j["stats"] = stats_json(r.stats, elapsed_ms() - r.stats.wall_ms);
    out.report = std::move(j);
    return out;
  }

  GameResult r = welfare.empty()
                     ? solve_lois(inst.ipg, order, solver)
                     : select_lois(inst.ipg, order,
                                   welfare_from_name(inst, welfare), solver);
  out.status = r.status;
  j["method"] = "lois-" + std::to_string(order);
  j["status"] = status_name(r.status);
  j["ic_count"] = r.ic_count;
  if (r.report.has_value()) {
    j["report"] = equilibrium_report_to_json(*r.report);
    attach_metrics(j["report"], r.report->point);
  }
  j["stats"] = stats_json(r.stats, elapsed_ms() - r.stats.wall_ms);
  out.report = std::move(j);
  return out;
}

int cmd_solve(const std::string& instance_path, int order,
              const std::string& welfare, unsigned long long enumerate_k,
              const std::string& stackelberg_leader, bool with_metrics,
              bool print_conditions, const std::string& out_path,
              const SolveFlags& flags) {
  LoadedInstance inst = load_instance(instance_path);
  if (print_conditions) {
    for (int i = 0; i < inst.ipg.player_count(); ++i) {
      std::cout << dump_conditions(build_conditions(inst.ipg, i, order));
    }
  }
  SolveOutcome outcome =
      run_solve(inst, order, welfare, enumerate_k, stackelberg_leader,
                with_metrics, MetricSide::Both, flags.to_config());
  outcome.report["instance"] = fs::path(instance_path).filename().string();
  emit(outcome.report, out_path);
  return status_exit_code(outcome.status);
}

// ------------------------------------------------------------------- check

int cmd_check(const std::string& instance_path, int order,
              unsigned long long cap, bool corrupt_encoding,
              const SolveFlags& flags) {
  LoadedInstance inst = load_instance(instance_path);
  SolverConfig solver = flags.to_config();

  BruteForceSets oracle = brute_force_sets(inst.ipg, order, cap);

  // Full enumeration through the encoded system. The deliberate-corruption
  // hook drops player 0's implication constraints so the negative-control
  // path in the tests can observe a mismatch (spurious points appear).
  std::vector<ConditionSet> sets;
  for (int i = 0; i < inst.ipg.player_count(); ++i) {
    sets.push_back(build_conditions(inst.ipg, i, order));
  }
  if (corrupt_encoding && !sets.empty()) {
    sets[0].implications.clear();
  }
  EncodedSystem system =
      assemble_from_conditions(inst.ipg.blocks, {}, sets, std::nullopt);
  std::vector<JointPoint> found;
  SolutionStream stream(std::move(system), solver);
  while (auto projection = stream.next()) {
    JointPoint p;
    p.values = *projection;
    found.push_back(std::move(p));
  }
  if (!stream.exhausted()) {
    std::cout << "inconclusive: enumeration hit a limit\n";
    return kExitLimit;
  }
  std::sort(found.begin(), found.end());
  std::vector<JointPoint> expected = oracle.lois_set;
  std::sort(expected.begin(), expected.end());

  auto render_point = [](const JointPoint& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      if (i > 0) s += ",";
      s += std::to_string(p.values[i]);
    }
    return s + ")";
  };

  if (found == expected) {
    std::cout << "match: " << found.size() << " order-" << order
              << " point(s), " << oracle.nash_set.size()
              << " pure equilibrium point(s)\n";
    bool contained = true;
    for (const auto& p : oracle.nash_set) {
      if (!std::binary_search(expected.begin(), expected.end(), p)) {
        contained = false;
        std::cout << "containment violation: equilibrium point "
                  << render_point(p) << " is not locally optimal\n";
      }
    }
    return contained ? kExitOk : kExitMismatch;
  }
  std::cout << "mismatch: solver found " << found.size() << ", oracle found "
            << expected.size() << "\n";
  for (const auto& p : expected) {
    if (!std::binary_search(found.begin(), found.end(), p)) {
      std::cout << "  missing " << render_point(p) << "\n";
    }
  }
  for (const auto& p : found) {
    if (!std::binary_search(expected.begin(), expected.end(), p)) {
      std::cout << "  spurious " << render_point(p) << "\n";
    }
  }
  return kExitMismatch;
}

// -------------------------------------------------------------- experiment

struct Aggregate {
  int ok = 0, empty = 0, limit = 0, failed = 0;
  int fa_count = 0, fd_count = 0;
  double time_s_sum = 0;
  long long ics = 0;
  Rational fa_sum, fd_sum;
  std::vector<Rational> pos_values, poa_values;

  std::string status_summary() const {
    std::ostringstream s;
    s << "ok=" << ok;
    if (empty > 0) s << ";empty=" << empty;
    if (limit > 0) s << ";limit=" << limit;
    if (failed > 0) s << ";error=" << failed;
    return s.str();
  }
};

std::string csv_rational(const Rational& r) { return r.to_decimal(2); }

void append_range_columns(std::ostringstream& row,
                          const std::vector<Rational>& values) {
  if (values.empty()) {
    row << ",,,";
    return;
  }
  Rational sum, lo = values[0], hi = values[0];
  for (const auto& v : values) {
    sum += v;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  Rational mean = sum / Rational::from_int64(static_cast<long long>(values.size()));
  row << "," << csv_rational(mean) << "," << csv_rational(lo) << ","
      << csv_rational(hi);
}

int cmd_experiment(const std::string& suite, const std::vector<int>& sizes,
                   int count, unsigned long long seed, const std::string& welfare,
                   const std::string& out_dir, const GenFlags& gen,
                   const SolveFlags& flags) {
  if (suite != "intrinsic" && suite != "extrinsic" && suite != "stackelberg") {
    throw Error(Error::Kind::kInvalidArgument,
                "suite must be intrinsic, extrinsic or stackelberg");
  }
  fs::create_directories(fs::path(out_dir) / "instances");
  fs::create_directories(fs::path(out_dir) / "reports");
  CngGenConfig cfg = gen.to_config();
  SolverConfig solver = flags.to_config();

  std::vector<int> orders = suite == "intrinsic" ? std::vector<int>{1, 2}
                                                 : std::vector<int>{1};
  std::ostringstream csv;
  csv << "# lois-results v1\n";
  csv << "size,method,time_s,ics,f_a,f_d,pos,pos_lo,pos_hi,poa,poa_lo,poa_hi,"
         "status\n";

  for (int size : sizes) {
    // Instances are shared across methods at a given size.
    std::vector<CngInstance> instances;
    std::vector<std::string> stems;
    for (int i = 0; i < count; ++i) {
      unsigned long long s = seed + static_cast<unsigned long long>(i);
      CngInstance inst = generate_instance(s, size, cfg);
      fs::path path =
          fs::path(out_dir) / "instances" / instance_file_name(size, s);
      write_text_file(path.string(), dump_artifact(cng_to_json(inst)));
      instances.push_back(std::move(inst));
      stems.push_back(fs::path(path).stem().string());
    }

    for (int order : orders) {
      Aggregate agg;
      std::string method = suite == "stackelberg"
                               ? "stackelberg-lois-" + std::to_string(order)
                               : "lois-" + std::to_string(order);
      for (int i = 0; i < count; ++i) {
        const CngInstance& cng = instances[static_cast<std::size_t>(i)];
        LoadedInstance inst;
        inst.cng = cng;
        inst.ipg = to_ipg(cng);
        inst.stem = stems[static_cast<std::size_t>(i)];

        auto write_report = [&](const SolveOutcome& outcome,
                                const std::string& tag) {
          Json report = outcome.report;
          report["instance"] = inst.stem + ".json";
          fs::path report_path = fs::path(out_dir) / "reports" /
                                 (inst.stem + "_" + method + tag + ".json");
          write_text_file(report_path.string(), dump_artifact(report));
        };
        // Values are harvested from capped runs as well (the incumbent is
        // the "best available result"); the status column still records
        // how many runs were capped.
        auto harvest = [&](const SolveOutcome& outcome, bool take_fa,
                           bool take_fd) {
          if (!outcome.report.contains("report")) return;
          const Json& rep = outcome.report.at("report");
          if (take_fa) {
            agg.fa_sum += rational_from_json(rep.at("payoffs")[0]);
            ++agg.fa_count;
            if (rep.contains("poa") && !rep.at("poa").is_null()) {
              agg.poa_values.push_back(rational_from_json(rep.at("poa")));
            }
          }
          if (take_fd) {
            agg.fd_sum += rational_from_json(rep.at("payoffs")[1]);
            ++agg.fd_count;
            if (rep.contains("pos") && !rep.at("pos").is_null()) {
              agg.pos_values.push_back(rational_from_json(rep.at("pos")));
            }
          }
        };

        auto t0 = std::chrono::steady_clock::now();
        try {
          if (suite == "extrinsic") {
            // One selection per objective, as in the reference protocol:
            // the defender-welfare run contributes f_d and the security
            // ratio, the attacker-welfare run f_a and the aggression ratio.
            bool run_fd = welfare.empty() || welfare == "fd";
            bool run_fa = welfare.empty() || welfare == "fa";
            GameStatus status = GameStatus::Found;
            SolveOutcome fd_outcome, fa_outcome;
            if (run_fd) {
              fd_outcome = run_solve(inst, order, "fd", 0, "", true,
                                     MetricSide::SecurityOnly, solver);
              write_report(fd_outcome, "_fd");
              agg.ics = fd_outcome.report.value("ic_count", 0LL);
              if (fd_outcome.status != GameStatus::Found) status = fd_outcome.status;
            }
            if (run_fa) {
              fa_outcome = run_solve(inst, order, "fa", 0, "", true,
                                     MetricSide::AggressionOnly, solver);
              write_report(fa_outcome, "_fa");
              agg.ics = fa_outcome.report.value("ic_count", 0LL);
              if (fa_outcome.status != GameStatus::Found) status = fa_outcome.status;
            }
            if (run_fd) harvest(fd_outcome, false, true);
            if (run_fa) harvest(fa_outcome, true, false);
            if (status == GameStatus::Found) {
              ++agg.ok;
              agg.time_s_sum += std::chrono::duration<double>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count();
            } else if (status == GameStatus::Empty) {
              ++agg.empty;
            } else {
              ++agg.limit;
            }
          } else {
            SolveOutcome outcome;
            bool sequential = suite == "stackelberg";
            if (sequential) {
              outcome = run_solve(inst, order, "", 0, "defender", true,
                                  MetricSide::SecurityOnly, solver);
            } else {
              outcome = run_solve(inst, order, "", 0, "", true,
                                  MetricSide::Both, solver);
            }
            write_report(outcome, "");
            agg.ics = outcome.report.value("ic_count", 0LL);
            if (outcome.report.contains("report")) {
              if (sequential) {
                // Sequential reports list the leader (the defender) first.
                const Json& rep = outcome.report.at("report");
                agg.fd_sum += rational_from_json(rep.at("payoffs")[0]);
                ++agg.fd_count;
                agg.fa_sum += rational_from_json(rep.at("payoffs")[1]);
                ++agg.fa_count;
                if (rep.contains("pos") && !rep.at("pos").is_null()) {
                  agg.pos_values.push_back(rational_from_json(rep.at("pos")));
                }
              } else {
                harvest(outcome, true, true);
              }
            }
            switch (outcome.status) {
              case GameStatus::Found:
                ++agg.ok;
                agg.time_s_sum += std::chrono::duration<double>(
                                      std::chrono::steady_clock::now() - t0)
                                      .count();
                break;
              case GameStatus::Empty:
                ++agg.empty;
                break;
              case GameStatus::Limit:
                ++agg.limit;
                break;
            }
          }
        } catch (const Error& e) {
          // Record and continue; a failed instance must not sink the batch.
          std::cerr << "error on " << inst.stem << ": " << e.what() << "\n";
          ++agg.failed;
        }
      }

      std::ostringstream row;
      row << size << "," << method << ",";
      char time_buf[32];
      std::snprintf(time_buf, sizeof(time_buf), "%.3f",
                    agg.ok > 0 ? agg.time_s_sum / agg.ok : 0.0);
      row << time_buf << "," << agg.ics << ",";
      if (agg.fa_count > 0) {
        row << csv_rational(agg.fa_sum / Rational::from_int64(agg.fa_count));
      }
      row << ",";
      if (agg.fd_count > 0) {
        row << csv_rational(agg.fd_sum / Rational::from_int64(agg.fd_count));
      }
      append_range_columns(row, agg.pos_values);
      append_range_columns(row, agg.poa_values);
      row << "," << agg.status_summary();
      csv << row.str() << "\n";
      std::cout << row.str() << "\n";
    }
  }
  write_text_file((fs::path(out_dir) / "results.csv").string(), csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local-optimality solver for integer programming games"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "write seeded game instances");
  std::string gen_game = "cng", gen_out;
  int gen_nodes = 10, gen_count = 1;
  unsigned long long gen_seed = 1;
  GenFlags gen_flags;
  generate->add_option("--game", gen_game, "game family (cng)");
  generate->add_option("--nodes", gen_nodes, "node count")->required();
  generate->add_option("--seed", gen_seed, "base seed");
  generate->add_option("--count", gen_count, "number of instances");
  generate->add_option("--out", gen_out, "output directory")->required();
  gen_flags.attach(generate);

  // solve
  auto* solve = app.add_subcommand("solve", "solve one instance");
  std::string solve_instance, solve_welfare, solve_leader, solve_out;
  int solve_order = 1;
  unsigned long long solve_enumerate = 0;
  bool solve_metrics = false, solve_print_conditions = false;
  SolveFlags solve_flags;
  solve->add_option("--instance", solve_instance, "instance file")->required();
  solve->add_option("--order", solve_order, "neighborhood order m");
  solve->add_option("--welfare", solve_welfare,
                    "select the best point: fa|fd|playerN");
  solve->add_option("--enumerate", solve_enumerate, "enumerate up to K points");
  solve->add_option("--stackelberg", solve_leader,
                    "sequential solve with this leader (attacker|defender|index)");
  solve->add_flag("--metrics", solve_metrics,
                  "attach price-of-security/aggression to the report");
  solve->add_flag("--print-conditions", solve_print_conditions,
                  "print the per-player optimality conditions");
  solve->add_option("--out", solve_out, "report file (default stdout)");
  solve_flags.attach(solve);

  // check
  auto* check = app.add_subcommand("check", "cross-check solver vs oracle");
  std::string check_instance;
  int check_order = 1;
  unsigned long long check_cap = 1000000;
  bool check_corrupt = false;
  SolveFlags check_flags;
  check->add_option("--instance", check_instance, "instance file")->required();
  check->add_option("--order", check_order, "neighborhood order m");
  check->add_option("--cap", check_cap, "oracle box-size cap");
  check
      ->add_flag("--corrupt-encoding", check_corrupt,
                 "negative control: deliberately corrupt the encoding")
      ->group("");  // hidden
  check_flags.attach(check);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "batch runs with a CSV summary");
  std::string exp_suite = "intrinsic", exp_out, exp_welfare;
  std::vector<int> exp_sizes;
  int exp_count = 20;
  unsigned long long exp_seed = 1;
  GenFlags exp_gen;
  SolveFlags exp_flags;
  experiment->add_option("--suite", exp_suite, "intrinsic|extrinsic|stackelberg");
  experiment->add_option("--sizes", exp_sizes, "node counts (comma separated)")
      ->required()
      ->delimiter(',');
  experiment->add_option("--count", exp_count, "instances per size");
  experiment->add_option("--seed", exp_seed, "base seed");
  experiment->add_option("--welfare", exp_welfare,
                         "extrinsic: select only this objective (fa|fd); "
                         "default runs both");
  experiment->add_option("--out", exp_out, "output directory")->required();
  exp_gen.attach(experiment);
  exp_flags.attach(experiment, "--search-seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (generate->parsed()) {
      if (gen_game != "cng") {
        throw Error(Error::Kind::kInvalidArgument,
                    "unknown game family \"" + gen_game + "\"");
      }
      return cmd_generate(gen_out, gen_nodes, gen_seed, gen_count, gen_flags);
    }
    if (solve->parsed()) {
      return cmd_solve(solve_instance, solve_order, solve_welfare,
                       solve_enumerate, solve_leader, solve_metrics,
                       solve_print_conditions, solve_out, solve_flags);
    }
    if (check->parsed()) {
      return cmd_check(check_instance, check_order, check_cap, check_corrupt,
                       check_flags);
    }
    if (experiment->parsed()) {
      return cmd_experiment(exp_suite, exp_sizes, exp_count, exp_seed,
                            exp_welfare, exp_out, exp_gen, exp_flags);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == Error::Kind::kLimit ? kExitLimit : kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
