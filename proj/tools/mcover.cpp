#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mcover/mcover.hpp"

namespace {

using namespace mcover;

enum Exit { kOk = 0, kUsage = 1, kInvariant = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_eps(const std::string& text) {
  Rational eps;
  try {
    eps = Rational::parse(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("--eps must look like 1/k, got '" + text + "'");
  }
  if (!is_unit_fraction(eps)) throw UsageError("--eps must be a unit fraction 1/k with k >= 2, got " + text);
  return eps;
}

// Writes to path, or stdout when path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw UsageError("write to " + path + " failed");
}

StreamSpec load_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  return read_stream_jsonl(in);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

struct RunArgs {
  std::string family;
  std::string input;
  std::string algo;
  std::string eps;
  std::string format = "csv";
  std::string out;
  std::string state_in;
  std::string state_out;
  bool verify = false;
  bool opt = false;
  std::size_t budget = kDefaultBudget;
};

int cmd_run(const RunArgs& a) {
  if (a.state_in.empty() && a.family.empty() == a.input.empty()) {
    throw UsageError("run: give exactly one of --family or --input");
  }
  if (!a.state_in.empty() && !a.family.empty() && !a.input.empty()) {
    throw UsageError("run: give at most one of --family or --input with --state-in");
  }

  StreamSpec spec;
  std::optional<Algorithm> algo;
  std::optional<Rational> eps;
  if (!a.state_in.empty()) {
    SessionState st = state_from_json(read_json_file(a.state_in));
    algo = st.algorithm;
    eps = st.epsilon;
    spec = std::move(st.spec);
    if (!a.family.empty() || !a.input.empty()) {
      const StreamSpec more = a.family.empty() ? load_input(a.input) : make_family(a.family);
      if (more.machines != spec.machines) throw UsageError("run: stream machine count differs from the state");
      if (more.has_placements()) throw UsageError("run: a resumed stream cannot carry placed jobs");
      spec.family = more.family;
      spec.arrivals = replay_order(more);
    }
  } else {
    spec = a.family.empty() ? load_input(a.input) : make_family(a.family);
  }

  if (!a.algo.empty()) {
    const Algorithm chosen = parse_algorithm(a.algo);
    if (algo && *algo != chosen) throw UsageError("run: --algo differs from the algorithm stored in the state");
    algo = chosen;
  }
  if (!algo) throw UsageError("run: --algo is required");
  if (!a.eps.empty()) {
    const Rational chosen = parse_eps(a.eps);
    if (eps && *eps != chosen) throw UsageError("run: --eps differs from the epsilon stored in the state");
    eps = chosen;
  }
  if (!eps) eps = spec.epsilon.value_or(Rational(1, 8));
  if (a.budget == 0) throw UsageError("run: --budget must be positive");

  RunOptions options;
  options.verify = a.verify;
  options.compute_opt = a.opt;
  options.budget = a.budget;
  const StreamReport report = run_stream(spec, *algo, *eps, options);

  if (a.format == "csv") {
    std::ostringstream os;
    write_report_csv(os, report);
    emit(a.out, os.str());
  } else {
    emit(a.out, report_to_json(report).dump(2) + "\n");
  }
  if (!a.state_out.empty()) emit(a.state_out, state_to_json(report, spec).dump(2) + "\n");
  return kOk;
}

int cmd_gen(const std::string& family, const std::string& out) {
  std::ostringstream os;
  write_stream_jsonl(os, make_family(family));
  emit(out, os.str());
  return kOk;
}

struct CensusArgs {
  std::vector<std::string> words;
  std::string out;
};

int cmd_census(const CensusArgs& a) {
  std::string mode;
  std::map<std::string, std::string> kv;
  for (const std::string& w : a.words) {
    const auto eq = w.find('=');
    if (eq == std::string::npos) {
      if (w == "pow2" || w == "powers-of-two") {
        mode = "pow2";
      } else if (mode.empty() && (w == "geometric" || w == "arithmetic")) {
        mode = w;
      } else if (!(mode == "pow2" && w == "geometric")) {
        throw UsageError("census: unexpected word '" + w + "'");
      }
      continue;
    }
    std::string key = w.substr(0, eq);
    if (key == "ε" || key == "epsilon") key = "eps";
    kv[key] = w.substr(eq + 1);
  }
  if (mode.empty()) throw UsageError("census: mode must be arithmetic, geometric or pow2");
  const auto take = [&](const std::string& key) -> std::optional<Rational> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    Rational v = Rational::parse(it->second);
    kv.erase(it);
    return v;
  };

  json out;
  if (mode == "pow2") {
    const auto depth = take("depth");
    if (!depth || !depth->is_integer() || depth->sign() < 0 || Rational(12) < *depth) {
      throw UsageError("census pow2: depth=D with 0 <= D <= 12 is required");
    }
    if (!kv.empty()) throw UsageError("census pow2: unknown parameter " + kv.begin()->first);
    const unsigned d = static_cast<unsigned>(depth->numerator().get_ui());
    out["mode"] = "powers-of-two";
    out["depth"] = d;
    json rows = json::array();
    for (unsigned i = 0; i <= d; ++i) {
      json row;
      row["i"] = i;
      row["enumerated"] = count_multisets_with_total(CensusMode::PowersOfTwo, Rational(1, 2), pow2(i), Rational(1));
      row["recurrence"] = powers_of_two_recurrence(i).get_str();
      rows.push_back(std::move(row));
    }
    out["counts"] = rows;
    out["recurrence"] = powers_of_two_recurrence(d).get_str();
    out["enumerated"] = rows.back()["enumerated"];
    out["match"] = rows.back()["recurrence"].get<std::string>() ==
                   std::to_string(rows.back()["enumerated"].get<std::size_t>());
  } else if (mode == "geometric") {
    const Rational eps = take("eps").value_or(Rational(1, 3));
    if (eps.sign() <= 0 || !(eps < Rational(1))) throw UsageError("census geometric: eps must lie in (0, 1)");
    const Rational bound = take("bound").value_or(Rational(1));
    const Rational floor = take("floor").value_or(eps * bound);
    if (!kv.empty()) throw UsageError("census geometric: unknown parameter " + kv.begin()->first);
    const CensusResult r = distinct_load_census(CensusMode::Geometric, eps, bound, floor);
    out = census_to_json(CensusMode::Geometric, eps, bound, floor, r);
  } else {
    const auto eps_in = take("eps");
    if (!eps_in || !is_unit_fraction(*eps_in)) throw UsageError("census arithmetic: eps=1/k is required");
    const auto ub = take("ub");
    if (!ub || ub->sign() <= 0) throw UsageError("census arithmetic: ub > 0 is required");
    if (!kv.empty()) throw UsageError("census arithmetic: unknown parameter " + kv.begin()->first);
    const RoundingContext ctx = build_context(*eps_in, *ub);
    const Rational bound = Rational(2) * *ub;
    const CensusResult r = distinct_load_census(CensusMode::Arithmetic, *eps_in, bound, ctx.small_threshold());
    out = census_to_json(CensusMode::Arithmetic, *eps_in, bound, ctx.small_threshold(), r);
    out["ub"] = ub->str();
    out["grid"] = ctx.grid().str();
    out["limit"] = (Rational(1) + bound / ctx.grid()).str();
  }
  emit(a.out, out.dump(2) + "\n");
  return kOk;
}

int cmd_context(const std::string& eps_text, const std::string& ub_text, const std::string& input) {
  const Rational eps = parse_eps(eps_text);
  Rational ub;
  if (!ub_text.empty() == !input.empty()) throw UsageError("context: give exactly one of --ub or --input");
  if (!ub_text.empty()) {
    ub = Rational::parse(ub_text);
  } else {
    const StreamSpec spec = load_input(input);
    Instance inst(spec.machines);
    for (const auto& e : spec.base) inst.add(make_job(e.id, e.size, eps));
    for (const auto& e : spec.arrivals) inst.add(make_job(e.id, e.size, eps));
    ub = compute_ub(inst);
  }
  std::cout << context_to_json(build_context(eps, ub)).dump(2) << "\n";
  return kOk;
}

constexpr const char* kRunFooter =
    "CSV columns, one row per arrival:\n"
    "  arrival_id                job id of the arrival\n"
    "  arrival_size              original size\n"
    "  migrated_volume_rounded   rounded size of all jobs moved on this arrival\n"
    "  migrated_volume_original  original size of all jobs moved on this arrival\n"
    "  migration_factor          migrated_volume_original / arrival_size\n"
    "  min_load                  minimum rounded machine load afterwards\n"
    "  min_load_original         minimum original machine load afterwards\n"
    "  ub                        upper bound on OPT used for rounding\n"
    "  opt_original              exact optimum on original sizes (with --opt)\n"
    "  ratio                     opt_original / min_load_original (with --opt)\n"
    "  m_neq                     machines whose big jobs changed (online-lpt)\n"
    "  j_eq_total                jobs list-scheduled onto unchanged machines (online-lpt)\n"
    "JSON output mirrors these rows.\n"
    "Exit codes: 0 success, 1 usage or I/O error, 2 invariant violation, 3 budget exceeded.";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online machine covering with bounded migration"};
  app.require_subcommand(1);
  app.footer("Exit codes: 0 success, 1 usage or I/O error, 2 invariant violation, 3 budget exceeded.");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Replay a job stream through an online algorithm");
  run_cmd->add_option("--family", run.family, "Generated family, e.g. lpt-shift:k=2 or random:seed=1,n=10");
  run_cmd->add_option("--input", run.input, "JSONL stream file");
  run_cmd->add_option("--algo", run.algo, "jump | online-lpt | recompute-lpt");
  run_cmd->add_option("--eps", run.eps, "Rounding accuracy 1/k (default: the family's, else 1/8)");
  run_cmd->add_option("--format", run.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--out", run.out, "Report file (default stdout)");
  run_cmd->add_flag("--verify", run.verify, "Check the algorithm's invariants after every arrival");
  run_cmd->add_flag("--opt", run.opt, "Compute the exact optimum after every arrival");
  run_cmd->add_option("--budget", run.budget, "Node budget of the exact optimum search");
  run_cmd->add_option("--state-in", run.state_in, "Resume from a saved session");
  run_cmd->add_option("--state-out", run.state_out, "Save the session after the run");
  run_cmd->footer(kRunFooter);

  std::string gen_family, gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated family as a JSONL stream");
  gen_cmd->add_option("family", gen_family,
                      "lpt-shift:k=K[,eps=1/N] | jump-lb:u=U,eps=1/N | 17-16[:C=c] | swap-lb:k=K |\n"
                      "random:seed=S,n=N[,m=M][,law=uniform-grid|heavy-tail|small-flood]")
      ->required();
  gen_cmd->add_option("--out", gen_out, "Output file (default stdout)");

  CensusArgs census;
  auto* census_cmd = app.add_subcommand("census", "Count distinct loads of rounded job multisets");
  census_cmd->add_option("words", census.words,
                         "pow2 depth=D | geometric [eps=1/3] [bound=1] [floor=eps*bound] | arithmetic eps=1/k ub=U")
      ->required();
  census_cmd->add_option("--out", census.out, "Output file (default stdout)");

  std::string ctx_eps, ctx_ub, ctx_input;
  auto* ctx_cmd = app.add_subcommand("context", "Print the rounding context for an upper bound or a stream");
  ctx_cmd->add_option("--eps", ctx_eps, "Rounding accuracy 1/k")->required();
  ctx_cmd->add_option("--ub", ctx_ub, "Upper bound on OPT");
  ctx_cmd->add_option("--input", ctx_input, "JSONL stream; UB is computed from all its jobs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*gen_cmd) return cmd_gen(gen_family, gen_out);
    if (*census_cmd) return cmd_census(census);
    if (*ctx_cmd) return cmd_context(ctx_eps, ctx_ub, ctx_input);
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
