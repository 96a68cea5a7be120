#include "gsteer/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gsteer/io.hpp"
#include "gsteer/repro.hpp"

namespace gsteer::cli {

namespace {

using io::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;

struct Settings {
  double tol = 1e-8;
  SolverConfig solver;
  std::optional<std::uint64_t> seed;
  bool json = false;
};

std::uint64_t resolve_seed(const Settings& s) {
  if (s.seed) return *s.seed;
  const char* env = std::getenv("GAUSS_STEER_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const std::string text(env);
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size() || text.front() == '-') throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw io::SchemaError("GAUSS_STEER_SEED", "expected a non-negative integer");
  }
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "% .6e", v);
  return buf;
}

Json read_input(const std::string& path) {
  if (path != "-") return io::read_file(path);
  std::ostringstream buf;
  buf << std::cin.rdbuf();
  return io::parse(buf.str());
}

Json envelope(const std::string& command, const Settings& s, Json input, Json result) {
  return Json{{"tool", "gsteer"},
              {"version", GSTEER_VERSION},
              {"command", command},
              {"seed", s.solver.seed},
              {"tol", s.tol},
              {"config", io::to_json(s.solver)},
              {"input", std::move(input)},
              {"result", std::move(result)}};
}

void psd_line(std::ostream& out, const char* label, const PsdCheck& c) {
  out << "  " << label << (c.psd ? "true " : "false") << "  min eigenvalue " << num(c.min_eigenvalue) << '\n';
}

void verdict_line(std::ostream& out, const char* label, const Verdict& v) {
  std::string state(to_string(v.state));
  state.resize(10, ' ');
  out << "  " << label << state << " gap " << num(v.value) << '\n';
}

void settings_line(std::ostream& out, const Settings& s) {
  out << "tol " << s.tol << "  seed " << s.solver.seed << "  starts " << s.solver.starts << "  samples "
      << s.solver.samples << "  max-iters " << s.solver.max_iters << "  margin " << s.solver.decision_margin << '\n';
}

int cmd_classify(const std::string& path, const Settings& s, std::ostream& out) {
  const Json input = read_input(path);
  const GaussianChannel c = io::channel_from_json(input);
  const ClassificationReport r = classify(c, s.solver, s.tol);
  if (s.json) {
    out << envelope("classify", s, input, io::to_json(r)).dump(2) << '\n';
    return kExitOk;
  }
  out << "channel on " << c.partition().m() << "+" << c.partition().n() << " modes\n";
  psd_line(out, "completely positive    ", r.cp);
  psd_line(out, "unsteerable            ", r.unsteerable);
  psd_line(out, "sa sufficient (PSD)    ", r.sa_sufficient);
  verdict_line(out, "steering-annihilating  ", r.steering_annihilating);
  verdict_line(out, "maximal unsteerable    ", r.maximal_unsteerable);
  psd_line(out, "steering-breaking      ", r.steering_breaking);
  if (r.consistency_adjusted) out << "  note: a solver verdict was downgraded to UNDECIDED for consistency\n";
  settings_line(out, s);
  return kExitOk;
}

int cmd_super(const std::string& path, const Settings& s, std::ostream& out, std::ostream& err) {
  const Json input = read_input(path);
  const GaussianSuperchannel sc = io::superchannel_from_json(input);
  const SuperchannelValidity validity = superchannel_validity(sc, s.tol);
  if (!validity.valid()) {
    err << "error: invalid superchannel: ";
    if (!validity.orthogonal) {
      err << "E is not orthogonal (||E E^T - I|| = " << validity.orthogonality_residual << ")\n";
    } else {
      const PsdCheck& bad = validity.noise_condition.psd ? validity.rotation_condition : validity.noise_condition;
      err << "positivity condition violated (min eigenvalue " << bad.min_eigenvalue << ")\n";
    }
    return kExitInvalid;
  }
  const UsSufficientReport us = us_sufficient_check(sc, s.tol);
  const MusSufficientReport mus = mus_sufficient_report(sc, s.solver, s.tol);
  const ChainReport chain_us = chain_sufficient_report(sc, s.solver, ChainMode::kUnsteerable, s.tol);
  const ChainReport chain_mus = chain_sufficient_report(sc, s.solver, ChainMode::kMaximalUnsteerable, s.tol);
  if (s.json) {
    auto chain_json = [](const ChainReport& c) {
      return Json{{"state", std::string(to_string(c.combined.state))},
                  {"pre", io::to_json(c.pre)},
                  {"post", io::to_json(c.post)}};
    };
    Json result{{"valid", io::to_json(validity)},
                {"us_sufficient", io::to_json(us)},
                {"mus_sufficient",
                 Json{{"state", std::string(to_string(mus.combined.state))},
                      {"noise_condition", io::to_json(mus.noise)},
                      {"rotation_condition", io::to_json(mus.rotation)}}},
                {"chain_us", chain_json(chain_us)},
                {"chain_mus", chain_json(chain_mus)}};
    out << envelope("super", s, input, std::move(result)).dump(2) << '\n';
    return kExitOk;
  }
  out << "superchannel on " << sc.partition().m() << "+" << sc.partition().n() << " modes\n";
  out << "  valid                  true   noise condition min eigenvalue "
      << num(validity.noise_condition.min_eigenvalue) << '\n';
  out << "  us sufficient          " << (us.holds() ? "true " : "false") << "  min eigenvalue "
      << num(us.noise_condition.min_eigenvalue) << ", form residual " << num(us.form_residual) << '\n';
  verdict_line(out, "mus sufficient         ", mus.combined);
  verdict_line(out, "chain (unsteerable)    ", chain_us.combined);
  verdict_line(out, "chain (maximal)        ", chain_mus.combined);
  settings_line(out, s);
  return kExitOk;
}

int cmd_generate(const std::string& kind, int m, int n, const Settings& s, std::ostream& out) {
  const ModePartition p(m, n);
  const std::uint64_t seed = s.solver.seed;
  Json obj;
  if (kind == "state") {
    obj = io::to_json(random_state(p, seed));
  } else if (kind == "unsteerable-state") {
    obj = io::to_json(random_unsteerable_state(p, seed));
  } else if (kind == "channel") {
    obj = io::to_json(random_channel(p, seed));
  } else if (kind == "superchannel") {
    obj = io::to_json(random_superchannel(p, seed));
  } else {
    throw io::SchemaError("kind", "unknown kind '" + kind + "'");
  }
  out << (s.json ? envelope("generate", s, Json{{"kind", kind}, {"m", m}, {"n", n}}, obj) : obj).dump(2) << '\n';
  return kExitOk;
}

int cmd_repro(const Settings& s, std::size_t trials, std::ostream& out) {
  repro::Options options;
  options.tol = s.tol;
  options.solver = s.solver;
  options.monte_carlo_trials = trials;
  const std::vector<repro::Row> rows = repro::run(options);
  std::size_t passed = 0;
  for (const auto& r : rows) passed += r.passed ? 1 : 0;
  const bool all = passed == rows.size();
  if (s.json) {
    Json table = Json::array();
    for (const auto& r : rows) {
      table.push_back(Json{{"id", r.id}, {"claim", r.claim}, {"passed", r.passed}, {"evidence", r.evidence}});
    }
    Json result{{"all_passed", all}, {"passed", passed}, {"total", rows.size()}, {"rows", std::move(table)}};
    out << envelope("repro", s, Json{{"monte_carlo_trials", trials}}, std::move(result)).dump(2) << '\n';
  } else {
    for (const auto& r : rows) {
      std::string id = r.id;
      id.resize(30, ' ');
      out << (r.passed ? "PASS  " : "FAIL  ") << id << r.claim << "\n      " << r.evidence << '\n';
    }
    settings_line(out, s);
    out << passed << "/" << rows.size() << " rows passed\n";
  }
  return all ? kExitOk : kExitInvalid;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian steering classification of states, channels and superchannels", "gsteer"};
  app.set_version_flag("--version", GSTEER_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Settings s;
  std::uint64_t seed_value = 0;
  app.add_option("--tol", s.tol, "PSD tolerance (relative to 1 + ||H||)")->capture_default_str()->check(
      CLI::PositiveNumber);
  app.add_option("--starts", s.solver.starts, "solver multi-start count")->capture_default_str();
  app.add_option("--samples", s.solver.samples, "solver random samples")->capture_default_str();
  app.add_option("--max-iters", s.solver.max_iters, "solver iterations per start")->capture_default_str();
  app.add_option("--margin", s.solver.decision_margin, "solver decision margin")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed_value, "RNG seed (fallback: GAUSS_STEER_SEED, then 0)");
  app.add_flag("--json", s.json, "emit a JSON envelope");

  std::string classify_path;
  auto* classify_cmd = app.add_subcommand("classify", "classify a channel JSON file ('-' for stdin)");
  classify_cmd->add_option("file", classify_path)->required();

  std::string super_path;
  auto* super_cmd = app.add_subcommand("super", "check a superchannel JSON file ('-' for stdin)");
  super_cmd->add_option("file", super_path)->required();

  std::string kind;
  std::vector<int> modes{1, 1};
  auto* gen_cmd = app.add_subcommand("generate", "emit a random valid instance");
  gen_cmd->add_option("kind", kind, "state | unsteerable-state | channel | superchannel")
      ->required()
      ->check(CLI::IsMember({"state", "unsteerable-state", "channel", "superchannel"}));
  gen_cmd->add_option("--modes", modes, "modes m n of subsystems A and B")->expected(2)->capture_default_str();

  std::size_t trials = 10000;
  auto* repro_cmd = app.add_subcommand("repro", "run the reference-instance table");
  repro_cmd->add_option("--trials", trials, "Monte-Carlo trials")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*seed_opt) s.seed = seed_value;
    s.solver.seed = resolve_seed(s);
    s.solver.validate();
    if (*classify_cmd) return cmd_classify(classify_path, s, out);
    if (*super_cmd) return cmd_super(super_path, s, out, err);
    if (*gen_cmd) {
      if (modes[0] < 0 || modes[1] < 1) throw io::SchemaError("--modes", "need m >= 0 and n >= 1");
      return cmd_generate(kind, modes[0], modes[1], s, out);
    }
    if (*repro_cmd) return cmd_repro(s, trials, out);
  } catch (const io::SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const InvalidInputError& e) {
    err << "error: invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitUsage;
}

}  // namespace gsteer::cli
