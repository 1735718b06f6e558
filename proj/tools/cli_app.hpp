#pragma once

// majolab command-line front end. Everything lives in run() so the test suite
// can drive it in-process with captured streams.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "majolab/majolab.hpp"

namespace majolab::cli {

enum Exit : int { kOk = 0, kComputation = 1, kConfig = 2, kViolation = 3 };

struct RunConfig {
  std::string command;
  std::string model;
  std::optional<int> L;
  std::optional<double> delta, lambda, gamma;
  std::vector<double> L_grid, delta_grid, lambda_grid, gamma_grid;
  std::size_t modes = 12;
  std::string spec_path;
  std::optional<double> kappa, uv_cutoff;
  double tail_tol = kDefaultTailTol;
  double tol = -1.0;  // per-command default when negative
  std::string direction;
  std::string q_of_g;
  std::string format = "json";
  std::string output;
  std::string csv;
  std::uint64_t seed = 20061;
  // ed
  std::optional<int> N;
  std::optional<int> block;
  std::string block_flow;
  bool compare_formula = false;
  std::string cache_dir;
  // verify
  std::string suite = "all";
  std::size_t count = 100;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

// Turn {"flag": value, ...} into argv fragments. Keys already present on the
// command line are skipped so explicit flags win.
inline std::vector<std::string> config_args(const json& cfg, const std::vector<std::string>& cli) {
  if (!cfg.is_object()) throw ConfigError("config file must hold a JSON object");
  std::vector<std::string> out;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") continue;
    const std::string flag = "--" + key;
    const bool given = std::any_of(cli.begin(), cli.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& e : value) joined += (joined.empty() ? "" : ",") + scalar_text(e);
      out.push_back(flag);
      out.push_back(joined);
    } else if (!value.is_null()) {
      out.push_back(flag);
      out.push_back(scalar_text(value));
    }
  }
  return out;
}

// "1..6" or "1,2,4"
inline std::vector<int> parse_blocks(const std::string& text) {
  std::vector<int> out;
  try {
    if (const auto dots = text.find(".."); dots != std::string::npos) {
      const int a = std::stoi(text.substr(0, dots));
      const int b = std::stoi(text.substr(dots + 2));
      if (b < a) throw ConfigError("empty block range " + text);
      for (int i = a; i <= b; ++i) out.push_back(i);
    } else {
      std::istringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    }
  } catch (const std::logic_error&) {
    throw ConfigError("bad block list " + text);
  }
  if (out.empty()) throw ConfigError("bad block list " + text);
  return out;
}

struct Sink {
  std::ostream* os;
  std::unique_ptr<std::ofstream> file;
};

inline Sink open_sink(const std::string& path, std::ostream& fallback) {
  if (path.empty() || path == "-") return {&fallback, nullptr};
  auto f = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*f) throw Error(ErrorCode::IoError, "cannot write " + path);
  std::ostream* os = f.get();
  return {os, std::move(f)};
}

inline void write_csv_file(const std::string& path, const FlowReport& r) {
  if (path.empty()) return;
  auto sink = open_sink(path, std::cout);
  write_flow_csv(*sink.os, r);
}

inline void emit_json(const RunConfig& c, const json& j, std::ostream& out) {
  auto sink = open_sink(c.output, out);
  *sink.os << j.dump(2) << '\n';
}

inline FlowDirection parse_direction(const std::string& s) {
  if (s == "ascending") return FlowDirection::AscendingMajorizes;
  if (s == "descending") return FlowDirection::DescendingMajorizes;
  throw ConfigError("direction must be ascending or descending");
}

inline double tol_or(const RunConfig& c, double fallback) { return c.tol < 0.0 ? fallback : c.tol; }

inline CFTSpecDocument load_cft(const RunConfig& c) {
  if (c.spec_path.empty()) throw ConfigError("--spec is required for the cft model");
  json j;
  try {
    j = json::parse(read_file(c.spec_path));
  } catch (const json::parse_error& e) {
    throw ConfigError(c.spec_path + ": " + e.what());
  }
  auto doc = cft_spec_from_json(j);
  if (c.kappa) doc.params.kappa = *c.kappa;
  if (c.uv_cutoff) doc.params.uv_cutoff = *c.uv_cutoff;
  doc.params.validate();
  return doc;
}

inline ChainModel chain_model(const RunConfig& c) {
  if (c.model == "xx") {
    if (!c.L) throw ConfigError("--L is required for the xx model");
    return XXChain{*c.L};
  }
  if (c.model == "heisenberg") {
    if (!c.delta) throw ConfigError("--delta is required for the heisenberg model");
    return HeisenbergChain{*c.delta};
  }
  if (c.model == "xy") {
    if (!c.lambda || !c.gamma) throw ConfigError("--lambda and --gamma are required for the xy model");
    return XYChain{*c.lambda, *c.gamma};
  }
  throw ConfigError("unknown model " + c.model);
}

// One grid flag per flow; picks the family it implies.
inline std::pair<ModelFamily, std::vector<double>> chain_family(const RunConfig& c) {
  const int grids = !c.L_grid.empty() + !c.delta_grid.empty() + !c.lambda_grid.empty() +
                    !c.gamma_grid.empty();
  if (grids != 1) throw ConfigError("exactly one of --L-grid, --delta-grid, --lambda-grid, --gamma-grid");
  if (c.model == "xx") {
    if (c.L_grid.empty()) throw ConfigError("the xx model flows along --L-grid");
    return {XXBlockFamily{}, c.L_grid};
  }
  if (c.model == "heisenberg") {
    if (c.delta_grid.empty()) throw ConfigError("the heisenberg model flows along --delta-grid");
    return {HeisenbergFamily{}, c.delta_grid};
  }
  if (c.model == "xy") {
    if (!c.lambda_grid.empty()) {
      if (!c.gamma || c.lambda) throw ConfigError("a lambda flow needs --gamma and no --lambda");
      return {XYLambdaFamily{*c.gamma}, c.lambda_grid};
    }
    if (!c.gamma_grid.empty()) {
      if (!c.lambda || c.gamma) throw ConfigError("a gamma flow needs --lambda and no --gamma");
      return {XYGammaFamily{*c.lambda}, c.gamma_grid};
    }
    throw ConfigError("the xy model flows along --lambda-grid or --gamma-grid");
  }
  throw ConfigError("unknown model " + c.model);
}

inline int verdict_exit(const FlowReport& r) { return r.levels.fine_grained ? kOk : kViolation; }

// --- spectrum --------------------------------------------------------------

inline int cmd_spectrum(const RunConfig& c, std::ostream& out) {
  if (c.model == "cft") {
    const auto doc = load_cft(c);
    if (!c.L) throw ConfigError("--L is required");
    const double q = q_of_L(*c.L, doc.params);
    const auto z = z_tilde(doc.spectrum, q, c.tail_tol);
    const auto d = eigenvalues(doc.spectrum, q, c.tail_tol);
    auto sink = open_sink(c.output, out);
    if (c.format == "csv") {
      *sink.os << "index,weight\n";
      for (std::size_t i = 0; i < d.size(); ++i) *sink.os << i << ',' << format_double(d[i]) << '\n';
    } else {
      json j{{"model", "cft"}, {"L", *c.L}, {"q", q}, {"terms_used", z.terms_used},
             {"spectrum", to_json(doc.spectrum, doc.params)}, {"weights", to_json(d)}};
      *sink.os << j.dump(2) << '\n';
    }
    return kOk;
  }
  const ChainModel m = chain_model(c);
  validate(m);
  std::size_t modes = c.modes;
  if (const auto* xx = std::get_if<XXChain>(&m)) modes = std::min<std::size_t>(modes, xx->L);
  const auto s = assemble_model(m, modes);
  auto sink = open_sink(c.output, out);
  if (c.format == "csv") {
    *sink.os << "# tail_bound=" << format_double(s.tail_bound) << '\n' << "index,weight\n";
    for (std::size_t i = 0; i < s.dist.size(); ++i)
      *sink.os << i << ',' << format_double(s.dist[i]) << '\n';
  } else {
    *sink.os << to_json(s).dump(2) << '\n';
  }
  return kOk;
}

// --- flow ------------------------------------------------------------------

inline int cmd_flow(const RunConfig& c, std::ostream& out) {
  const double tol = tol_or(c, kDefaultTol);
  FlowReport report;
  json j;
  if (c.model == "cft") {
    const auto doc = load_cft(c);
    if (!c.q_of_g.empty()) {
      if (!c.L_grid.empty()) throw ConfigError("--q-of-g and --L-grid are exclusive");
      std::ifstream in(c.q_of_g);
      if (!in) throw ConfigError("cannot open " + c.q_of_g);
      report = check_parameter_flow(doc.spectrum, qflow_from_csv(in), tol, c.tail_tol);
    } else {
      if (c.L_grid.empty()) throw ConfigError("the cft model needs --L-grid or --q-of-g");
      report = check_L_flow(doc.spectrum, doc.params, c.L_grid, c.tail_tol, tol);
    }
    j["report"] = to_json(report);
  } else {
    const auto [family, grid] = chain_family(c);
    auto f = flow(family, grid, c.modes);
    if (!c.direction.empty()) f.direction = parse_direction(c.direction);
    report = chain_flow_report(f, tol);
    j["flow"] = to_json(f);
    j["report"] = to_json(report);
  }
  if (c.format == "csv") {
    auto sink = open_sink(c.output, out);
    write_flow_csv(*sink.os, report);
  } else {
    emit_json(c, j, out);
  }
  write_csv_file(c.csv, report);
  return verdict_exit(report);
}

// --- ed --------------------------------------------------------------------

inline EdModel ed_model(const RunConfig& c) {
  if (c.model == "xx") return EdXX{};
  if (c.model == "heisenberg") {
    if (!c.delta) throw ConfigError("--delta is required for the heisenberg model");
    return EdHeisenberg{*c.delta};
  }
  if (c.model == "xy") {
    if (!c.lambda || !c.gamma) throw ConfigError("--lambda and --gamma are required for the xy model");
    return EdXY{*c.lambda, *c.gamma};
  }
  throw ConfigError("unknown model " + c.model);
}

inline ChainModel formula_model(const EdModel& m, int block) {
  return std::visit(
      [&](const auto& v) -> ChainModel {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, EdXX>)
          return XXChain{block};
        else if constexpr (std::is_same_v<T, EdHeisenberg>)
          return HeisenbergChain{v.delta};
        else
          return XYChain{v.lambda, v.gamma};
      },
      m);
}

inline void write_comparison(std::ostream& os, const std::vector<FlowPoint>& pts,
                             const std::vector<ChainModel>& models, const std::vector<int>& blocks) {
  os << "param,index,ed,formula\n";
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto f = assemble_model(models[p], std::min<std::size_t>(blocks[p], kMaxAssembledModes));
    const std::size_t n = std::max(pts[p].dist.size(), f.dist.size());
    for (std::size_t i = 0; i < n; ++i) {
      const double e = i < pts[p].dist.size() ? pts[p].dist[i] : 0.0;
      const double w = i < f.dist.size() ? f.dist[i] : 0.0;
      os << format_double(pts[p].param) << ',' << i << ',' << format_double(e) << ','
         << format_double(w) << '\n';
    }
  }
}

inline json ed_flow_json(const EdFlow& f) {
  json j;
  j["report"] = to_json(f.report);
  j["energies"] = f.energies;
  j["degenerate"] = f.degenerate;
  j["duality_error"] = f.duality_error;
  return j;
}

inline int cmd_ed(const RunConfig& c, std::ostream& out) {
  if (!c.N) throw ConfigError("--N is required");
  EdOptions opt;
  opt.seed = c.seed;
  std::optional<GroundStateCache> cache;
  if (!c.cache_dir.empty()) cache.emplace(c.cache_dir);
  const GroundStateCache* cp = cache ? &*cache : nullptr;
  const double tol = tol_or(c, 1e-10);

  const int grids = !c.delta_grid.empty() + !c.lambda_grid.empty() + !c.gamma_grid.empty();
  if (grids > 1) throw ConfigError("at most one coupling grid");
  if (!c.L_grid.empty()) throw ConfigError("ed flows use --block-flow, not --L-grid");
  if (grids == 1 && !c.block_flow.empty()) throw ConfigError("--block-flow and a coupling grid are exclusive");

  if (grids == 1) {
    if (!c.block) throw ConfigError("--block is required for a coupling flow");
    RunConfig fc = c;
    if (c.model == "heisenberg") fc.delta.reset();
    const auto [family, grid] = chain_family(fc);
    const FlowDirection dir = c.direction.empty() ? expected_direction(family, grid.front())
                                                  : parse_direction(c.direction);
    const auto f = ed_parameter_flow(family, *c.N, *c.block, grid, dir, tol, opt, cp);
    if (c.compare_formula) {
      std::vector<ChainModel> models;
      for (double g : grid) models.push_back(model_at(family, g));
      auto sink = open_sink(c.output, out);
      write_comparison(*sink.os, f.points, models, std::vector<int>(grid.size(), *c.block));
    } else {
      emit_json(c, ed_flow_json(f), out);
    }
    write_csv_file(c.csv, f.report);
    return verdict_exit(f.report);
  }

  const SpinChainSpec spec{ed_model(c), *c.N};
  spec.validate();
  if (!c.block_flow.empty()) {
    const auto blocks = parse_blocks(c.block_flow);
    const auto f = ed_block_flow(spec, blocks, tol, opt, cp);
    if (c.compare_formula) {
      std::vector<ChainModel> models;
      for (int b : blocks) models.push_back(formula_model(spec.model, b));
      auto sink = open_sink(c.output, out);
      write_comparison(*sink.os, f.points, models, blocks);
    } else {
      emit_json(c, ed_flow_json(f), out);
    }
    write_csv_file(c.csv, f.report);
    return verdict_exit(f.report);
  }

  const int block = c.block.value_or(*c.N / 2);
  const auto gs = solve(spec, opt, cp);
  const auto rho = reduced_spectrum(gs.state, spec.N, SiteBlock::from_boundary(block));
  if (c.compare_formula) {
    auto sink = open_sink(c.output, out);
    write_comparison(*sink.os, {{static_cast<double>(block), rho}}, {formula_model(spec.model, block)},
                     {block});
    return kOk;
  }
  json j = describe(spec);
  j["block"] = block;
  j["energy"] = gs.energy;
  j["gap"] = gs.gap;
  j["degenerate"] = gs.degenerate_flag;
  j["residual"] = gs.residual;
  j["duality_error"] = duality_error(gs.state, spec.N, SiteBlock::from_boundary(block));
  j["weights"] = to_json(rho);
  emit_json(c, j, out);
  return kOk;
}

// --- verify ----------------------------------------------------------------

struct SuiteTally {
  std::size_t checked = 0;
  std::size_t failures = 0;
  json to_json() const { return {{"checked", checked}, {"failures", failures}}; }
};

inline SuiteTally verify_appendix(Rng& rng, std::size_t count) {
  SuiteTally t;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 2 + uniform_index(rng, 15);
    const auto p = random_majorized_pair(n, 1 + uniform_index(rng, 6), rng);
    const bool ok = majorizes(p.x, p.y).x_majorized_by_y() &&
                    shannon_entropy(p.x) >= shannon_entropy(p.y) - 1e-12;
    const auto q = random_majorized_pair(2 + uniform_index(rng, 5), 1 + uniform_index(rng, 4), rng);
    const bool lemma = majorizes(direct_product(p.x, q.x), direct_product(p.y, q.y)).x_majorized_by_y();
    ++t.checked;
    if (!ok || !lemma) ++t.failures;
  }
  return t;
}

inline SuiteTally verify_cft_L(Rng& rng, std::size_t count) {
  SuiteTally t;
  for (std::size_t i = 0; i < count; ++i) {
    const auto spec = random_scaling_spectrum(rng);
    const CFTFlowParams params{0.5 + 1.5 * uniform01(rng), 1.0};
    std::vector<double> grid;
    for (double L = 2; L <= 256; L *= 2) grid.push_back(L);
    ++t.checked;
    if (!check_L_flow(spec, params, grid).levels.fine_grained) ++t.failures;
  }
  return t;
}

inline SuiteTally verify_cft_param(Rng& rng, std::size_t count) {
  SuiteTally t;
  for (std::size_t i = 0; i < count; ++i) {
    const auto spec = random_scaling_spectrum(rng);
    const auto flow = random_qflow(rng, 2 + uniform_index(rng, 7));
    ++t.checked;
    if (!check_parameter_flow(spec, flow).levels.fine_grained) ++t.failures;
    try {
      check_parameter_flow(spec, random_qflow(rng, 2 + uniform_index(rng, 7), true));
      ++t.failures;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::HypothesisViolated) ++t.failures;
    }
  }
  return t;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out) {
  static const std::vector<std::string> suites{"appendix", "cft-L", "cft-param"};
  if (c.suite != "all" && std::find(suites.begin(), suites.end(), c.suite) == suites.end())
    throw ConfigError("unknown suite " + c.suite);
  json j;
  j["seed"] = c.seed;
  j["count"] = c.count;
  bool failed = false;
  for (const auto& s : suites) {
    if (c.suite != "all" && c.suite != s) continue;
    Rng rng(c.seed);
    SuiteTally t;
    if (s == "appendix") t = verify_appendix(rng, c.count);
    if (s == "cft-L") t = verify_cft_L(rng, c.count);
    if (s == "cft-param") t = verify_cft_param(rng, c.count);
    failed = failed || t.failures > 0;
    j["suites"][s] = t.to_json();
  }
  emit_json(c, j, out);
  return failed ? kViolation : kOk;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"majorization and entanglement-spectrum lab", "majolab"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file mirroring the flags");

  auto common = [&](CLI::App* s) {
    s->add_option("--model", c.model)->check(CLI::IsMember({"xx", "heisenberg", "xy", "cft"}));
    s->add_option("--delta", c.delta);
    s->add_option("--lambda", c.lambda);
    s->add_option("--gamma", c.gamma);
    s->add_option("--tol", c.tol, "cumulant tolerance");
    s->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--output,-o", c.output);
    s->add_option("--seed", c.seed);
  };
  auto grids = [&](CLI::App* s) {
    s->add_option("--L-grid", c.L_grid)->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    s->add_option("--delta-grid", c.delta_grid)->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    s->add_option("--lambda-grid", c.lambda_grid)->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    s->add_option("--gamma-grid", c.gamma_grid)->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    s->add_option("--direction", c.direction)->check(CLI::IsMember({"ascending", "descending"}));
    s->add_option("--csv", c.csv, "flow CSV: param,entropy,largest,verdict");
  };
  auto cft = [&](CLI::App* s) {
    s->add_option("--spec", c.spec_path, "scaling-spectrum JSON");
    s->add_option("--kappa", c.kappa);
    s->add_option("--uv-cutoff", c.uv_cutoff);
    s->add_option("--tail-tol", c.tail_tol);
  };

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of one reduced density matrix");
  common(spectrum);
  cft(spectrum);
  spectrum->add_option("--L", c.L);
  spectrum->add_option("--modes,-M", c.modes);

  auto* flowc = app.add_subcommand("flow", "majorization along a block-size or coupling flow");
  common(flowc);
  cft(flowc);
  grids(flowc);
  flowc->add_option("--modes,-M", c.modes);
  flowc->add_option("--q-of-g", c.q_of_g, "CSV of g,q samples");

  auto* ed = app.add_subcommand("ed", "exact-diagonalization cross-check");
  common(ed);
  grids(ed);
  ed->add_option("--N", c.N);
  ed->add_option("--block", c.block);
  ed->add_option("--block-flow", c.block_flow, "a..b or a comma list");
  ed->add_flag("--compare-formula", c.compare_formula);
  ed->add_option("--cache-dir", c.cache_dir);

  auto* verify = app.add_subcommand("verify", "randomized theorem checks");
  verify->add_option("--suite", c.suite)->check(CLI::IsMember({"appendix", "cft-L", "cft-param", "all"}));
  verify->add_option("--count", c.count);
  verify->add_option("--seed", c.seed);
  verify->add_option("--output,-o", c.output);

  try {
    // --config is expanded before CLI11 sees the arguments.
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      if (args[i] == "--config" && i + 1 < args.size()) {
        path = args[i + 1];
        args.erase(args.begin() + i, args.begin() + i + 2);
      } else if (args[i].rfind("--config=", 0) == 0) {
        path = args[i].substr(9);
        args.erase(args.begin() + i);
      } else {
        continue;
      }
      json cfg;
      try {
        cfg = json::parse(detail::read_file(path));
      } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
      }
      const bool has_command = std::any_of(args.begin(), args.end(), [](const std::string& a) {
        return a == "spectrum" || a == "flow" || a == "ed" || a == "verify";
      });
      if (!has_command) {
        if (!cfg.contains("command")) throw ConfigError("no command given");
        args.insert(args.begin(), cfg["command"].get<std::string>());
      }
      const auto extra = detail::config_args(cfg, args);
      const auto cmd = std::find_if(args.begin(), args.end(), [](const std::string& a) {
        return a == "spectrum" || a == "flow" || a == "ed" || a == "verify";
      });
      args.insert(cmd + 1, extra.begin(), extra.end());
      break;
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "majolab: " << e.what() << '\n';
    return kConfig;
  } catch (const ConfigError& e) {
    err << "majolab: " << e.what() << '\n';
    return kConfig;
  }

  if (const char* env = std::getenv("MAJOLAB_SEED")) {
    try {
      c.seed = std::stoull(env);
    } catch (const std::logic_error&) {
      err << "majolab: MAJOLAB_SEED must be an unsigned integer\n";
      return kConfig;
    }
  }

  try {
    if (spectrum->parsed()) {
      if (c.model.empty()) throw ConfigError("--model is required");
      return detail::cmd_spectrum(c, out);
    }
    if (flowc->parsed()) {
      if (c.model.empty()) throw ConfigError("--model is required");
      return detail::cmd_flow(c, out);
    }
    if (ed->parsed()) {
      if (c.model.empty() || c.model == "cft") throw ConfigError("--model must be xx, heisenberg or xy");
      return detail::cmd_ed(c, out);
    }
    return detail::cmd_verify(c, out);
  } catch (const ConfigError& e) {
    err << "majolab: " << e.what() << '\n';
    return kConfig;
  } catch (const Error& e) {
    err << "majolab: " << e.what() << '\n';
    return (e.code() == ErrorCode::NoConvergence || e.code() == ErrorCode::IoError) ? kComputation
                                                                                     : kConfig;
  } catch (const std::exception& e) {
    err << "majolab: internal error: " << e.what() << '\n';
    return kComputation;
  }
}

}  // namespace majolab::cli
