#include "polymer/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "polymer/error.hpp"
#include "polymer/io.hpp"
#include "polymer/riemann.hpp"

namespace polymer::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw InputError(field, "'" + text + "' is not a number");
  }
  if (used != t.size() || !std::isfinite(v)) {
    throw InputError(field, "'" + text + "' is not a finite number");
  }
  return v;
}

std::string flag_of(const std::string& key) {
  std::string k = key;
  std::replace(k.begin(), k.end(), '_', '-');
  return "--" + k;
}

int exit_for(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << '\n';
  switch (e.kind()) {
    case ErrorKind::NoAdmissibleSolution:
    case ErrorKind::NoConnection:
      return kNoSolution;
    case ErrorKind::InvalidArgument:
    case ErrorKind::PreconditionViolated:
    case ErrorKind::NotAContact:
    case ErrorKind::WrongRegion:
    case ErrorKind::UnsupportedModel:
    case ErrorKind::DegenerateState:
    case ErrorKind::RootCountMismatch:
      return kBadInput;
    default:
      return kValidationFailed;
  }
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

void emit(const RunConfig& cfg, const std::string& name, const std::string& content,
          std::ostream& out) {
  const std::string path = out_path(cfg, name);
  io::write_file(path, content);
  out << "wrote " << path << '\n';
}

void prepare_out_dir(const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw InputError("out-dir", "cannot create '" + cfg.out_dir + "': " + ec.message());
}

// ---- commands ---------------------------------------------------------------

RiemannSolution solve_for(const RunConfig& cfg, State u_left, State u_right,
                          const std::optional<Criterion>& criterion) {
  if (cfg.alpha > 0.0) {
    if (criterion) throw InputError("criterion", "only applies at alpha = 0");
    return solve_malpha(cfg.flux(), cfg.adsorption(), u_left, u_right);
  }
  return solve_m0(cfg.flux(), u_left, u_right, criterion.value_or(Criterion::IsaacsonTemple));
}

int cmd_solve(const RunConfig& cfg, State u_left, State u_right,
              const std::optional<Criterion>& criterion, std::ostream& out) {
  const RiemannSolution sol = solve_for(cfg, u_left, u_right, criterion);
  const ValidationReport report = validate(sol);
  prepare_out_dir(cfg);
  emit(cfg, "solution.json", io::dump(io::solution_json(sol, report)), out);
  emit(cfg, "profile.csv", io::profile_csv(sol, cfg.window_lo, cfg.window_hi, cfg.samples), out);
  out << "structure " << (sol.structure.empty() ? "none" : sol.structure) << ", "
      << sol.waves().size() << " waves, " << (report.ok() ? "valid" : "INVALID") << '\n';
  return report.ok() ? kOk : kValidationFailed;
}

int cmd_validate(const RunConfig& cfg, State u_left, State u_right,
                 const std::optional<Criterion>& criterion, std::ostream& out) {
  const RiemannSolution sol = solve_for(cfg, u_left, u_right, criterion);
  const ValidationReport report = validate(sol);
  prepare_out_dir(cfg);
  emit(cfg, "validation.json", io::dump(io::validation_json(report)), out);
  for (const std::string& f : report.failures) out << "failure: " << f << '\n';
  out << (report.ok() ? "valid" : "INVALID") << '\n';
  return report.ok() ? kOk : kValidationFailed;
}

int cmd_curves(const RunConfig& cfg, State u0, const std::vector<std::string>& kinds,
               double c_target, ArchSide side, std::ostream& out) {
  const FluxModel model = cfg.flux();
  const Adsorption ads = cfg.adsorption();
  prepare_out_dir(cfg);
  for (const std::string& kind : kinds) {
    if (kind == "hugoniot") {
      CurveSample curve;
      curve.kind = CurveKind::HugoniotC;
      for (int k = 1; k < cfg.samples; ++k) {
        const double c = u0.c + (c_target - u0.c) * static_cast<double>(k) / (cfg.samples - 1);
        try {
          const HugoniotPoint p = hugoniot_c_branch(model, ads, u0, c, side);
          curve.points.push_back(p.state);
          curve.values.push_back(p.sigma);
          curve.param.push_back(c);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::NoIntersection) throw;
          break;
        }
      }
      emit(cfg, "hugoniot.csv", io::curve_csv(curve), out);
    } else if (kind == "integral") {
      const CurveSample curve = trace_integral_curve(model, ads, u0, c_target, side);
      emit(cfg, "integral.csv", io::curve_csv(curve), out);
      if (curve.stalled) out << "integral curve stalled before c = " << c_target << '\n';
    } else if (kind == "contact") {
      const LevelSetComponent set = contact_level_set(model, u0);
      for (std::size_t b = 0; b < set.branches.size(); ++b) {
        emit(cfg, "contact_" + std::to_string(b) + ".csv", io::curve_csv(set.branches[b]), out);
      }
    } else {
      throw InputError("kinds", "unknown curve kind '" + kind + "'");
    }
  }
  return kOk;
}

int cmd_limit(const RunConfig& cfg, State u_minus, State u_plus, std::ostream& out) {
  const std::vector<double> seq =
      cfg.alpha_seq.empty() ? default_alpha_sequence(7, 0.1) : cfg.alpha_seq;
  const VanishingAdsorptionReport report = vanishing_adsorption_verify(
      cfg.flux(), cfg.adsorption(), u_minus, u_plus, seq, cfg.va_options());
  prepare_out_dir(cfg);
  emit(cfg, "va_report.json", io::dump(io::va_report_json(report, u_minus, u_plus)), out);
  out << "configuration " << to_string(report.contact.config) << ", va "
      << to_string(report.verdict) << '\n';
  return kOk;
}

int cmd_travwave(const RunConfig& cfg, std::ostream& out) {
  const std::vector<double> seq =
      cfg.alpha_seq.empty() ? std::vector<double>{0.2, 0.1, 0.05, 0.025, 0.0125} : cfg.alpha_seq;
  const LimitStudy study =
      limit_study(cfg.flux(), cfg.adsorption(), cfg.kappa, seq, cfg.shoot_options());
  prepare_out_dir(cfg);
  emit(cfg, "limit.csv", io::limit_csv(study), out);
  for (std::size_t k = 0; k < study.rows.size(); ++k) {
    emit(cfg, "orbit_" + std::to_string(k) + ".csv", io::orbit_csv(study.rows[k].connection),
         out);
  }
  out << "sigma_u " << io::format_double(study.limit.sigma) << '\n';
  return kOk;
}

int cmd_nonuniq(const RunConfig& cfg, State u_left, State u_right, std::ostream& out) {
  const FluxModel model = cfg.flux();
  const auto [first, second] = nonuniqueness_pair(model, u_left, u_right);
  const ValidationReport r1 = validate(first);
  const ValidationReport r2 = validate(second);
  const RiemannSolution it = solve_m0(model, u_left, u_right, Criterion::IsaacsonTemple);
  const double d12 = l1_distance(first, second, cfg.window_lo, cfg.window_hi);
  const double d_it1 = l1_distance(it, first, cfg.window_lo, cfg.window_hi);
  const double d_it2 = l1_distance(it, second, cfg.window_lo, cfg.window_hi);

  prepare_out_dir(cfg);
  emit(cfg, "nonuniq_first.json", io::dump(io::solution_json(first, r1)), out);
  emit(cfg, "nonuniq_second.json", io::dump(io::solution_json(second, r2)), out);
  io::Json summary;
  summary["UL"] = io::state_json(u_left);
  summary["UR"] = io::state_json(u_right);
  summary["first_structure"] = first.structure;
  summary["second_structure"] = second.structure;
  summary["first_valid"] = r1.ok();
  summary["second_valid"] = r2.ok();
  summary["l1_between"] = d12;
  summary["it_structure"] = it.structure;
  summary["it_l1_to_first"] = d_it1;
  summary["it_l1_to_second"] = d_it2;
  emit(cfg, "nonuniq.json", io::dump(summary), out);
  out << "l1 between solutions " << io::format_double(d12) << '\n';
  return r1.ok() && r2.ok() ? kOk : kValidationFailed;
}

// ---- option plumbing --------------------------------------------------------

void add_model_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--model", cfg.model, "monotone or boomerang");
  sub->add_option("--mu0", cfg.mu0, "viscosity ratio at c = 0");
  sub->add_option("--mu-slope", cfg.mu_slope, "monotone: d mu / dc");
  sub->add_option("--mu-bulge", cfg.mu_bulge, "boomerang: mu = mu0 + bulge c (1 - c)");
  sub->add_option("--alpha", cfg.alpha, "adsorption strength");
  sub->add_option("--capacity", cfg.capacity, "Langmuir capacity");
  sub->add_option("--affinity", cfg.affinity, "Langmuir affinity");
  sub->add_option("--window-lo", cfg.window_lo, "lower end of the xi window");
  sub->add_option("--window-hi", cfg.window_hi, "upper end of the xi window");
  sub->add_option("--samples", cfg.samples, "profile / curve sample count");
  sub->add_option("--out-dir", cfg.out_dir, "directory for artifacts");
}

std::vector<std::string> inject_config(std::vector<std::string> args, CLI::App& app) {
  std::string path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) throw InputError("config", "missing file name");
      path = args[k + 1];
      args.erase(args.begin() + static_cast<long>(k), args.begin() + static_cast<long>(k) + 2);
      break;
    }
    if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
      args.erase(args.begin() + static_cast<long>(k));
      break;
    }
  }
  if (path.empty() || args.empty()) return args;

  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(args.front());
  } catch (const CLI::OptionNotFound&) {
    return args;
  }
  std::vector<std::string> injected;
  for (const std::string& token : config_file_args(path)) {
    const std::string name = token.substr(0, token.find('='));
    if (sub->get_option_no_throw(name) != nullptr) {
      injected.push_back(token);
      continue;
    }
    bool known = false;
    for (const CLI::App* other : app.get_subcommands({})) {
      known = known || other->get_option_no_throw(name) != nullptr;
    }
    if (!known) throw InputError(name.substr(2), "unknown config key in " + path);
  }
  // Config values go first so that later command-line flags take precedence.
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

}  // namespace

// ---- RunConfig --------------------------------------------------------------

void RunConfig::validate() const {
  if (model != "monotone" && model != "boomerang") {
    throw InputError("model", "expected 'monotone' or 'boomerang', got '" + model + "'");
  }
  if (!(alpha >= 0.0)) throw InputError("alpha", "must be >= 0");
  if (!(capacity > 0.0)) throw InputError("capacity", "must be > 0");
  if (!(affinity > 0.0)) throw InputError("affinity", "must be > 0");
  if (!(kappa > 0.0)) throw InputError("kappa", "must be > 0");
  if (!(alpha_bar > 0.0)) throw InputError("alpha-bar", "must be > 0");
  if (!(window_hi > window_lo)) throw InputError("window-hi", "window must be nonempty");
  for (const auto& [name, v] : {std::pair<const char*, double>{"decay-ratio", decay_ratio},
                                {"decay-scale", decay_scale},
                                {"persist-ratio", persist_ratio},
                                {"seed-offset", seed_offset},
                                {"mismatch-tol", mismatch_tol}}) {
    if (!(v > 0.0)) throw InputError(name, "tolerance must be > 0");
  }
  if (!(match_c > 0.0 && match_c < 1.0)) throw InputError("match-c", "must lie in (0, 1)");
  if (samples < 2) throw InputError("samples", "need at least 2");
  for (std::size_t k = 0; k < alpha_seq.size(); ++k) {
    if (!(alpha_seq[k] > 0.0) || (k > 0 && !(alpha_seq[k] < alpha_seq[k - 1]))) {
      throw InputError("alpha-seq", "must be positive and strictly decreasing");
    }
  }
  try {
    (void)flux();
  } catch (const Error& e) {
    throw InputError(model == "monotone" ? "mu-slope" : "mu-bulge", e.what());
  }
}

FluxModel RunConfig::flux() const {
  return model == "boomerang" ? FluxModel::boomerang(mu0, mu_bulge)
                              : FluxModel::monotone_corey(mu0, mu_slope);
}

Adsorption RunConfig::adsorption() const { return Adsorption(alpha, capacity, affinity); }

VanishingAdsorptionOptions RunConfig::va_options() const {
  VanishingAdsorptionOptions o;
  o.window_lo = window_lo;
  o.window_hi = window_hi;
  o.decay_ratio = decay_ratio;
  o.decay_scale = decay_scale;
  o.persist_ratio = persist_ratio;
  return o;
}

ShootOptions RunConfig::shoot_options() const {
  ShootOptions o;
  o.alpha_bar = alpha_bar;
  o.seed_offset = seed_offset;
  o.mismatch_tol = mismatch_tol;
  o.match_c = match_c;
  return o;
}

// ---- parsing helpers --------------------------------------------------------

State parse_state(const std::string& text, const std::string& field) {
  const std::vector<double> v = parse_list(text, field);
  if (v.size() != 2) throw InputError(field, "expected 's,c', got '" + text + "'");
  for (double x : v) {
    if (x < 0.0 || x > 1.0) throw InputError(field, "entries must lie in [0, 1]");
  }
  return {v[0], v[1]};
}

std::vector<double> parse_list(const std::string& text, const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, field));
  if (out.empty()) throw InputError(field, "empty list");
  return out;
}

Criterion parse_criterion(const std::string& text) {
  if (text == "kk") return Criterion::KeyfitzKranzer;
  if (text == "it") return Criterion::IsaacsonTemple;
  if (text == "dsm") return Criterion::DeSouzaMarchesin;
  if (text == "va") return Criterion::VanishingAdsorption;
  throw InputError("criterion", "expected kk, it, dsm or va, got '" + text + "'");
}

std::vector<std::string> config_file_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("config", "cannot read '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError("config", path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw InputError("config", path + ":" + std::to_string(lineno) + ": empty key");
    out.push_back(flag_of(key) + "=" + value);
  }
  return out;
}

// ---- entry point ------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string u_left_text, u_right_text, u0_text, criterion_text, alpha_seq_text;
  std::string kinds_text = "hugoniot,integral,contact";
  std::string side_text = "lower";
  double c_target = std::numeric_limits<double>::quiet_NaN();
  double c_right = std::numeric_limits<double>::quiet_NaN();

  CLI::App app{"Exact Riemann solutions for polymer flooding with adsorption"};
  app.footer("Every command also accepts --config FILE with key=value lines; flags win.");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  CLI::App* solve = app.add_subcommand("solve", "solve a Riemann problem, write JSON and CSV");
  CLI::App* validate_cmd = app.add_subcommand("validate", "solve and check the solution");
  for (CLI::App* sub : {solve, validate_cmd}) {
    add_model_options(sub, cfg);
    sub->add_option("--uL", u_left_text, "left state s,c")->required();
    sub->add_option("--uR", u_right_text, "right state s,c")->required();
    sub->add_option("--criterion", criterion_text, "kk, it, dsm or va (alpha = 0 only)");
  }

  CLI::App* curves = app.add_subcommand("curves", "sample c-family curves through a state");
  add_model_options(curves, cfg);
  curves->add_option("--u0", u0_text, "base state s,c")->required();
  curves->add_option("--kinds", kinds_text, "comma list of hugoniot, integral, contact");
  curves->add_option("--c-target", c_target, "end concentration");
  curves->add_option("--side", side_text, "lower or upper side of the arch apex");

  CLI::App* limit = app.add_subcommand("limit", "vanishing-adsorption check of a contact");
  add_model_options(limit, cfg);
  limit->add_option("--uM", u_left_text, "state behind the contact s,c")->required();
  limit->add_option("--uP", u_right_text, "state ahead of the contact s,c")->required();
  limit->add_option("--alpha-seq", alpha_seq_text, "decreasing alphas, comma separated");
  limit->add_option("--decay-ratio", cfg.decay_ratio, "admissible if last < ratio * first");
  limit->add_option("--decay-scale", cfg.decay_scale, "and last < scale * window * state diameter");
  limit->add_option("--persist-ratio", cfg.persist_ratio, "not admissible if last > ratio * first");

  CLI::App* travwave = app.add_subcommand("travwave", "undercompressive traveling waves");
  add_model_options(travwave, cfg);
  travwave->add_option("--alpha-seq", alpha_seq_text, "decreasing alphas, comma separated");
  travwave->add_option("--kappa", cfg.kappa, "diffusion ratio");
  travwave->add_option("--alpha-bar", cfg.alpha_bar, "largest alpha attempted");
  travwave->add_option("--seed-offset", cfg.seed_offset, "start distance from each rest point");
  travwave->add_option("--mismatch-tol", cfg.mismatch_tol, "accepted |mismatch| at the matching line");
  travwave->add_option("--match-c", cfg.match_c, "concentration of the matching line");

  CLI::App* nonuniq = app.add_subcommand("nonuniq", "two solutions of one crossing problem");
  add_model_options(nonuniq, cfg);
  nonuniq->add_option("--uL", u_left_text, "left state s,c above the apex")->required();
  nonuniq->add_option("--uR", u_right_text, "right state s,c");
  nonuniq->add_option("--cR", c_right, "right concentration; s taken on the level of uL");

  try {
    std::vector<std::string> argv = inject_config(args, app);
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  try {
    if (!alpha_seq_text.empty()) cfg.alpha_seq = parse_list(alpha_seq_text, "alpha-seq");
    if (*travwave && travwave->get_option("--model")->count() == 0) cfg.model = "boomerang";
    cfg.validate();
    std::optional<Criterion> criterion;
    if (!criterion_text.empty()) criterion = parse_criterion(criterion_text);

    if (*solve || *validate_cmd) {
      const State u_left = parse_state(u_left_text, "uL");
      const State u_right = parse_state(u_right_text, "uR");
      return *solve ? cmd_solve(cfg, u_left, u_right, criterion, out)
                    : cmd_validate(cfg, u_left, u_right, criterion, out);
    }
    if (*curves) {
      const State u0 = parse_state(u0_text, "u0");
      if (std::isnan(c_target)) c_target = u0.c < 0.5 ? 1.0 : 0.0;
      if (c_target < 0.0 || c_target > 1.0) throw InputError("c-target", "must lie in [0, 1]");
      ArchSide side = ArchSide::Lower;
      if (side_text == "upper") {
        side = ArchSide::Upper;
      } else if (side_text != "lower") {
        throw InputError("side", "expected lower or upper");
      }
      std::vector<std::string> kinds;
      std::stringstream ss(kinds_text);
      for (std::string k; std::getline(ss, k, ',');) kinds.push_back(trim(k));
      return cmd_curves(cfg, u0, kinds, c_target, side, out);
    }
    if (*limit) {
      return cmd_limit(cfg, parse_state(u_left_text, "uM"), parse_state(u_right_text, "uP"), out);
    }
    if (*travwave) return cmd_travwave(cfg, out);
    if (*nonuniq) {
      const State u_left = parse_state(u_left_text, "uL");
      State u_right;
      if (!u_right_text.empty()) {
        u_right = parse_state(u_right_text, "uR");
      } else if (!std::isnan(c_right)) {
        if (!(u_left.s > 0.0)) throw InputError("uL", "needs s > 0");
        const double level = cfg.flux().f(u_left.s, u_left.c) / u_left.s;
        const auto roots = line_roots(cfg.flux(), c_right, level, 0.0);
        if (!roots.lower) throw InputError("cR", "level of uL does not reach this concentration");
        u_right = {*roots.lower, c_right};
      } else {
        throw InputError("uR", "give --uR or --cR");
      }
      return cmd_nonuniq(cfg, u_left, u_right, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const Error& e) {
    return exit_for(e, err);
  }
  return kBadInput;
}

}  // namespace polymer::cli
