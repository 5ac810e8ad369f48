#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "nhsym/perturb.hpp"
#include "nhsym/presets.hpp"
#include "nhsym/spectra.hpp"

namespace nhsym::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kOracleTolerance = 1e-8;

std::string csv_header(const RunConfig& c) {
  return "# nhsym config_sha256=" + c.checksum + " cutoff=" + std::to_string(c.cutoff) + " model=" + c.model.name +
         "\n";
}

json json_header(const RunConfig& c, const std::string& kind) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  j["config_sha256"] = c.checksum;
  j["cutoff"] = c.cutoff;
  j["model"] = c.model.name;
  return j;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json multiset_json(const IrrepMultiset& m) {
  json j = json::object();
  for (const auto& [irrep, mult] : m) j[irrep] = mult;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct Context {
  const RunConfig& config;
  std::ostream& log;
  RunResult& result;
  std::vector<SweepResult> sweeps;
  bool swept = false;

  void warn(const std::string& w) {
    result.warnings.push_back(w);
    result.exit_code = kUnconverged;
    log << "warning: " << w << "\n";
  }

  std::vector<double> grid() const { return linear_grid(config.grid.start, config.grid.stop, config.grid.count); }

  const std::vector<SweepResult>& ensure_sweeps() {
    if (swept) return sweeps;
    SweepOptions o;
    o.states = config.states;
    o.refine = config.grid.refine;
    for (const auto& irrep : config.irreps) {
      log << "sweep " << irrep << " (" << config.grid.count << " points, cutoff " << config.cutoff << ")\n";
      sweeps.push_back(sweep(config.model, irrep, grid(), config.cutoff, o));
    }
    swept = true;
    return sweeps;
  }
};

void task_spectrum(Context& ctx) {
  const auto& c = ctx.config;
  std::ostringstream csv;
  csv << csv_header(c) << "g,state_id,irrep,re_E,im_E,match_confidence\n";
  for (const auto& irrep : c.irreps) {
    const BlockOperators ops = prepare_block(c.model, model_block(c.model, irrep, c.cutoff));
    for (double g : ctx.grid()) {
      const Spectrum s = g == 0.0 ? eig_symmetric(ops.h0) : eig_complex(ops.at(g));
      const int n = std::min(c.states, s.size());
      for (int k = 0; k < n; ++k)
        csv << format_number(g) << ',' << k << ',' << irrep << ',' << format_number(s.values[k].real()) << ','
            << format_number(s.values[k].imag()) << ',' << format_number(1.0) << '\n';
    }
  }
  ctx.result.files["spectrum.csv"] = csv.str();
}

json reality_json(const RunConfig& c, const std::vector<SweepResult>& sweeps, const RealityReport& report) {
  json j = json_header(c, "reality");
  j["tau_real"] = c.tau_real;
  j["coalescence_rule_holds"] = report.coalescence_rule_holds();
  j["unchecked_points"] = report.unchecked_points;
  json states = json::array();
  for (const auto& s : report.states) {
    json st;
    st["irrep"] = s.irrep;
    st["state_id"] = s.state_id;
    st["root"] = complex_json(s.root);
    for (const auto& sw : sweeps)
      if (sw.irrep == s.irrep)
        for (const auto& t : sw.trajectories)
          if (t.state_id == s.state_id) {
            st["flagged"] = t.flagged;
            if (t.flagged) st["flag_reason"] = t.flag_reason;
            st["convergence"] = t.convergence;
            st["converged"] = t.converged(c.convergence_tol);
          }
    json iv = json::array();
    for (const auto& i : s.intervals) {
      json x;
      x["lo"] = i.lo;
      x["hi"] = i.hi;
      x["kind"] = i.kind == RealityKind::real ? "real" : "complex";
      if (i.partner_id >= 0) {
        x["partner_irrep"] = i.partner_irrep;
        x["partner_id"] = i.partner_id;
      }
      iv.push_back(x);
    }
    st["intervals"] = iv;
    states.push_back(st);
  }
  j["states"] = states;
  auto transitions = [](const std::vector<RealityTransition>& ts) {
    json a = json::array();
    for (const auto& t : ts) {
      json x;
      x["irrep"] = t.irrep;
      x["state_id"] = t.state_id;
      x["partner_irrep"] = t.partner_irrep;
      x["partner_id"] = t.partner_id;
      x["kind"] = to_string(t.kind);
      x["g_lo"] = t.g_lo;
      x["g_hi"] = t.g_hi;
      x["root"] = complex_json(t.root);
      a.push_back(x);
    }
    return a;
  };
  j["transitions"] = transitions(report.transitions);
  j["rule_violations"] = transitions(report.rule_violations);
  json refinements = json::object();
  for (const auto& sw : sweeps) refinements[sw.irrep] = sw.refinements;
  j["refinements"] = refinements;
  return j;
}

RealityReport classify_or_warn(Context& ctx) {
  try {
    return classify_reality(ctx.ensure_sweeps(), ctx.config.tau_real);
  } catch (const ConsistencyError& e) {
    ctx.warn(std::string("conjugation closure: ") + e.what());
    return {};
  }
}

void task_sweep(Context& ctx) {
  const auto& sweeps = ctx.ensure_sweeps();
  std::ostringstream csv;
  csv << csv_header(ctx.config);
  write_trajectories_csv(csv, sweeps);
  ctx.result.files["trajectories.csv"] = csv.str();

  const RealityReport report = classify_or_warn(ctx);
  ctx.result.files["reality.json"] = dump(reality_json(ctx.config, sweeps, report));
  for (const auto& sw : sweeps)
    for (const auto& t : sw.trajectories) {
      const std::string id = sw.irrep + " state " + std::to_string(t.state_id);
      if (t.flagged) ctx.warn(id + " flagged: " + t.flag_reason);
      if (!t.converged(ctx.config.convergence_tol))
        ctx.warn(id + " unconverged: cutoff+4 shift " + format_number(t.convergence));
    }
  if (!report.coalescence_rule_holds())
    ctx.warn(std::to_string(report.rule_violations.size()) + " coalescence(s) between different irreps");
}

void task_ep_search(Context& ctx) {
  const auto& c = ctx.config;
  const auto& sweeps = ctx.ensure_sweeps();
  const RealityReport report = classify_or_warn(ctx);
  EpOptions opt;
  opt.tau_scale = c.tau_real;

  std::set<std::tuple<std::string, int, int, double>> seen;
  json eps = json::array();
  for (const auto& t : report.transitions) {
    if (t.kind != TransitionKind::coalescence && t.kind != TransitionKind::restoration) continue;
    if (t.partner_irrep != t.irrep) continue;  // reported as a rule violation
    const auto key = std::make_tuple(t.irrep, std::min(t.state_id, t.partner_id), std::max(t.state_id, t.partner_id),
                                     t.g_lo);
    if (!seen.insert(key).second) continue;
    const SweepResult* sw = nullptr;
    for (const auto& s : sweeps)
      if (s.irrep == t.irrep) sw = &s;
    ctx.log << "ep " << t.irrep << " states " << std::get<1>(key) << "," << std::get<2>(key) << " in ["
            << t.g_lo << ", " << t.g_hi << "]\n";
    json x;
    x["irrep"] = t.irrep;
    x["tracked_states"] = json::array({std::get<1>(key), std::get<2>(key)});
    x["root"] = complex_json(t.root);
    try {
      const ExceptionalPoint ep = find_exceptional_point(c.model, *sw, t, opt);
      x["type"] = to_string(ep.kind);
      x["g_c"] = ep.g_c;
      x["bracket"] = json::array({ep.bracket_lo, ep.bracket_hi});
      x["states"] = json::array({ep.states.first, ep.states.second});
      x["value"] = complex_json(ep.value);
      x["guard_g_c"] = ep.guard_g_c;
      x["guard_shift"] = ep.guard_shift;
      x["flagged"] = ep.flagged;
      if (ep.flagged) {
        x["flag_reason"] = ep.flag_reason;
        ctx.warn(t.irrep + " EP near g = " + format_number(ep.g_c) + " flagged: " + ep.flag_reason);
      }
    } catch (const std::exception& e) {
      x["type"] = to_string(t.kind);
      x["flagged"] = true;
      x["flag_reason"] = e.what();
      ctx.warn(t.irrep + " EP search in [" + format_number(t.g_lo) + ", " + format_number(t.g_hi) +
               "] failed: " + e.what());
    }
    eps.push_back(x);
  }
  json j = json_header(c, "exceptional_points");
  j["exceptional_points"] = eps;
  ctx.result.files["eps.json"] = dump(j);
}

void task_perturbation(Context& ctx) {
  const auto& c = ctx.config;
  LevelOptions lo;
  lo.max_levels = c.levels;
  lo.tol_scale = c.tau_real;
  const auto entries = predict_reality(c.model, c.cutoff, lo);
  constexpr double kCheckG = 1e-3;
  const auto checks = cross_check(c.model, entries, c.cutoff, kCheckG);

  json levels = json::array();
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    json x;
    x["level"] = static_cast<int>(k);
    x["e0"] = e.level.e0;
    x["nu"] = e.level.nu;
    x["content"] = multiset_json(e.level.content);
    x["origin"] = to_string(e.level.origin);
    x["converged"] = e.level.converged;
    if (!e.level.note.empty()) x["note"] = e.level.note;
    json e1 = json::array();
    for (double v : e.e1) e1.push_back(v == 0.0 ? 0.0 : v);
    x["e1"] = e1;
    x["symmetry_allowed"] = e.symmetry_allowed;
    x["w_nonzero"] = e.w_nonzero;
    x["prediction"] = e.predicts_complex ? "complex for small g" : "real for small g";
    x["branching"] = multiset_json(e.branching);
    if (k < checks.size()) {
      const auto& ch = checks[k];
      json n;
      n["g"] = kCheckG;
      n["observed"] = ch.observed_complex ? "complex" : "real";
      n["predicted_im"] = ch.predicted_im;
      n["observed_im"] = ch.observed_im;
      n["resolvable"] = ch.resolvable;
      n["agrees"] = ch.agrees();
      x["numerical_check"] = n;
      if (!ch.agrees())
        ctx.log << "note: level " << format_number(e.level.e0) << " prediction and g = 1e-3 numerics disagree\n";
    }
    if (!e.level.converged) ctx.warn("level " + format_number(e.level.e0) + " not converged at cutoff+4");
    levels.push_back(x);
  }
  json j = json_header(c, "perturbation_report");
  j["group"] = c.model.group.name;
  j["subgroup"] = c.model.subgroup.name;
  j["levels"] = levels;
  ctx.result.files["perturbation.json"] = dump(j);
}

void task_symmetry(Context& ctx) {
  const auto& m = ctx.config.model;
  const ModelCheck chk = check_model(m);
  json j = json_header(ctx.config, "symmetry_scan");
  j["group"] = m.group.name;
  j["subgroup"] = m.subgroup.name;
  j["h0_invariant"] = chk.h0_invariant;
  j["hprime_invariant"] = chk.hprime_invariant;
  j["flip_exists"] = chk.flip_exists;
  json ops = json::array();
  for (const auto& s : st_symmetry_scan(m)) {
    json x;
    x["label"] = s.label;
    x["image"] = s.image;
    x["involution"] = s.involution;
    x["pt"] = s.is_pt;
    ops.push_back(x);
  }
  j["st_symmetries"] = ops;
  json comps = json::object();
  for (const auto& pc : classify_polynomial(m.hprime, m.group)) comps[pc.irrep] = pc.component.str();
  j["hprime_components"] = comps;
  const BranchingMap br = branch(m.group, m.subgroup, m.embedding);
  json b = json::object();
  for (std::size_t k = 0; k < m.group.irreps.size(); ++k) b[m.group.irreps[k]] = format_multiset(br.image[k]);
  j["branching"] = b;
  ctx.result.files["symmetry.json"] = dump(j);
}

bool is_ho_xy(const ModelSpec& m) {
  const PolynomialOperator ho = PolynomialOperator::parse("px^2 + py^2 + x^2 + y^2", 2);
  return m.dimension == 2 && m.kind() == ModeKind::harmonic && m.axes[0].scale() == 1.0 &&
         m.axes[1].scale() == 1.0 && m.h0 == ho && m.hprime == PolynomialOperator::parse("x*y", 2);
}

void task_oracle(Context& ctx) {
  const auto& c = ctx.config;
  if (!is_ho_xy(c.model))
    throw std::invalid_argument("oracle_compare needs H0 = px^2+py^2+x^2+y^2, H' = xy on the unscaled harmonic basis");
  std::vector<BlockOperators> blocks;
  for (const auto& irrep : c.model.subgroup.irreps)
    blocks.push_back(prepare_block(c.model, model_block(c.model, irrep, c.cutoff)));
  json pts = json::array();
  double worst = 0.0;
  for (double g : ctx.grid()) {
    std::vector<std::vector<cplx>> spectra;
    for (const auto& b : blocks) spectra.push_back(eig_complex(b.at(g)).values);
    const double dev = ho_xy_oracle_deviation(spectra, g, c.states);
    worst = std::max(worst, dev);
    pts.push_back(json{{"g", g}, {"max_deviation", dev}});
  }
  json j = json_header(c, "oracle_compare");
  j["states"] = c.states;
  j["tolerance"] = kOracleTolerance;
  j["points"] = pts;
  j["max_deviation"] = worst;
  j["pass"] = worst <= kOracleTolerance;
  ctx.result.files["oracle.json"] = dump(j);
  if (worst > kOracleTolerance) ctx.warn("oracle deviation " + format_number(worst) + " exceeds 1e-8");
}

}  // namespace

void apply_overrides(RunConfig& config, const RunOverrides& o) {
  if (!o.tasks.empty()) config.tasks = o.tasks;
  if (o.cutoff) {
    if (*o.cutoff < config.model.axes.front().first_index())
      throw ConfigError(config.path, 0, 0, "--cutoff below the first basis index");
    config.cutoff = *o.cutoff;
  }
  if (o.output_dir) config.output_dir = *o.output_dir;
  if (config.tasks.empty()) throw ConfigError(config.path, 0, 0, "no tasks given (config 'tasks' or --task)");
}

RunResult execute(const RunConfig& config, std::ostream& log) {
  RunResult result;
  Context ctx{config, log, result, {}, false};
  for (Task t : config.tasks) {
    log << "task " << to_string(t) << "\n";
    switch (t) {
      case Task::spectrum: task_spectrum(ctx); break;
      case Task::sweep: task_sweep(ctx); break;
      case Task::ep_search: task_ep_search(ctx); break;
      case Task::perturbation_report: task_perturbation(ctx); break;
      case Task::symmetry_scan: task_symmetry(ctx); break;
      case Task::oracle_compare: task_oracle(ctx); break;
    }
  }
  json run = json_header(config, "run");
  json tasks = json::array();
  for (Task t : config.tasks) tasks.push_back(to_string(t));
  run["tasks"] = tasks;
  run["irreps"] = config.irreps;
  run["grid"] = json{{"start", config.grid.start}, {"stop", config.grid.stop}, {"count", config.grid.count},
                     {"refine", config.grid.refine}};
  run["exit_code"] = result.exit_code;
  run["warnings"] = result.warnings;
  json files = json::array();
  for (const auto& [name, _] : result.files) files.push_back(name);
  run["files"] = files;
  result.files["run.json"] = dump(run);
  return result;
}

void write_outputs(const RunConfig& config, const RunResult& result) {
  namespace fs = std::filesystem;
  fs::create_directories(config.output_dir);
  for (const auto& [name, content] : result.files) {
    std::ofstream f(fs::path(config.output_dir) / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (fs::path(config.output_dir) / name).string());
    f << content;
  }
}

void list_presets(std::ostream& os) {
  os << std::left << std::setw(20) << "name" << std::setw(5) << "dim" << std::setw(32) << "basis" << std::setw(6)
     << "group" << std::setw(14) << "subgroup" << std::setw(8) << "cutoff"
     << "description\n";
  for (const auto& name : preset_names()) {
    const ModelSpec m = preset(name);
    os << std::left << std::setw(20) << name << std::setw(5) << m.dimension << std::setw(32) << m.axes[0].describe()
       << std::setw(6) << m.group.name << std::setw(14) << m.subgroup.name << std::setw(8) << m.default_cutoff
       << m.description << "\n";
  }
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"nhsym: symmetry-adapted spectra of H = H0 + i g H'"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> task_names;
  std::optional<int> cutoff;
  std::optional<std::string> out_dir;
  auto* run = app.add_subcommand("run", "run the tasks of a YAML config");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--task", task_names, "task override (repeatable)");
  run->add_option("--cutoff", cutoff, "basis cutoff override");
  run->add_option("--out", out_dir, "output directory override");

  app.add_subcommand("list-presets", "list the built-in models");

  std::string group;
  auto* table = app.add_subcommand("print-table", "print a character table");
  table->add_option("group", group, "group name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kOk : kInvalidConfig;
  }

  if (app.got_subcommand("list-presets")) {
    list_presets(out);
    return kOk;
  }
  if (app.got_subcommand("print-table")) {
    try {
      out << format_table(builtin_table(group));
      return kOk;
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n";
      return kInvalidConfig;
    }
  }

  RunConfig config;
  try {
    config = load_config(config_path);
    RunOverrides o;
    for (const auto& t : task_names) o.tasks.push_back(task_from_string(t));
    o.cutoff = cutoff;
    o.output_dir = out_dir;
    apply_overrides(config, o);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidConfig;
  }
  try {
    const RunResult result = execute(config, err);
    write_outputs(config, result);
    out << "wrote";
    for (const auto& [name, _] : result.files) out << ' ' << name;
    out << " to " << config.output_dir << "\n";
    return result.exit_code;
  } catch (const std::invalid_argument& e) {
    err << "error: " << config.path << ": " << e.what() << "\n";
    return kInvalidConfig;
  }
}

}  // namespace nhsym::cli
