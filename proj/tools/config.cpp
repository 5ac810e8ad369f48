#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include "nhsym/presets.hpp"

namespace nhsym::cli {

namespace {

const char* const kTaskNames[] = {"spectrum", "sweep", "ep_search", "perturbation_report", "symmetry_scan",
                                  "oracle_compare"};

Rational parse_rational(const std::string& text) {
  std::size_t used = 0;
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const long long n = std::stoll(num, &used);
  if (used != num.size()) throw std::invalid_argument("bad rational '" + text + "'");
  if (slash == std::string::npos) return Rational(n);
  const std::string den = text.substr(slash + 1);
  const long long d = std::stoll(den, &used);
  if (used != den.size() || d <= 0) throw std::invalid_argument("bad rational '" + text + "'");
  return Rational(n, d);
}

}  // namespace

std::string to_string(Task t) { return kTaskNames[static_cast<int>(t)]; }

Task task_from_string(const std::string& name) {
  for (int k = 0; k < 6; ++k)
    if (name == kTaskNames[k]) return static_cast<Task>(k);
  throw std::invalid_argument("unknown task '" + name +
                              "' (spectrum, sweep, ep_search, perturbation_report, symmetry_scan, oracle_compare)");
}

ConfigError::ConfigError(const std::string& path, int line, int column, const std::string& what)
    : std::runtime_error(path + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[digest[k] >> 4];
    out += hex[digest[k] & 15];
  }
  return out;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string path) : path_(std::move(path)) {}

  [[noreturn]] void fail(const YAML::Node& n, const std::string& what) const {
    const YAML::Mark m = n.Mark();
    throw ConfigError(path_, m.line + 1, m.column + 1, what);
  }

  void only_keys(const YAML::Node& map, std::initializer_list<const char*> keys) const {
    if (!map.IsMap()) fail(map, "expected a mapping");
    for (const auto& kv : map) {
      const auto k = kv.first.as<std::string>();
      bool known = false;
      for (const char* allowed : keys) known = known || k == allowed;
      if (!known) fail(kv.first, "unknown key '" + k + "'");
    }
  }

  template <typename T>
  T scalar(const YAML::Node& n, const std::string& what) const {
    if (!n.IsScalar()) fail(n, what + " must be a scalar");
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      fail(n, "bad value '" + n.Scalar() + "' for " + what);
    }
  }

  std::vector<std::string> strings(const YAML::Node& n, const std::string& what) const {
    std::vector<std::string> out;
    if (n.IsScalar()) return {n.as<std::string>()};
    if (!n.IsSequence()) fail(n, what + " must be a list");
    for (const auto& x : n) out.push_back(scalar<std::string>(x, what));
    return out;
  }

  ModelSpec inline_model(const YAML::Node& m) const {
    only_keys(m, {"name", "description", "dimension", "basis", "h0", "hprime", "group", "subgroup", "embedding",
                  "default_cutoff", "expects_flip"});
    for (const char* key : {"dimension", "basis", "h0", "hprime", "group", "subgroup"})
      if (!m[key]) fail(m, std::string("inline model needs '") + key + "'");
    ModelSpec spec;
    spec.name = m["name"] ? scalar<std::string>(m["name"], "name") : "inline";
    spec.description = m["description"] ? scalar<std::string>(m["description"], "description") : "inline model";
    spec.dimension = scalar<int>(m["dimension"], "dimension");
    if (spec.dimension < 1 || spec.dimension > 3) fail(m["dimension"], "dimension must be 1, 2 or 3");

    const YAML::Node b = m["basis"];
    only_keys(b, {"kind", "scale", "quartic"});
    const auto kind = scalar<std::string>(b["kind"], "basis kind");
    try {
      switch (mode_kind_from_string(kind)) {
        case ModeKind::harmonic: {
          const double s = b["scale"] ? scalar<double>(b["scale"], "scale") : 1.0;
          spec.axes.assign(spec.dimension, ModeFamily::harmonic(s));
          break;
        }
        case ModeKind::box: spec.axes.assign(spec.dimension, ModeFamily::box()); break;
        case ModeKind::anharmonic: {
          std::vector<std::string> q(spec.dimension, "1");
          if (b["quartic"]) q = strings(b["quartic"], "quartic");
          if (static_cast<int>(q.size()) == 1) q.assign(spec.dimension, q[0]);
          if (static_cast<int>(q.size()) != spec.dimension) fail(b["quartic"], "need one quartic coefficient per axis");
          for (const auto& text : q) spec.axes.push_back(ModeFamily::anharmonic(parse_rational(text)));
          break;
        }
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      fail(b, e.what());
    }

    auto poly = [&](const char* key) {
      try {
        return PolynomialOperator::parse(scalar<std::string>(m[key], key), spec.dimension);
      } catch (const std::invalid_argument& e) {
        fail(m[key], std::string(key) + ": " + e.what());
      }
    };
    spec.h0 = poly("h0");
    spec.hprime = poly("hprime");
    auto table = [&](const char* key) {
      try {
        return builtin_table(scalar<std::string>(m[key], key));
      } catch (const std::invalid_argument& e) {
        fail(m[key], e.what());
      }
    };
    spec.group = table("group");
    spec.subgroup = table("subgroup");
    if (m["embedding"]) {
      if (!m["embedding"].IsMap()) fail(m["embedding"], "embedding must map subgroup op labels to group op labels");
      for (const auto& kv : m["embedding"])
        spec.embedding.sub_to_parent.emplace_back(kv.first.as<std::string>(), scalar<std::string>(kv.second, "embedding"));
    } else if (spec.group.name == spec.subgroup.name) {
      spec.embedding = identity_embedding(spec.group);
    } else {
      fail(m, "inline model needs an 'embedding' of " + spec.subgroup.name + " in " + spec.group.name);
    }
    if (m["default_cutoff"]) spec.default_cutoff = scalar<int>(m["default_cutoff"], "default_cutoff");
    if (m["expects_flip"]) spec.expects_flip = scalar<bool>(m["expects_flip"], "expects_flip");
    try {
      validate_model(spec);
    } catch (const std::invalid_argument& e) {
      fail(m, e.what());
    }
    return spec;
  }

 private:
  std::string path_;
};

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(path, e.mark.line + 1, e.mark.column + 1, e.msg);
  }
  Reader r(path);
  if (!root.IsMap()) throw ConfigError(path, 1, 1, "config must be a mapping of sections");
  r.only_keys(root, {"model", "cutoff", "grid", "irreps", "states", "levels", "tasks", "output", "tau_real", "convergence_tol"});

  RunConfig c;
  c.path = path;
  c.checksum = sha256_hex(text);

  const YAML::Node m = root["model"];
  if (!m) throw ConfigError(path, 1, 1, "missing 'model' section");
  if (m.IsScalar() || (m.IsMap() && m["preset"])) {
    const YAML::Node p = m.IsScalar() ? m : m["preset"];
    if (m.IsMap()) r.only_keys(m, {"preset"});
    try {
      c.model = preset(r.scalar<std::string>(p, "preset"));
    } catch (const std::invalid_argument& e) {
      r.fail(p, e.what());
    }
  } else {
    c.model = r.inline_model(m);
  }

  c.cutoff = c.model.default_cutoff;
  if (root["cutoff"]) {
    c.cutoff = r.scalar<int>(root["cutoff"], "cutoff");
    if (c.cutoff < c.model.axes.front().first_index()) r.fail(root["cutoff"], "cutoff below the first basis index");
  }

  if (const YAML::Node g = root["grid"]) {
    if (g.IsSequence()) {
      c.grid.count = 0;
      std::vector<double> v;
      for (const auto& x : g) v.push_back(r.scalar<double>(x, "grid value"));
      if (v.empty()) r.fail(g, "g grid is empty");
      if (v.size() > 2) r.fail(g, "explicit grids take [g] or [start, stop]; use start/stop/count for more points");
      c.grid.start = v.front();
      c.grid.stop = v.back();
      c.grid.count = static_cast<int>(v.size());
    } else {
      r.only_keys(g, {"start", "stop", "count", "refine"});
      if (g["start"]) c.grid.start = r.scalar<double>(g["start"], "grid start");
      c.grid.stop = g["stop"] ? r.scalar<double>(g["stop"], "grid stop") : c.grid.start;
      c.grid.count = g["count"] ? r.scalar<int>(g["count"], "grid count") : 1;
      if (g["refine"]) c.grid.refine = r.scalar<bool>(g["refine"], "grid refine");
      if (c.grid.count < 1) r.fail(g["count"], "g grid is empty (count < 1)");
      if (c.grid.count > 1 && !(c.grid.stop > c.grid.start)) r.fail(g, "grid stop must exceed start");
    }
  }

  if (const YAML::Node ir = root["irreps"]) {
    for (const auto& name : r.strings(ir, "irreps")) {
      try {
        c.model.subgroup.irrep_index(name);
      } catch (const std::invalid_argument& e) {
        r.fail(ir, e.what());
      }
      c.irreps.push_back(name);
    }
  } else {
    c.irreps = c.model.subgroup.irreps;
  }
  if (root["states"]) {
    c.states = r.scalar<int>(root["states"], "states");
    if (c.states < 1) r.fail(root["states"], "states must be positive");
  }
  if (root["levels"]) {
    c.levels = r.scalar<int>(root["levels"], "levels");
    if (c.levels < 1) r.fail(root["levels"], "levels must be positive");
  }
  if (const YAML::Node t = root["tasks"]) {
    for (const auto& name : r.strings(t, "tasks")) {
      try {
        c.tasks.push_back(task_from_string(name));
      } catch (const std::invalid_argument& e) {
        r.fail(t, e.what());
      }
    }
  }
  if (root["output"]) c.output_dir = r.scalar<std::string>(root["output"], "output");
  if (root["tau_real"]) {
    c.tau_real = r.scalar<double>(root["tau_real"], "tau_real");
    if (!(c.tau_real > 0.0)) r.fail(root["tau_real"], "tau_real must be positive");
  }
  if (root["convergence_tol"]) {
    c.convergence_tol = r.scalar<double>(root["convergence_tol"], "convergence_tol");
    if (!(c.convergence_tol > 0.0)) r.fail(root["convergence_tol"], "convergence_tol must be positive");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, 0, "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace nhsym::cli
