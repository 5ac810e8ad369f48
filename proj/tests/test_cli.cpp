#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using namespace nhsym;
using namespace nhsym::cli;
using json = nlohmann::json;

namespace {

int line_of(const std::string& text) {
  try {
    parse_config(text, "t.yaml");
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

RunResult run_text(const std::string& text) {
  std::ostringstream log;
  RunConfig c = parse_config(text, "t.yaml");
  apply_overrides(c, {});
  return execute(c, log);
}

}  // namespace

TEST_CASE("sha256 of known strings") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("config parsing") {
  const RunConfig c = parse_config(
      "model: {preset: quartic2d_xy}\n"
      "cutoff: 12\n"
      "grid: {start: 0, stop: 0.5, count: 6, refine: false}\n"
      "irreps: [B1, B2]\n"
      "tasks: [sweep, ep_search]\n"
      "tau_real: 1e-9\n",
      "t.yaml");
  CHECK(c.model.name == "quartic2d_xy");
  CHECK(c.cutoff == 12);
  CHECK(c.grid.count == 6);
  CHECK_FALSE(c.grid.refine);
  CHECK(c.irreps == std::vector<std::string>{"B1", "B2"});
  CHECK(c.tasks == std::vector<Task>{Task::sweep, Task::ep_search});
  CHECK(c.tau_real == 1e-9);
  CHECK(c.checksum.size() == 64);

  const RunConfig d = parse_config("model: box2d_xy\ntasks: spectrum\n");
  CHECK(d.cutoff == d.model.default_cutoff);
  CHECK(d.irreps == d.model.subgroup.irreps);
  CHECK(d.checksum != c.checksum);
}

TEST_CASE("inline model") {
  const RunConfig c = parse_config(
      "model:\n"
      "  name: aniso\n"
      "  dimension: 2\n"
      "  basis: {kind: anharmonic, quartic: [1, 2]}\n"
      "  h0: px^2 + py^2 + x^4 + 2*y^4\n"
      "  hprime: x*y\n"
      "  group: C2v\n"
      "  subgroup: C2\n"
      "  embedding: {E: E, C2: C2}\n"
      "tasks: [symmetry_scan]\n");
  CHECK(c.model.name == "aniso");
  CHECK(c.model.axes[1].quartic() == Rational(2));

  const RunConfig h = parse_config(
      "model:\n  dimension: 2\n  basis: {kind: harmonic, scale: 0.55}\n  h0: px^2 + py^2 + x^4 + y^4\n"
      "  hprime: x^2 + y^2\n  group: C4v\n  subgroup: C4v\n  expects_flip: false\ntasks: [spectrum]\n");
  CHECK(h.model.axes[0].scale() == 0.55);
}

TEST_CASE("config errors are line anchored") {
  CHECK(line_of("model: {preset: ho2d_xy}\ntasks: [sweep]\nbogus: 1\n") == 3);
  CHECK(line_of("model: {preset: nope}\n") == 1);
  CHECK(line_of("model: {preset: ho2d_xy}\n\nirreps: [A1, E]\n") == 3);
  CHECK(line_of("model: {preset: ho2d_xy}\ngrid: {start: 0, stop: 1, count: 0}\n") == 2);
  CHECK(line_of("model: {preset: ho2d_xy}\ngrid: {start: 1, stop: 0, count: 3}\n") == 2);
  CHECK(line_of("model: {preset: ho2d_xy}\ntasks: [sweep, plot]\n") == 2);
  CHECK(line_of("model: {preset: ho2d_xy}\ncutoff: ten\n") == 2);
  CHECK(line_of("model: {preset: ho2d_xy\n") == 2);
  CHECK(line_of("cutoff: 3\n") == 1);
  // H' = x is not invariant under Cs (sigma realized as (x,-y) needs an even power of y).
  CHECK(line_of("model:\n  dimension: 2\n  basis: {kind: box}\n  h0: px^2 + py^2\n  hprime: y\n"
                "  group: C4v\n  subgroup: Cs\n  embedding: {E: E, sigma: sigma_v'}\n") == 2);
  CHECK(line_of("model:\n  dimension: 2\n  basis: {kind: box}\n  h0: px^2 + py^2 + x^4\n  hprime: x*y\n"
                "  group: C4v\n  subgroup: C2\n  embedding: {E: E, C2: C2}\n") == 2);

  RunConfig c = parse_config("model: ho2d_xy\n");
  CHECK_THROWS_AS(apply_overrides(c, {}), ConfigError);  // no tasks
  RunOverrides o;
  o.tasks = {Task::spectrum};
  o.cutoff = 7;
  apply_overrides(c, o);
  CHECK(c.cutoff == 7);
}

TEST_CASE("ho2d_xy sweep and oracle") {
  const std::string cfg =
      "model: ho2d_xy\ncutoff: 20\ngrid: {start: 0.1, stop: 1.0, count: 10}\nstates: 10\n"
      "tasks: [sweep, oracle_compare]\n";
  const RunResult r = run_text(cfg);
  CHECK(r.exit_code == kOk);
  const json oracle = json::parse(r.files.at("oracle.json"));
  CHECK(oracle["schema_version"] == 1);
  CHECK(oracle["cutoff"] == 20);
  CHECK(oracle["config_sha256"] == sha256_hex(cfg));
  CHECK(oracle["max_deviation"].get<double>() <= 1e-8);

  const std::string& csv = r.files.at("trajectories.csv");
  CHECK(csv.rfind("# nhsym config_sha256=" + sha256_hex(cfg) + " cutoff=20 model=ho2d_xy\n", 0) == 0);
  CHECK(csv.find("\ng,state_id,irrep,re_E,im_E,match_confidence\n") != std::string::npos);
  CHECK(csv.find("1.00000000000000e-01,0,A1,") != std::string::npos);

  const json reality = json::parse(r.files.at("reality.json"));
  CHECK(reality["coalescence_rule_holds"] == true);
  for (const auto& name : {"reality.json", "run.json", "oracle.json"})
    CHECK(json::parse(r.files.at(name))["config_sha256"] == sha256_hex(cfg));

  // Byte-identical on rerun.
  const RunResult again = run_text(cfg);
  CHECK(again.files == r.files);
}

TEST_CASE("oracle_compare rejects other models") {
  std::ostringstream log;
  RunConfig c = parse_config("model: ho2d_xy2\ntasks: [oracle_compare]\n");
  CHECK_THROWS_AS(execute(c, log), std::invalid_argument);
}

TEST_CASE("perturbation report for quartic2d_xy") {
  const RunResult r = run_text("model: quartic2d_xy\ncutoff: 15\nlevels: 8\ntasks: [perturbation_report]\n");
  const json p = json::parse(r.files.at("perturbation.json"));
  CHECK(p["levels"].size() == 8);
  for (const auto& l : p["levels"]) {
    const bool e_level = l["content"].contains("E");
    CHECK(l["prediction"] == (e_level ? "complex for small g" : "real for small g"));
    CHECK(l["numerical_check"]["agrees"] == true);
  }
}

TEST_CASE("box3d_zxy first-order values") {
  const RunResult r = run_text("model: box3d_zxy\nlevels: 7\ntasks: [perturbation_report]\n");
  const json p = json::parse(r.files.at("perturbation.json"));
  const double pi4 = std::pow(3.14159265358979323846, 4);
  const double a = 1024 * std::sqrt(2.0) / (81 * pi4);
  CHECK(p["levels"][1]["e1"].back().get<double>() == doctest::Approx(a).epsilon(1e-12));
  CHECK(p["levels"][6]["e1"].back().get<double>() == doctest::Approx(9216 * std::sqrt(2.0) / (625 * pi4)).epsilon(1e-12));
  CHECK(p["levels"][0]["prediction"] == "real for small g");
}

TEST_CASE("symmetry scan and spectrum") {
  const RunResult r = run_text("model: quartic2d_xy\ncutoff: 8\nstates: 3\ngrid: {start: 0, stop: 0.2, count: 3}\n"
                               "tasks: [symmetry_scan, spectrum]\n");
  const json s = json::parse(r.files.at("symmetry.json"));
  CHECK(s["flip_exists"] == true);
  CHECK(s["hprime_components"].contains("B2"));
  CHECK(s["branching"]["E"] == "B1+B2");
  int involutions = 0;
  for (const auto& op : s["st_symmetries"]) involutions += op["involution"].get<bool>();
  CHECK(involutions == 2);
  const std::string& csv = r.files.at("spectrum.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2 + 4 * 3 * 3);
}

TEST_CASE("unconverged results give exit code 2") {
  const RunResult r =
      run_text("model: quartic2d_xy\ncutoff: 5\nirreps: [A1]\nstates: 8\ngrid: {start: 0, stop: 0.1, count: 2}\n"
               "tasks: [sweep]\n");
  CHECK(r.exit_code == kUnconverged);
  CHECK_FALSE(r.warnings.empty());
  CHECK(json::parse(r.files.at("run.json"))["exit_code"] == kUnconverged);
}

TEST_CASE("command line") {
  auto call = [](std::vector<std::string> args, std::string& out) {
    args.insert(args.begin(), "nhsym");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream o, e;
    const int code = nhsym::cli::main(static_cast<int>(argv.size()), argv.data(), o, e);
    out = o.str() + e.str();
    return code;
  };
  std::string out;
  CHECK(call({"list-presets"}, out) == 0);
  CHECK(out.find("Barbanis") != std::string::npos);
  CHECK(out.find("quartic3d_zxy       3    anharmonic(quartic=1)           Oh    C2h") != std::string::npos);
  CHECK(call({"print-table", "Oh"}, out) == 0);
  CHECK(out.find("T2u") != std::string::npos);
  CHECK(call({"print-table", "Td"}, out) == 1);
  CHECK(call({"run", "/nonexistent.yaml"}, out) == 1);
  CHECK(call({"bogus"}, out) == 1);
}
