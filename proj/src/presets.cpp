#include "nhsym/presets.hpp"

#include <functional>
#include <map>
#include <stdexcept>

namespace nhsym {

namespace {

using Pairs = std::vector<std::pair<std::string, std::string>>;

ModelSpec make(std::string name, std::string description, int dim, std::vector<ModeFamily> axes, const char* h0,
               const char* hprime, const char* group, const char* subgroup, Pairs embedding, int cutoff) {
  ModelSpec m;
  m.name = std::move(name);
  m.description = std::move(description);
  m.dimension = dim;
  m.axes = std::move(axes);
  m.h0 = PolynomialOperator::parse(h0, dim);
  m.hprime = PolynomialOperator::parse(hprime, dim);
  m.group = builtin_table(group);
  m.subgroup = builtin_table(subgroup);
  m.embedding = Embedding{std::move(embedding)};
  m.default_cutoff = cutoff;
  return m;
}

std::vector<ModeFamily> same(int dim, const ModeFamily& f) { return std::vector<ModeFamily>(dim, f); }

const Pairs kC4vToC2vModified{{"E", "E"}, {"C2", "C2"}, {"sigma_d", "sigma_d"}, {"sigma_d'", "sigma_d'"}};
const Pairs kC4vToC2{{"E", "E"}, {"C2", "C2"}};
const Pairs kC4vToCs{{"E", "E"}, {"sigma", "sigma_v'"}};
const Pairs kOhToC2h{{"E", "E"}, {"C2", "C2(-y,-x,-z)"}, {"i", "i"}, {"sigma_h", "sigma_d(y,x,z)"}};

constexpr const char* kQuartic2d = "px^2 + py^2 + x^4 + y^4";
constexpr const char* kQuartic3d = "px^2 + py^2 + pz^2 + x^4 + y^4 + z^4";
constexpr const char* kBox2d = "px^2 + py^2";
constexpr const char* kBox3d = "px^2 + py^2 + pz^2";
constexpr const char* kHo2d = "px^2 + py^2 + x^2 + y^2";

const std::map<std::string, std::function<ModelSpec()>>& registry() {
  static const std::map<std::string, std::function<ModelSpec()>> r{
      {"quartic2d_xy",
       [] {
         return make("quartic2d_xy", "2-D quartic oscillator + i g xy; ST symmetric (T sigma_v, T sigma_v'), not PT", 2,
                     same(2, ModeFamily::anharmonic(1)), kQuartic2d, "x*y", "C4v", "C2v_modified", kC4vToC2vModified, 19);
       }},
      {"quartic2d_xy3",
       [] {
         return make("quartic2d_xy3", "2-D quartic oscillator + i g xy^3", 2, same(2, ModeFamily::anharmonic(1)),
                     kQuartic2d, "x*y^3", "C4v", "C2", kC4vToC2, 19);
       }},
      {"quartic2d_xy2",
       [] {
         return make("quartic2d_xy2", "2-D quartic oscillator + i g xy^2; PT symmetric", 2,
                     same(2, ModeFamily::anharmonic(1)), kQuartic2d, "x*y^2", "C4v", "Cs", kC4vToCs, 19);
       }},
      {"quartic2d_aniso_xy",
       [] {
         return make("quartic2d_aniso_xy", "anisotropic 2-D quartic (alpha_x = 1, alpha_y = 2) + i g xy", 2,
                     {ModeFamily::anharmonic(1), ModeFamily::anharmonic(2)}, "px^2 + py^2 + x^4 + 2*y^4", "x*y", "C2v",
                     "C2", kC4vToC2, 19);
       }},
      {"box2d_xy",
       [] {
         return make("box2d_xy", "square box [-1,1]^2 + i g xy", 2, same(2, ModeFamily::box()), kBox2d, "x*y", "C4v",
                     "C2v_modified", kC4vToC2vModified, 20);
       }},
      {"box2d_xy2",
       [] {
         return make("box2d_xy2", "square box [-1,1]^2 + i g xy^2", 2, same(2, ModeFamily::box()), kBox2d, "x*y^2",
                     "C4v", "Cs", kC4vToCs, 20);
       }},
      {"box2d_xy3",
       [] {
         return make("box2d_xy3", "square box [-1,1]^2 + i g xy^3", 2, same(2, ModeFamily::box()), kBox2d, "x*y^3",
                     "C4v", "C2", kC4vToC2, 20);
       }},
      {"ho2d_xy",
       [] {
         return make("ho2d_xy", "isotropic 2-D harmonic oscillator + i g xy (exactly solvable)", 2,
                     same(2, ModeFamily::harmonic()), kHo2d, "x*y", "C4v", "C2v_modified", kC4vToC2vModified, 20);
       }},
      {"ho2d_xy2",
       [] {
         return make("ho2d_xy2", "non-Hermitian Barbanis model: isotropic 2-D harmonic oscillator + i g xy^2", 2,
                     same(2, ModeFamily::harmonic()), kHo2d, "x*y^2", "C4v", "Cs", kC4vToCs, 20);
       }},
      {"quartic3d_zxy",
       [] {
         return make("quartic3d_zxy", "3-D quartic oscillator + i g z(x+y); ST symmetric (C2' T, sigma_h T)", 3,
                     same(3, ModeFamily::anharmonic(1)), kQuartic3d, "z*(x+y)", "Oh", "C2h", kOhToC2h, 9);
       }},
      {"quartic3d_aniso",
       [] {
         return make("quartic3d_aniso",
                     "anisotropic 3-D quartic (alpha = 1, 3/2, 2) + i g z(x+y); diagonalized in Ci", 3,
                     {ModeFamily::anharmonic(1), ModeFamily::anharmonic(Rational(3, 2)), ModeFamily::anharmonic(2)},
                     "px^2 + py^2 + pz^2 + x^4 + 3/2*y^4 + 2*z^4", "z*(x+y)", "D2h", "Ci", Pairs{{"E", "E"}, {"i", "i"}},
                     9);
       }},
      {"box3d_zxy",
       [] {
         return make("box3d_zxy", "cubic box [-1,1]^3 + i g z(x+y)", 3, same(3, ModeFamily::box()), kBox3d, "z*(x+y)",
                     "Oh", "C2h", kOhToC2h, 8);
       }},
  };
  return r;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

ModelSpec preset(const std::string& name) {
  const auto& r = registry();
  auto it = r.find(name);
  if (it == r.end()) {
    std::string msg = "unknown preset '" + name + "'; available:";
    for (const auto& n : preset_names()) msg += " " + n;
    throw std::invalid_argument(msg);
  }
  ModelSpec m = it->second();
  validate_model(m);
  return m;
}

}  // namespace nhsym
