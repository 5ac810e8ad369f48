#include "nhsym/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

namespace nhsym {

std::string to_string(LevelOrigin o) {
  switch (o) {
    case LevelOrigin::nondegenerate: return "nondegenerate";
    case LevelOrigin::geometric: return "geometric";
    case LevelOrigin::dynamical: return "dynamical";
  }
  return "?";
}

namespace {

struct State {
  double e;
  int irrep;
  SparseFunction f;
};

SparseFunction expand(const BasisBlock& block, const Eigen::VectorXd& c) {
  std::map<MultiIndex, double> acc;
  for (int k = 0; k < block.size(); ++k) {
    if (c[k] == 0.0) continue;
    for (const auto& [n, a] : block.functions[k].terms) acc[n] += c[k] * a;
  }
  SparseFunction out;
  for (const auto& [n, a] : acc)
    if (std::abs(a) > 1e-15) out.emplace_back(n, a);
  return out;
}

}  // namespace

std::vector<DegenerateLevel> degenerate_levels(const ModelSpec& model, int cutoff, const LevelOptions& opt) {
  const CharacterTable& t = model.group;
  std::vector<State> states;
  std::vector<std::vector<double>> larger(t.irreps.size());
  bool have_larger = opt.check_convergence;
  for (int r = 0; r < static_cast<int>(t.irreps.size()); ++r) {
    const BasisBlock block = model_block(model, t.irreps[r], cutoff, true);
    if (block.size() == 0) continue;
    const Eigen::MatrixXd h0 = assemble_operator(model.h0, model.axes, block, block);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h0);
    for (int k = 0; k < block.size(); ++k) states.push_back({es.eigenvalues()[k], r, expand(block, es.eigenvectors().col(k))});
    if (have_larger) {
      try {
        const BasisBlock big = model_block(model, t.irreps[r], cutoff + 4, true);
        const auto v = eig_symmetric(assemble_operator(model.h0, model.axes, big, big)).real_values();
        larger[r] = v;
      } catch (const std::invalid_argument&) {
        have_larger = false;
      }
    }
  }
  std::stable_sort(states.begin(), states.end(), [](const State& a, const State& b) { return a.e < b.e; });

  std::vector<DegenerateLevel> levels;
  for (std::size_t k = 0; k < states.size() && static_cast<int>(levels.size()) < opt.max_levels;) {
    std::size_t end = k + 1;
    while (end < states.size() && states[end].e - states[end - 1].e <= opt.tol_scale * std::max(1.0, std::abs(states[end].e)))
      ++end;
    DegenerateLevel lv;
    lv.nu = static_cast<int>(end - k);
    std::vector<int> count(t.irreps.size(), 0);
    double sum = 0.0;
    for (std::size_t j = k; j < end; ++j) {
      const State& s = states[j];
      sum += s.e;
      ++count[s.irrep];
      lv.members.push_back(s.f);
      lv.member_irreps.push_back(t.irreps[s.irrep]);
      if (have_larger) {
        const auto& v = larger[s.irrep];
        double best = 1e300;
        for (double x : v) best = std::min(best, std::abs(x - s.e));
        if (best > opt.tol_scale * std::max(1.0, std::abs(s.e))) lv.converged = false;
      }
    }
    if (!have_larger && opt.check_convergence) {
      lv.converged = false;
      lv.note = "cutoff + 4 unavailable for this basis";
    }
    lv.e0 = sum / lv.nu;
    lv.spread = states[end - 1].e - states[k].e;
    int distinct = 0;
    for (int r = 0; r < static_cast<int>(t.irreps.size()); ++r) {
      if (count[r] == 0) continue;
      ++distinct;
      const int d = t.irrep_dim(r);
      if (count[r] % d != 0) {
        lv.converged = false;
        lv.note = "incomplete " + t.irreps[r] + " multiplet at the level edge";
      }
      lv.content.emplace_back(t.irreps[r], std::max(1, count[r] / d));
    }
    lv.origin = lv.nu == 1 ? LevelOrigin::nondegenerate : distinct > 1 ? LevelOrigin::dynamical : LevelOrigin::geometric;
    levels.push_back(std::move(lv));
    k = end;
  }
  return levels;
}

PerturbationEntry first_order(const ModelSpec& model, const DegenerateLevel& level, int cutoff) {
  PerturbationEntry e;
  e.level = level;
  std::vector<const SparseFunction*> m;
  for (const auto& f : level.members) m.push_back(&f);
  e.w = assemble_operator(model.hprime, model.axes, cutoff, m, m);
  e.w = 0.5 * (e.w + e.w.transpose()).eval();
  const auto ev = eig_symmetric(e.w).real_values();
  e.e1 = ev;
  const double scale = std::max(1.0, e.w.cwiseAbs().maxCoeff());
  for (double x : e.e1)
    if (std::abs(x) > kFirstOrderZero * scale) e.w_nonzero = true;
  e.predicts_complex = e.w_nonzero;

  const auto comps = classify_polynomial(model.hprime, model.group);
  for (const auto& c : comps)
    if (!c.component.is_zero() && first_order_selection_rule(model.group, level.content, c.irrep)) e.symmetry_allowed = true;

  const BranchingMap b = branch(model.group, model.subgroup, model.embedding);
  std::map<std::string, int> acc;
  for (const auto& [irrep, mult] : level.content)
    for (const auto& [sub, m2] : b.image_of(model.group, irrep)) acc[sub] += mult * m2;
  for (const auto& name : model.subgroup.irreps)
    if (acc.count(name)) e.branching.emplace_back(name, acc[name]);
  return e;
}

std::vector<PerturbationEntry> predict_reality(const ModelSpec& model, int cutoff, const LevelOptions& options) {
  std::vector<PerturbationEntry> out;
  for (const auto& lv : degenerate_levels(model, cutoff, options)) out.push_back(first_order(model, lv, cutoff));
  return out;
}

bool LevelCheck::agrees() const {
  if (resolvable) return predicted_complex == observed_complex;
  return std::abs(observed_im - predicted_im) <= 0.2 * predicted_im;
}

std::vector<LevelCheck> cross_check(const ModelSpec& model, const std::vector<PerturbationEntry>& entries, int cutoff,
                                    double g) {
  std::vector<LevelCheck> checks;
  if (entries.empty()) return checks;
  const double top = entries.back().level.e0;
  std::vector<SweepResult> sweeps;
  for (const auto& irrep : model.subgroup.irreps) {
    const BlockOperators ops = prepare_block(model, model_block(model, irrep, cutoff));
    const auto e0 = eig_symmetric(ops.h0).real_values();
    int states = 0;
    while (states < static_cast<int>(e0.size()) && e0[states] <= top + 1e-6 * std::max(1.0, top)) ++states;
    if (states == 0) continue;
    SweepOptions o;
    o.states = states;
    o.check_convergence = false;
    o.refine = false;
    sweeps.push_back(sweep(model, irrep, {0.0, g}, cutoff, o));
  }
  const RealityReport report = classify_reality(sweeps);
  for (const auto& e : entries) {
    LevelCheck c;
    c.e0 = e.level.e0;
    c.predicted_complex = e.predicts_complex;
    c.converged = e.level.converged;
    for (double x : e.e1) c.predicted_im = std::max(c.predicted_im, g * std::abs(x));
    c.resolvable = !c.predicted_complex || c.predicted_im > 10.0 * kTauReal * std::max(1.0, std::abs(c.e0));
    const double tol = 1e-6 * std::max(1.0, std::abs(c.e0));
    for (const auto& st : report.states) {
      if (std::abs(st.root.real() - c.e0) > tol) continue;
      ++c.states;
      if (st.intervals.back().kind == RealityKind::complex) c.observed_complex = true;
    }
    for (const auto& s : sweeps)
      for (const auto& t : s.trajectories)
        if (std::abs(t.points.front().value.real() - c.e0) <= tol)
          c.observed_im = std::max(c.observed_im, std::abs(t.points.back().value.imag()));
    if (c.states != e.level.nu) c.converged = false;
    checks.push_back(c);
  }
  return checks;
}

std::vector<StSymmetry> st_symmetry_scan(const ModelSpec& model) {
  std::vector<StSymmetry> out;
  const PolynomialOperator minus = -model.hprime;
  const int d = model.group.dimension;
  for (const auto& op : model.group.ops) {
    if (!(transform_polynomial(op, model.h0) == model.h0)) continue;
    if (!(transform_polynomial(op, model.hprime) == minus)) continue;
    StSymmetry s;
    s.label = op.label();
    s.image = op.image();
    s.involution = (op.matrix() * op.matrix()).isIdentity();
    s.is_pt = op.matrix() == -Eigen::MatrixXi::Identity(d, d);
    out.push_back(s);
  }
  return out;
}

}  // namespace nhsym
