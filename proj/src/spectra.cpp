#include "nhsym/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <mutex>
#include <thread>

namespace nhsym {

bool is_real(cplx e, double tau_scale) { return std::abs(e.imag()) <= tau_scale * std::max(1.0, std::abs(e.real())); }

bool SpectralTrajectory::converged(double tol_scale) const {
  if (convergence < 0.0) return true;
  double mag = 1.0;
  for (const auto& p : points) mag = std::max(mag, std::abs(p.value));
  return convergence <= tol_scale * mag;
}

int SweepResult::index_of(double g) const {
  auto it = std::lower_bound(grid.begin(), grid.end(), g);
  if (it == grid.end() || *it != g) return -1;
  return static_cast<int>(it - grid.begin());
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NHSYM_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> linear_grid(double start, double stop, int count) {
  if (count < 1) throw std::invalid_argument("grid needs at least one point");
  if (count == 1) return {start};
  std::vector<double> g(count);
  for (int k = 0; k < count; ++k) g[k] = start + (stop - start) * k / (count - 1);
  return g;
}

namespace {

std::vector<cplx> block_values(const BlockOperators& ops, double g) {
  if (g == 0.0) return eig_symmetric(ops.h0).values;
  return eig_complex(ops.at(g)).values;
}

std::vector<std::vector<cplx>> solve_all(const BlockOperators& ops, const std::vector<double>& gs, int workers) {
  std::vector<std::vector<cplx>> out(gs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t k; (k = next++) < gs.size();) {
      try {
        out[k] = block_values(ops, gs[k]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int n = std::min<int>(workers, static_cast<int>(gs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

struct Track {
  double g = 0.0;
  std::vector<cplx> v;
};

struct Match {
  std::vector<cplx> v;
  std::vector<double> conf;
  bool bad = false;
  std::vector<int> ambiguous;  // reported states with non-benign low confidence
};

bool near(cplx a, cplx b) { return std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a)); }

Match match(const Track* pp, const Track& prev, const std::vector<cplx>& w, double g, int reported,
            const SweepOptions& opt) {
  const int m = static_cast<int>(prev.v.size());
  const int n = static_cast<int>(w.size());
  const int c = std::min(n, 6);
  std::vector<cplx> pred(m);
  for (int i = 0; i < m; ++i) {
    pred[i] = prev.v[i];
    if (pp) pred[i] += (prev.v[i] - pp->v[i]) * ((g - prev.g) / (prev.g - pp->g));
  }
  std::vector<std::vector<int>> cand(m);
  struct Edge {
    double d;
    int i, j;
  };
  std::vector<Edge> edges;
  std::vector<int> order(n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) order[j] = j;
    std::partial_sort(order.begin(), order.begin() + c, order.end(),
                      [&](int a, int b) { return std::abs(pred[i] - w[a]) < std::abs(pred[i] - w[b]); });
    cand[i].assign(order.begin(), order.begin() + c);
    for (int j : cand[i]) edges.push_back({std::abs(pred[i] - w[j]), i, j});
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.d < b.d; });
  std::vector<int> assign(m, -1), owner(n, -1);
  for (const auto& e : edges) {
    if (assign[e.i] >= 0 || owner[e.j] >= 0) continue;
    assign[e.i] = e.j;
    owner[e.j] = e.i;
  }
  for (int i = 0; i < m; ++i) {
    if (assign[i] >= 0) continue;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
      if (owner[j] < 0 && std::abs(pred[i] - w[j]) < best) best = std::abs(pred[i] - w[j]), assign[i] = j;
    owner[assign[i]] = i;
  }

  Match r;
  r.v.resize(m);
  r.conf.assign(m, 1.0);
  std::vector<double> disp;
  for (int i = 0; i < m; ++i) {
    r.v[i] = w[assign[i]];
    if (i < reported) disp.push_back(std::abs(r.v[i] - prev.v[i]));
  }
  std::nth_element(disp.begin(), disp.begin() + disp.size() / 2, disp.end());
  const double median = disp.empty() ? 0.0 : disp[disp.size() / 2];
  for (int i = 0; i < m; ++i) {
    const cplx a = r.v[i];
    const double best = std::abs(pred[i] - a);
    double alt = std::numeric_limits<double>::infinity();
    for (int j : cand[i]) {
      if (j == assign[i] || near(a, w[j]) || near(std::conj(a), w[j])) continue;
      const int k = owner[j];
      if (k >= 0 && (near(prev.v[k], prev.v[i]) || near(prev.v[k], std::conj(prev.v[i])))) continue;
      alt = std::min(alt, std::abs(pred[i] - w[j]));
    }
    if (std::isfinite(alt) && alt > 0.0) r.conf[i] = std::clamp(1.0 - best / alt, 0.0, 1.0);
    if (i >= reported) continue;
    const double floor = 1e-6 * std::max(1.0, std::abs(a));
    if (r.conf[i] < opt.low_confidence) {
      r.bad = true;
      r.ambiguous.push_back(i);
    }
    // A large jump only matters when a non-benign alternative is comparably close;
    // square-root motion just past a coalescence cannot be smoothed by halving.
    if (best > 3.0 * median && best > floor && r.conf[i] < opt.jump_confidence) r.bad = true;
  }
  return r;
}

class Tracker {
 public:
  Tracker(const BlockOperators& ops, const SweepOptions& opt, SweepResult& out, int reported, int tracked)
      : ops_(ops), opt_(opt), out_(out), reported_(reported), tracked_(tracked) {}

  void start(double g, const std::vector<cplx>& spectrum) {
    prev_ = Track{g, std::vector<cplx>(spectrum.begin(), spectrum.begin() + tracked_)};
    record(g, spectrum, prev_.v, std::vector<double>(tracked_, 1.0));
  }

  void advance(double g, const std::vector<cplx>& spectrum, int depth) {
    const Match r = match(have_pp_ ? &pp_ : nullptr, prev_, spectrum, g, reported_, opt_);
    if (r.bad && opt_.refine && depth < opt_.max_halvings) {
      const double mid = 0.5 * (prev_.g + g);
      const std::vector<cplx> s = block_values(ops_, mid);
      ++out_.refinements;
      advance(mid, s, depth + 1);
      advance(g, spectrum, depth + 1);
      return;
    }
    for (int i : r.ambiguous) {
      auto& t = out_.trajectories[i];
      if (!t.flagged) {
        t.flagged = true;
        t.flag_reason = "ambiguous match at g=" + format_number(g) + " (confidence " + format_number(r.conf[i]) + ")";
      }
    }
    pp_ = prev_;
    have_pp_ = true;
    prev_ = Track{g, r.v};
    record(g, spectrum, r.v, r.conf);
  }

 private:
  void record(double g, const std::vector<cplx>& spectrum, const std::vector<cplx>& v, const std::vector<double>& conf) {
    out_.grid.push_back(g);
    out_.spectra.push_back(spectrum);
    for (int i = 0; i < reported_; ++i) out_.trajectories[i].points.push_back({g, v[i], conf[i]});
  }

  const BlockOperators& ops_;
  const SweepOptions& opt_;
  SweepResult& out_;
  int reported_, tracked_;
  Track prev_, pp_;
  bool have_pp_ = false;
};

double nearest_distance(const std::vector<cplx>& s, cplx v) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : s) best = std::min(best, std::abs(x - v));
  return best;
}

}  // namespace

SweepResult sweep(const ModelSpec& model, const std::string& irrep, const std::vector<double>& grid, int cutoff,
                  const SweepOptions& options) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty g grid");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("sweep: g grid must be strictly increasing");
  const BlockOperators ops = prepare_block(model, model_block(model, irrep, cutoff));
  if (ops.size() == 0) throw std::invalid_argument("sweep: block " + irrep + " is empty at cutoff " + std::to_string(cutoff));

  SweepResult out;
  out.model = model.name;
  out.irrep = irrep;
  out.cutoff = cutoff;
  const int reported = std::min(options.states, ops.size());
  const int tracked = std::min(ops.size(), 2 * reported + 20);
  out.trajectories.resize(reported);
  for (int i = 0; i < reported; ++i) {
    out.trajectories[i].state_id = i;
    out.trajectories[i].irrep = irrep;
  }

  const auto spectra = solve_all(ops, grid, worker_count(options.workers));
  Tracker tracker(ops, options, out, reported, tracked);
  tracker.start(grid[0], spectra[0]);
  for (std::size_t k = 1; k < grid.size(); ++k) tracker.advance(grid[k], spectra[k], 0);

  if (options.check_convergence) {
    std::optional<BlockOperators> larger;
    try {
      larger = prepare_block(model, model_block(model, irrep, cutoff + 4));
    } catch (const std::invalid_argument&) {
      // family cannot grow (anharmonic modes beyond the reliable range)
    }
    if (larger) {
      std::vector<int> ends{0};
      if (out.grid.size() > 1) ends.push_back(static_cast<int>(out.grid.size()) - 1);
      for (int e : ends) {
        const auto s = block_values(*larger, out.grid[e]);
        for (auto& t : out.trajectories) t.convergence = std::max(t.convergence, nearest_distance(s, t.points[e].value));
      }
    }
  }
  return out;
}

std::string to_string(TransitionKind k) {
  switch (k) {
    case TransitionKind::coalescence: return "coalescence";
    case TransitionKind::restoration: return "restoration";
    case TransitionKind::hermitian_limit: return "hermitian_limit";
    case TransitionKind::threshold_crossing: return "threshold_crossing";
  }
  return "?";
}

namespace {

struct PartnerHit {
  bool found = false;
  bool checked = false;
  std::string irrep;
  int id = -1;
};

double conj_tolerance(const std::vector<cplx>& spectrum, cplx v) {
  // Near a coalescence the pair is only accurate to ~sqrt(machine eps).
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& x : spectrum)
    if (x != v) gap = std::min(gap, std::abs(x - v));
  const double mag = std::max(1.0, std::abs(v));
  return (gap < 1e-3 * mag ? 1e-6 : 1e-8) * mag;
}

PartnerHit find_partner(const std::vector<SweepResult>& sweeps, std::size_t own, int k, cplx v) {
  PartnerHit hit;
  const double tol = conj_tolerance(sweeps[own].spectra[k], v);
  auto search = [&](std::size_t s, int idx) {
    const auto& spectrum = sweeps[s].spectra[idx];
    if (nearest_distance(spectrum, std::conj(v)) > tol) return false;
    hit.found = true;
    hit.irrep = sweeps[s].irrep;
    double best = tol;
    for (const auto& t : sweeps[s].trajectories) {
      const double d = std::abs(t.points[idx].value - std::conj(v));
      if (d <= best && !(s == own && t.points[idx].value == v)) best = d, hit.id = t.state_id;
    }
    return true;
  };
  if (search(own, k)) return hit;
  const double g = sweeps[own].grid[k];
  for (std::size_t s = 0; s < sweeps.size(); ++s) {
    if (s == own) continue;
    const int idx = sweeps[s].index_of(g);
    if (idx < 0) continue;
    hit.checked = true;
    if (search(s, idx)) return hit;
  }
  if (!hit.checked && sweeps.size() > 1) return hit;  // unchecked
  hit.checked = true;
  return hit;
}

// True when the partner's sweep holds, at the same g, a second value within
// 1e-6 |E| of v: the pair never separated, so no coalescence happened here.
bool coincident_partner(const std::vector<SweepResult>& sweeps, std::size_t own, const std::string& partner_irrep,
                        int k, cplx v) {
  const double g = sweeps[own].grid[k];
  const double tol = 1e-6 * std::max(1.0, std::abs(v));
  for (std::size_t s = 0; s < sweeps.size(); ++s) {
    if (sweeps[s].irrep != partner_irrep) continue;
    const int idx = s == own ? k : sweeps[s].index_of(g);
    if (idx < 0) continue;
    int close = 0;
    for (const auto& x : sweeps[s].spectra[idx])
      if (std::abs(x - v) <= tol) ++close;
    if (close >= (s == own ? 2 : 1)) return true;
  }
  return false;
}

}  // namespace

RealityReport classify_reality(const std::vector<SweepResult>& sweeps, double tau_scale) {
  RealityReport report;
  for (std::size_t s = 0; s < sweeps.size(); ++s) {
    const auto& sw = sweeps[s];
    for (const auto& t : sw.trajectories) {
      StateReality st;
      st.irrep = sw.irrep;
      st.state_id = t.state_id;
      st.root = t.points.front().value;
      const int n = static_cast<int>(t.points.size());
      std::vector<RealityKind> kind(n);
      std::vector<PartnerHit> partner(n);
      for (int k = 0; k < n; ++k) {
        const cplx v = t.points[k].value;
        kind[k] = is_real(v, tau_scale) ? RealityKind::real : RealityKind::complex;
        if (kind[k] == RealityKind::real) continue;
        partner[k] = find_partner(sweeps, s, k, v);
        if (!partner[k].found) {
          if (!partner[k].checked) {
            ++report.unchecked_points;
            continue;
          }
          throw ConsistencyError("state " + std::to_string(t.state_id) + " of " + sw.irrep + " at g=" +
                                 format_number(t.points[k].g) + " has no conjugate partner for " +
                                 format_number(v.real()) + (v.imag() < 0 ? "" : "+") + format_number(v.imag()) + "i");
        }
      }
      int start = 0;
      for (int k = 1; k <= n; ++k) {
        if (k < n && kind[k] == kind[start]) continue;
        RealityInterval iv;
        iv.kind = kind[start];
        iv.lo = start == 0 ? t.points.front().g : 0.5 * (t.points[start - 1].g + t.points[start].g);
        iv.hi = k == n ? t.points.back().g : 0.5 * (t.points[k - 1].g + t.points[k].g);
        if (iv.kind == RealityKind::complex) {
          for (int j = start; j < k; ++j)
            if (partner[j].found) {
              iv.partner_irrep = partner[j].irrep;
              iv.partner_id = partner[j].id;
              break;
            }
        }
        st.intervals.push_back(iv);
        if (k < n) {
          RealityTransition tr;
          tr.irrep = sw.irrep;
          tr.state_id = t.state_id;
          tr.root = st.root;
          tr.g_lo = t.points[k - 1].g;
          tr.g_hi = t.points[k].g;
          const bool to_complex = kind[k] == RealityKind::complex;
          const PartnerHit& p = to_complex ? partner[k] : partner[k - 1];
          tr.partner_irrep = p.found ? p.irrep : sw.irrep;
          tr.partner_id = p.id;
          const int real_k = to_complex ? k - 1 : k;
          const double real_side = t.points[real_k].g;
          tr.kind = real_side == 0.0 ? TransitionKind::hermitian_limit
                    : p.found && coincident_partner(sweeps, s, p.irrep, real_k, t.points[real_k].value)
                        ? TransitionKind::threshold_crossing
                    : to_complex ? TransitionKind::coalescence
                                 : TransitionKind::restoration;
          report.transitions.push_back(tr);
          if (tr.kind == TransitionKind::coalescence && p.found && p.irrep != sw.irrep)
            report.rule_violations.push_back(tr);
        }
        start = k;
      }
      report.states.push_back(std::move(st));
    }
  }
  return report;
}

namespace {

using Pair = std::pair<cplx, cplx>;

cplx centroid(const Pair& p) { return 0.5 * (p.first + p.second); }

bool pair_real(const Pair& p, double tau) { return is_real(p.first, tau) && is_real(p.second, tau); }

bool consistent(cplx a, cplx b, double tau) {
  if (is_real(a, tau) && is_real(b, tau)) return true;
  return std::abs(a - std::conj(b)) <= 1e-6 * std::max(1.0, std::abs(a));
}

// The pair around `c`: among the nearest few eigenvalues, the consistent pair
// (both real or mutually conjugate) with the smallest enclosing radius.
Pair pick_pair(const std::vector<cplx>& s, cplx c, double tau) {
  std::vector<int> idx(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) idx[j] = static_cast<int>(j);
  const int k = std::min<int>(8, static_cast<int>(s.size()));
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(),
                    [&](int a, int b) { return std::abs(s[a] - c) < std::abs(s[b] - c); });
  double best = std::numeric_limits<double>::infinity();
  Pair out{s[idx[0]], s[idx[std::min(1, k - 1)]]};
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const cplx x = s[idx[a]], y = s[idx[b]];
      if (!consistent(x, y, tau)) continue;
      const double r = std::max(std::abs(x - c), std::abs(y - c));
      if (r < best) best = r, out = {x, y};
    }
  return out;
}

Pair follow(const std::vector<cplx>& s, const Pair& p) {
  auto nearest = [&](cplx v, int skip) {
    int best = -1;
    for (int j = 0; j < static_cast<int>(s.size()); ++j)
      if (j != skip && (best < 0 || std::abs(s[j] - v) < std::abs(s[best] - v))) best = j;
    return best;
  };
  const int a = nearest(p.first, -1);
  const int b = nearest(p.second, a);
  return {s[a], s[b]};
}

struct Bisection {
  double lo, hi;
  cplx c_lo, c_hi;
};

Bisection bisect(const BlockOperators& ops, double lo, double hi, cplx c_lo, cplx c_hi, bool real_lo, double tol,
                 double tau) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const cplx c = c_lo + (c_hi - c_lo) * ((mid - lo) / (hi - lo));
    const Pair p = pick_pair(block_values(ops, mid), c, tau);
    if (pair_real(p, tau) == real_lo) {
      lo = mid;
      c_lo = centroid(p);
    } else {
      hi = mid;
      c_hi = centroid(p);
    }
  }
  return {lo, hi, c_lo, c_hi};
}

}  // namespace

ExceptionalPoint find_exceptional_point(const ModelSpec& model, const std::string& irrep, std::pair<int, int> states,
                                        double g_lo, double g_hi, int cutoff, const EpOptions& opt) {
  if (!(g_hi > g_lo)) throw std::invalid_argument("find_exceptional_point: empty bracket");
  const BlockOperators ops = prepare_block(model, model_block(model, irrep, cutoff));
  const auto s_lo = block_values(ops, g_lo);
  const int n = static_cast<int>(s_lo.size());
  if (states.first < 0 || states.second < 0 || states.first >= n || states.second >= n || states.first == states.second)
    throw std::invalid_argument("find_exceptional_point: state ids out of range");
  const double tau = opt.tau_scale;
  const Pair p_lo{s_lo[states.first], s_lo[states.second]};
  if (!consistent(p_lo.first, p_lo.second, tau))
    throw std::invalid_argument("find_exceptional_point: states are neither both real nor a conjugate pair at g_lo");
  const bool real_lo = pair_real(p_lo, tau);
  const Pair p_hi = pick_pair(block_values(ops, g_hi), centroid(p_lo), tau);
  if (pair_real(p_hi, tau) == real_lo)
    throw std::invalid_argument("find_exceptional_point: no reality change of the pair in [" + format_number(g_lo) +
                                ", " + format_number(g_hi) + "]");

  ExceptionalPoint ep;
  ep.irrep = irrep;
  ep.states = states;
  ep.cutoff = cutoff;
  ep.kind = real_lo ? TransitionKind::coalescence : TransitionKind::restoration;
  const Bisection b = bisect(ops, g_lo, g_hi, centroid(p_lo), centroid(p_hi), real_lo, opt.tolerance, tau);
  ep.bracket_lo = b.lo;
  ep.bracket_hi = b.hi;
  ep.g_c = 0.5 * (b.lo + b.hi);
  ep.value = 0.5 * (b.c_lo + b.c_hi);
  ep.guard_g_c = ep.g_c;
  if (!opt.guard) return ep;

  std::optional<BlockOperators> larger;
  try {
    larger = prepare_block(model, model_block(model, irrep, cutoff + 4));
  } catch (const std::invalid_argument& e) {
    ep.flagged = true;
    ep.flag_reason = std::string("convergence guard unavailable: ") + e.what();
    return ep;
  }
  const double a = ep.g_c - opt.guard_window, z = ep.g_c + opt.guard_window;
  const cplx slope = (b.c_hi - b.c_lo) / std::max(b.hi - b.lo, 1e-300);
  const Pair seed_a = pick_pair(block_values(ops, a), ep.value - slope * opt.guard_window, tau);
  const Pair seed_z = pick_pair(block_values(ops, z), ep.value + slope * opt.guard_window, tau);
  const Pair q_a = follow(block_values(*larger, a), seed_a);
  const Pair q_z = follow(block_values(*larger, z), seed_z);
  if (pair_real(q_a, tau) == pair_real(q_z, tau) || pair_real(q_a, tau) != real_lo) {
    ep.flagged = true;
    ep.flag_reason = "no matching reality change at cutoff " + std::to_string(cutoff + 4);
    return ep;
  }
  const Bisection gb = bisect(*larger, a, z, centroid(q_a), centroid(q_z), real_lo, opt.guard_tolerance, tau);
  ep.guard_g_c = 0.5 * (gb.lo + gb.hi);
  ep.guard_shift = std::abs(ep.guard_g_c - ep.g_c);
  if (ep.guard_shift > opt.guard_limit) {
    ep.flagged = true;
    ep.flag_reason = "g_c moves by " + format_number(ep.guard_shift) + " at cutoff " + std::to_string(cutoff + 4);
  }
  return ep;
}

ExceptionalPoint find_exceptional_point(const ModelSpec& model, const SweepResult& sweep,
                                        const RealityTransition& tr, const EpOptions& options) {
  if (tr.kind == TransitionKind::hermitian_limit)
    throw std::invalid_argument("find_exceptional_point: a splitting at g = 0 is not an exceptional point");
  const int k = sweep.index_of(tr.g_lo);
  if (k < 0) throw std::invalid_argument("find_exceptional_point: transition does not belong to this sweep");
  const auto& s = sweep.spectra[k];
  auto rank = [&](cplx v, int skip) {
    int best = -1;
    for (int j = 0; j < static_cast<int>(s.size()); ++j)
      if (j != skip && (best < 0 || std::abs(s[j] - v) < std::abs(s[best] - v))) best = j;
    return best;
  };
  const cplx v = sweep.trajectories.at(tr.state_id).points[k].value;
  const int i = rank(v, -1);
  cplx w;
  if (tr.partner_id >= 0 && tr.partner_irrep == sweep.irrep && tr.partner_id != tr.state_id)
    w = sweep.trajectories.at(tr.partner_id).points[k].value;
  else
    w = is_real(v) ? v : std::conj(v);
  const int j = rank(w, i);
  return find_exceptional_point(model, sweep.irrep, {i, j}, tr.g_lo, tr.g_hi, sweep.cutoff, options);
}

cplx analytic_ho_xy(int n_plus, int n_minus, double g) {
  const cplx wp = std::sqrt(cplx(1.0, 0.5 * g));
  const cplx wm = std::sqrt(cplx(1.0, -0.5 * g));
  return (2.0 * n_plus + 1.0) * wp + (2.0 * n_minus + 1.0) * wm;
}

double ho_xy_oracle_deviation(const std::vector<std::vector<cplx>>& block_spectra, double g, int count) {
  std::vector<cplx> exact;
  for (int total = 0; static_cast<int>(exact.size()) < count; ++total)
    for (int a = 0; a <= total; ++a) exact.push_back(analytic_ho_xy(a, total - a, g));
  std::stable_sort(exact.begin(), exact.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  exact.resize(count);
  std::vector<cplx> all;
  for (const auto& s : block_spectra) all.insert(all.end(), s.begin(), s.end());
  double worst = 0.0;
  for (const auto& e : exact) worst = std::max(worst, nearest_distance(all, e));
  return worst;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14e", v);
  return buf;
}

void write_trajectories_csv(std::ostream& os, const std::vector<SweepResult>& sweeps) {
  os << "g,state_id,irrep,re_E,im_E,match_confidence\n";
  for (const auto& s : sweeps)
    for (const auto& t : s.trajectories)
      for (const auto& p : t.points)
        os << format_number(p.g) << ',' << t.state_id << ',' << t.irrep << ',' << format_number(p.value.real()) << ','
           << format_number(p.value.imag()) << ',' << format_number(p.confidence) << '\n';
}

}  // namespace nhsym
