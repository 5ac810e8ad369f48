#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nhsym/linalg.hpp"
#include "nhsym/operators.hpp"

namespace nhsym {

// Raised when a complex eigenvalue has no conjugate partner anywhere in the
// swept spectra.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// |Im E| <= tau_scale * max(1, |Re E|) counts as real.
inline constexpr double kTauReal = 1e-8;
bool is_real(cplx e, double tau_scale = kTauReal);

struct TrajectoryPoint {
  double g = 0.0;
  cplx value;
  double confidence = 1.0;  // 1 - d_best / d_alternative of the match into this point
};

struct SpectralTrajectory {
  int state_id = 0;  // rank in the sorted spectrum at the first grid point
  std::string irrep;
  std::vector<TrajectoryPoint> points;
  bool flagged = false;
  std::string flag_reason;
  // Max change of the tracked value at the grid ends when the cutoff grows by 4
  // (negative when not checked).
  double convergence = -1.0;
  bool converged(double tol_scale = 1e-8) const;
};

struct SweepOptions {
  int states = 10;
  bool refine = true;
  int max_halvings = 10;
  double low_confidence = 0.5;
  double jump_confidence = 0.9;
  bool check_convergence = true;
  int workers = 0;  // 0: NHSYM_WORKERS or hardware concurrency
};

struct SweepResult {
  std::string model;
  std::string irrep;
  int cutoff = 0;
  std::vector<double> grid;                // refined grid, strictly increasing
  std::vector<std::vector<cplx>> spectra;  // full sorted block spectrum per grid point
  std::vector<SpectralTrajectory> trajectories;
  int refinements = 0;

  int index_of(double g) const;  // -1 when g is not on the grid
};

int worker_count(int requested = 0);
std::vector<double> linear_grid(double start, double stop, int count);

SweepResult sweep(const ModelSpec& model, const std::string& irrep, const std::vector<double>& grid, int cutoff,
                  const SweepOptions& options = {});

enum class RealityKind { real, complex };
// threshold_crossing: |Im E| passes tau while the conjugate partner already
// coincides with the state on the real side (an unresolved split, no EP).
enum class TransitionKind { coalescence, restoration, hermitian_limit, threshold_crossing };
std::string to_string(TransitionKind k);

struct RealityInterval {
  double lo = 0.0;
  double hi = 0.0;
  RealityKind kind = RealityKind::real;
  // Partner state for complex intervals: irrep and state id (-1 when the
  // conjugate belongs to an untracked eigenvalue of the block).
  std::string partner_irrep;
  int partner_id = -1;
};

struct RealityTransition {
  std::string irrep;
  int state_id = 0;
  std::string partner_irrep;
  int partner_id = -1;
  TransitionKind kind = TransitionKind::coalescence;
  double g_lo = 0.0;  // last sample before the change
  double g_hi = 0.0;  // first sample after it
  cplx root;          // tracked value at the first grid point
};

struct StateReality {
  std::string irrep;
  int state_id = 0;
  cplx root;
  std::vector<RealityInterval> intervals;  // partition of the sweep range
};

struct RealityReport {
  std::vector<StateReality> states;
  std::vector<RealityTransition> transitions;
  // Coalescences whose partner lies in a different irrep; must stay empty.
  std::vector<RealityTransition> rule_violations;
  int unchecked_points = 0;  // complex samples whose conjugate block was not sampled at that g

  bool coalescence_rule_holds() const { return rule_violations.empty(); }
};

// Throws ConsistencyError when a complex value has no conjugate to 1e-8
// (1e-6 inside a near-defective cluster) in any sweep sampled at that g.
RealityReport classify_reality(const std::vector<SweepResult>& sweeps, double tau_scale = kTauReal);

struct ExceptionalPoint {
  std::string irrep;
  std::pair<int, int> states;  // ranks in the sorted block spectrum at bracket_lo
  TransitionKind kind = TransitionKind::coalescence;
  double g_c = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  cplx value;  // pair centroid at g_c
  int cutoff = 0;
  double guard_g_c = 0.0;  // same search at cutoff + 4
  double guard_shift = 0.0;
  bool flagged = false;
  std::string flag_reason;

  double width() const { return bracket_hi - bracket_lo; }
};

struct EpOptions {
  double tolerance = 1e-7;
  double guard_tolerance = 1e-5;
  double guard_window = 0.01;
  double guard_limit = 5e-3;
  bool guard = true;
  double tau_scale = kTauReal;
};

// The pair (ranks i, j of the sorted spectrum at g_lo) must be real at one end
// of [g_lo, g_hi] and a conjugate pair at the other; throws
// std::invalid_argument otherwise.
ExceptionalPoint find_exceptional_point(const ModelSpec& model, const std::string& irrep, std::pair<int, int> states,
                                        double g_lo, double g_hi, int cutoff, const EpOptions& options = {});
// Refines a coalescence or restoration found by classify_reality.
ExceptionalPoint find_exceptional_point(const ModelSpec& model, const SweepResult& sweep,
                                        const RealityTransition& transition, const EpOptions& options = {});

// Exact eigenvalue of p_x^2 + p_y^2 + x^2 + y^2 + i g x y, |g| < 2.
cplx analytic_ho_xy(int n_plus, int n_minus, double g);

// Lowest `count` analytic levels (by real part) compared with the union of
// block spectra; returns the largest distance to the nearest numerical value.
double ho_xy_oracle_deviation(const std::vector<std::vector<cplx>>& block_spectra, double g, int count);

// Columns g,state_id,irrep,re_E,im_E,match_confidence; numbers in %.14e.
void write_trajectories_csv(std::ostream& os, const std::vector<SweepResult>& sweeps);
std::string format_number(double v);

}  // namespace nhsym
