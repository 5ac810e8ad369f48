#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "nhsym/operators.hpp"
#include "nhsym/spectra.hpp"

namespace nhsym {

enum class LevelOrigin { nondegenerate, geometric, dynamical };
std::string to_string(LevelOrigin o);

struct DegenerateLevel {
  double e0 = 0.0;
  int nu = 0;
  IrrepMultiset content;  // full-group irreps
  LevelOrigin origin = LevelOrigin::nondegenerate;
  std::vector<SparseFunction> members;     // orthonormal H0 eigenfunctions
  std::vector<std::string> member_irreps;  // full-group irrep of each member
  bool converged = true;  // every member reproduced at cutoff + 4
  double spread = 0.0;    // max - min member energy
  std::string note;
};

struct LevelOptions {
  int max_levels = 15;
  double tol_scale = 1e-8;  // grouping and convergence: tol_scale * max(1, |E|)
  bool check_convergence = true;
};

// Lowest levels of H0 from the full-group isotypic blocks, grouped across
// irreps; degenerate levels spanning several irreps are dynamical.
std::vector<DegenerateLevel> degenerate_levels(const ModelSpec& model, int cutoff, const LevelOptions& options = {});

struct PerturbationEntry {
  DegenerateLevel level;
  Eigen::MatrixXd w;          // <m_i|H'|m_j>
  std::vector<double> e1;     // eigenvalues of w, ascending
  bool symmetry_allowed = false;
  bool w_nonzero = false;
  bool predicts_complex = false;  // lambda = i g makes any nonzero E1 imaginary
  IrrepMultiset branching;        // subgroup content of the level
};

inline constexpr double kFirstOrderZero = 1e-10;

PerturbationEntry first_order(const ModelSpec& model, const DegenerateLevel& level, int cutoff);
std::vector<PerturbationEntry> predict_reality(const ModelSpec& model, int cutoff, const LevelOptions& options = {});

// Small-g numerics for each predicted level.
struct LevelCheck {
  double e0 = 0.0;
  bool predicted_complex = false;
  bool observed_complex = false;  // classify_reality verdict at g
  double predicted_im = 0.0;      // g max|E1|
  double observed_im = 0.0;       // max |Im E| of the level's states at g
  // False when g max|E1| < 10 tau: the split is too small for the reality
  // threshold at this g, so the first-order size itself is compared instead.
  bool resolvable = true;
  int states = 0;  // tracked states rooted in the level
  bool converged = true;
  bool agrees() const;
};
// Sweeps every subgroup block over {0, g}, classifies reality and assigns
// states to levels by their g = 0 root.
std::vector<LevelCheck> cross_check(const ModelSpec& model, const std::vector<PerturbationEntry>& entries, int cutoff,
                                    double g = 1e-3);

struct StSymmetry {
  std::string label;
  std::string image;
  bool involution = false;
  bool is_pt = false;  // full coordinate inversion
};
// Ops U of the full group with U H0 U^-1 = H0 and U H' U^-1 = -H', i.e. the
// antiunitary symmetries T U of H0 + i g H'.
std::vector<StSymmetry> st_symmetry_scan(const ModelSpec& model);

}  // namespace nhsym
