#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nhsym/basis.hpp"
#include "nhsym/groups.hpp"
#include "nhsym/linalg.hpp"
#include "nhsym/polynomial.hpp"

namespace nhsym {

// H = H0 + i g H' on a separable product basis. H0 is invariant under
// `group`, H' under `subgroup`, which is embedded in `group` by op labels.
struct ModelSpec {
  std::string name;
  std::string description;
  int dimension = 2;
  std::vector<ModeFamily> axes;
  PolynomialOperator h0;
  PolynomialOperator hprime;
  CharacterTable group;
  CharacterTable subgroup;
  Embedding embedding;
  int default_cutoff = 10;
  // False for models documented to have no U in G with U H' U^-1 = -H'.
  bool expects_flip = true;

  ModeKind kind() const { return axes.front().kind(); }
};

struct ModelCheck {
  bool h0_invariant = true;
  bool hprime_invariant = true;
  bool flip_exists = false;
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
};

// Exact symbolic checks; never throws on symmetry failures.
ModelCheck check_model(const ModelSpec& model);
// Throws std::invalid_argument listing every problem found by check_model
// (and structural ones: axis count, mixed families, table dimensions).
void validate_model(const ModelSpec& model);

// <rows|op|cols> over sparse combinations of product functions.
Eigen::MatrixXd assemble_operator(const PolynomialOperator& op, const std::vector<ModeFamily>& axes, int cutoff,
                                  const std::vector<const SparseFunction*>& rows,
                                  const std::vector<const SparseFunction*>& cols);
Eigen::MatrixXd assemble_operator(const PolynomialOperator& op, const std::vector<ModeFamily>& axes,
                                  const BasisBlock& rows, const BasisBlock& cols);

// Adapted block of the model's product basis for a subgroup irrep (or, with
// full_group, the isotypic block of a full-group irrep).
BasisBlock model_block(const ModelSpec& model, const std::string& irrep, int cutoff, bool full_group = false);

// H0 and H' assembled once; the block at any g is h0 + i g hprime.
struct BlockOperators {
  BasisBlock basis;
  Eigen::MatrixXd h0;
  Eigen::MatrixXd hprime;

  Eigen::MatrixXcd at(double g) const { return h0.cast<cplx>() + cplx(0.0, g) * hprime.cast<cplx>(); }
  int size() const { return static_cast<int>(h0.rows()); }
};
BlockOperators prepare_block(const ModelSpec& model, const BasisBlock& block);

struct MatrixBlock {
  std::string irrep;
  Eigen::MatrixXcd matrix;
  double g = 0.0;
  std::string provenance;  // model, table, basis family and cutoff
};
MatrixBlock build_block(const ModelSpec& model, const BasisBlock& block, double g);

// "rows cols" header, then one line per row of space-separated "re,im".
void write_matrix(std::ostream& os, const Eigen::MatrixXcd& m);
Eigen::MatrixXcd read_matrix(std::istream& is);

struct IrrepCoupling {
  std::string from;
  std::string to;
  double norm = 0.0;  // Frobenius norm of <to|O|from>
};

struct DynamicalSymmetryReport {
  double commutator_norm = 0.0;  // ||[H0, O]|| on the interior, Frobenius
  double h0_norm = 0.0;          // ||H0|| on the same interior
  int interior_size = 0;
  int basis_size = 0;
  std::vector<IrrepCoupling> couplings;  // full-group irreps, nonzero blocks only
};

// Interior = product functions whose every index stays `pad` below the
// cutoff, pad = largest per-axis order of H0 and O, so both products in the
// commutator are exact there for banded (harmonic, box-kinetic) families.
DynamicalSymmetryReport dynamical_symmetry_check(const PolynomialOperator& o, const ModelSpec& model, int cutoff);

}  // namespace nhsym
