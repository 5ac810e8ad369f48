#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "nhsym/polynomial.hpp"

namespace nhsym {

// A point-group operation acting on coordinates as r -> matrix * r. Matrices
// are orthogonal with entries in {-1, 0, 1}, i.e. signed permutations:
// component i of the image is sign[i] * r[source[i]].
class SymmetryOp {
 public:
  SymmetryOp(std::string label, Eigen::MatrixXi matrix);

  const std::string& label() const { return label_; }
  const Eigen::MatrixXi& matrix() const { return matrix_; }
  int dimension() const { return static_cast<int>(matrix_.rows()); }
  int determinant() const;
  int source(int axis) const { return source_[axis]; }
  int sign(int axis) const { return sign_[axis]; }
  // Coordinate image, e.g. "(y,-x)" for C4.
  std::string image() const;

 private:
  std::string label_;
  Eigen::MatrixXi matrix_;
  std::array<int, 3> source_{};
  std::array<int, 3> sign_{};
};

// Parses "(y,-x)" / "(-y,-x,-z)" into a coordinate matrix.
Eigen::MatrixXi matrix_from_image(std::string_view image, int dimension);

struct ConjugacyClass {
  std::string label;         // e.g. "2C4", "6sigma_d"
  std::vector<int> members;  // indices into CharacterTable::ops
};

// A finite point group with its concrete operations, classes and integer
// characters. Built once and shared read-only afterwards.
struct CharacterTable {
  std::string name;
  int dimension = 2;
  std::vector<SymmetryOp> ops;
  std::vector<ConjugacyClass> classes;
  std::vector<std::string> irreps;
  Eigen::MatrixXi characters;  // irreps x classes
  int totally_symmetric = 0;
  std::vector<int> op_class;   // class index of each op

  int order() const { return static_cast<int>(ops.size()); }
  int irrep_index(std::string_view irrep) const;
  int irrep_dim(int irrep) const { return characters(irrep, 0); }
  int character(int irrep, int op) const { return characters(irrep, op_class[op]); }
  int op_index(std::string_view label) const;
  // -1 when the matrix is not an element of the group.
  int find_op(const Eigen::MatrixXi& matrix) const;
};

// Supported: C2, Cs, C2v, C2v_modified, C4v, Ci, C2h, D2h, Oh.
CharacterTable builtin_table(std::string_view name);
std::vector<std::string> builtin_table_names();

// Plain-text report laid out like a printed character table.
std::string format_table(const CharacterTable& t);

// Irreps with multiplicities, in table order, zero multiplicities omitted.
using IrrepMultiset = std::vector<std::pair<std::string, int>>;
std::string format_multiset(const IrrepMultiset& m);
int total_dimension(const CharacterTable& t, const IrrepMultiset& m);

// Decomposes a class function (one integer per class) into irreps.
IrrepMultiset decompose_characters(const CharacterTable& t, const Eigen::VectorXi& chi);

IrrepMultiset decompose_product(const CharacterTable& t, const std::vector<std::string>& irreps);

// True when Gamma_level x Gamma_level x Gamma_pert contains the totally
// symmetric irrep. The level may be reducible (dynamical degeneracy).
bool first_order_selection_rule(const CharacterTable& t, const IrrepMultiset& level,
                                const std::string& perturbation_irrep);
bool first_order_selection_rule(const CharacterTable& t, const std::string& level_irrep,
                                const std::string& perturbation_irrep);

// Substitution p(r) -> p(M r); momenta transform like their coordinates.
PolynomialOperator transform_polynomial(const SymmetryOp& op, const PolynomialOperator& p);

struct PolynomialComponent {
  std::string irrep;
  PolynomialOperator component;
};
// Isotypic projection of p onto every irrep; the components sum to p.
std::vector<PolynomialComponent> classify_polynomial(const PolynomialOperator& p, const CharacterTable& t);

// Subgroup operations given by label, paired with the parent operation that
// realizes each one.
struct Embedding {
  std::vector<std::pair<std::string, std::string>> sub_to_parent;
};
Embedding identity_embedding(const CharacterTable& t);

struct BranchingMap {
  std::string parent;
  std::string sub;
  std::vector<int> parent_op;        // parent op index per subgroup op
  std::vector<IrrepMultiset> image;  // per parent irrep

  const IrrepMultiset& image_of(const CharacterTable& parent_table, std::string_view irrep) const;
};

BranchingMap branch(const CharacterTable& parent, const CharacterTable& sub, const Embedding& embedding);

}  // namespace nhsym
