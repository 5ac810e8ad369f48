#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "nhsym/groups.hpp"
#include "nhsym/rational.hpp"

namespace nhsym {

enum class ModeKind {
  harmonic,    // eigenfunctions of p^2 + q^2 (optionally scaled q -> q/s), n >= 0
  box,         // sin(n pi (q+1)/2) on [-1, 1], n >= 1
  anharmonic,  // eigenfunctions of p^2 + a q^4, expanded in scaled harmonic functions
};

std::string to_string(ModeKind kind);
ModeKind mode_kind_from_string(const std::string& name);

// An operator factor on one axis: q^q_power, or p^2 when momentum_squared.
struct Observable {
  int q_power = 0;
  bool momentum_squared = false;

  static Observable q(int power) { return {power, false}; }
  static Observable p2() { return {0, true}; }
};

// Orthonormal one-dimensional mode family.
class ModeFamily {
 public:
  static ModeFamily harmonic(double scale = 1.0);
  static ModeFamily box();
  // Default scale 0.55 a^(-1/6) keeps the primitive expansion converged to
  // ~1e-12 for the first 40 modes.
  static ModeFamily anharmonic(Rational quartic = 1, double scale = 0.0, int primitive_size = 160);

  ModeKind kind() const { return kind_; }
  double scale() const { return scale_; }
  Rational quartic() const { return quartic_; }
  int first_index() const { return kind_ == ModeKind::box ? 1 : 0; }
  // Parity under q -> -q.
  int parity(int n) const;
  std::string describe() const;

  // Matrix of an observable over indices first_index() .. cutoff.
  Eigen::MatrixXd matrix(Observable obs, int cutoff) const;
  // Mode energies of the defining 1-D operator (harmonic: 2n+1 at s = 1;
  // box: (n pi/2)^2; anharmonic: eigenvalues of p^2 + a q^4).
  Eigen::VectorXd energies(int cutoff) const;

 private:
  struct Anharmonic;
  ModeKind kind_ = ModeKind::harmonic;
  double scale_ = 1.0;
  Rational quartic_ = 0;
  std::shared_ptr<const Anharmonic> anharmonic_;
};

// Single analytic (or expansion) matrix element <bra| obs |ket>.
double me_1d(const ModeFamily& family, int bra, int ket, Observable obs);

using MultiIndex = std::array<int, 3>;
std::string format_index(const MultiIndex& n, int dimension);

// Sparse real combination of product functions phi_{n1}(x) phi_{n2}(y) ...
using SparseFunction = std::vector<std::pair<MultiIndex, double>>;

// All multi-indices with every component in [first, cutoff], lexicographic.
std::vector<MultiIndex> product_basis(ModeKind kind, int dimension, int cutoff);

// Image of one product function under a group operation (substitution
// convention): returns the sign and the permuted multi-index.
std::pair<int, MultiIndex> apply_op(const SymmetryOp& op, ModeKind kind, const MultiIndex& n);

struct AdaptedFunction {
  std::string irrep;
  SparseFunction terms;  // sorted by multi-index
  MultiIndex seed{};
  // When exact, terms[k].second == numerators[k] / sqrt(norm2).
  bool exact = false;
  std::vector<long> numerators;
  long norm2 = 0;
};

struct BasisBlock {
  std::string table;
  std::string irrep;
  ModeKind kind = ModeKind::harmonic;
  int dimension = 2;
  int cutoff = 0;
  std::vector<AdaptedFunction> functions;

  int size() const { return static_cast<int>(functions.size()); }
};

// Projects every seed of `basis` onto the irrep, drops zero images and
// orthonormalizes the survivors in seed order. Multi-dimensional irreps give
// their full isotypic subspace.
BasisBlock symmetry_adapt(const std::vector<MultiIndex>& basis, ModeKind kind, int dimension, int cutoff,
                          const CharacterTable& table, const std::string& irrep);

// Irrep content of the space spanned by all distinct permutations of `pattern`.
IrrepMultiset classify_h0_level(ModeKind kind, const std::vector<int>& pattern, const CharacterTable& table);

// Line format: "# block table=... kind=... dimension=... cutoff=...",
// "irrep <name>", then one line per function of "(coefficient,(n1,n2,...))".
void write_block(std::ostream& os, const BasisBlock& block);
BasisBlock read_block(std::istream& is);

}  // namespace nhsym
