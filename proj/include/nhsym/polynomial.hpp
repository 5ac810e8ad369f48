#pragma once

#include <array>
#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "nhsym/rational.hpp"

namespace nhsym {

inline constexpr int kMaxDim = 3;

// Per-axis content of one operator term: q_i^powers[i] or (p_i^2)^kinetic[i].
// A term never carries both a coordinate power and a momentum on the same
// axis, so every term is a product of commuting one-dimensional factors.
struct Monomial {
  std::array<int, kMaxDim> powers{};
  std::array<int, kMaxDim> kinetic{};

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

  int degree() const { return powers[0] + powers[1] + powers[2]; }
  bool has_kinetic() const { return kinetic[0] + kinetic[1] + kinetic[2] > 0; }
};

struct Term {
  Rational coeff;
  Monomial mono;
  friend bool operator==(const Term&, const Term&) = default;
};

// Exact symbolic sum of coordinate monomials and one-dimensional kinetic
// terms p_i^2. Kept in canonical form: sorted, like terms merged, no zero
// coefficients. Coefficients are real (rational); a factor i only appears
// when a matrix is assembled.
class PolynomialOperator {
 public:
  explicit PolynomialOperator(int dimension = 2);

  // Grammar: sums/products of rationals, x, y, z, px^2, py^2, pz^2,
  // parentheses and non-negative integer powers, e.g. "z*(x+y)",
  // "px^2 + py^2 + x^4 + 3/2*y^4".
  static PolynomialOperator parse(std::string_view text, int dimension);
  static PolynomialOperator constant(int dimension, Rational c);
  static PolynomialOperator coordinate(int dimension, int axis);
  static PolynomialOperator kinetic(int dimension, int axis);

  int dimension() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_kinetic() const;
  // Largest per-axis exponent in units of q (p^2 counts as 2).
  int max_axis_order() const;

  void add_term(const Rational& c, const Monomial& m);

  PolynomialOperator operator-() const;
  PolynomialOperator& operator+=(const PolynomialOperator& o);
  PolynomialOperator& operator-=(const PolynomialOperator& o);
  PolynomialOperator& operator*=(const Rational& c);
  friend PolynomialOperator operator+(PolynomialOperator a, const PolynomialOperator& b) { return a += b; }
  friend PolynomialOperator operator-(PolynomialOperator a, const PolynomialOperator& b) { return a -= b; }
  friend PolynomialOperator operator*(PolynomialOperator a, const Rational& c) { return a *= c; }
  friend PolynomialOperator operator*(const Rational& c, PolynomialOperator a) { return a *= c; }
  // Operator product; throws when a q and a p would meet on the same axis.
  friend PolynomialOperator operator*(const PolynomialOperator& a, const PolynomialOperator& b);

  friend bool operator==(const PolynomialOperator&, const PolynomialOperator&) = default;

  std::string str() const;

 private:
  void canonicalize();

  int dim_;
  std::vector<Term> terms_;
};

}  // namespace nhsym
