#include "nhsym/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace nhsym {

namespace {

constexpr char kAxisNames[kMaxDim] = {'x', 'y', 'z'};

void check_dimension(int dimension) {
  if (dimension < 1 || dimension > kMaxDim)
    throw std::invalid_argument("PolynomialOperator: dimension must be 1..3");
}

// Recursive-descent parser over the small operator grammar.
class Parser {
 public:
  Parser(std::string_view text, int dim) : text_(text), dim_(dim) {}

  PolynomialOperator parse() {
    PolynomialOperator result = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "cannot parse operator \"" << text_ << "\" at column " << pos_ + 1 << ": " << what;
    throw std::invalid_argument(os.str());
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  PolynomialOperator expression() {
    PolynomialOperator acc(dim_);
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    acc = product();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) acc += product();
      else if (accept('-')) acc -= product();
      else break;
    }
    return acc;
  }

  PolynomialOperator product() {
    PolynomialOperator acc = power();
    while (true) {
      if (accept('*')) {
        acc = acc * power();
      } else if (accept('/')) {
        const Rational d = number();
        if (d.is_zero()) fail("division by zero");
        acc *= Rational(1) / d;
      } else {
        break;
      }
    }
    return acc;
  }

  PolynomialOperator power() {
    skip_space();
    if (pos_ + 1 < text_.size() && text_[pos_] == 'p') {
      ++pos_;
      const int axis = axis_of(text_[pos_]);
      if (axis < 0) fail("expected px, py or pz");
      ++pos_;
      if (!accept('^') || exponent() != 2) fail("momentum may only appear as p?^2");
      return PolynomialOperator::kinetic(dim_, axis);
    }
    PolynomialOperator base = primary();
    if (accept('^')) {
      const int e = exponent();
      PolynomialOperator r = PolynomialOperator::constant(dim_, 1);
      for (int k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  PolynomialOperator primary() {
    skip_space();
    if (accept('(')) {
      PolynomialOperator inner = expression();
      if (!accept(')')) fail("missing ')'");
      return inner;
    }
    if (pos_ < text_.size()) {
      const int axis = axis_of(text_[pos_]);
      if (axis >= 0) {
        ++pos_;
        return PolynomialOperator::coordinate(dim_, axis);
      }
    }
    return PolynomialOperator::constant(dim_, number());
  }

  int axis_of(char c) const {
    for (int i = 0; i < dim_; ++i)
      if (c == kAxisNames[i]) return i;
    return -1;
  }

  int exponent() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (e > 16) fail("exponent too large");
    return e;
  }

  // Decimal literals are converted exactly ("1.25" -> 5/4).
  Rational number() {
    skip_space();
    const std::size_t start = pos_;
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool seen_digit = false;
    bool seen_point = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        num = num * 10 + (c - '0');
        if (seen_point) den *= 10;
        seen_digit = true;
      } else if (c == '.' && !seen_point) {
        seen_point = true;
      } else {
        break;
      }
      if (num > 1'000'000'000'000LL || den > 1'000'000'000'000LL) fail("literal too long");
      ++pos_;
    }
    if (!seen_digit) {
      pos_ = start;
      fail("expected number, coordinate or '('");
    }
    return Rational(num, den);
  }

  std::string_view text_;
  int dim_;
  std::size_t pos_ = 0;
};

// Canonical order: kinetic terms first, then by descending exponents.
bool canonical_less(const Term& a, const Term& b) {
  if (a.mono.kinetic != b.mono.kinetic) return a.mono.kinetic > b.mono.kinetic;
  return a.mono.powers > b.mono.powers;
}

}  // namespace

PolynomialOperator::PolynomialOperator(int dimension) : dim_(dimension) { check_dimension(dimension); }

PolynomialOperator PolynomialOperator::parse(std::string_view text, int dimension) {
  check_dimension(dimension);
  return Parser(text, dimension).parse();
}

PolynomialOperator PolynomialOperator::constant(int dimension, Rational c) {
  PolynomialOperator p(dimension);
  p.add_term(c, Monomial{});
  return p;
}

PolynomialOperator PolynomialOperator::coordinate(int dimension, int axis) {
  PolynomialOperator p(dimension);
  Monomial m;
  m.powers.at(axis) = 1;
  p.add_term(1, m);
  return p;
}

PolynomialOperator PolynomialOperator::kinetic(int dimension, int axis) {
  PolynomialOperator p(dimension);
  Monomial m;
  m.kinetic.at(axis) = 1;
  p.add_term(1, m);
  return p;
}

bool PolynomialOperator::has_kinetic() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.mono.has_kinetic(); });
}

int PolynomialOperator::max_axis_order() const {
  int order = 0;
  for (const Term& t : terms_)
    for (int i = 0; i < dim_; ++i) order = std::max({order, t.mono.powers[i], 2 * t.mono.kinetic[i]});
  return order;
}

void PolynomialOperator::add_term(const Rational& c, const Monomial& m) {
  for (int i = dim_; i < kMaxDim; ++i)
    if (m.powers[i] != 0 || m.kinetic[i] != 0)
      throw std::invalid_argument("PolynomialOperator: term uses an axis beyond the dimension");
  for (int i = 0; i < dim_; ++i) {
    if (m.powers[i] < 0 || m.kinetic[i] < 0 || m.kinetic[i] > 1)
      throw std::invalid_argument("PolynomialOperator: invalid exponents");
    if (m.powers[i] > 0 && m.kinetic[i] > 0)
      throw std::invalid_argument("PolynomialOperator: q and p on the same axis in one term");
  }
  if (c.is_zero()) return;
  terms_.push_back({c, m});
  canonicalize();
}

void PolynomialOperator::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), canonical_less);
  std::vector<Term> merged;
  for (const Term& t : terms_) {
    if (!merged.empty() && merged.back().mono == t.mono) merged.back().coeff += t.coeff;
    else merged.push_back(t);
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff.is_zero(); });
  terms_ = std::move(merged);
}

PolynomialOperator PolynomialOperator::operator-() const {
  PolynomialOperator r = *this;
  for (Term& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

PolynomialOperator& PolynomialOperator::operator+=(const PolynomialOperator& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("PolynomialOperator: dimension mismatch");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  canonicalize();
  return *this;
}

PolynomialOperator& PolynomialOperator::operator-=(const PolynomialOperator& o) { return *this += -o; }

PolynomialOperator& PolynomialOperator::operator*=(const Rational& c) {
  for (Term& t : terms_) t.coeff *= c;
  canonicalize();
  return *this;
}

PolynomialOperator operator*(const PolynomialOperator& a, const PolynomialOperator& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("PolynomialOperator: dimension mismatch");
  PolynomialOperator r(a.dim_);
  for (const Term& s : a.terms_) {
    for (const Term& t : b.terms_) {
      Monomial m;
      for (int i = 0; i < kMaxDim; ++i) {
        m.powers[i] = s.mono.powers[i] + t.mono.powers[i];
        m.kinetic[i] = s.mono.kinetic[i] + t.mono.kinetic[i];
      }
      r.terms_.push_back({s.coeff * t.coeff, m});
    }
  }
  for (const Term& t : r.terms_)
    for (int i = 0; i < kMaxDim; ++i)
      if (t.mono.kinetic[i] > 1 || (t.mono.kinetic[i] > 0 && t.mono.powers[i] > 0))
        throw std::invalid_argument("PolynomialOperator: product mixes q and p on one axis");
  r.canonicalize();
  return r;
}

std::string PolynomialOperator::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    std::vector<std::string> factors;
    for (int i = 0; i < dim_; ++i) {
      if (t.mono.kinetic[i] > 0) factors.push_back(std::string("p") + kAxisNames[i] + "^2");
      if (t.mono.powers[i] == 1) factors.emplace_back(1, kAxisNames[i]);
      if (t.mono.powers[i] > 1) factors.push_back(std::string(1, kAxisNames[i]) + "^" + std::to_string(t.mono.powers[i]));
    }
    if (factors.empty()) {
      os << c.str();
      continue;
    }
    if (c != Rational(1)) os << c.str() << "*";
    for (std::size_t k = 0; k < factors.size(); ++k) os << (k ? "*" : "") << factors[k];
  }
  return os.str();
}

}  // namespace nhsym
