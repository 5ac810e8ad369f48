#include "nhsym/groups.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nhsym {

namespace {

constexpr char kAxisNames[3] = {'x', 'y', 'z'};

struct TableSpec {
  std::string name;
  int dimension;
  std::vector<std::string> generators;                         // coordinate images
  std::vector<std::pair<std::string, std::string>> named_ops;  // label, image
  std::vector<std::pair<std::string, std::string>> classes;    // label, representative image
  std::vector<std::string> irreps;
  std::vector<std::vector<int>> characters;
};

// Class label without its multiplicity prefix: "6sigma_d" -> "sigma_d".
std::string class_base(const std::string& label) {
  std::size_t k = 0;
  while (k < label.size() && std::isdigit(static_cast<unsigned char>(label[k]))) ++k;
  return label.substr(k);
}

bool same(const Eigen::MatrixXi& a, const Eigen::MatrixXi& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

CharacterTable build_table(const TableSpec& spec) {
  const int d = spec.dimension;
  std::vector<Eigen::MatrixXi> elements{Eigen::MatrixXi::Identity(d, d)};
  std::vector<Eigen::MatrixXi> gens;
  for (const auto& g : spec.generators) gens.push_back(matrix_from_image(g, d));
  for (std::size_t k = 0; k < elements.size(); ++k) {
    for (const auto& g : gens) {
      Eigen::MatrixXi p = g * elements[k];
      if (std::none_of(elements.begin(), elements.end(), [&](const auto& e) { return same(e, p); }))
        elements.push_back(p);
    }
    if (elements.size() > 48) throw std::logic_error(spec.name + ": generators do not close within 48 elements");
  }

  // Conjugacy classes; the inverse of an orthogonal matrix is its transpose.
  std::vector<int> cls(elements.size(), -1);
  std::vector<std::vector<int>> raw_classes;
  for (std::size_t h = 0; h < elements.size(); ++h) {
    if (cls[h] >= 0) continue;
    const int c = static_cast<int>(raw_classes.size());
    raw_classes.emplace_back();
    for (const auto& g : elements) {
      Eigen::MatrixXi conj = g * elements[h] * g.transpose();
      for (std::size_t k = 0; k < elements.size(); ++k) {
        if (cls[k] < 0 && same(elements[k], conj)) {
          cls[k] = c;
          raw_classes.back().push_back(static_cast<int>(k));
        }
      }
    }
  }
  if (raw_classes.size() != spec.classes.size())
    throw std::logic_error(spec.name + ": generated " + std::to_string(raw_classes.size()) +
                           " classes, table lists " + std::to_string(spec.classes.size()));

  CharacterTable t;
  t.name = spec.name;
  t.dimension = d;
  std::vector<int> used(raw_classes.size(), 0);
  for (const auto& [label, rep_image] : spec.classes) {
    const Eigen::MatrixXi rep = matrix_from_image(rep_image, d);
    int found = -1;
    for (std::size_t k = 0; k < elements.size(); ++k)
      if (same(elements[k], rep)) found = cls[k];
    if (found < 0 || used[found]) throw std::logic_error(spec.name + ": bad class representative " + rep_image);
    used[found] = 1;

    std::vector<Eigen::MatrixXi> members;
    for (int k : raw_classes[found]) members.push_back(elements[k]);
    // Named operations keep their spec order; the rest sort by image.
    std::vector<std::pair<std::string, Eigen::MatrixXi>> labelled;
    for (const auto& [op_label, op_image] : spec.named_ops) {
      const Eigen::MatrixXi m = matrix_from_image(op_image, d);
      auto it = std::find_if(members.begin(), members.end(), [&](const auto& e) { return same(e, m); });
      if (it != members.end()) {
        labelled.emplace_back(op_label, m);
        members.erase(it);
      }
    }
    std::vector<std::pair<std::string, Eigen::MatrixXi>> generated;
    for (const auto& m : members) {
      SymmetryOp probe("probe", m);
      const std::string base = class_base(label);
      generated.emplace_back(raw_classes[found].size() == 1 ? base : base + probe.image(), m);
    }
    std::sort(generated.begin(), generated.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    labelled.insert(labelled.end(), generated.begin(), generated.end());

    ConjugacyClass cc{label, {}};
    for (auto& [op_label, m] : labelled) {
      cc.members.push_back(static_cast<int>(t.ops.size()));
      t.ops.emplace_back(op_label, m);
      t.op_class.push_back(static_cast<int>(t.classes.size()));
    }
    t.classes.push_back(std::move(cc));
  }

  const int n_irreps = static_cast<int>(spec.irreps.size());
  const int n_classes = static_cast<int>(t.classes.size());
  if (n_irreps != n_classes) throw std::logic_error(spec.name + ": table is not square");
  t.irreps = spec.irreps;
  t.characters.resize(n_irreps, n_classes);
  for (int i = 0; i < n_irreps; ++i) {
    if (static_cast<int>(spec.characters.at(i).size()) != n_classes)
      throw std::logic_error(spec.name + ": character row length mismatch for " + spec.irreps[i]);
    for (int c = 0; c < n_classes; ++c) t.characters(i, c) = spec.characters[i][c];
  }

  // Validation over the integers.
  const int order = t.order();
  int dim_sq = 0;
  t.totally_symmetric = -1;
  for (int i = 0; i < n_irreps; ++i) {
    if (t.characters(i, 0) <= 0) throw std::logic_error(spec.name + ": chi(E) must be the irrep dimension");
    dim_sq += t.characters(i, 0) * t.characters(i, 0);
    if ((t.characters.row(i).array() == 1).all() && t.totally_symmetric < 0) t.totally_symmetric = i;
    for (int j = 0; j < n_irreps; ++j) {
      long s = 0;
      for (int c = 0; c < n_classes; ++c)
        s += static_cast<long>(t.classes[c].members.size()) * t.characters(i, c) * t.characters(j, c);
      if (s != (i == j ? order : 0))
        throw std::logic_error(spec.name + ": row orthogonality fails for " + t.irreps[i] + "," + t.irreps[j]);
    }
  }
  if (dim_sq != order) throw std::logic_error(spec.name + ": sum of squared dimensions != group order");
  if (t.totally_symmetric != 0) throw std::logic_error(spec.name + ": first irrep must be totally symmetric");
  return t;
}

TableSpec spec_for(std::string_view name) {
  if (name == "C2")
    return {"C2", 2, {"(-x,-y)"}, {{"E", "(x,y)"}, {"C2", "(-x,-y)"}},
            {{"E", "(x,y)"}, {"C2", "(-x,-y)"}}, {"A", "B"}, {{1, 1}, {1, -1}}};
  if (name == "Cs")
    return {"Cs", 2, {"(x,-y)"}, {{"E", "(x,y)"}, {"sigma", "(x,-y)"}},
            {{"E", "(x,y)"}, {"sigma", "(x,-y)"}}, {"A'", "A''"}, {{1, 1}, {1, -1}}};
  if (name == "C2v")
    return {"C2v", 2, {"(-x,-y)", "(-x,y)"},
            {{"E", "(x,y)"}, {"C2", "(-x,-y)"}, {"sigma_v", "(-x,y)"}, {"sigma_v'", "(x,-y)"}},
            {{"E", "(x,y)"}, {"C2", "(-x,-y)"}, {"sigma_v", "(-x,y)"}, {"sigma_v'", "(x,-y)"}},
            {"A1", "A2", "B1", "B2"},
            {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, -1, 1}, {1, -1, 1, -1}}};
  if (name == "C2v_modified")
    return {"C2v_modified", 2, {"(-x,-y)", "(y,x)"},
            {{"E", "(x,y)"}, {"C2", "(-x,-y)"}, {"sigma_d", "(y,x)"}, {"sigma_d'", "(-y,-x)"}},
            {{"E", "(x,y)"}, {"C2", "(-x,-y)"}, {"sigma_d", "(y,x)"}, {"sigma_d'", "(-y,-x)"}},
            {"A1", "A2", "B1", "B2"},
            {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}}};
  if (name == "C4v")
    return {"C4v", 2, {"(y,-x)", "(-x,y)"},
            {{"E", "(x,y)"}, {"C4", "(y,-x)"}, {"C4^3", "(-y,x)"}, {"C2", "(-x,-y)"},
             {"sigma_v", "(-x,y)"}, {"sigma_v'", "(x,-y)"}, {"sigma_d", "(y,x)"}, {"sigma_d'", "(-y,-x)"}},
            {{"E", "(x,y)"}, {"2C4", "(y,-x)"}, {"C2", "(-x,-y)"}, {"2sigma_v", "(-x,y)"}, {"2sigma_d", "(y,x)"}},
            {"A1", "A2", "B1", "B2", "E"},
            {{1, 1, 1, 1, 1}, {1, 1, 1, -1, -1}, {1, -1, 1, 1, -1}, {1, -1, 1, -1, 1}, {2, 0, -2, 0, 0}}};
  if (name == "Ci")
    return {"Ci", 3, {"(-x,-y,-z)"}, {{"E", "(x,y,z)"}, {"i", "(-x,-y,-z)"}},
            {{"E", "(x,y,z)"}, {"i", "(-x,-y,-z)"}}, {"Ag", "Au"}, {{1, 1}, {1, -1}}};
  if (name == "C2h")
    return {"C2h", 3, {"(-y,-x,-z)", "(-x,-y,-z)"},
            {{"E", "(x,y,z)"}, {"C2", "(-y,-x,-z)"}, {"i", "(-x,-y,-z)"}, {"sigma_h", "(y,x,z)"}},
            {{"E", "(x,y,z)"}, {"C2", "(-y,-x,-z)"}, {"i", "(-x,-y,-z)"}, {"sigma_h", "(y,x,z)"}},
            {"Ag", "Bg", "Au", "Bu"},
            {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}}};
  if (name == "D2h") {
    std::vector<std::pair<std::string, std::string>> ops{
        {"E", "(x,y,z)"},    {"C2z", "(-x,-y,z)"},     {"C2y", "(-x,y,-z)"},     {"C2x", "(x,-y,-z)"},
        {"i", "(-x,-y,-z)"}, {"sigma_xy", "(x,y,-z)"}, {"sigma_xz", "(x,-y,z)"}, {"sigma_yz", "(-x,y,z)"}};
    return {"D2h", 3, {"(-x,y,z)", "(x,-y,z)", "(x,y,-z)"}, ops, ops,
            {"Ag", "B1g", "B2g", "B3g", "Au", "B1u", "B2u", "B3u"},
            {{1, 1, 1, 1, 1, 1, 1, 1},
             {1, 1, -1, -1, 1, 1, -1, -1},
             {1, -1, 1, -1, 1, -1, 1, -1},
             {1, -1, -1, 1, 1, -1, -1, 1},
             {1, 1, 1, 1, -1, -1, -1, -1},
             {1, 1, -1, -1, -1, -1, 1, 1},
             {1, -1, 1, -1, -1, 1, -1, 1},
             {1, -1, -1, 1, -1, 1, 1, -1}}};
  }
  if (name == "Oh")
    return {"Oh", 3, {"(y,-x,z)", "(z,x,y)", "(-x,-y,-z)"},
            {{"E", "(x,y,z)"}},
            {{"E", "(x,y,z)"},
             {"8C3", "(z,x,y)"},
             {"6C2", "(y,x,-z)"},
             {"6C4", "(y,-x,z)"},
             {"3C2", "(-x,-y,z)"},
             {"i", "(-x,-y,-z)"},
             {"6S4", "(y,-x,-z)"},
             {"8S6", "(-z,-x,-y)"},
             {"3sigma_h", "(x,y,-z)"},
             {"6sigma_d", "(y,x,z)"}},
            {"A1g", "A2g", "Eg", "T1g", "T2g", "A1u", "A2u", "Eu", "T1u", "T2u"},
            {{1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
             {1, 1, -1, -1, 1, 1, -1, 1, 1, -1},
             {2, -1, 0, 0, 2, 2, 0, -1, 2, 0},
             {3, 0, -1, 1, -1, 3, 1, 0, -1, -1},
             {3, 0, 1, -1, -1, 3, -1, 0, -1, 1},
             {1, 1, 1, 1, 1, -1, -1, -1, -1, -1},
             {1, 1, -1, -1, 1, -1, 1, -1, -1, 1},
             {2, -1, 0, 0, 2, -2, 0, 1, -2, 0},
             {3, 0, -1, 1, -1, -3, -1, 0, 1, 1},
             {3, 0, 1, -1, -1, -3, 1, 0, 1, -1}}};
  std::string msg = "unknown point group '" + std::string(name) + "'; supported:";
  for (const auto& n : builtin_table_names()) msg += " " + n;
  throw std::invalid_argument(msg);
}

}  // namespace

SymmetryOp::SymmetryOp(std::string label, Eigen::MatrixXi matrix) : label_(std::move(label)), matrix_(std::move(matrix)) {
  const int d = static_cast<int>(matrix_.rows());
  if (d < 1 || d > 3 || matrix_.cols() != d) throw std::invalid_argument("SymmetryOp: matrix must be 1x1..3x3");
  if ((matrix_.array().abs() > 1).any()) throw std::invalid_argument("SymmetryOp: entries must be in {-1,0,1}");
  if (matrix_ * matrix_.transpose() != Eigen::MatrixXi::Identity(d, d))
    throw std::invalid_argument("SymmetryOp '" + label_ + "': matrix is not orthogonal");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (matrix_(i, j) != 0) {
        source_[i] = j;
        sign_[i] = matrix_(i, j);
      }
}

int SymmetryOp::determinant() const {
  // Signed permutation: sign of the permutation times the product of signs.
  const int d = dimension();
  int det = 1;
  for (int i = 0; i < d; ++i) det *= sign_[i];
  std::array<int, 3> perm = source_;
  for (int i = 0; i < d; ++i)
    while (perm[i] != i) {
      std::swap(perm[i], perm[perm[i]]);
      det = -det;
    }
  return det;
}

std::string SymmetryOp::image() const {
  std::string s = "(";
  for (int i = 0; i < dimension(); ++i) {
    if (i) s += ",";
    if (sign_[i] < 0) s += "-";
    s += kAxisNames[source_[i]];
  }
  return s + ")";
}

Eigen::MatrixXi matrix_from_image(std::string_view image, int dimension) {
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(dimension, dimension);
  int row = 0;
  int sign = 1;
  for (char c : image) {
    if (c == '(' || c == ')' || c == ' ') continue;
    if (c == '-') {
      sign = -1;
    } else if (c == ',') {
      ++row;
    } else {
      const char* p = std::find(std::begin(kAxisNames), std::end(kAxisNames), c);
      const int axis = static_cast<int>(p - std::begin(kAxisNames));
      if (axis >= dimension || row >= dimension)
        throw std::invalid_argument("bad coordinate image '" + std::string(image) + "'");
      m(row, axis) = sign;
      sign = 1;
    }
  }
  if (row != dimension - 1) throw std::invalid_argument("bad coordinate image '" + std::string(image) + "'");
  return m;
}

int CharacterTable::irrep_index(std::string_view irrep) const {
  for (std::size_t i = 0; i < irreps.size(); ++i)
    if (irreps[i] == irrep) return static_cast<int>(i);
  std::string msg = "irrep '" + std::string(irrep) + "' not in " + name + " (have:";
  for (const auto& r : irreps) msg += " " + r;
  throw std::invalid_argument(msg + ")");
}

int CharacterTable::op_index(std::string_view label) const {
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (ops[i].label() == label) return static_cast<int>(i);
  throw std::invalid_argument("operation '" + std::string(label) + "' not in " + name);
}

int CharacterTable::find_op(const Eigen::MatrixXi& matrix) const {
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (same(ops[i].matrix(), matrix)) return static_cast<int>(i);
  return -1;
}

CharacterTable builtin_table(std::string_view name) { return build_table(spec_for(name)); }

std::vector<std::string> builtin_table_names() {
  return {"C2", "Cs", "C2v", "C2v_modified", "C4v", "Ci", "C2h", "D2h", "Oh"};
}

std::string format_table(const CharacterTable& t) {
  std::size_t first = t.name.size();
  for (const auto& r : t.irreps) first = std::max(first, r.size());
  std::vector<std::size_t> width;
  for (const auto& c : t.classes) width.push_back(std::max<std::size_t>(c.label.size(), 3));
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(first)) << t.name << " |";
  for (std::size_t c = 0; c < t.classes.size(); ++c)
    os << " " << std::right << std::setw(static_cast<int>(width[c])) << t.classes[c].label;
  os << "\n" << std::string(first + 2 + [&] {
    std::size_t s = 0;
    for (auto w : width) s += w + 1;
    return s;
  }(), '-') << "\n";
  for (std::size_t i = 0; i < t.irreps.size(); ++i) {
    os << std::left << std::setw(static_cast<int>(first)) << t.irreps[i] << " |";
    for (std::size_t c = 0; c < t.classes.size(); ++c)
      os << " " << std::right << std::setw(static_cast<int>(width[c])) << t.characters(i, c);
    os << "\n";
  }
  return os.str();
}

std::string format_multiset(const IrrepMultiset& m) {
  std::string s;
  for (const auto& [irrep, mult] : m) {
    if (!s.empty()) s += "+";
    if (mult > 1) s += std::to_string(mult);
    s += irrep;
  }
  return s.empty() ? "0" : s;
}

int total_dimension(const CharacterTable& t, const IrrepMultiset& m) {
  int d = 0;
  for (const auto& [irrep, mult] : m) d += mult * t.irrep_dim(t.irrep_index(irrep));
  return d;
}

IrrepMultiset decompose_characters(const CharacterTable& t, const Eigen::VectorXi& chi) {
  if (chi.size() != static_cast<Eigen::Index>(t.classes.size()))
    throw std::invalid_argument("decompose_characters: one character per class required");
  IrrepMultiset out;
  for (std::size_t i = 0; i < t.irreps.size(); ++i) {
    long s = 0;
    for (std::size_t c = 0; c < t.classes.size(); ++c)
      s += static_cast<long>(t.classes[c].members.size()) * chi(c) * t.characters(i, c);
    if (s % t.order() != 0 || s < 0)
      throw std::invalid_argument("decompose_characters: not a character of " + t.name);
    if (s > 0) out.emplace_back(t.irreps[i], static_cast<int>(s / t.order()));
  }
  return out;
}

namespace {

Eigen::VectorXi multiset_characters(const CharacterTable& t, const IrrepMultiset& m) {
  Eigen::VectorXi chi = Eigen::VectorXi::Zero(static_cast<Eigen::Index>(t.classes.size()));
  for (const auto& [irrep, mult] : m) chi += mult * t.characters.row(t.irrep_index(irrep)).transpose();
  return chi;
}

}  // namespace

IrrepMultiset decompose_product(const CharacterTable& t, const std::vector<std::string>& irreps) {
  Eigen::VectorXi chi = Eigen::VectorXi::Ones(static_cast<Eigen::Index>(t.classes.size()));
  for (const auto& r : irreps) chi = chi.cwiseProduct(t.characters.row(t.irrep_index(r)).transpose());
  return decompose_characters(t, chi);
}

bool first_order_selection_rule(const CharacterTable& t, const IrrepMultiset& level,
                                const std::string& perturbation_irrep) {
  const Eigen::VectorXi lvl = multiset_characters(t, level);
  const Eigen::VectorXi chi =
      lvl.cwiseProduct(lvl).cwiseProduct(t.characters.row(t.irrep_index(perturbation_irrep)).transpose());
  for (const auto& [irrep, mult] : decompose_characters(t, chi))
    if (irrep == t.irreps[t.totally_symmetric]) return true;
  return false;
}

bool first_order_selection_rule(const CharacterTable& t, const std::string& level_irrep,
                                const std::string& perturbation_irrep) {
  return first_order_selection_rule(t, IrrepMultiset{{level_irrep, 1}}, perturbation_irrep);
}

PolynomialOperator transform_polynomial(const SymmetryOp& op, const PolynomialOperator& p) {
  if (op.dimension() != p.dimension()) throw std::invalid_argument("transform_polynomial: dimension mismatch");
  PolynomialOperator out(p.dimension());
  for (const Term& term : p.terms()) {
    Monomial m;
    Rational c = term.coeff;
    for (int i = 0; i < p.dimension(); ++i) {
      const int j = op.source(i);
      m.powers[j] += term.mono.powers[i];
      m.kinetic[j] += term.mono.kinetic[i];
      if (op.sign(i) < 0 && term.mono.powers[i] % 2 == 1) c = -c;
    }
    out.add_term(c, m);
  }
  return out;
}

std::vector<PolynomialComponent> classify_polynomial(const PolynomialOperator& p, const CharacterTable& t) {
  if (p.is_zero()) throw std::invalid_argument("classify_polynomial: zero polynomial has no symmetry");
  std::vector<PolynomialOperator> images;
  for (const auto& op : t.ops) images.push_back(transform_polynomial(op, p));
  std::vector<PolynomialComponent> out;
  for (std::size_t i = 0; i < t.irreps.size(); ++i) {
    PolynomialOperator comp(p.dimension());
    for (int r = 0; r < t.order(); ++r) {
      const int chi = t.character(static_cast<int>(i), r);
      if (chi != 0) comp += images[r] * Rational(chi);
    }
    comp *= Rational(t.irrep_dim(static_cast<int>(i)), t.order());
    if (!comp.is_zero()) out.push_back({t.irreps[i], std::move(comp)});
  }
  return out;
}

Embedding identity_embedding(const CharacterTable& t) {
  Embedding e;
  for (const auto& op : t.ops) e.sub_to_parent.emplace_back(op.label(), op.label());
  return e;
}

const IrrepMultiset& BranchingMap::image_of(const CharacterTable& parent_table, std::string_view irrep) const {
  return image.at(parent_table.irrep_index(irrep));
}

BranchingMap branch(const CharacterTable& parent, const CharacterTable& sub, const Embedding& embedding) {
  if (parent.dimension != sub.dimension)
    throw std::invalid_argument("branch: " + sub.name + " and " + parent.name + " act in different dimensions");
  BranchingMap map;
  map.parent = parent.name;
  map.sub = sub.name;
  map.parent_op.assign(sub.ops.size(), -1);
  for (const auto& [sub_label, parent_label] : embedding.sub_to_parent) {
    const int s = sub.op_index(sub_label);
    int p = -1;
    try {
      p = parent.op_index(parent_label);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("branch: embedding maps " + sub_label + " to unknown " + parent.name +
                                  " operation '" + parent_label + "'");
    }
    if (map.parent_op[s] >= 0) throw std::invalid_argument("branch: operation " + sub_label + " embedded twice");
    if (!same(sub.ops[s].matrix(), parent.ops[p].matrix()))
      throw std::invalid_argument("branch: " + sub.name + " operation " + sub_label + " " + sub.ops[s].image() +
                                  " is not realized by " + parent.name + " operation " + parent_label + " " +
                                  parent.ops[p].image());
    map.parent_op[s] = p;
  }
  for (std::size_t s = 0; s < sub.ops.size(); ++s)
    if (map.parent_op[s] < 0) throw std::invalid_argument("branch: operation " + sub.ops[s].label() + " not embedded");
  // Closure of the image inside the parent.
  for (std::size_t a = 0; a < sub.ops.size(); ++a)
    for (std::size_t b = 0; b < sub.ops.size(); ++b) {
      const Eigen::MatrixXi prod = parent.ops[map.parent_op[a]].matrix() * parent.ops[map.parent_op[b]].matrix();
      bool inside = false;
      for (int p : map.parent_op) inside = inside || same(parent.ops[p].matrix(), prod);
      if (!inside)
        throw std::invalid_argument("branch: embedding not closed; product involving " + sub.ops[a].label() +
                                    " leaves the image");
    }

  for (std::size_t i = 0; i < parent.irreps.size(); ++i) {
    Eigen::VectorXi chi(static_cast<Eigen::Index>(sub.classes.size()));
    for (std::size_t c = 0; c < sub.classes.size(); ++c)
      chi(c) = parent.character(static_cast<int>(i), map.parent_op[sub.classes[c].members.front()]);
    map.image.push_back(decompose_characters(sub, chi));
  }
  return map;
}

}  // namespace nhsym
