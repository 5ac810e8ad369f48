#include "nhsym/operators.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nhsym {

ModelCheck check_model(const ModelSpec& model) {
  ModelCheck c;
  for (const SymmetryOp& op : model.group.ops) {
    if (transform_polynomial(op, model.h0) != model.h0) {
      c.h0_invariant = false;
      c.problems.push_back("H0 = " + model.h0.str() + " is not invariant under " + model.group.name + " operation " +
                           op.label() + " " + op.image());
    }
    if (transform_polynomial(op, model.hprime) == -model.hprime) c.flip_exists = true;
  }
  for (const SymmetryOp& op : model.subgroup.ops) {
    if (transform_polynomial(op, model.hprime) != model.hprime) {
      c.hprime_invariant = false;
      c.problems.push_back("H' = " + model.hprime.str() + " is not invariant under " + model.subgroup.name +
                           " operation " + op.label() + " " + op.image());
    }
  }
  if (model.expects_flip && !c.flip_exists)
    c.problems.push_back("no operation of " + model.group.name + " maps H' to -H'");
  return c;
}

void validate_model(const ModelSpec& model) {
  std::vector<std::string> problems;
  const int d = model.dimension;
  if (static_cast<int>(model.axes.size()) != d)
    problems.push_back("model has " + std::to_string(model.axes.size()) + " axis families for dimension " +
                       std::to_string(d));
  for (const ModeFamily& f : model.axes)
    if (!model.axes.empty() && f.kind() != model.axes.front().kind())
      problems.push_back("all axes must use the same mode family");
  if (model.h0.dimension() != d || model.hprime.dimension() != d)
    problems.push_back("operator dimension does not match the model dimension");
  if (model.group.dimension != d) problems.push_back("group " + model.group.name + " does not act in " + std::to_string(d) + " dimensions");
  if (model.subgroup.dimension != d)
    problems.push_back("subgroup " + model.subgroup.name + " does not act in " + std::to_string(d) + " dimensions");
  if (problems.empty()) {
    try {
      branch(model.group, model.subgroup, model.embedding);
    } catch (const std::exception& e) {
      problems.push_back(e.what());
    }
    for (const std::string& p : check_model(model).problems) problems.push_back(p);
  }
  if (!problems.empty()) {
    std::string msg = "model '" + model.name + "' is invalid:";
    for (const std::string& p : problems) msg += "\n  " + p;
    throw std::invalid_argument(msg);
  }
}

namespace {

struct TermFactors {
  double coeff;
  std::array<const Eigen::MatrixXd*, kMaxDim> m{};  // null = identity on that axis
};

class FactorCache {
 public:
  FactorCache(const std::vector<ModeFamily>& axes, int cutoff) : axes_(axes), cutoff_(cutoff) {}

  std::vector<TermFactors> factors(const PolynomialOperator& op) {
    std::vector<TermFactors> out;
    for (const Term& t : op.terms()) {
      TermFactors f{t.coeff.to_double(), {}};
      for (int i = 0; i < op.dimension(); ++i) {
        if (t.mono.kinetic[i] > 0) f.m[i] = &get(i, Observable::p2());
        else if (t.mono.powers[i] > 0) f.m[i] = &get(i, Observable::q(t.mono.powers[i]));
      }
      out.push_back(f);
    }
    return out;
  }

 private:
  const Eigen::MatrixXd& get(int axis, Observable obs) {
    const auto key = std::make_tuple(axis, obs.q_power, obs.momentum_squared);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, axes_.at(axis).matrix(obs, cutoff_)).first;
    return it->second;
  }

  const std::vector<ModeFamily>& axes_;
  int cutoff_;
  std::map<std::tuple<int, int, bool>, Eigen::MatrixXd> cache_;
};

double element(const std::vector<TermFactors>& terms, int dim, int first, const MultiIndex& a, const MultiIndex& b) {
  double sum = 0.0;
  for (const TermFactors& t : terms) {
    double v = t.coeff;
    for (int i = 0; i < dim && v != 0.0; ++i) {
      if (t.m[i]) v *= (*t.m[i])(a[i] - first, b[i] - first);
      else if (a[i] != b[i]) v = 0.0;
    }
    sum += v;
  }
  return sum;
}

std::vector<const SparseFunction*> function_list(const BasisBlock& b) {
  std::vector<const SparseFunction*> out;
  out.reserve(b.functions.size());
  for (const AdaptedFunction& f : b.functions) out.push_back(&f.terms);
  return out;
}

}  // namespace

Eigen::MatrixXd assemble_operator(const PolynomialOperator& op, const std::vector<ModeFamily>& axes, int cutoff,
                                  const std::vector<const SparseFunction*>& rows,
                                  const std::vector<const SparseFunction*>& cols) {
  if (static_cast<int>(axes.size()) != op.dimension())
    throw std::invalid_argument("assemble_operator: operator dimension does not match the axes");
  FactorCache cache(axes, cutoff);
  const auto terms = cache.factors(op);
  const int dim = op.dimension();
  const int first = axes.front().first_index();
  const bool same = &rows == &cols || rows == cols;
  const int nr = static_cast<int>(rows.size());
  const int nc = static_cast<int>(cols.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nr, nc);
  for (int j = 0; j < nc; ++j) {
    for (int i = same ? j : 0; i < nr; ++i) {
      double s = 0.0;
      for (const auto& [a, ca] : *rows[i])
        for (const auto& [b, cb] : *cols[j]) s += ca * cb * element(terms, dim, first, a, b);
      m(i, j) = s;
      if (same) m(j, i) = s;
    }
  }
  return m;
}

Eigen::MatrixXd assemble_operator(const PolynomialOperator& op, const std::vector<ModeFamily>& axes,
                                  const BasisBlock& rows, const BasisBlock& cols) {
  const auto r = function_list(rows);
  if (&rows == &cols) return assemble_operator(op, axes, rows.cutoff, r, r);
  return assemble_operator(op, axes, std::max(rows.cutoff, cols.cutoff), r, function_list(cols));
}

BasisBlock model_block(const ModelSpec& model, const std::string& irrep, int cutoff, bool full_group) {
  const auto basis = product_basis(model.kind(), model.dimension, cutoff);
  return symmetry_adapt(basis, model.kind(), model.dimension, cutoff, full_group ? model.group : model.subgroup, irrep);
}

BlockOperators prepare_block(const ModelSpec& model, const BasisBlock& block) {
  if (block.table != model.subgroup.name)
    throw std::invalid_argument("block was adapted to " + block.table + " but model '" + model.name +
                                "' diagonalizes in " + model.subgroup.name);
  if (block.kind != model.kind() || block.dimension != model.dimension)
    throw std::invalid_argument("block basis family or dimension does not match model '" + model.name + "'");
  const int gamma = model.subgroup.irrep_index(block.irrep);
  if (model.subgroup.irrep_dim(gamma) > 1)
    throw std::invalid_argument("irrep " + block.irrep + " of " + block.table +
                                " is multi-dimensional; diagonalize in a subgroup with 1-D irreps (C2v_modified, C2, Cs, C2h)");
  BlockOperators ops;
  ops.basis = block;
  ops.h0 = assemble_operator(model.h0, model.axes, block, block);
  ops.hprime = assemble_operator(model.hprime, model.axes, block, block);
  return ops;
}

MatrixBlock build_block(const ModelSpec& model, const BasisBlock& block, double g) {
  const BlockOperators ops = prepare_block(model, block);
  MatrixBlock m;
  m.irrep = block.irrep;
  m.matrix = ops.at(g);
  m.g = g;
  m.provenance = model.name + " " + block.table + ":" + block.irrep + " " + model.axes.front().describe() +
                 " cutoff=" + std::to_string(block.cutoff);
  return m;
}

void write_matrix(std::ostream& os, const Eigen::MatrixXcd& m) {
  os << m.rows() << " " << m.cols() << "\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      os << (j ? " " : "") << m(i, j).real() << "," << m(i, j).imag();
    os << "\n";
  }
}

Eigen::MatrixXcd read_matrix(std::istream& is) {
  Eigen::Index rows = 0, cols = 0;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0) throw std::invalid_argument("read_matrix: bad header");
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      std::string tok;
      if (!(is >> tok)) throw std::invalid_argument("read_matrix: truncated at row " + std::to_string(i + 1));
      const auto comma = tok.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("read_matrix: entry '" + tok + "' is not re,im");
      m(i, j) = cplx(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
    }
  return m;
}

DynamicalSymmetryReport dynamical_symmetry_check(const PolynomialOperator& o, const ModelSpec& model, int cutoff) {
  DynamicalSymmetryReport r;
  const auto basis = product_basis(model.kind(), model.dimension, cutoff);
  std::vector<SparseFunction> singles;
  singles.reserve(basis.size());
  for (const MultiIndex& n : basis) singles.push_back({{n, 1.0}});
  std::vector<const SparseFunction*> all;
  for (const auto& s : singles) all.push_back(&s);
  const Eigen::MatrixXd h0 = assemble_operator(model.h0, model.axes, cutoff, all, all);
  const Eigen::MatrixXd om = assemble_operator(o, model.axes, cutoff, all, all);
  const int pad = std::max(model.h0.max_axis_order(), o.max_axis_order());
  std::vector<int> interior;
  for (int k = 0; k < static_cast<int>(basis.size()); ++k) {
    bool inside = true;
    for (int i = 0; i < model.dimension; ++i) inside = inside && basis[k][i] + pad <= cutoff;
    if (inside) interior.push_back(k);
  }
  const Eigen::MatrixXd c = h0 * om - om * h0;
  double cn = 0.0, hn = 0.0;
  for (int i : interior)
    for (int j : interior) {
      cn += c(i, j) * c(i, j);
      hn += h0(i, j) * h0(i, j);
    }
  r.commutator_norm = std::sqrt(cn);
  r.h0_norm = std::sqrt(hn);
  r.interior_size = static_cast<int>(interior.size());
  r.basis_size = static_cast<int>(basis.size());

  std::vector<BasisBlock> blocks;
  for (const std::string& irrep : model.group.irreps)
    blocks.push_back(symmetry_adapt(basis, model.kind(), model.dimension, cutoff, model.group, irrep));
  const double scale = std::max(1.0, om.norm());
  for (const BasisBlock& from : blocks) {
    if (from.functions.empty()) continue;
    for (const BasisBlock& to : blocks) {
      if (to.functions.empty()) continue;
      const double n = assemble_operator(o, model.axes, to, from).norm();
      if (n > 1e-10 * scale) r.couplings.push_back({from.irrep, to.irrep, n});
    }
  }
  return r;
}

}  // namespace nhsym
