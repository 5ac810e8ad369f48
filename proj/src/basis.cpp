#include "nhsym/basis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace nhsym {

namespace {

constexpr int kMaxPower = 8;

void check_observable(Observable obs) {
  if (obs.q_power < 0 || obs.q_power > kMaxPower)
    throw std::invalid_argument("matrix element: q power must be in 0.." + std::to_string(kMaxPower));
  if (obs.momentum_squared && obs.q_power != 0)
    throw std::invalid_argument("matrix element: q and p^2 in one factor");
}

// Position operator (a + a^dagger)/sqrt(2) on the first `size` harmonic functions.
Eigen::MatrixXd ladder_q(int size) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(size, size);
  for (int n = 0; n + 1 < size; ++n) q(n, n + 1) = q(n + 1, n) = std::sqrt((n + 1) / 2.0);
  return q;
}

// Exact matrices of q^a and p^2 in the unscaled harmonic basis, 0..size-1.
Eigen::MatrixXd harmonic_q_power(int size, int power) {
  const Eigen::MatrixXd q = ladder_q(size + power);
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(size + power, size + power);
  for (int k = 0; k < power; ++k) r = r * q;
  const Eigen::MatrixXd t = r.topLeftCorner(size, size);
  return 0.5 * (t + t.transpose());
}

Eigen::MatrixXd harmonic_p2(int size) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(size, size);
  for (int n = 0; n < size; ++n) {
    p(n, n) = (2 * n + 1) / 2.0;
    if (n + 2 < size) p(n, n + 2) = p(n + 2, n) = -std::sqrt((n + 1.0) * (n + 2.0)) / 2.0;
  }
  return p;
}

double harmonic_element(int bra, int ket, Observable obs) {
  if (obs.momentum_squared) {
    if (bra == ket) return (2 * bra + 1) / 2.0;
    const int lo = std::min(bra, ket);
    if (std::abs(bra - ket) == 2) return -std::sqrt((lo + 1.0) * (lo + 2.0)) / 2.0;
    return 0.0;
  }
  const int a = obs.q_power;
  if (std::abs(bra - ket) > a || (bra - ket - a) % 2 != 0) return 0.0;
  // Apply q a times to |ket>; components stay within ket +- a.
  std::vector<double> v(ket + a + 2, 0.0);
  v[ket] = 1.0;
  for (int step = 0; step < a; ++step) {
    std::vector<double> w(v.size(), 0.0);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] == 0.0) continue;
      if (k > 0) w[k - 1] += std::sqrt(k / 2.0) * v[k];
      if (k + 1 < v.size()) w[k + 1] += std::sqrt((k + 1) / 2.0) * v[k];
    }
    v = std::move(w);
  }
  return v[bra];
}

// I_a(k) = int_{-1}^{1} x^a cos(k pi (x+1)/2) dx.
double box_cos_moment(int a, int k) {
  k = std::abs(k);
  if (k == 0) return a % 2 == 0 ? 2.0 / (a + 1) : 0.0;
  const double theta = k * std::numbers::pi / 2.0;
  static constexpr int kCos[4] = {1, 0, -1, 0};
  static constexpr int kSin[4] = {0, 1, 0, -1};
  const double c = kCos[k % 4];
  const double s = kSin[k % 4];
  // C_j = int x^j cos(theta x), S_j = int x^j sin(theta x) over [-1, 1].
  double cj = 2.0 * s / theta;
  double sj = 0.0;
  for (int j = 1; j <= a; ++j) {
    const double even = (j % 2 == 0) ? 2.0 : 0.0;
    const double odd = 2.0 - even;
    const double cn = s * even / theta - j / theta * sj;
    const double sn = -c * odd / theta + j / theta * cj;
    cj = cn;
    sj = sn;
  }
  return c * cj - s * sj;
}

double box_element(int bra, int ket, Observable obs) {
  if (obs.momentum_squared) {
    if (bra != ket) return 0.0;
    const double k = bra * std::numbers::pi / 2.0;
    return k * k;
  }
  if (obs.q_power == 0) return bra == ket ? 1.0 : 0.0;
  // Parity: the integrand is odd unless (bra + ket + a) is even.
  if ((bra + ket + obs.q_power) % 2 != 0) return 0.0;
  return 0.5 * (box_cos_moment(obs.q_power, bra - ket) - box_cos_moment(obs.q_power, bra + ket));
}

int kind_parity(ModeKind kind, int n) {
  const int m = kind == ModeKind::box ? n + 1 : n;
  return m % 2 == 0 ? 1 : -1;
}

}  // namespace

struct ModeFamily::Anharmonic {
  int primitive_size = 0;
  Eigen::VectorXd energies;
  Eigen::MatrixXd coeffs;  // primitive x mode
  int reliable = 0;        // modes trusted to ~1e-10
};

std::string to_string(ModeKind kind) {
  switch (kind) {
    case ModeKind::harmonic: return "harmonic";
    case ModeKind::box: return "box";
    case ModeKind::anharmonic: return "anharmonic";
  }
  return "?";
}

ModeKind mode_kind_from_string(const std::string& name) {
  if (name == "harmonic") return ModeKind::harmonic;
  if (name == "box") return ModeKind::box;
  if (name == "anharmonic") return ModeKind::anharmonic;
  throw std::invalid_argument("unknown mode family '" + name + "' (expected harmonic, box or anharmonic)");
}

ModeFamily ModeFamily::harmonic(double scale) {
  if (!(scale > 0)) throw std::invalid_argument("harmonic family: scale must be positive");
  ModeFamily f;
  f.kind_ = ModeKind::harmonic;
  f.scale_ = scale;
  return f;
}

ModeFamily ModeFamily::box() {
  ModeFamily f;
  f.kind_ = ModeKind::box;
  return f;
}

ModeFamily ModeFamily::anharmonic(Rational quartic, double scale, int primitive_size) {
  if (!(quartic > Rational(0))) throw std::invalid_argument("anharmonic family: quartic coefficient must be positive");
  if (primitive_size < 40) throw std::invalid_argument("anharmonic family: primitive basis too small");
  const double alpha = quartic.to_double();
  if (scale <= 0) scale = 0.55 * std::pow(alpha, -1.0 / 6.0);

  const int p = primitive_size;
  const Eigen::MatrixXd h =
      harmonic_p2(p) / (scale * scale) + alpha * std::pow(scale, 4) * harmonic_q_power(p, 4);

  // Even and odd primitive functions never mix, so parity stays exact.
  std::vector<std::pair<double, Eigen::VectorXd>> modes;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<int> idx;
    for (int n = parity; n < p; n += 2) idx.push_back(n);
    const int m = static_cast<int>(idx.size());
    Eigen::MatrixXd sub(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) sub(i, j) = h(idx[i], idx[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub);
    for (int k = 0; k < m; ++k) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(p);
      for (int i = 0; i < m; ++i) c(idx[i]) = es.eigenvectors()(i, k);
      for (int i = 0; i < p; ++i) {
        if (std::abs(c(i)) > 1e-14) {
          if (c(i) < 0) c = -c;
          break;
        }
      }
      modes.emplace_back(es.eigenvalues()(k), std::move(c));
    }
  }
  std::sort(modes.begin(), modes.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  auto data = std::make_shared<Anharmonic>();
  data->primitive_size = p;
  data->energies.resize(p);
  data->coeffs.resize(p, p);
  for (int k = 0; k < p; ++k) {
    data->energies(k) = modes[k].first;
    data->coeffs.col(k) = modes[k].second;
  }
  data->reliable = p / 4;

  ModeFamily f;
  f.kind_ = ModeKind::anharmonic;
  f.scale_ = scale;
  f.quartic_ = quartic;
  f.anharmonic_ = std::move(data);
  return f;
}

int ModeFamily::parity(int n) const { return kind_parity(kind_, n); }

std::string ModeFamily::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  if (kind_ == ModeKind::harmonic && scale_ != 1.0) os << "(scale=" << scale_ << ")";
  if (kind_ == ModeKind::anharmonic) os << "(quartic=" << quartic_.str() << ")";
  return os.str();
}

Eigen::MatrixXd ModeFamily::matrix(Observable obs, int cutoff) const {
  check_observable(obs);
  const int first = first_index();
  if (cutoff < first) throw std::invalid_argument("mode matrix: cutoff below the first index");
  const int n = cutoff - first + 1;
  switch (kind_) {
    case ModeKind::harmonic:
      if (obs.momentum_squared) return harmonic_p2(n) / (scale_ * scale_);
      return harmonic_q_power(n, obs.q_power) * std::pow(scale_, obs.q_power);
    case ModeKind::box: {
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = box_element(i + 1, j + 1, obs);
      return m;
    }
    case ModeKind::anharmonic: {
      const Anharmonic& d = *anharmonic_;
      if (n > d.reliable)
        throw std::invalid_argument("anharmonic family: cutoff " + std::to_string(cutoff) +
                                    " exceeds the converged modes (" + std::to_string(d.reliable) + ")");
      const int p = d.primitive_size;
      const Eigen::MatrixXd prim = obs.momentum_squared
                                       ? Eigen::MatrixXd(harmonic_p2(p) / (scale_ * scale_))
                                       : Eigen::MatrixXd(harmonic_q_power(p, obs.q_power) * std::pow(scale_, obs.q_power));
      const auto c = d.coeffs.leftCols(n);
      Eigen::MatrixXd m = c.transpose() * prim * c;
      // Exact parity zeros.
      const int shift = obs.momentum_squared ? 0 : obs.q_power;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if ((i + j + shift) % 2 != 0) m(i, j) = 0.0;
      return 0.5 * (m + m.transpose());
    }
  }
  return {};
}

Eigen::VectorXd ModeFamily::energies(int cutoff) const {
  const int first = first_index();
  const int n = cutoff - first + 1;
  if (n <= 0) throw std::invalid_argument("mode energies: cutoff below the first index");
  Eigen::VectorXd e(n);
  for (int k = 0; k < n; ++k) {
    const int idx = k + first;
    switch (kind_) {
      case ModeKind::harmonic: e(k) = 2 * idx + 1; break;
      case ModeKind::box: e(k) = std::pow(idx * std::numbers::pi / 2.0, 2); break;
      case ModeKind::anharmonic:
        if (n > anharmonic_->reliable) throw std::invalid_argument("anharmonic family: cutoff exceeds the converged modes");
        e(k) = anharmonic_->energies(k);
        break;
    }
  }
  return e;
}

double me_1d(const ModeFamily& family, int bra, int ket, Observable obs) {
  check_observable(obs);
  if (bra < family.first_index() || ket < family.first_index())
    throw std::invalid_argument("matrix element: index below " + std::to_string(family.first_index()));
  switch (family.kind()) {
    case ModeKind::harmonic: {
      const double s = family.scale();
      const double v = harmonic_element(bra, ket, obs);
      return obs.momentum_squared ? v / (s * s) : v * std::pow(s, obs.q_power);
    }
    case ModeKind::box: return box_element(bra, ket, obs);
    case ModeKind::anharmonic: return family.matrix(obs, std::max(bra, ket))(bra, ket);
  }
  return 0.0;
}

std::string format_index(const MultiIndex& n, int dimension) {
  std::string s = "(";
  for (int i = 0; i < dimension; ++i) s += (i ? "," : "") + std::to_string(n[i]);
  return s + ")";
}

std::vector<MultiIndex> product_basis(ModeKind kind, int dimension, int cutoff) {
  if (dimension < 1 || dimension > kMaxDim) throw std::invalid_argument("product_basis: dimension must be 1..3");
  const int first = kind == ModeKind::box ? 1 : 0;
  if (cutoff < first)
    throw std::invalid_argument("product_basis: cutoff must be >= " + std::to_string(first) + " for the " +
                                to_string(kind) + " family");
  std::vector<MultiIndex> out;
  MultiIndex n{};
  for (int i = 0; i < dimension; ++i) n[i] = first;
  while (true) {
    out.push_back(n);
    int axis = dimension - 1;
    while (axis >= 0 && n[axis] == cutoff) n[axis--] = first;
    if (axis < 0) break;
    ++n[axis];
  }
  return out;
}

std::pair<int, MultiIndex> apply_op(const SymmetryOp& op, ModeKind kind, const MultiIndex& n) {
  MultiIndex image{};
  int sign = 1;
  for (int i = 0; i < op.dimension(); ++i) {
    image[op.source(i)] = n[i];
    if (op.sign(i) < 0) sign *= kind_parity(kind, n[i]);
  }
  return {sign, image};
}

namespace {

using IntVector = std::vector<std::pair<MultiIndex, long>>;

long int_norm2(const IntVector& v) {
  long s = 0;
  for (const auto& [_, c] : v) s += c * c;
  return s;
}

}  // namespace

BasisBlock symmetry_adapt(const std::vector<MultiIndex>& basis, ModeKind kind, int dimension, int cutoff,
                          const CharacterTable& table, const std::string& irrep) {
  if (table.dimension != dimension)
    throw std::invalid_argument("symmetry_adapt: table " + table.name + " acts in " +
                                std::to_string(table.dimension) + " dimensions, basis has " +
                                std::to_string(dimension));
  const int gamma = table.irrep_index(irrep);
  std::set<MultiIndex> members(basis.begin(), basis.end());

  BasisBlock block;
  block.table = table.name;
  block.irrep = irrep;
  block.kind = kind;
  block.dimension = dimension;
  block.cutoff = cutoff;

  std::map<MultiIndex, std::vector<int>> support;  // multi-index -> accepted functions touching it

  auto accept = [&](AdaptedFunction f) {
    const int id = block.size();
    for (const auto& [idx, _] : f.terms) support[idx].push_back(id);
    block.functions.push_back(std::move(f));
  };

  for (const MultiIndex& seed : basis) {
    std::map<MultiIndex, long> acc;
    for (int r = 0; r < table.order(); ++r) {
      const auto [sign, image] = apply_op(table.ops[r], kind, seed);
      if (!members.count(image))
        throw std::invalid_argument("symmetry_adapt: operation " + table.ops[r].label() +
                                    " maps the basis outside itself");
      const int chi = table.character(gamma, r);
      if (chi != 0) acc[image] += static_cast<long>(chi) * sign;
    }
    IntVector v;
    for (const auto& [idx, c] : acc)
      if (c != 0) v.emplace_back(idx, c);
    if (v.empty()) continue;

    std::set<int> overlapping;
    for (const auto& [idx, _] : v) {
      auto it = support.find(idx);
      if (it != support.end()) overlapping.insert(it->second.begin(), it->second.end());
    }

    const long vn = int_norm2(v);
    bool need_gs = false;
    bool dependent = false;
    for (int id : overlapping) {
      const AdaptedFunction& u = block.functions[id];
      if (!u.exact) {
        need_gs = true;
        continue;
      }
      long dot = 0;
      for (std::size_t k = 0; k < u.terms.size(); ++k) {
        auto it = std::lower_bound(v.begin(), v.end(), u.terms[k].first,
                                   [](const auto& e, const MultiIndex& m) { return e.first < m; });
        if (it != v.end() && it->first == u.terms[k].first) dot += u.numerators[k] * it->second;
      }
      if (dot == 0) continue;
      if (static_cast<__int128>(dot) * dot == static_cast<__int128>(u.norm2) * vn) {
        dependent = true;
        break;
      }
      need_gs = true;
    }
    if (dependent) continue;

    AdaptedFunction f;
    f.irrep = irrep;
    f.seed = seed;
    if (!need_gs) {
      f.exact = true;
      f.norm2 = vn;
      const double norm = std::sqrt(static_cast<double>(vn));
      for (const auto& [idx, c] : v) {
        f.terms.emplace_back(idx, c / norm);
        f.numerators.push_back(c);
      }
      accept(std::move(f));
      continue;
    }

    // Gram-Schmidt in doubles, twice, following supports as they grow.
    std::map<MultiIndex, double> w;
    const double vnorm = std::sqrt(static_cast<double>(vn));
    for (const auto& [idx, c] : v) w[idx] = c / vnorm;
    for (int pass = 0; pass < 2; ++pass) {
      std::set<int> done;
      bool grew = true;
      while (grew) {
        grew = false;
        std::set<int> todo;
        for (const auto& [idx, c] : w) {
          auto it = support.find(idx);
          if (it == support.end()) continue;
          for (int id : it->second)
            if (!done.count(id)) todo.insert(id);
        }
        for (int id : todo) {
          const AdaptedFunction& u = block.functions[id];
          double dot = 0.0;
          for (const auto& [idx, c] : u.terms) {
            auto it = w.find(idx);
            if (it != w.end()) dot += c * it->second;
          }
          if (dot != 0.0) {
            for (const auto& [idx, c] : u.terms) w[idx] -= dot * c;
            grew = true;
          }
          done.insert(id);
        }
      }
    }
    double norm = 0.0;
    for (const auto& [_, c] : w) norm += c * c;
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;
    for (const auto& [idx, c] : w)
      if (std::abs(c / norm) > 1e-15) f.terms.emplace_back(idx, c / norm);
    accept(std::move(f));
  }
  return block;
}

IrrepMultiset classify_h0_level(ModeKind kind, const std::vector<int>& pattern, const CharacterTable& table) {
  if (static_cast<int>(pattern.size()) != table.dimension)
    throw std::invalid_argument("classify_h0_level: pattern length does not match the table dimension");
  const int first = kind == ModeKind::box ? 1 : 0;
  std::vector<int> sorted = pattern;
  for (int n : sorted)
    if (n < first) throw std::invalid_argument("classify_h0_level: index below " + std::to_string(first));
  std::sort(sorted.begin(), sorted.end());
  std::vector<MultiIndex> orbit;
  do {
    MultiIndex m{};
    std::copy(sorted.begin(), sorted.end(), m.begin());
    orbit.push_back(m);
  } while (std::next_permutation(sorted.begin(), sorted.end()));

  Eigen::VectorXi chi(table.classes.size());
  for (std::size_t c = 0; c < table.classes.size(); ++c) {
    const SymmetryOp& op = table.ops[table.classes[c].members.front()];
    int trace = 0;
    for (const MultiIndex& f : orbit) {
      const auto [sign, image] = apply_op(op, kind, f);
      if (image == f) trace += sign;
    }
    chi(static_cast<Eigen::Index>(c)) = trace;
  }
  return decompose_characters(table, chi);
}

void write_block(std::ostream& os, const BasisBlock& block) {
  os << "# block table=" << block.table << " kind=" << to_string(block.kind) << " dimension=" << block.dimension
     << " cutoff=" << block.cutoff << "\n";
  os << "irrep " << block.irrep << "\n";
  os << std::setprecision(17);
  for (const AdaptedFunction& f : block.functions) {
    for (std::size_t k = 0; k < f.terms.size(); ++k)
      os << (k ? " " : "") << "(" << f.terms[k].second << "," << format_index(f.terms[k].first, block.dimension) << ")";
    os << "\n";
  }
}

BasisBlock read_block(std::istream& is) {
  BasisBlock block;
  std::string line;
  int lineno = 0;
  bool have_irrep = false;
  auto fail = [&](const std::string& what) -> void {
    throw std::invalid_argument("read_block: line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("# block", 0) == 0) {
      std::istringstream ls(line.substr(7));
      std::string kv;
      while (ls >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) fail("malformed header field '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        if (key == "table") block.table = value;
        else if (key == "kind") block.kind = mode_kind_from_string(value);
        else if (key == "dimension") block.dimension = std::stoi(value);
        else if (key == "cutoff") block.cutoff = std::stoi(value);
      }
      continue;
    }
    if (line[0] == '#') continue;
    if (line.rfind("irrep ", 0) == 0) {
      block.irrep = line.substr(6);
      have_irrep = true;
      continue;
    }
    if (!have_irrep) fail("function listed before the irrep line");
    AdaptedFunction f;
    f.irrep = block.irrep;
    std::size_t pos = 0;
    while (true) {
      pos = line.find('(', pos);
      if (pos == std::string::npos) break;
      const std::size_t comma = line.find(",(", pos);
      const std::size_t close = line.find("))", pos);
      if (comma == std::string::npos || close == std::string::npos || comma > close) fail("malformed term");
      const double c = std::stod(line.substr(pos + 1, comma - pos - 1));
      MultiIndex idx{};
      std::istringstream ns(line.substr(comma + 2, close - comma - 2));
      std::string part;
      int axis = 0;
      while (std::getline(ns, part, ',')) {
        if (axis >= kMaxDim) fail("too many indices");
        idx[axis++] = std::stoi(part);
      }
      if (axis != block.dimension) fail("index has " + std::to_string(axis) + " components");
      f.terms.emplace_back(idx, c);
      pos = close + 2;
    }
    if (f.terms.empty()) fail("empty function");
    f.seed = f.terms.front().first;
    block.functions.push_back(std::move(f));
  }
  if (!have_irrep) throw std::invalid_argument("read_block: missing irrep line");
  return block;
}

}  // namespace nhsym
