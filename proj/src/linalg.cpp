#include "nhsym/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#ifdef NHSYM_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace nhsym {

std::vector<double> Spectrum::real_values() const {
  std::vector<double> r;
  r.reserve(values.size());
  for (const cplx& z : values) r.push_back(z.real());
  return r;
}

Eigen::VectorXd balance(Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  constexpr double radix = 2.0;
  bool converged = false;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c >= g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        d(i) *= f;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
  return d;
}

namespace {

void finish(Spectrum& s, const Eigen::MatrixXcd& a, std::vector<cplx> values, Eigen::MatrixXcd vectors) {
  const int n = static_cast<int>(values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    if (values[i].real() != values[j].real()) return values[i].real() < values[j].real();
    return values[i].imag() < values[j].imag();
  });
  // Real parts equal up to rounding (conjugate pairs) tie; order runs by Im.
  const double tie = 1e-12 * std::max(1.0, s.norm);
  for (int start = 0; start < n;) {
    int end = start + 1;
    while (end < n && values[order[end]].real() - values[order[end - 1]].real() <= tie) ++end;
    std::stable_sort(order.begin() + start, order.begin() + end,
                     [&](int i, int j) { return values[i].imag() < values[j].imag(); });
    start = end;
  }
  s.values.resize(n);
  for (int k = 0; k < n; ++k) s.values[k] = values[order[k]];
  if (vectors.cols() > 0) {
    s.vectors.resize(n, n);
    s.residuals.resize(n);
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXcd v = vectors.col(order[k]);
      const double nv = v.norm();
      if (nv > 0) v /= nv;
      s.vectors.col(k) = v;
      s.residuals[k] = (a * v - s.values[k] * v).norm();
    }
  }
  // Near-defective clusters by single linkage; values are sorted by Re so the
  // inner scan stops early.
  const double tol = 1e-6 * s.norm;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> linked(n, false);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n && s.values[j].real() - s.values[i].real() < tol; ++j)
      if (std::abs(s.values[i] - s.values[j]) < tol) {
        parent[find(i)] = find(j);
        linked[i] = linked[j] = true;
      }
  s.cluster.assign(n, -1);
  std::vector<int> ids(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (!linked[i]) continue;
    const int root = find(i);
    if (ids[root] < 0) ids[root] = next++;
    s.cluster[i] = ids[root];
  }
}

}  // namespace

namespace detail {

Spectrum eig_symmetric(const Eigen::MatrixXd& a, bool vectors) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eig_symmetric: matrix is not square");
  if (!a.allFinite()) throw std::invalid_argument("eig_symmetric: non-finite entries");
  Spectrum s;
  s.norm = a.norm();
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (a.size() > 0 && asym > 1e-12 * s.norm) {
    std::ostringstream os;
    os << "eig_symmetric: matrix is not symmetric (max |A - A^T| = " << asym << ")";
    throw std::invalid_argument(os.str());
  }
  if (a.rows() == 0) return s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NonConvergenceError("eig_symmetric: tridiagonal QL iteration did not converge");
  std::vector<cplx> values(a.rows());
  for (Eigen::Index k = 0; k < a.rows(); ++k) values[k] = es.eigenvalues()(k);
  Eigen::MatrixXcd v;
  if (vectors) v = es.eigenvectors().cast<cplx>();
  finish(s, a.cast<cplx>(), std::move(values), std::move(v));
  return s;
}

Spectrum eig_complex_balanced_qr(const Eigen::MatrixXcd& a, bool vectors) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eig_complex: matrix is not square");
  if (!a.allFinite()) throw std::invalid_argument("eig_complex: non-finite entries");
  Spectrum s;
  s.norm = a.norm();
  const int n = static_cast<int>(a.rows());
  if (n == 0) return s;
  Eigen::MatrixXcd b = a;
  const Eigen::VectorXd d = balance(b);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(b, vectors);
  if (es.info() != Eigen::Success)
    throw NonConvergenceError("eig_complex: shifted QR did not converge within the iteration budget (n = " +
                              std::to_string(n) + ")");
  std::vector<cplx> values(n);
  for (int k = 0; k < n; ++k) values[k] = es.eigenvalues()(k);
  Eigen::MatrixXcd v;
  if (vectors) v = d.cast<cplx>().asDiagonal() * es.eigenvectors();
  finish(s, a, std::move(values), std::move(v));
  return s;
}

Spectrum eig_complex(const Eigen::MatrixXcd& a, bool vectors) {
#ifdef NHSYM_HAVE_LAPACKE
  if (a.rows() != a.cols()) throw std::invalid_argument("eig_complex: matrix is not square");
  if (!a.allFinite()) throw std::invalid_argument("eig_complex: non-finite entries");
  Spectrum s;
  s.norm = a.norm();
  const int n = static_cast<int>(a.rows());
  if (n == 0) return s;
  // zgeev balances (permutation + scaling) before Hessenberg reduction and QR.
  Eigen::MatrixXcd work = a;
  Eigen::VectorXcd w(n);
  Eigen::MatrixXcd v;
  if (vectors) v.resize(n, n);
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', vectors ? 'V' : 'N', n,
                                        reinterpret_cast<lapack_complex_double*>(work.data()), n,
                                        reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1,
                                        vectors ? reinterpret_cast<lapack_complex_double*>(v.data()) : nullptr,
                                        vectors ? n : 1);
  if (info > 0) {
    std::ostringstream os;
    os << "eig_complex: QR iteration did not converge; eigenvalues 1.." << info
       << " (deflation window) remain unconverged, " << info + 1 << ".." << n << " converged";
    throw NonConvergenceError(os.str());
  }
  if (info < 0) throw std::invalid_argument("eig_complex: zgeev rejected argument " + std::to_string(-info));
  std::vector<cplx> values(w.data(), w.data() + n);
  finish(s, a, std::move(values), std::move(v));
  return s;
#else
  return eig_complex_balanced_qr(a, vectors);
#endif
}

bool lapack_backend() {
#ifdef NHSYM_HAVE_LAPACKE
  return true;
#else
  return false;
#endif
}

}  // namespace detail

}  // namespace nhsym
