#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace nhsym {

using cplx = std::complex<double>;

// Eigenvalues sorted by (Re, Im); real parts within 1e-12 ||A|| count as equal. Vectors and residuals are filled only when
// requested; vectors are unit columns matching `values`.
struct Spectrum {
  std::vector<cplx> values;
  Eigen::MatrixXcd vectors;
  std::vector<double> residuals;  // ||A v - lambda v||
  // Near-defective cluster id per eigenvalue (pairwise distance below
  // 1e-6 ||A||), -1 when isolated.
  std::vector<int> cluster;
  double norm = 0.0;  // Frobenius norm of A

  int size() const { return static_cast<int>(values.size()); }
  bool has_vectors() const { return vectors.cols() > 0; }
  bool near_defective(int k) const { return cluster[k] >= 0; }
  std::vector<double> real_values() const;
};

class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
Spectrum eig_symmetric(const Eigen::MatrixXd& a, bool vectors);
Spectrum eig_complex(const Eigen::MatrixXcd& a, bool vectors);
// Eigen's Hessenberg + shifted QR after our own balancing; the fallback when
// LAPACK is not linked, kept callable for cross-checks.
Spectrum eig_complex_balanced_qr(const Eigen::MatrixXcd& a, bool vectors);
bool lapack_backend();
}  // namespace detail

// Real symmetric input (to 1e-12 ||A||); ascending real spectrum.
template <typename Derived>
Spectrum eig_symmetric(const Eigen::MatrixBase<Derived>& a, bool vectors = false) {
  return detail::eig_symmetric(a.template cast<double>().eval(), vectors);
}

// General complex square input. Throws NonConvergenceError when the QR
// iteration exhausts its budget.
template <typename Derived>
Spectrum eig_complex(const Eigen::MatrixBase<Derived>& a, bool vectors = false) {
  return detail::eig_complex(a.template cast<cplx>().eval(), vectors);
}

// Diagonal similarity D^-1 A D with power-of-two entries that roughly equalizes
// row and column norms. Returns D.
Eigen::VectorXd balance(Eigen::MatrixXcd& a);

}  // namespace nhsym
