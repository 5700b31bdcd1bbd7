#pragma once

#include <complex>
#include <cstring>
#include <vector>

#include "mmf/rng.hpp"

namespace mmf {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Sized for mode-space work (N of order
// tens to hundreds); all heavy kernels use explicit real/imag arithmetic
// to avoid the libm complex-multiply call in inner loops.
class CMatrix {
 public:
  CMatrix() : rows_(0), cols_(0) {}
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static CMatrix identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }
  size_t size() const { return a_.size(); }

  bool bitwise_equal(const CMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ &&
           (a_.empty() || std::memcmp(a_.data(), o.a_.data(), a_.size() * sizeof(cplx)) == 0);
  }

 private:
  int rows_, cols_;
  std::vector<cplx> a_;
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);
// c = a^H * b without forming the adjoint.
CMatrix adjoint_matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);
std::vector<cplx> matvec(const CMatrix& a, const std::vector<cplx>& x);

double frobenius(const CMatrix& a);
// ||a^H a - I||_F, the unitarity defect.
double unitarity_defect(const CMatrix& a);
double hermiticity_defect(const CMatrix& a);

// Eigendecomposition of a Hermitian matrix: a = vectors * diag(values) * vectors^H,
// eigenvalues ascending. Cyclic Jacobi with complex rotations; iterates until the
// off-diagonal Frobenius norm falls below 1e-12 relative to ||a||_F.
struct HermEig {
  std::vector<double> values;
  CMatrix vectors;
};
HermEig hermitian_eig(const CMatrix& a);

// vectors * diag(exp(i*scale*values)) * vectors^H.
CMatrix unitary_from_eig(const HermEig& eig, double scale);

// In-place: x <- vectors * diag(exp(i*scale*values)) * vectors^H * x, one column.
void evolve_columns(const HermEig& eig, double scale, CMatrix& x);

// Column orthonormalization by modified Gram-Schmidt with one
// re-orthogonalization pass. Requires rows >= cols and full column rank.
CMatrix orthonormal_columns(CMatrix a);

CMatrix random_complex_gaussian(int rows, int cols, Rng& rng);
// (g + g^H)/2 from a fresh complex Gaussian draw.
CMatrix random_hermitian(int n, Rng& rng);

}  // namespace mmf
