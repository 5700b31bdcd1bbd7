#include "mmf/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mmf/errors.hpp"

namespace mmf {

namespace {

// Keeps the hot loops in plain double arithmetic; std::complex multiplies
// otherwise go through the NaN-propagating libm helper.
inline void fma_row(const cplx* brow, double are, double aim, cplx* crow, int n) {
  const double* b = reinterpret_cast<const double*>(brow);
  double* c = reinterpret_cast<double*>(crow);
  for (int j = 0; j < n; ++j) {
    const double bre = b[2 * j], bim = b[2 * j + 1];
    c[2 * j] += are * bre - aim * bim;
    c[2 * j + 1] += are * bim + aim * bre;
  }
}

}  // namespace

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw error(errc::shape_mismatch, "matmul: inner dims differ");
  CMatrix c(a.rows(), b.cols());
  const int n = b.cols();
  for (int i = 0; i < a.rows(); ++i) {
    cplx* crow = &c(i, 0);
    for (int k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      fma_row(&b(k, 0), aik.real(), aik.imag(), crow, n);
    }
  }
  return c;
}

CMatrix adjoint_matmul(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) throw error(errc::shape_mismatch, "adjoint_matmul: row dims differ");
  CMatrix c(a.cols(), b.cols());
  const int n = b.cols();
  for (int k = 0; k < a.rows(); ++k) {
    for (int i = 0; i < a.cols(); ++i) {
      const cplx aki = a(k, i);  // (a^H)(i,k) = conj(a(k,i))
      fma_row(&b(k, 0), aki.real(), -aki.imag(), &c(i, 0), n);
    }
  }
  return c;
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

std::vector<cplx> matvec(const CMatrix& a, const std::vector<cplx>& x) {
  if (static_cast<size_t>(a.cols()) != x.size())
    throw error(errc::shape_mismatch, "matvec: dimension mismatch");
  std::vector<cplx> y(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    double re = 0.0, im = 0.0;
    const cplx* arow = &a(i, 0);
    for (int j = 0; j < a.cols(); ++j) {
      const double are = arow[j].real(), aim = arow[j].imag();
      const double xre = x[j].real(), xim = x[j].imag();
      re += are * xre - aim * xim;
      im += are * xim + aim * xre;
    }
    y[i] = cplx(re, im);
  }
  return y;
}

double frobenius(const CMatrix& a) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::norm(a.data()[i]);
  return std::sqrt(s);
}

double unitarity_defect(const CMatrix& a) {
  CMatrix g = adjoint_matmul(a, a);
  for (int i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return frobenius(g);
}

double hermiticity_defect(const CMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += std::norm(a(i, j) - std::conj(a(j, i)));
  return std::sqrt(s);
}

namespace {

double offdiag_norm(const CMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

HermEig hermitian_eig(const CMatrix& a) {
  if (a.rows() != a.cols()) throw error(errc::shape_mismatch, "hermitian_eig: matrix not square");
  const int n = a.rows();
  CMatrix w = a;
  CMatrix v = CMatrix::identity(n);
  const double scale = frobenius(a);
  const double tol = 1e-12 * std::max(scale, 1e-300);

  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps && offdiag_norm(w) > tol; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx b = w(p, q);
        const double babs = std::abs(b);
        if (babs == 0.0) continue;
        const double app = w(p, p).real();
        const double aqq = w(q, q).real();
        // Rotation angle from the phase-reduced 2x2 problem (Rutishauser).
        const double rho = (app - aqq) / (2.0 * babs);
        const double t = (rho >= 0.0 ? 1.0 : -1.0) / (std::abs(rho) + std::sqrt(1.0 + rho * rho));
        const double ct = 1.0 / std::sqrt(1.0 + t * t);
        const double st = t * ct;
        const cplx e = b / babs;          // e^{i*phi}
        const cplx ec = std::conj(e);

        // w <- J^H w J with J_pp = ct, J_pq = -st*e, J_qp = st*conj(e), J_qq = ct.
        for (int i = 0; i < n; ++i) {     // column update: w <- w * J
          const cplx wip = w(i, p), wiq = w(i, q);
          w(i, p) = ct * wip + st * ec * wiq;
          w(i, q) = -st * e * wip + ct * wiq;
        }
        for (int j = 0; j < n; ++j) {     // row update: w <- J^H * w
          const cplx wpj = w(p, j), wqj = w(q, j);
          w(p, j) = ct * wpj + st * e * wqj;
          w(q, j) = -st * ec * wpj + ct * wqj;
        }
        w(p, q) = 0.0;
        w(q, p) = 0.0;
        w(p, p) = cplx(w(p, p).real(), 0.0);
        w(q, q) = cplx(w(q, q).real(), 0.0);
        for (int i = 0; i < n; ++i) {     // v <- v * J
          const cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = ct * vip + st * ec * viq;
          v(i, q) = -st * e * vip + ct * viq;
        }
      }
    }
  }

  HermEig eig;
  eig.values.resize(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = w(i, i).real();
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });
  eig.vectors = CMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    eig.values[j] = diag[order[j]];
    for (int i = 0; i < n; ++i) eig.vectors(i, j) = v(i, order[j]);
  }
  return eig;
}

CMatrix unitary_from_eig(const HermEig& eig, double scale) {
  const int n = eig.vectors.rows();
  CMatrix vd(n, n);
  for (int j = 0; j < n; ++j) {
    const double ph = scale * eig.values[j];
    const cplx w(std::cos(ph), std::sin(ph));
    for (int i = 0; i < n; ++i) vd(i, j) = eig.vectors(i, j) * w;
  }
  return matmul(vd, adjoint(eig.vectors));
}

void evolve_columns(const HermEig& eig, double scale, CMatrix& x) {
  CMatrix y = adjoint_matmul(eig.vectors, x);  // V^H x
  const int n = y.rows();
  for (int i = 0; i < n; ++i) {
    const double ph = scale * eig.values[i];
    const cplx w(std::cos(ph), std::sin(ph));
    for (int j = 0; j < y.cols(); ++j) y(i, j) *= w;
  }
  x = matmul(eig.vectors, y);
}

CMatrix orthonormal_columns(CMatrix a) {
  const int m = a.rows(), n = a.cols();
  if (m < n) throw error(errc::invalid_argument, "orthonormal_columns: more columns than rows");
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < j; ++i) {
        cplx dot = 0.0;
        for (int r = 0; r < m; ++r) dot += std::conj(a(r, i)) * a(r, j);
        for (int r = 0; r < m; ++r) a(r, j) -= dot * a(r, i);
      }
      double nrm = 0.0;
      for (int r = 0; r < m; ++r) nrm += std::norm(a(r, j));
      nrm = std::sqrt(nrm);
      if (nrm < 1e-14) throw error(errc::non_finite, "orthonormal_columns: rank deficient input");
      for (int r = 0; r < m; ++r) a(r, j) /= nrm;
    }
  }
  return a;
}

CMatrix random_complex_gaussian(int rows, int cols, Rng& rng) {
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = cplx(re, im) * 0.7071067811865476;  // unit total variance
    }
  return g;
}

CMatrix random_hermitian(int n, Rng& rng) {
  CMatrix g = random_complex_gaussian(n, n, rng);
  CMatrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  return h;
}

}  // namespace mmf
