#pragma once

/// Dense complex-matrix primitives for bipartite quantum states:
/// vectorization, Kronecker products, partial trace/transpose, realignment,
/// singular values, and the Ky Fan (trace) norm.
///
/// All functions are pure; validation happens once, at construction of the
/// state types, so the numerical kernels stay check-free.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace entsep {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Shared numerical tolerances.
namespace tol {
/// Max entrywise |M - M^dagger| accepted as Hermitian.
inline constexpr double hermiticity = 1e-10;
/// Max |tr(M) - 1| accepted as unit trace.
inline constexpr double unit_trace = 1e-10;
/// Eigenvalues down to -psd still count as positive semidefinite.
inline constexpr double psd = 1e-9;
/// Max deviation of a pure-state vector from unit norm.
inline constexpr double unit_norm = 1e-10;
/// Margins above this threshold count as a detection.
inline constexpr double detection = 1e-9;
}  // namespace tol

namespace detail {

/// Short scientific rendering of a double for diagnostics.
inline std::string num_str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return std::string(buf);
}

/// Throws unless m is a (dim_a*dim_b) x (dim_a*dim_b) matrix.
inline void check_bipartite_shape(const ComplexMatrix& m, int dim_a, int dim_b,
                                  const char* who) {
  if (dim_a < 1 || dim_b < 1) {
    throw std::invalid_argument(std::string(who) +
                                ": subsystem dimensions must be positive");
  }
  const Eigen::Index d = static_cast<Eigen::Index>(dim_a) * dim_b;
  if (m.rows() != d || m.cols() != d) {
    throw std::invalid_argument(
        std::string(who) + ": dimension mismatch, matrix is " +
        std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
        " but dim_a*dim_b = " + std::to_string(d));
  }
}

}  // namespace detail

/// Column-stacking vectorization: vec(A) = (a_11, a_21, ..., a_m1, a_12,
/// ..., a_mn)^T.
inline ComplexVector vec(const ComplexMatrix& a) {
  if (!a.allFinite()) {
    throw std::invalid_argument("vec: matrix entries must be finite");
  }
  return a.reshaped();
}

/// Inverse of vec: rebuilds the rows x cols matrix in column-major order.
inline ComplexMatrix unflatten(const ComplexVector& v, Eigen::Index rows,
                               Eigen::Index cols) {
  if (rows < 1 || cols < 1 || v.size() != rows * cols) {
    throw std::invalid_argument(
        "unflatten: dimension mismatch, vector of length " +
        std::to_string(v.size()) + " cannot fill a " + std::to_string(rows) +
        "x" + std::to_string(cols) + " matrix");
  }
  return v.reshaped(rows, cols);
}

/// Kronecker product A (x) B.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.allFinite() || !b.allFinite()) {
    throw std::invalid_argument("kron: matrix entries must be finite");
  }
  return Eigen::kroneckerProduct(a, b);
}

/// A density matrix on H_A (x) H_B with declared subsystem dimensions.
///
/// The composite basis index is i*dim_b + j for |i>_A |j>_B (second index
/// fastest), shared by every operation in this library. The constructor
/// enforces Hermiticity, unit trace, and positive semidefiniteness; values
/// are immutable afterwards.
class BipartiteDensityMatrix {
 public:
  BipartiteDensityMatrix(int dim_a, int dim_b, ComplexMatrix matrix)
      : dim_a_(dim_a), dim_b_(dim_b), matrix_(std::move(matrix)) {
    detail::check_bipartite_shape(matrix_, dim_a_, dim_b_,
                                  "BipartiteDensityMatrix");
    if (!matrix_.allFinite()) {
      throw std::invalid_argument(
          "BipartiteDensityMatrix: matrix entries must be finite");
    }
    const double herm_dev =
        (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > tol::hermiticity) {
      throw std::invalid_argument(
          "BipartiteDensityMatrix: matrix is not Hermitian (max |M - "
          "M^dagger| = " +
          detail::num_str(herm_dev) + ")");
    }
    const double trace_dev = std::abs(matrix_.trace() - Complex(1.0, 0.0));
    if (trace_dev > tol::unit_trace) {
      throw std::invalid_argument(
          "BipartiteDensityMatrix: trace must equal 1 (deviation " +
          detail::num_str(trace_dev) + ")");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_,
                                                    Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error(
          "BipartiteDensityMatrix: eigenvalue computation failed");
    }
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tol::psd) {
      throw std::invalid_argument(
          "BipartiteDensityMatrix: matrix is not positive semidefinite (min "
          "eigenvalue = " +
          detail::num_str(min_eig) + ")");
    }
  }

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  /// Smaller subsystem dimension min(dim_a, dim_b).
  int k() const { return std::min(dim_a_, dim_b_); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  int dim_a_;
  int dim_b_;
  ComplexMatrix matrix_;
};

/// A unit-norm pure state on H_A (x) H_B, amplitudes ordered as
/// |i>_A |j>_B with j fastest.
class PureState {
 public:
  PureState(int dim_a, int dim_b, ComplexVector amplitudes)
      : dim_a_(dim_a), dim_b_(dim_b), amplitudes_(std::move(amplitudes)) {
    if (dim_a_ < 1 || dim_b_ < 1) {
      throw std::invalid_argument(
          "PureState: subsystem dimensions must be positive");
    }
    const Eigen::Index d = static_cast<Eigen::Index>(dim_a_) * dim_b_;
    if (amplitudes_.size() != d) {
      throw std::invalid_argument(
          "PureState: dimension mismatch, amplitude vector of length " +
          std::to_string(amplitudes_.size()) + " but dim_a*dim_b = " +
          std::to_string(d));
    }
    if (!amplitudes_.allFinite()) {
      throw std::invalid_argument("PureState: amplitudes must be finite");
    }
    const double norm_dev = std::abs(amplitudes_.norm() - 1.0);
    if (norm_dev > tol::unit_norm) {
      throw std::invalid_argument(
          "PureState: amplitude vector must have unit norm (deviation " +
          detail::num_str(norm_dev) + ")");
    }
  }

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  int k() const { return std::min(dim_a_, dim_b_); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

  /// Rank-one density matrix |psi><psi| (renormalized so the trace is
  /// exactly 1 despite the small norm slack allowed at construction).
  BipartiteDensityMatrix density() const {
    ComplexVector unit = amplitudes_ / amplitudes_.norm();
    return BipartiteDensityMatrix(dim_a_, dim_b_, unit * unit.adjoint());
  }

 private:
  int dim_a_;
  int dim_b_;
  ComplexVector amplitudes_;
};

/// Tag for the subsystem that is traced out (or otherwise acted on).
enum class Subsystem { A, B };

/// Partial trace of a (dim_a*dim_b)-dimensional operator. Tracing out A
/// yields the dim_b x dim_b marginal and vice versa.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a,
                                   int dim_b, Subsystem traced_out) {
  detail::check_bipartite_shape(m, dim_a, dim_b, "partial_trace");
  if (traced_out == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
    for (int i = 0; i < dim_a; ++i) {
      out += m.block(i * dim_b, i * dim_b, dim_b, dim_b);
    }
    return out;
  }
  if (traced_out == Subsystem::B) {
    ComplexMatrix out(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i) {
      for (int ip = 0; ip < dim_a; ++ip) {
        out(i, ip) = m.block(i * dim_b, ip * dim_b, dim_b, dim_b).trace();
      }
    }
    return out;
  }
  throw std::invalid_argument("partial_trace: unknown subsystem tag");
}

inline ComplexMatrix partial_trace(const BipartiteDensityMatrix& rho,
                                   Subsystem traced_out) {
  return partial_trace(rho.matrix(), rho.dim_a(), rho.dim_b(), traced_out);
}

/// Partial transpose on subsystem B: each dim_b x dim_b block is transposed
/// in place.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, int dim_a,
                                       int dim_b) {
  detail::check_bipartite_shape(m, dim_a, dim_b, "partial_transpose");
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < dim_a; ++i) {
    for (int ip = 0; ip < dim_a; ++ip) {
      out.block(i * dim_b, ip * dim_b, dim_b, dim_b) =
          m.block(i * dim_b, ip * dim_b, dim_b, dim_b).transpose();
    }
  }
  return out;
}

inline ComplexMatrix partial_transpose(const BipartiteDensityMatrix& rho) {
  return partial_transpose(rho.matrix(), rho.dim_a(), rho.dim_b());
}

/// Realignment: viewing m as a dim_a x dim_a grid of dim_b x dim_b blocks
/// Z_ij, row (i + j*dim_a) of the result is vec(Z_ij)^T (plain transpose,
/// no conjugation). Blocks are enumerated with the first index fastest, so
/// a product state realigns to vec(rho_A) vec(rho_B)^T exactly.
inline ComplexMatrix realign(const ComplexMatrix& m, int dim_a, int dim_b) {
  detail::check_bipartite_shape(m, dim_a, dim_b, "realign");
  ComplexMatrix r(static_cast<Eigen::Index>(dim_a) * dim_a,
                  static_cast<Eigen::Index>(dim_b) * dim_b);
  for (int j = 0; j < dim_a; ++j) {
    for (int i = 0; i < dim_a; ++i) {
      const ComplexMatrix block = m.block(i * dim_b, j * dim_b, dim_b, dim_b);
      r.row(i + j * dim_a) = vec(block).transpose();
    }
  }
  return r;
}

inline ComplexMatrix realign(const BipartiteDensityMatrix& rho) {
  return realign(rho.matrix(), rho.dim_a(), rho.dim_b());
}

/// All min(rows, cols) singular values, descending.
inline RealVector singular_values(const ComplexMatrix& a) {
  if (!a.allFinite()) {
    throw std::invalid_argument(
        "singular_values: matrix entries must be finite");
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  if (svd.info() != Eigen::Success) {
    throw std::runtime_error("singular_values: SVD did not converge");
  }
  return svd.singularValues();
}

/// Ky Fan norm: the sum of all singular values (trace/nuclear norm).
/// No truncation of small values -- every singular value counts.
inline double ky_fan_norm(const ComplexMatrix& a) {
  return singular_values(a).sum();
}

/// tr(M^2) as a real scalar; equals the purity for a density matrix.
inline double purity(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("purity: matrix must be square");
  }
  return (m * m).trace().real();
}

}  // namespace entsep
