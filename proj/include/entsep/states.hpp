#pragma once

/// State constructors: Schmidt-form pure states, the chessboard and tiles
/// bound-entangled families, white-noise mixing, and seeded random samplers.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entsep/linalg.hpp"

namespace entsep {

/// Ordered Schmidt coefficients: nonnegative reals summing to 1, stored
/// descending. Tiny negatives (down to -1e-12) are clamped to zero.
class SchmidtSpectrum {
 public:
  explicit SchmidtSpectrum(std::vector<double> lambdas)
      : lambdas_(std::move(lambdas)) {
    if (lambdas_.empty()) {
      throw std::invalid_argument("SchmidtSpectrum: spectrum must be nonempty");
    }
    double sum = 0.0;
    for (double& l : lambdas_) {
      if (!std::isfinite(l) || l < -1e-12) {
        throw std::invalid_argument(
            "SchmidtSpectrum: coefficients must be nonnegative (got " +
            detail::num_str(l) + ")");
      }
      l = std::max(l, 0.0);
      sum += l;
    }
    if (std::abs(sum - 1.0) > tol::unit_trace) {
      throw std::invalid_argument(
          "SchmidtSpectrum: coefficients must sum to 1 (deviation " +
          detail::num_str(sum - 1.0) + ")");
    }
    std::sort(lambdas_.begin(), lambdas_.end(), std::greater<double>());
  }

  const std::vector<double>& lambdas() const { return lambdas_; }
  std::size_t size() const { return lambdas_.size(); }

 private:
  std::vector<double> lambdas_;
};

/// Builds |psi> = sum_i sqrt(lambda_i) |ii> on a dim_a x dim_b system.
inline PureState pure_from_schmidt(const SchmidtSpectrum& spectrum, int dim_a,
                                   int dim_b) {
  if (dim_a < 1 || dim_b < 1) {
    throw std::invalid_argument(
        "pure_from_schmidt: subsystem dimensions must be positive");
  }
  const int k = std::min(dim_a, dim_b);
  if (spectrum.size() > static_cast<std::size_t>(k)) {
    throw std::invalid_argument(
        "pure_from_schmidt: spectrum has " + std::to_string(spectrum.size()) +
        " coefficients but min(dim_a, dim_b) = " + std::to_string(k));
  }
  ComplexVector amp = ComplexVector::Zero(
      static_cast<Eigen::Index>(dim_a) * dim_b);
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    amp(static_cast<Eigen::Index>(i) * dim_b + static_cast<Eigen::Index>(i)) =
        std::sqrt(spectrum.lambdas()[i]);
  }
  return PureState(dim_a, dim_b, std::move(amp));
}

/// Parameters of the chessboard family on 3x3. The derived entries
/// s = a*c/n and t = a*d/m keep the constructed state PPT for real
/// parameters.
struct ChessboardParams {
  double m = 0.0;
  double n = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  double s() const { return a * c / n; }
  double t() const { return a * d / m; }
};

/// The chessboard parameter set used by the reproduction checkpoints.
inline constexpr ChessboardParams kDefaultChessboardParams{
    0.469, -0.3161, 0.33, -0.109, -0.65, 0.8560};

/// Chessboard state on 3x3: an equal-weight mixture of four unnormalized
/// vectors V_1..V_4, divided by N = sum_i <V_i|V_i>. Emits a warning on
/// stderr (but still constructs) if the result is not PPT, which cannot
/// happen for finite real parameters.
inline BipartiteDensityMatrix chessboard_state(const ChessboardParams& p) {
  if (!std::isfinite(p.m) || !std::isfinite(p.n) || !std::isfinite(p.a) ||
      !std::isfinite(p.b) || !std::isfinite(p.c) || !std::isfinite(p.d)) {
    throw std::invalid_argument(
        "chessboard_state: parameters must be finite");
  }
  if (p.m == 0.0 || p.n == 0.0) {
    throw std::invalid_argument(
        "chessboard_state: parameters m and n must be nonzero");
  }
  const double s = p.s();
  const double t = p.t();
  // Nine-component vectors, basis index i*3 + j for |i>_A |j>_B.
  std::vector<ComplexVector> vs(4, ComplexVector::Zero(9));
  vs[0](0) = p.m;
  vs[0](2) = s;
  vs[0](4) = p.n;
  vs[1](1) = p.a;
  vs[1](3) = p.b;
  vs[1](5) = p.c;
  vs[2](0) = p.n;
  vs[2](4) = -p.m;
  vs[2](6) = t;
  vs[3](1) = p.b;
  vs[3](3) = -p.a;
  vs[3](7) = p.d;

  double norm = 0.0;
  for (const ComplexVector& v : vs) {
    norm += v.squaredNorm();
  }
  if (norm <= 0.0) {
    throw std::invalid_argument(
        "chessboard_state: normalization must be positive (all vectors "
        "vanish)");
  }
  ComplexMatrix rho = ComplexMatrix::Zero(9, 9);
  for (const ComplexVector& v : vs) {
    rho += v * v.adjoint();
  }
  rho /= norm;
  BipartiteDensityMatrix state(3, 3, std::move(rho));

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(partial_transpose(state),
                                                  Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol::psd) {
    std::cerr << "chessboard_state: warning: parameters yield an NPT state "
                 "(min partial-transpose eigenvalue "
              << min_eig << ")\n";
  }
  return state;
}

/// The five product vectors whose span the tiles state avoids: four
/// domino-shaped tiles (each divided by sqrt(2)) and the uniform vector
/// (divided by 3). Pairwise orthonormal.
inline std::vector<ComplexVector> tiles_product_basis() {
  const ComplexMatrix e = ComplexMatrix::Identity(3, 3);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<ComplexVector> psi;
  psi.reserve(5);
  psi.push_back(kron(e.col(0), e.col(0) - e.col(1)) * inv_sqrt2);
  psi.push_back(kron(e.col(0) - e.col(1), e.col(2)) * inv_sqrt2);
  psi.push_back(kron(e.col(2), e.col(1) - e.col(2)) * inv_sqrt2);
  psi.push_back(kron(e.col(1) - e.col(2), e.col(0)) * inv_sqrt2);
  psi.push_back(kron(e.col(0) + e.col(1) + e.col(2),
                     e.col(0) + e.col(1) + e.col(2)) /
                3.0);
  return psi;
}

/// Tiles state on 3x3: rho = (I - sum_i |psi_i><psi_i|) / 4 over the five
/// tiles vectors. Rank 4, PPT, yet entangled.
inline BipartiteDensityMatrix tiles_ppt_state() {
  ComplexMatrix projector = ComplexMatrix::Zero(9, 9);
  for (const ComplexVector& psi : tiles_product_basis()) {
    projector += psi * psi.adjoint();
  }
  ComplexMatrix rho = (ComplexMatrix::Identity(9, 9) - projector) / 4.0;
  return BipartiteDensityMatrix(3, 3, std::move(rho));
}

/// The maximally entangled two-qubit pure state (|00> + |11>) / sqrt(2).
inline PureState bell_pure() {
  ComplexVector amp = ComplexVector::Zero(4);
  amp(0) = amp(3) = 1.0 / std::sqrt(2.0);
  return PureState(2, 2, std::move(amp));
}

/// Density matrix of the Bell state.
inline BipartiteDensityMatrix bell_state() { return bell_pure().density(); }

/// Mixes rho with white noise: (1 - w) rho + w I/(dim_a*dim_b).
/// w is the weight of the noise component.
inline BipartiteDensityMatrix mix_white_noise(
    const BipartiteDensityMatrix& rho, double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw std::invalid_argument("mix_white_noise: noise weight must lie in "
                                "[0, 1] (got " +
                                detail::num_str(w) + ")");
  }
  const Eigen::Index d = rho.matrix().rows();
  ComplexMatrix mixed =
      (1.0 - w) * rho.matrix() +
      (w / static_cast<double>(d)) * ComplexMatrix::Identity(d, d);
  return BipartiteDensityMatrix(rho.dim_a(), rho.dim_b(), std::move(mixed));
}

namespace detail {

/// Matrix of iid standard complex Gaussians.
inline ComplexMatrix ginibre_matrix(Eigen::Index rows, Eigen::Index cols,
                                    std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

/// Haar-like random unit vector (normalized complex Gaussian).
inline ComplexVector random_unit_vector(Eigen::Index dim,
                                        std::mt19937_64& gen) {
  ComplexVector v = ginibre_matrix(dim, 1, gen).col(0);
  return v / v.norm();
}

}  // namespace detail

/// Random mixed state from the Ginibre ensemble: rho = G G^dagger / tr(...).
/// Deterministic for a given seed.
inline BipartiteDensityMatrix random_density(int dim_a, int dim_b,
                                             std::uint64_t seed) {
  if (dim_a < 2 || dim_b < 2) {
    throw std::invalid_argument(
        "random_density: subsystem dimensions must be at least 2");
  }
  const Eigen::Index d = static_cast<Eigen::Index>(dim_a) * dim_b;
  std::mt19937_64 gen(seed);
  ComplexMatrix g = detail::ginibre_matrix(d, d, gen);
  ComplexMatrix rho = g * g.adjoint();
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  rho /= rho.trace().real();
  return BipartiteDensityMatrix(dim_a, dim_b, std::move(rho));
}

/// Random separable state: a convex mixture of `terms` pure product states
/// with Dirichlet-uniform weights. Deterministic for a given seed.
inline BipartiteDensityMatrix random_separable(int dim_a, int dim_b, int terms,
                                               std::uint64_t seed) {
  if (dim_a < 1 || dim_b < 1) {
    throw std::invalid_argument(
        "random_separable: subsystem dimensions must be positive");
  }
  if (terms < 1) {
    throw std::invalid_argument("random_separable: terms must be at least 1");
  }
  std::mt19937_64 gen(seed);
  // Dirichlet(1, ..., 1) weights via normalized exponentials.
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> weights(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (double& w : weights) {
    w = expo(gen);
    total += w;
  }
  const Eigen::Index d = static_cast<Eigen::Index>(dim_a) * dim_b;
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (const double w : weights) {
    const ComplexVector va = detail::random_unit_vector(dim_a, gen);
    const ComplexVector vb = detail::random_unit_vector(dim_b, gen);
    const ComplexVector product = kron(va, vb);
    rho += (w / total) * (product * product.adjoint());
  }
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  rho /= rho.trace().real();
  return BipartiteDensityMatrix(dim_a, dim_b, std::move(rho));
}

/// Random pure state: normalized complex Gaussian amplitudes.
/// Deterministic for a given seed.
inline PureState random_pure(int dim_a, int dim_b, std::uint64_t seed) {
  if (dim_a < 1 || dim_b < 1) {
    throw std::invalid_argument(
        "random_pure: subsystem dimensions must be positive");
  }
  std::mt19937_64 gen(seed);
  ComplexVector amp = detail::random_unit_vector(
      static_cast<Eigen::Index>(dim_a) * dim_b, gen);
  return PureState(dim_a, dim_b, std::move(amp));
}

}  // namespace entsep
