#pragma once

/// Separability criteria: PPT, CCNR, the enhanced realignment test, the
/// bordered-realignment Ky Fan family, and a deterministic parameter search.
///
/// Every test reports a margin -- the left-hand side minus the right-hand
/// side of the underlying separability inequality -- so a positive margin
/// certifies entanglement and a nonpositive margin is inconclusive.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entsep/linalg.hpp"

namespace entsep {

enum class Criterion { PPT, CCNR, EnhancedRealignment, KyFanFamily };

/// Nonnegative border weights (alpha, beta) of the Ky Fan family.
struct CriterionParams {
  double alpha = 0.0;
  double beta = 0.0;

  CriterionParams() = default;
  CriterionParams(double alpha_in, double beta_in)
      : alpha(alpha_in), beta(beta_in) {
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
      throw std::invalid_argument(
          "CriterionParams: alpha and beta must be finite");
    }
    if (alpha < 0.0 || beta < 0.0) {
      throw std::invalid_argument(
          "CriterionParams: alpha and beta must be nonnegative");
    }
  }
};

/// Outcome of a separability test.
struct CriterionVerdict {
  Criterion criterion;
  std::optional<CriterionParams> params;
  double margin = 0.0;
  bool detected = false;
};

/// sqrt((alpha^2 + 1)(beta^2 + 1)): the largest Ky Fan norm the bordered
/// realignment of a separable state can reach.
inline double separability_threshold(const CriterionParams& p) {
  return std::sqrt((p.alpha * p.alpha + 1.0) * (p.beta * p.beta + 1.0));
}

/// Detection threshold for the Ky Fan family. The margin subtracts two
/// numbers of size ~alpha*beta, so the tolerance grows with the threshold
/// to absorb the cancellation error at large parameters.
inline double detection_tolerance(const CriterionParams& p) {
  return std::max(tol::detection, 1e-13 * separability_threshold(p));
}

/// PPT test: margin is the negated minimum eigenvalue of the partial
/// transpose, so NPT states come out detected.
inline CriterionVerdict ppt_test(const BipartiteDensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(partial_transpose(rho),
                                                  Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("ppt_test: eigenvalue computation failed");
  }
  const double margin = -es.eigenvalues().minCoeff();
  return {Criterion::PPT, std::nullopt, margin, margin > tol::detection};
}

/// CCNR test: margin = ||R(rho)||_1 - 1.
inline CriterionVerdict ccnr_test(const BipartiteDensityMatrix& rho) {
  const double margin = ky_fan_norm(realign(rho)) - 1.0;
  return {Criterion::CCNR, std::nullopt, margin, margin > tol::detection};
}

/// Enhanced realignment test:
/// margin = ||R(rho - rho_A x rho_B)||_1
///          - sqrt(1 - tr rho_A^2) * sqrt(1 - tr rho_B^2).
inline CriterionVerdict enhanced_realignment_test(
    const BipartiteDensityMatrix& rho) {
  const ComplexMatrix rho_a = partial_trace(rho, Subsystem::B);
  const ComplexMatrix rho_b = partial_trace(rho, Subsystem::A);
  const ComplexMatrix diff = rho.matrix() - kron(rho_a, rho_b);
  const double lhs = ky_fan_norm(realign(diff, rho.dim_a(), rho.dim_b()));
  // Purity can exceed 1 by rounding for nearly pure marginals; clamp so the
  // square roots stay real.
  const double gap_a = std::max(0.0, 1.0 - purity(rho_a));
  const double gap_b = std::max(0.0, 1.0 - purity(rho_b));
  const double margin = lhs - std::sqrt(gap_a) * std::sqrt(gap_b);
  return {Criterion::EnhancedRealignment, std::nullopt, margin,
          margin > tol::detection};
}

/// Bordered realignment matrix, size (dim_a^2 + 1) x (dim_b^2 + 1):
///
///   [ alpha*beta       alpha * vec(rho_B)^T ]
///   [ beta*vec(rho_A)  R(rho)               ]
inline ComplexMatrix build_M(const BipartiteDensityMatrix& rho,
                             const CriterionParams& p) {
  const Eigen::Index ra = static_cast<Eigen::Index>(rho.dim_a()) * rho.dim_a();
  const Eigen::Index rb = static_cast<Eigen::Index>(rho.dim_b()) * rho.dim_b();
  ComplexMatrix m(ra + 1, rb + 1);
  m(0, 0) = p.alpha * p.beta;
  m.row(0).tail(rb) = p.alpha * vec(partial_trace(rho, Subsystem::A)).transpose();
  m.col(0).tail(ra) = p.beta * vec(partial_trace(rho, Subsystem::B));
  m.bottomRightCorner(ra, rb) = realign(rho);
  return m;
}

/// Ky Fan family test: margin = ||M_{alpha,beta}(rho)||_KF -
/// sqrt((alpha^2+1)(beta^2+1)). At alpha = beta = 0 this reduces to CCNR.
inline CriterionVerdict kyfan_criterion_test(const BipartiteDensityMatrix& rho,
                                             const CriterionParams& p) {
  const double margin = ky_fan_norm(build_M(rho, p)) -
                        separability_threshold(p);
  return {Criterion::KyFanFamily, p, margin, margin > detection_tolerance(p)};
}

/// Default search grid: (0, 0), 60 log-spaced diagonal points alpha = beta
/// in [1e-2, 1e4], and the full 15 x 15 log-spaced product over the same
/// range. The cap at 1e4 keeps double-precision cancellation in the margin
/// below the detection tolerance.
inline std::vector<CriterionParams> default_param_grid() {
  std::vector<CriterionParams> grid;
  grid.reserve(1 + 60 + 15 * 15);
  grid.emplace_back(0.0, 0.0);
  for (int i = 0; i < 60; ++i) {
    const double x = std::pow(10.0, -2.0 + 6.0 * i / 59.0);
    grid.emplace_back(x, x);
  }
  std::vector<double> axis(15);
  for (int i = 0; i < 15; ++i) {
    axis[static_cast<std::size_t>(i)] = std::pow(10.0, -2.0 + 6.0 * i / 14.0);
  }
  for (const double a : axis) {
    for (const double b : axis) {
      grid.emplace_back(a, b);
    }
  }
  return grid;
}

/// Evaluates the Ky Fan family over a parameter grid and returns the
/// maximum-margin point; exact ties go to the smaller alpha^2 + beta^2.
inline std::pair<CriterionParams, CriterionVerdict> optimize_params(
    const BipartiteDensityMatrix& rho, const std::vector<CriterionParams>& grid) {
  if (grid.empty()) {
    throw std::invalid_argument("optimize_params: grid must be nonempty");
  }
  CriterionParams best_params = grid.front();
  CriterionVerdict best = kyfan_criterion_test(rho, best_params);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const CriterionVerdict verdict = kyfan_criterion_test(rho, grid[i]);
    const double size_new =
        grid[i].alpha * grid[i].alpha + grid[i].beta * grid[i].beta;
    const double size_best = best_params.alpha * best_params.alpha +
                             best_params.beta * best_params.beta;
    if (verdict.margin > best.margin ||
        (verdict.margin == best.margin && size_new < size_best)) {
      best_params = grid[i];
      best = verdict;
    }
  }
  return {best_params, best};
}

inline std::pair<CriterionParams, CriterionVerdict> optimize_params(
    const BipartiteDensityMatrix& rho) {
  return optimize_params(rho, default_param_grid());
}

}  // namespace entsep
