#pragma once

/// Entanglement measures: exact concurrence and CREN for pure states,
/// analytic lower bounds for mixed states derived from the Ky Fan family,
/// pure-state consistency checks, and a white-noise detection threshold.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "entsep/criteria.hpp"
#include "entsep/states.hpp"

namespace entsep {

enum class Measure { Concurrence, CREN };

/// A lower bound on an entanglement measure. `raw` is the analytic value;
/// `bound` clamps it at zero (a negative lower bound carries no
/// information), and `clamped` records whether clamping fired.
struct BoundReport {
  Measure measure;
  CriterionParams params;
  double raw = 0.0;
  double bound = 0.0;
  bool clamped = false;
};

namespace detail {

inline BoundReport make_bound_report(Measure measure,
                                     const CriterionParams& params,
                                     double raw) {
  return {measure, params, raw, std::max(raw, 0.0), raw < 0.0};
}

/// Amplitudes of psi reshaped into the dim_a x dim_b coefficient matrix
/// C(i, j) = <ij|psi>.
inline ComplexMatrix coefficient_matrix(const PureState& psi) {
  ComplexMatrix c(psi.dim_a(), psi.dim_b());
  for (int i = 0; i < psi.dim_a(); ++i) {
    for (int j = 0; j < psi.dim_b(); ++j) {
      c(i, j) = psi.amplitudes()(
          static_cast<Eigen::Index>(i) * psi.dim_b() + j);
    }
  }
  return c;
}

/// sum_{i<j} sqrt(lambda_i lambda_j).
inline double schmidt_cross_sum(const std::vector<double>& lambdas) {
  double sum = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (std::size_t j = i + 1; j < lambdas.size(); ++j) {
      sum += std::sqrt(lambdas[i] * lambdas[j]);
    }
  }
  return sum;
}

}  // namespace detail

/// Schmidt coefficients of a pure state: the squared singular values of its
/// coefficient matrix, descending. Values below 1e-12 are clamped to zero
/// and the spectrum is normalized to unit sum.
inline SchmidtSpectrum schmidt_coefficients(const PureState& psi) {
  const RealVector sv = singular_values(detail::coefficient_matrix(psi));
  std::vector<double> lambdas(static_cast<std::size_t>(sv.size()));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    double l = sv(i) * sv(i);
    if (l < 1e-12) {
      l = 0.0;
    }
    lambdas[static_cast<std::size_t>(i)] = l;
    sum += l;
  }
  for (double& l : lambdas) {
    l /= sum;
  }
  return SchmidtSpectrum(std::move(lambdas));
}

/// Pure-state concurrence sqrt(2 (1 - tr rho_A^2)).
inline double pure_concurrence(const PureState& psi) {
  const SchmidtSpectrum spectrum = schmidt_coefficients(psi);
  double purity_a = 0.0;
  for (const double l : spectrum.lambdas()) {
    purity_a += l * l;
  }
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity_a)));
}

/// Pure-state CREN 2 sum_{i<j} sqrt(lambda_i lambda_j) / (k - 1), equal to
/// (||psi-projector^{T_B}||_1 - 1)/(k - 1). Returns 0 when k = 1, where no
/// entanglement is possible.
inline double pure_cren(const PureState& psi) {
  const int k = psi.k();
  if (k == 1) {
    return 0.0;
  }
  const SchmidtSpectrum spectrum = schmidt_coefficients(psi);
  const double cross = detail::schmidt_cross_sum(spectrum.lambdas());
  return 2.0 * cross / (k - 1.0);
}

/// Concurrence lower bound for mixed states:
/// sqrt(2/(k(k-1))) * (||M_{alpha,beta}(rho)|| - sqrt((1+alpha^2)(1+beta^2))),
/// clamped at zero.
inline BoundReport concurrence_lower_bound(const BipartiteDensityMatrix& rho,
                                           const CriterionParams& p) {
  const int k = rho.k();
  if (k < 2) {
    throw std::invalid_argument(
        "concurrence_lower_bound: requires min(dim_a, dim_b) >= 2");
  }
  const double margin =
      ky_fan_norm(build_M(rho, p)) - separability_threshold(p);
  const double raw = std::sqrt(2.0 / (k * (k - 1.0))) * margin;
  return detail::make_bound_report(Measure::Concurrence, p, raw);
}

/// CREN lower bound for mixed states:
/// (||M_{alpha,beta}(rho)|| - sqrt((1+alpha^2)(1+beta^2))) / (k - 1),
/// clamped at zero.
inline BoundReport cren_lower_bound(const BipartiteDensityMatrix& rho,
                                    const CriterionParams& p) {
  const int k = rho.k();
  if (k < 2) {
    throw std::invalid_argument(
        "cren_lower_bound: requires min(dim_a, dim_b) >= 2");
  }
  const double margin =
      ky_fan_norm(build_M(rho, p)) - separability_threshold(p);
  const double raw = margin / (k - 1.0);
  return detail::make_bound_report(Measure::CREN, p, raw);
}

/// Dispatches to the lower bound selected by `measure`.
inline BoundReport lower_bound(const BipartiteDensityMatrix& rho,
                               const CriterionParams& p, Measure measure) {
  return measure == Measure::Concurrence ? concurrence_lower_bound(rho, p)
                                         : cren_lower_bound(rho, p);
}

/// Both sides of the pure-state inequality
/// C^2(psi) >= 8/(k(k-1)) (sum_{i<j} sqrt(lambda_i lambda_j))^2.
struct ChenBoundSides {
  double lhs = 0.0;
  double rhs = 0.0;
};

inline ChenBoundSides pure_state_chen_bound_check(const PureState& psi) {
  const SchmidtSpectrum spectrum = schmidt_coefficients(psi);
  const double c = pure_concurrence(psi);
  const int k = psi.k();
  if (k == 1) {
    return {c * c, 0.0};
  }
  const double cross = detail::schmidt_cross_sum(spectrum.lambdas());
  return {c * c, 8.0 / (k * (k - 1.0)) * cross * cross};
}

/// Both sides of the pure-state Ky Fan norm split
/// ||M(psi)|| = ||M(sigma)|| + 2 sum_{i<j} sqrt(lambda_i lambda_j),
/// where sigma = sum_i lambda_i |ii><ii| is the dephased diagonal state.
struct DecompositionSides {
  double norm_m = 0.0;
  double norm_m1_plus_cross = 0.0;
};

/// Evaluates the split above. The split holds in the Schmidt basis, so psi
/// must be Schmidt-diagonal in the computational basis (as produced by
/// pure_from_schmidt); other inputs are rejected.
inline DecompositionSides pure_M_decomposition_check(const PureState& psi,
                                                     const CriterionParams& p) {
  const ComplexMatrix c = detail::coefficient_matrix(psi);
  const int k = psi.k();
  for (int i = 0; i < psi.dim_a(); ++i) {
    for (int j = 0; j < psi.dim_b(); ++j) {
      if (i == j) {
        continue;
      }
      if (std::abs(c(i, j)) > 1e-10) {
        throw std::invalid_argument(
            "pure_M_decomposition_check: state is not Schmidt-diagonal in "
            "the computational basis");
      }
    }
  }
  std::vector<double> lambdas(static_cast<std::size_t>(k));
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    const Complex amp = c(i, i);
    if (std::abs(amp.imag()) > 1e-10 || amp.real() < -1e-10) {
      throw std::invalid_argument(
          "pure_M_decomposition_check: diagonal amplitudes must be "
          "nonnegative reals");
    }
    const double l = amp.real() * amp.real();
    lambdas[static_cast<std::size_t>(i)] = l;
    sum += l;
  }

  const double norm_m = ky_fan_norm(build_M(psi.density(), p));

  // The dephased diagonal state sigma = sum_i lambda_i |ii><ii|,
  // renormalized to absorb the pure state's norm slack.
  const Eigen::Index d =
      static_cast<Eigen::Index>(psi.dim_a()) * psi.dim_b();
  ComplexMatrix sigma = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < k; ++i) {
    const Eigen::Index idx = static_cast<Eigen::Index>(i) * psi.dim_b() + i;
    sigma(idx, idx) = lambdas[static_cast<std::size_t>(i)] / sum;
  }
  const BipartiteDensityMatrix dephased(psi.dim_a(), psi.dim_b(),
                                        std::move(sigma));
  const double norm_m1 = ky_fan_norm(build_M(dephased, p));
  return {norm_m, norm_m1 + 2.0 * detail::schmidt_cross_sum(lambdas)};
}

/// Largest white-noise weight at which the selected lower bound still
/// certifies entanglement of (1-w) base + w I/d.
///
/// A 101-point coarse scan brackets the sign change of the raw bound; if
/// the scan shows several sign changes (the bound is assumed monotone, but
/// this is not taken on faith) the bracket around the last change is used.
/// The bracket is then narrowed by bisection (at most 80 iterations,
/// absolute tolerance 1e-6). Returns 0 if the bound is nonpositive already
/// at w = 0 and 1 if it stays positive on the whole scan.
inline double detection_threshold(const BipartiteDensityMatrix& base,
                                  const CriterionParams& p, Measure measure) {
  const auto raw_at = [&](double w) {
    return lower_bound(mix_white_noise(base, w), p, measure).raw;
  };

  if (!(raw_at(0.0) > 0.0)) {
    return 0.0;
  }

  constexpr int kScanPoints = 101;
  double bracket_lo = 0.0;
  double bracket_hi = 1.0;
  bool found_change = false;
  bool prev_positive = true;
  double prev_w = 0.0;
  for (int i = 1; i < kScanPoints; ++i) {
    const double w = static_cast<double>(i) / (kScanPoints - 1);
    const bool positive = raw_at(w) > 0.0;
    if (prev_positive && !positive) {
      // Keep the last positive-to-nonpositive change: the largest w that
      // still detects.
      bracket_lo = prev_w;
      bracket_hi = w;
      found_change = true;
    }
    prev_positive = positive;
    prev_w = w;
  }
  if (!found_change) {
    return 1.0;
  }

  double lo = bracket_lo;
  double hi = bracket_hi;
  for (int iter = 0; iter < 80 && (hi - lo) > 1e-6; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (raw_at(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace entsep
