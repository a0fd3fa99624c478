#pragma once

// Variance models, the condition-number uncertainty radius R, probable-error
// bands, and the Poisson tail statistics that justify them.

#include "tomo/protocols.hpp"
#include "tomo/reconstruct.hpp"

#include <string>
#include <utility>

namespace tomo {

inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr double kDefaultRescale = 1.3;

// Everything needed to reproduce an uncertainty statement for one state.
struct ErrorReport {
  std::string protocol;
  std::string state;
  double kappa = 0.0;           // condition number of the coefficient matrix
  double R = 0.0;               // uncertainty radius, trace-distance units
  double band_lo = 0.0;         // probable-error band lower edge
  double band_hi = 0.0;         // probable-error band upper edge
  double k_param = kSqrt2;      // deviation multiple used for the band
  double sigma_norm = 0.0;      // ||sigma(b)||
  double b_norm = 0.0;          // ||b||
  double x_norm = 0.0;          // ||x|| of the trace-normalized solution
  double rescale_factor = kDefaultRescale;
};

// R = rescale * sqrt(2d) * kappa(A) * ||sigma(b)|| * ||x|| / ||b|| with d = 4
// and x the trace-normalized reconstructed vector. The sqrt(2d) prefactor and
// the normalized-x convention are calibrated against the reference radius
// table (see README design notes). Throws when ||b|| = 0.
double error_radius(const Eigen::MatrixXd& A, const ObservationVector& obs,
                    const Reconstruction& recon, double rescale = kDefaultRescale);

// Probable-error band: lo = k R / (4 sqrt(d) kappa^2), hi = k R / (2 sqrt 2).
// Valid for 0 <= k <= 2 sqrt 2; k = sqrt 2 puts hi at R/2.
std::pair<double, double> error_band(double R, double kappa, int d, double k);

// Full report for one reconstructed state.
ErrorReport make_error_report(const Protocol& protocol, const std::string& state_label,
                              const ObservationVector& obs, const Reconstruction& recon,
                              double rescale = kDefaultRescale, double k = kSqrt2);
std::string error_report_to_json(const ErrorReport& report);
std::string error_report_csv_header();
std::string error_report_to_csv(const ErrorReport& report);

// Probability that a Poisson(b) draw lands within [b - multiple*sqrt(b),
// b + multiple*sqrt(b)], both edges floored, evaluated with log-gamma sums.
// b = 0 returns 1 (all mass at zero).
double deviation_probability(long long b, double multiple);

// Chernoff-style bound exp(-mu) (e mu / x)^x on Pr(X > x) at x = mu + k sqrt(mu).
double poisson_tail_bound(double mu, double k);

// Exact Pr(X > mu + k sqrt(mu)) by pmf summation; testing oracle for the bound.
double poisson_tail_exact(double mu, double k);

// Relative-error transfer through the linear system for a perturbation of b:
// lower = (1/kappa)||db||/||b||, actual = ||dx||/||x||, upper = kappa ||db||/||b||.
struct RatioBounds {
  double lower = 0.0;
  double actual = 0.0;
  double upper = 0.0;
};
RatioBounds perturbation_ratio_bounds(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                      const Eigen::VectorXd& delta_b);

}  // namespace tomo
