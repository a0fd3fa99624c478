#include "tomo/noise.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tomo/qmetrics.hpp"

namespace tomo {

double error_radius(const Eigen::MatrixXd& A, const ObservationVector& obs,
                    const Reconstruction& recon, double rescale) {
  const double b_norm = obs.b.norm();
  if (b_norm <= 0.0) throw std::invalid_argument("error_radius: observation vector has zero norm");
  const double kappa = condition_number(A);
  const double sigma_norm = std::sqrt(obs.variance.sum());
  // Trace-normalized solution vector: the radius describes the normalized state.
  const StateVector x_hat = vec_density(recon.rho);
  const double d = static_cast<double>(kDim);
  return rescale * std::sqrt(2.0 * d) * kappa * sigma_norm * x_hat.norm() / b_norm;
}

std::pair<double, double> error_band(double R, double kappa, int d, double k) {
  if (R < 0.0) throw std::invalid_argument("error_band: R must be nonnegative");
  if (kappa < 1.0) throw std::invalid_argument("error_band: kappa must be >= 1");
  if (d <= 0) throw std::invalid_argument("error_band: dimension must be positive");
  if (k < 0.0 || k > 2.0 * kSqrt2)
    throw std::invalid_argument("error_band: k must lie in [0, 2 sqrt 2]");
  const double lo = k * R / (4.0 * std::sqrt(static_cast<double>(d)) * kappa * kappa);
  const double hi = k * R / (2.0 * kSqrt2);
  return {lo, hi};
}

ErrorReport make_error_report(const Protocol& protocol, const std::string& state_label,
                              const ObservationVector& obs, const Reconstruction& recon,
                              double rescale, double k) {
  ErrorReport report;
  report.protocol = protocol_name_string(protocol.name);
  report.state = state_label;
  report.kappa = condition_number(protocol.A);
  report.R = error_radius(protocol.A, obs, recon, rescale);
  const auto band = error_band(report.R, report.kappa, kDim, k);
  report.band_lo = band.first;
  report.band_hi = band.second;
  report.k_param = k;
  report.sigma_norm = std::sqrt(obs.variance.sum());
  report.b_norm = obs.b.norm();
  report.x_norm = vec_density(recon.rho).norm();
  report.rescale_factor = rescale;
  return report;
}

std::string error_report_to_json(const ErrorReport& report) {
  nlohmann::ordered_json j;
  j["protocol"] = report.protocol;
  j["state"] = report.state;
  j["kappa"] = round_significant(report.kappa, 10);
  j["R"] = round_significant(report.R, 10);
  j["band_lo"] = round_significant(report.band_lo, 10);
  j["band_hi"] = round_significant(report.band_hi, 10);
  j["k_param"] = round_significant(report.k_param, 10);
  j["sigma_norm"] = round_significant(report.sigma_norm, 10);
  j["b_norm"] = round_significant(report.b_norm, 10);
  j["x_norm"] = round_significant(report.x_norm, 10);
  j["rescale_factor"] = round_significant(report.rescale_factor, 10);
  return j.dump(1);
}

std::string error_report_csv_header() {
  return "protocol,state,kappa,R,band_lo,band_hi,k_param,sigma_norm,b_norm,x_norm,rescale_factor";
}

std::string error_report_to_csv(const ErrorReport& report) {
  std::ostringstream out;
  out.precision(10);
  out << report.protocol << ',' << report.state << ',' << report.kappa << ',' << report.R << ','
      << report.band_lo << ',' << report.band_hi << ',' << report.k_param << ','
      << report.sigma_norm << ',' << report.b_norm << ',' << report.x_norm << ','
      << report.rescale_factor;
  return out.str();
}

namespace {

// log Pr(X = n) for X ~ Poisson(mu), mu > 0.
double log_poisson_pmf(double mu, long long n) {
  return -mu + static_cast<double>(n) * std::log(mu) - std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace

double deviation_probability(long long b, double multiple) {
  if (b < 0) throw std::invalid_argument("deviation_probability: b must be nonnegative");
  if (multiple < 0.0) throw std::invalid_argument("deviation_probability: multiple must be nonnegative");
  if (b == 0) return 1.0;
  const double mu = static_cast<double>(b);
  const double half_width = multiple * std::sqrt(mu);
  const long long lo = std::max<long long>(0, static_cast<long long>(std::floor(mu - half_width)));
  const long long hi = static_cast<long long>(std::floor(mu + half_width));
  double mass = 0.0;
  for (long long n = lo; n <= hi; ++n) mass += std::exp(log_poisson_pmf(mu, n));
  return std::min(mass, 1.0);
}

double poisson_tail_bound(double mu, double k) {
  if (mu <= 0.0) throw std::invalid_argument("poisson_tail_bound: mu must be positive");
  if (k <= 0.0) throw std::invalid_argument("poisson_tail_bound: k must be positive");
  const double x = mu + k * std::sqrt(mu);
  // exp(-mu) (e mu / x)^x evaluated in log space.
  return std::exp(-mu + x * (1.0 + std::log(mu) - std::log(x)));
}

double poisson_tail_exact(double mu, double k) {
  if (mu <= 0.0) throw std::invalid_argument("poisson_tail_exact: mu must be positive");
  if (k <= 0.0) throw std::invalid_argument("poisson_tail_exact: k must be positive");
  const double x = mu + k * std::sqrt(mu);
  const long long cutoff = static_cast<long long>(std::floor(x));
  // Pr(X > x) = 1 - Pr(X <= cutoff); sum the head, which is short for the
  // moderate means used in practice.
  double head = 0.0;
  for (long long n = 0; n <= cutoff; ++n) head += std::exp(log_poisson_pmf(mu, n));
  return std::max(0.0, 1.0 - head);
}

RatioBounds perturbation_ratio_bounds(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                      const Eigen::VectorXd& delta_b) {
  if (A.rows() != b.size() || b.size() != delta_b.size())
    throw std::invalid_argument("perturbation_ratio_bounds: dimension mismatch");
  const double kappa = condition_number(A);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd x = svd.solve(b);
  const Eigen::VectorXd dx = svd.solve(delta_b);
  const double x_norm = x.norm();
  const double b_norm = b.norm();
  if (x_norm <= 0.0 || b_norm <= 0.0)
    throw std::invalid_argument("perturbation_ratio_bounds: zero baseline norm");
  RatioBounds out;
  out.lower = delta_b.norm() / (kappa * b_norm);
  out.actual = dx.norm() / x_norm;
  out.upper = kappa * delta_b.norm() / b_norm;
  return out;
}

}  // namespace tomo
