#include "tomo/simulate.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "tomo/noise.hpp"

namespace tomo {

double flux_share(Assembly assembly) {
  switch (assembly) {
    case Assembly::direct:
    case Assembly::half_difference:
      return 1.0;
    case Assembly::signed_sum:
      return 0.25;
  }
  throw std::logic_error("flux_share: unknown assembly");
}

std::vector<std::vector<double>> ideal_rates(const Protocol& protocol,
                                             const DensityMatrix& rho, double flux) {
  if (!(flux > 0.0)) throw std::invalid_argument("ideal_rates: flux must be positive");
  if (std::abs(rho.trace().real() - 1.0) > 1e-9 || std::abs(rho.trace().imag()) > 1e-9)
    throw std::invalid_argument("ideal_rates: state trace must be 1");
  if (hermiticity_error(rho) > 1e-9)
    throw std::invalid_argument("ideal_rates: state must be Hermitian");
  Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(rho);
  if (solver.eigenvalues().minCoeff() < -1e-9)
    throw std::invalid_argument("ideal_rates: state must be positive semidefinite");

  std::vector<std::vector<double>> rates;
  rates.reserve(protocol.rows.size());
  for (const MeasurementRow& row : protocol.rows) {
    const double share = flux_share(row.assembly);
    std::vector<double> row_rates;
    row_rates.reserve(row.terms.size());
    for (const Term& term : row.terms) {
      const double p = (term.ket.projector() * rho).trace().real();
      row_rates.push_back(share * flux * std::max(0.0, p));
    }
    rates.push_back(std::move(row_rates));
  }
  return rates;
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined seed; decorrelates nearby indices.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

double uniform01(std::mt19937_64& engine) {
  // 53-bit mantissa uniform in [0, 1).
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

long long poisson_knuth(double mean, std::mt19937_64& engine) {
  const double limit = std::exp(-mean);
  long long k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= uniform01(engine);
  } while (p > limit);
  return k - 1;
}

// Transformed rejection with squeeze (Hormann's PTRS), valid for mean >= 10;
// used above 30 where sequential search gets slow.
long long poisson_ptrs(double mean, std::mt19937_64& engine) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform01(engine) - 0.5;
    const double v = uniform01(engine);
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long long>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        k * loglam - mean - std::lgamma(k + 1.0))
      return static_cast<long long>(k);
  }
}

}  // namespace

long long poisson_draw(double mean, std::mt19937_64& engine) {
  if (mean < 0.0) throw std::invalid_argument("poisson_draw: mean must be nonnegative");
  if (mean == 0.0) return 0;
  if (mean < 30.0) return poisson_knuth(mean, engine);
  return poisson_ptrs(mean, engine);
}

CountTable sample_counts(const Protocol& protocol, const std::vector<std::vector<double>>& rates,
                         std::uint64_t seed, const std::string& state_label) {
  if (rates.size() != protocol.rows.size())
    throw std::invalid_argument("sample_counts: rate rows do not match the protocol");
  CountTable table;
  table.protocol_name = protocol_name_string(protocol.name);
  table.state_label = state_label;
  table.acquisition_seconds = protocol.acquisition_seconds_per_row;
  table.raw.reserve(rates.size());
  std::mt19937_64 engine(split_seed(seed, 0));
  for (size_t r = 0; r < rates.size(); ++r) {
    const size_t arity = assembly_arity(protocol.rows[r].assembly);
    if (rates[r].size() != arity)
      throw std::invalid_argument("sample_counts: rate arity mismatch at row " +
                                  std::to_string(r + 1));
    std::vector<long long> counts;
    counts.reserve(arity);
    for (double rate : rates[r]) {
      if (rate < 0.0) throw std::invalid_argument("sample_counts: negative rate");
      counts.push_back(poisson_draw(rate, engine));
    }
    table.raw.push_back(std::move(counts));
  }
  return table;
}

std::vector<TrialResult> run_trials(const DensityMatrix& rho, const Protocol& protocol,
                                    const SimulationConfig& config) {
  if (config.trials < 0) throw std::invalid_argument("run_trials: trials must be nonnegative");
  const std::vector<std::vector<double>> rates = ideal_rates(protocol, rho, config.flux);
  std::vector<TrialResult> results;
  results.reserve(static_cast<size_t>(config.trials));
  for (int t = 0; t < config.trials; ++t) {
    TrialResult result;
    result.trial = t;
    try {
      const CountTable table =
          sample_counts(protocol, rates, split_seed(config.seed, static_cast<std::uint64_t>(t) + 1));
      const ObservationVector obs = assemble_observations(protocol, table);
      const Reconstruction recon = reconstruct_state(protocol.A, obs);
      result.E = trace_distance(recon.rho, rho);
      result.R = error_radius(protocol.A, obs, recon, config.rescale);
      result.covered = result.E <= result.R;
    } catch (const std::exception& e) {
      result.ok = false;
      result.covered = false;
      result.error = e.what();
    }
    results.push_back(std::move(result));
  }
  return results;
}

TrialSummary summarize_trials(const std::vector<TrialResult>& results) {
  TrialSummary summary;
  summary.trials = static_cast<int>(results.size());
  double sum_E = 0.0;
  double sum_R = 0.0;
  int successes = 0;
  for (const TrialResult& r : results) {
    if (!r.ok) {
      ++summary.failures;
      continue;
    }
    ++successes;
    sum_E += r.E;
    sum_R += r.R;
    if (r.covered) ++summary.covered;
  }
  if (summary.trials > 0) summary.coverage = static_cast<double>(summary.covered) / summary.trials;
  if (successes > 0) {
    summary.mean_E = sum_E / successes;
    summary.mean_R = sum_R / successes;
  }
  return summary;
}

void write_trial_report(std::ostream& out, const std::vector<TrialResult>& results) {
  for (const TrialResult& r : results) {
    nlohmann::ordered_json j;
    j["trial"] = r.trial;
    j["E"] = round_significant(r.E, 10);
    j["R"] = round_significant(r.R, 10);
    j["covered"] = r.covered;
    if (!r.ok) j["error"] = r.error;
    out << j.dump() << "\n";
  }
  const TrialSummary s = summarize_trials(results);
  nlohmann::ordered_json j;
  j["summary"]["trials"] = s.trials;
  j["summary"]["covered"] = s.covered;
  j["summary"]["failures"] = s.failures;
  j["summary"]["coverage"] = round_significant(s.coverage, 10);
  j["summary"]["mean_E"] = round_significant(s.mean_E, 10);
  j["summary"]["mean_R"] = round_significant(s.mean_R, 10);
  out << j.dump() << "\n";
}

}  // namespace tomo
