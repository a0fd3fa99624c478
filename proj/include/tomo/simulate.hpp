#pragma once

// Synthetic coincidence counts from an ideal state: Born-rule rates, seeded
// Poisson sampling, and Monte Carlo coverage trials for the uncertainty
// radius.

#include "tomo/protocols.hpp"
#include "tomo/qmetrics.hpp"
#include "tomo/reconstruct.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace tomo {

struct SimulationConfig {
  double flux = 5000.0;   // expected counts for a unit-probability projector
  std::uint64_t seed = 0;
  int trials = 1;
  double rescale = 1.3;   // forwarded to the radius computation
};

// One Monte Carlo trial: reconstruction error E against the truth, radius R
// from the noisy data alone, and whether R covered E.
struct TrialResult {
  int trial = 0;
  double E = 0.0;
  double R = 0.0;
  bool covered = false;
  bool ok = true;          // false when reconstruction failed
  std::string error;
};

struct TrialSummary {
  int trials = 0;
  int covered = 0;
  int failures = 0;
  double coverage = 0.0;   // covered / trials
  double mean_E = 0.0;     // over successful trials
  double mean_R = 0.0;
};

// Expected raw count for every projector term of every row: rate = share x
// flux x Tr(P rho). The window share is uniform within a protocol (1 for
// direct and differenced rows, 1/4 for the four-term summed rows) so that the
// overall scale cancels under trace normalization and the noiseless
// assemble -> reconstruct roundtrip is exact. Throws on nonphysical rho
// (trace off unity by more than 1e-9 or an eigenvalue below -1e-9).
std::vector<std::vector<double>> ideal_rates(const Protocol& protocol,
                                             const DensityMatrix& rho, double flux);

// Window share applied to each term of a row with the given assembly.
double flux_share(Assembly assembly);

// Draw every raw count independently as Poisson(rate); deterministic for a
// given seed. The state label is carried into the resulting table.
CountTable sample_counts(const Protocol& protocol, const std::vector<std::vector<double>>& rates,
                         std::uint64_t seed, const std::string& state_label = "simulated");

// One Poisson draw. Inversion by sequential search below mean 30, transformed
// rejection (PTRS) above; exact at low rates, O(1) at high rates.
long long poisson_draw(double mean, std::mt19937_64& engine);

// Derive an independent stream seed for a trial index (splitmix64 mixing).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

// Full pipeline per trial: sample counts, assemble, reconstruct, compute the
// radius, compare with the trace distance to the truth. Reconstruction
// failures are reported as uncovered trials carrying the error text.
std::vector<TrialResult> run_trials(const DensityMatrix& rho, const Protocol& protocol,
                                    const SimulationConfig& config);

TrialSummary summarize_trials(const std::vector<TrialResult>& results);

// JSON lines: one {"trial":..,"E":..,"R":..,"covered":..} object per trial,
// then a closing {"summary":...} record.
void write_trial_report(std::ostream& out, const std::vector<TrialResult>& results);

}  // namespace tomo
