#pragma once

// Observation assembly (direct counts, halved Skellam differences, signed
// Pauli sums), the linear-system solve, and trace normalization.

#include "tomo/protocols.hpp"
#include "tomo/qmetrics.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tomo {

// Raw coincidence counts for one prepared state under one protocol. Each
// per-row entry carries as many counts as the row's assembly rule consumes
// (direct 1, half_difference 2, signed_sum 4).
struct CountTable {
  std::string protocol_name;
  std::string state_label;
  std::vector<std::vector<long long>> raw;
  double acquisition_seconds = 5.0;
};

// One observation value and its variance estimate per measurement row.
struct ObservationVector {
  Eigen::VectorXd b;
  Eigen::VectorXd variance;
};

struct Reconstruction {
  DensityMatrix rho;     // trace-normalized
  StateVector x_raw;     // solution of Ax = b before normalization
  double residual_norm;  // ||Ax - b||, zero for square systems
};

// Per-state result of a batch run; failures are isolated, not propagated.
struct ReconstructionOutcome {
  bool ok = false;
  std::string state_label;
  Reconstruction value;
  std::string error;
};

// Map raw counts to observations:
//   direct          b = c,                  var = c
//   half_difference b = floor((c - c')/2),  var = floor((c + c')/2)
//   signed_sum      b = sum sign_j * c_j,   var = sum c_j
// with floor toward -infinity and signs taken from the row coefficients.
// Throws on negative counts or arity mismatch.
ObservationVector assemble_observations(const Protocol& protocol, const CountTable& counts);

// Same mapping on real-valued expected rates with exact halves (no floor);
// used for noiseless end-to-end checks and simulation truth values.
ObservationVector assemble_expected(const Protocol& protocol,
                                    const std::vector<std::vector<double>>& rates);

// Square system: exact solve. Overdetermined: minimum-residual least squares
// via SVD. The solution is trace-normalized into rho; throws on a singular
// system or a degenerate zero-trace solution (|trace| < 1e-9 * ||x||).
Reconstruction reconstruct_state(const Eigen::MatrixXd& A, const ObservationVector& obs);

// Batch reconstruction preserving input order; per-state errors are recorded
// in the outcome instead of aborting the batch.
std::vector<ReconstructionOutcome> reconstruct_all(const Protocol& protocol,
                                                   const std::vector<CountTable>& counts_per_state);

// CSV with header `protocol,state,row_index,row_label,c1,c2,c3,c4`; unused
// trailing count cells stay empty. row_index is 1-based in listing order and
// consecutive rows of one state form one table.
std::vector<CountTable> read_count_tables_csv(const std::string& path);
std::vector<CountTable> read_count_tables(std::istream& in, const std::string& origin);
void write_count_tables_csv(const std::string& path, const std::vector<CountTable>& tables);
void write_count_tables(std::ostream& out, const std::vector<CountTable>& tables);

}  // namespace tomo
