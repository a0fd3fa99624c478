#pragma once

// Loading, validation, and golden-suite evaluation of the committed reference
// data: coefficient matrices, count tables, variance tables, radius and
// distance tables, reference reconstructions, and preparation-target kets.

#include "tomo/protocols.hpp"
#include "tomo/qmetrics.hpp"
#include "tomo/reconstruct.hpp"

#include <Eigen/Dense>

#include <array>
#include <map>
#include <string>
#include <vector>

namespace tomo {

// Protocol letters in table column order.
inline constexpr std::array<char, 5> kProtocolLetters{'O', 'M', 'S', 'P', 'J'};
inline constexpr int kStateCount = 17;

struct FixtureSet {
  std::string dir;
  std::map<char, Eigen::MatrixXd> A;          // printed integers x prefactor
  std::map<char, Eigen::MatrixXd> b;          // measurement rows x 17 states
  std::map<char, Eigen::MatrixXd> variance;   // 'O' and 'P' only
  Eigen::MatrixXd R_table;                    // 17 x 5, columns O,M,S,P,J
  Eigen::MatrixXd T_table;                    // 17 x 3, columns OM,OS,MS
  std::map<char, std::vector<DensityMatrix>> reconstructed;  // 17 per protocol
  std::vector<Eigen::Vector4cd> states;       // unit preparation-target kets
  std::vector<std::string> state_labels;      // "psi_1".."psi_17"
};

// The printed integer coefficient matrices carry a common prefactor: 1/4 for
// the Standard36, JKMW, and MUB tables, 1 for Optimal and Pauli.
double fixture_prefactor(char letter);

// Measurement rows per protocol letter (16/20/36/16/16).
int fixture_rows(char letter);

// $TOMOLENS_FIXTURES when set, else "fixtures".
std::string default_fixture_dir();

// Parse the whole directory with dimension checks; errors name file and line.
FixtureSet load_fixtures(const std::string& dir);

// Observation vector for one protocol column: b from the count table, sigma^2
// from the dedicated variance tables for O and P and from |b| (raw counts)
// for the direct-count protocols S, J, M. state_index is 1-based.
ObservationVector fixture_observations(const FixtureSet& fix, char letter, int state_index);

// Reference reconstruction as printed (4-decimal entries). 1-based index.
const DensityMatrix& fixture_density(const FixtureSet& fix, char letter, int state_index);

struct ValidationIssue {
  std::string where;
  std::string what;
};

struct ValidationReport {
  int checks = 0;
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Internal-consistency checks: nonnegative raw counts, variance columns that
// must equal count columns, Hermiticity and unit trace (+-5e-4) of all 85
// printed matrices, proximity (trace distance < 0.5) of each printed matrix
// to its preparation target, and unit-norm targets.
ValidationReport validate_fixtures(const FixtureSet& fix);

// SHA-256 of a byte string / file, lowercase hex.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

// Recompute every hash in MANIFEST.sha256 and report mismatches.
ValidationReport verify_manifest(const std::string& dir);

// One golden-suite check: the worst deviation observed and its gate.
struct GoldenCheck {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct GoldenSuiteResult {
  std::vector<GoldenCheck> checks;
  bool all_pass() const;
};

// End-to-end golden run: condition numbers against their closed-form
// references, built coefficient matrices against the printed tables
// (bit-exact), all 85 reconstructions against the printed matrices (5e-4),
// the 17x5 radius table (5e-3, rescale 1.3), and the 17x3 relative-distance
// table computed from the printed matrices (5e-4).
GoldenSuiteResult run_golden_suite(const FixtureSet& fix);

}  // namespace tomo
