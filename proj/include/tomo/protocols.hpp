#pragma once

// Polarization-projector catalog, the five measurement protocols, coefficient
// matrix construction, and condition numbers.
//
// Kets are stored as an unnormalized amplitude vector `num` over an explicit
// squared norm `norm2`. For every projector used by the protocols, `num` has
// Gaussian-integer entries and `norm2` is a power of two, so projector
// entries num_i * conj(num_j) / norm2 are dyadic rationals and the derived
// coefficient matrices are bit-exact in double precision.

#include "tomo/qmetrics.hpp"

#include <string>
#include <vector>

namespace tomo {

struct SingleQubitKet {
  Eigen::Vector2cd num;
  double norm2 = 1.0;

  Eigen::Vector2cd amplitudes() const { return num / std::sqrt(norm2); }
};

struct TwoQubitKet {
  Eigen::Vector4cd num;
  double norm2 = 1.0;

  Eigen::Vector4cd amplitudes() const { return num / std::sqrt(norm2); }
  // |ket><ket| with entries num_i * conj(num_j) / norm2 (exact for dyadic kets).
  DensityMatrix projector() const;
  // Build from already-normalized (or to-be-normalized) raw amplitudes.
  static TwoQubitKet from_amplitudes(const Eigen::Vector4cd& a);
};

// H=(1,0), V=(0,1), D=(1,1)/sqrt2, A=(1,-1)/sqrt2, L=(1,i)/sqrt2,
// R=(1,-i)/sqrt2. The circular convention is fixed by the Optimal protocol's
// HL-HR row, whose coefficient row must carry -1 at x3.
SingleQubitKet polarization_ket(char label);

// Tensor product |a> (x) |b> in {HH, HV, VH, VV} component order.
TwoQubitKet tensor(const SingleQubitKet& a, const SingleQubitKet& b);

// Separable two-qubit ket from a two-letter label such as "HV" or "DL".
TwoQubitKet separable_ket(const std::string& two_letters);

// (|a> + c|b>)/sqrt2 for c in {+1,-1,+i,-i}; requires both kets to share the
// same norm2 (exactness is preserved: the result has norm2 doubled).
TwoQubitKet superpose(const TwoQubitKet& a, Complex c, const TwoQubitKet& b);

// How the raw coincidence counts of a measurement row map to one observation.
enum class Assembly { direct, half_difference, signed_sum };

// Number of raw counts a row consumes: direct 1, half_difference 2, signed_sum 4.
int assembly_arity(Assembly a);
std::string assembly_name(Assembly a);
Assembly assembly_from_name(const std::string& name);

struct Term {
  double coeff;  // weight of the projector inside the row observable
  TwoQubitKet ket;
};

struct MeasurementRow {
  std::string label;
  std::vector<Term> terms;  // observable is sum coeff * |ket><ket|
  Assembly assembly = Assembly::direct;
};

enum class ProtocolName { Optimal, MUB, Standard36, Pauli, JKMW };

struct Protocol {
  ProtocolName name;
  std::vector<MeasurementRow> rows;  // 16 / 20 / 36 / 16 / 16 entries
  Eigen::MatrixXd A;                 // rows x 16 coefficient matrix
  double acquisition_seconds_per_row = 5.0;
};

// Canonical lowercase names: optimal, mub, standard36, pauli, jkmw.
std::string protocol_name_string(ProtocolName name);
ProtocolName protocol_name_from_string(const std::string& name);
// One-letter fixture keys: O, M, S, P, J.
char protocol_letter(ProtocolName name);
ProtocolName protocol_from_letter(char letter);
std::vector<ProtocolName> all_protocols();

// Build a protocol with rows in the canonical acquisition order and its
// derived coefficient matrix.
Protocol build_protocol(ProtocolName name);
Protocol build_protocol(const std::string& name);

// Materialize sum coeff * |ket><ket| for one row; Hermitian, trace = sum coeff.
DensityMatrix observable_matrix(const MeasurementRow& row);

// Row r of A maps x to Tr(O_r rho(x)): diagonal slots get O_kk, and each
// off-diagonal pair contributes (2 Re O_nm, 2 Im O_nm) at the Re/Im slots.
Eigen::MatrixXd coefficient_matrix(const std::vector<MeasurementRow>& rows);

// Spectral condition number sigma_max / sigma_min. Throws when the matrix is
// rank deficient (sigma_min < 1e-10 * sigma_max).
double condition_number(const Eigen::MatrixXd& A);

// The 17 nominal preparation targets psi_1..psi_17, each unit-normalized
// (the two-decimal superposition coefficients are renormalized).
std::vector<TwoQubitKet> catalog_states();
std::vector<std::string> catalog_labels();  // "psi_1".."psi_17"
// Lookup by label; throws on unknown label.
TwoQubitKet catalog_state(const std::string& label);

// JSON export: {"name":..., "rows":[{"label","terms":[{"coeff","ket"}],
// "assembly"}], "A":[[...]]} with kets as [[re,im] x 4].
std::string protocol_to_json(const Protocol& p);

}  // namespace tomo
