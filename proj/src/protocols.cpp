#include "tomo/protocols.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace tomo {

using json = nlohmann::json;

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

DensityMatrix TwoQubitKet::projector() const {
  DensityMatrix out;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      out(i, j) = num[i] * std::conj(num[j]) / norm2;
    }
  }
  return out;
}

TwoQubitKet TwoQubitKet::from_amplitudes(const Eigen::Vector4cd& a) {
  const double n = a.norm();
  if (n <= 0.0) throw std::invalid_argument("TwoQubitKet: zero amplitude vector");
  return TwoQubitKet{a / n, 1.0};
}

SingleQubitKet polarization_ket(char label) {
  switch (label) {
    case 'H': return {{Complex(1, 0), Complex(0, 0)}, 1.0};
    case 'V': return {{Complex(0, 0), Complex(1, 0)}, 1.0};
    case 'D': return {{Complex(1, 0), Complex(1, 0)}, 2.0};
    case 'A': return {{Complex(1, 0), Complex(-1, 0)}, 2.0};
    case 'L': return {{Complex(1, 0), kI}, 2.0};
    case 'R': return {{Complex(1, 0), -kI}, 2.0};
    default: throw std::invalid_argument(std::string("unknown polarization label: ") + label);
  }
}

TwoQubitKet tensor(const SingleQubitKet& a, const SingleQubitKet& b) {
  TwoQubitKet out;
  out.num << a.num[0] * b.num[0], a.num[0] * b.num[1], a.num[1] * b.num[0], a.num[1] * b.num[1];
  out.norm2 = a.norm2 * b.norm2;
  return out;
}

TwoQubitKet separable_ket(const std::string& two_letters) {
  if (two_letters.size() != 2) {
    throw std::invalid_argument("separable_ket: expected a two-letter label, got " + two_letters);
  }
  return tensor(polarization_ket(two_letters[0]), polarization_ket(two_letters[1]));
}

TwoQubitKet superpose(const TwoQubitKet& a, Complex c, const TwoQubitKet& b) {
  if (a.norm2 != b.norm2) {
    throw std::invalid_argument("superpose: operands must share norm2");
  }
  TwoQubitKet out;
  out.num = a.num + c * b.num;
  out.norm2 = 2.0 * a.norm2;
  return out;
}

int assembly_arity(Assembly a) {
  switch (a) {
    case Assembly::direct: return 1;
    case Assembly::half_difference: return 2;
    case Assembly::signed_sum: return 4;
  }
  throw std::logic_error("assembly_arity: bad enum");
}

std::string assembly_name(Assembly a) {
  switch (a) {
    case Assembly::direct: return "direct";
    case Assembly::half_difference: return "half_difference";
    case Assembly::signed_sum: return "signed_sum";
  }
  throw std::logic_error("assembly_name: bad enum");
}

Assembly assembly_from_name(const std::string& name) {
  if (name == "direct") return Assembly::direct;
  if (name == "half_difference") return Assembly::half_difference;
  if (name == "signed_sum") return Assembly::signed_sum;
  throw std::invalid_argument("unknown assembly rule: " + name);
}

std::string protocol_name_string(ProtocolName name) {
  switch (name) {
    case ProtocolName::Optimal: return "optimal";
    case ProtocolName::MUB: return "mub";
    case ProtocolName::Standard36: return "standard36";
    case ProtocolName::Pauli: return "pauli";
    case ProtocolName::JKMW: return "jkmw";
  }
  throw std::logic_error("protocol_name_string: bad enum");
}

ProtocolName protocol_name_from_string(const std::string& name) {
  std::string low = name;
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (low == "optimal") return ProtocolName::Optimal;
  if (low == "mub") return ProtocolName::MUB;
  if (low == "standard36" || low == "standard") return ProtocolName::Standard36;
  if (low == "pauli") return ProtocolName::Pauli;
  if (low == "jkmw") return ProtocolName::JKMW;
  throw std::invalid_argument("unknown protocol: " + name +
                              " (expected optimal|mub|standard36|pauli|jkmw)");
}

char protocol_letter(ProtocolName name) {
  switch (name) {
    case ProtocolName::Optimal: return 'O';
    case ProtocolName::MUB: return 'M';
    case ProtocolName::Standard36: return 'S';
    case ProtocolName::Pauli: return 'P';
    case ProtocolName::JKMW: return 'J';
  }
  throw std::logic_error("protocol_letter: bad enum");
}

ProtocolName protocol_from_letter(char letter) {
  switch (letter) {
    case 'O': return ProtocolName::Optimal;
    case 'M': return ProtocolName::MUB;
    case 'S': return ProtocolName::Standard36;
    case 'P': return ProtocolName::Pauli;
    case 'J': return ProtocolName::JKMW;
    default: throw std::invalid_argument(std::string("unknown protocol letter: ") + letter);
  }
}

std::vector<ProtocolName> all_protocols() {
  return {ProtocolName::Optimal, ProtocolName::MUB, ProtocolName::Standard36,
          ProtocolName::Pauli, ProtocolName::JKMW};
}

namespace {

// Bell-type kets over the computational pair basis.
TwoQubitKet bell_ket(const std::string& label) {
  const TwoQubitKet hh = separable_ket("HH");
  const TwoQubitKet hv = separable_ket("HV");
  const TwoQubitKet vh = separable_ket("VH");
  const TwoQubitKet vv = separable_ket("VV");
  if (label == "Phi+") return superpose(hh, 1.0, vv);
  if (label == "Phi-") return superpose(hh, -1.0, vv);
  if (label == "PhiI+") return superpose(hh, kI, vv);   // (|HH> + i|VV>)/sqrt2
  if (label == "PhiI-") return superpose(hh, -kI, vv);  // (|HH> - i|VV>)/sqrt2
  if (label == "Psi+") return superpose(hv, 1.0, vh);
  if (label == "Psi-") return superpose(hv, -1.0, vh);
  if (label == "PsiI+") return superpose(hv, kI, vh);   // (|HV> + i|VH>)/sqrt2
  if (label == "PsiI-") return superpose(hv, -kI, vh);  // (|HV> - i|VH>)/sqrt2
  throw std::invalid_argument("unknown Bell label: " + label);
}

// Entangled kets of the unbiased-bases protocol: (|ab> +/- i|cd>)/sqrt2.
TwoQubitKet mub_entangled_ket(const std::string& first, Complex sign, const std::string& second) {
  return superpose(separable_ket(first), sign, separable_ket(second));
}

MeasurementRow direct_row(const std::string& label, const TwoQubitKet& ket) {
  return MeasurementRow{label, {Term{1.0, ket}}, Assembly::direct};
}

MeasurementRow half_difference_row(const std::string& label, const TwoQubitKet& plus,
                                   const TwoQubitKet& minus) {
  return MeasurementRow{label, {Term{0.5, plus}, Term{-0.5, minus}}, Assembly::half_difference};
}

MeasurementRow signed_sum_row(const std::string& label, const std::array<std::string, 4>& kets,
                              const std::array<double, 4>& signs) {
  MeasurementRow row{label, {}, Assembly::signed_sum};
  for (int i = 0; i < 4; ++i) row.terms.push_back(Term{signs[i], separable_ket(kets[i])});
  return row;
}

std::vector<MeasurementRow> standard36_rows() {
  static const char letters[] = {'H', 'V', 'D', 'A', 'L', 'R'};
  std::vector<MeasurementRow> rows;
  for (char a : letters) {
    for (char b : letters) {
      const std::string label{a, b};
      rows.push_back(direct_row(label, separable_ket(label)));
    }
  }
  return rows;
}

std::vector<MeasurementRow> jkmw_rows() {
  static const char* labels[] = {"HH", "HV", "HD", "HL", "VH", "VV", "VD", "VL",
                                 "RH", "RV", "RD", "RL", "DH", "DV", "DD", "DR"};
  std::vector<MeasurementRow> rows;
  for (const char* lab : labels) rows.push_back(direct_row(lab, separable_ket(lab)));
  return rows;
}

std::vector<MeasurementRow> mub_rows() {
  static const char* separable[] = {"DH", "DV", "AH", "AV", "LD", "LA",
                                    "RD", "RA", "VR", "VL", "HR", "HL"};
  std::vector<MeasurementRow> rows;
  for (const char* lab : separable) rows.push_back(direct_row(lab, separable_ket(lab)));
  for (const char* lab : {"Phi+", "Phi-", "Psi+", "Psi-"}) {
    rows.push_back(direct_row(lab, bell_ket(lab)));
  }
  rows.push_back(direct_row("DL+iAR", mub_entangled_ket("DL", kI, "AR")));
  rows.push_back(direct_row("DL-iAR", mub_entangled_ket("DL", -kI, "AR")));
  rows.push_back(direct_row("DR+iAL", mub_entangled_ket("DR", kI, "AL")));
  rows.push_back(direct_row("DR-iAL", mub_entangled_ket("DR", -kI, "AL")));
  return rows;
}

std::vector<MeasurementRow> optimal_rows() {
  std::vector<MeasurementRow> rows;
  // Four diagonal projectors fix the populations.
  for (const char* lab : {"HH", "HV", "VH", "VV"}) {
    rows.push_back(direct_row(lab, separable_ket(lab)));
  }
  // Twelve projector half-differences fix the off-diagonal parts.
  const std::array<std::array<const char*, 2>, 8> separable_pairs{{{"HD", "HA"},
                                                                   {"HL", "HR"},
                                                                   {"DH", "AH"},
                                                                   {"LH", "RH"},
                                                                   {"VD", "VA"},
                                                                   {"VL", "VR"},
                                                                   {"DV", "AV"},
                                                                   {"LV", "RV"}}};
  for (const auto& [plus, minus] : separable_pairs) {
    rows.push_back(half_difference_row(std::string(plus) + "-" + minus, separable_ket(plus),
                                       separable_ket(minus)));
  }
  const std::array<std::array<const char*, 2>, 4> bell_pairs{
      {{"Psi+", "Psi-"}, {"PsiI+", "PsiI-"}, {"Phi+", "Phi-"}, {"PhiI+", "PhiI-"}}};
  for (const auto& [plus, minus] : bell_pairs) {
    rows.push_back(
        half_difference_row(std::string(plus) + "-" + minus, bell_ket(plus), bell_ket(minus)));
  }
  return rows;
}

std::vector<MeasurementRow> pauli_rows() {
  // Each row is the expectation of a two-qubit Pauli product assembled from
  // four separable projectors with signs (+,+,-,-), except the all-plus
  // identity row.
  const std::array<double, 4> pm{1.0, 1.0, -1.0, -1.0};
  const std::array<double, 4> all_plus{1.0, 1.0, 1.0, 1.0};
  std::vector<MeasurementRow> rows;
  rows.push_back(signed_sum_row("XX", {"DD", "AA", "DA", "AD"}, pm));
  rows.push_back(signed_sum_row("XY", {"DL", "AR", "DR", "AL"}, pm));
  rows.push_back(signed_sum_row("XZ", {"DH", "AV", "DV", "AH"}, pm));
  rows.push_back(signed_sum_row("XI", {"DH", "DV", "AH", "AV"}, pm));
  rows.push_back(signed_sum_row("YX", {"LD", "RA", "LA", "RD"}, pm));
  rows.push_back(signed_sum_row("YY", {"LL", "RR", "LR", "RL"}, pm));
  rows.push_back(signed_sum_row("YZ", {"LH", "RV", "LV", "RH"}, pm));
  rows.push_back(signed_sum_row("YI", {"LH", "LV", "RH", "RV"}, pm));
  rows.push_back(signed_sum_row("ZX", {"HD", "VA", "HA", "VD"}, pm));
  rows.push_back(signed_sum_row("ZY", {"HL", "VR", "HR", "VL"}, pm));
  rows.push_back(signed_sum_row("ZZ", {"HH", "VV", "HV", "VH"}, pm));
  rows.push_back(signed_sum_row("ZI", {"HH", "HV", "VH", "VV"}, pm));
  rows.push_back(signed_sum_row("IX", {"HD", "VD", "HA", "VA"}, pm));
  rows.push_back(signed_sum_row("IY", {"HL", "VL", "HR", "VR"}, pm));
  rows.push_back(signed_sum_row("IZ", {"HH", "VH", "HV", "VV"}, pm));
  rows.push_back(signed_sum_row("II", {"HH", "HV", "VH", "VV"}, all_plus));
  return rows;
}

}  // namespace

DensityMatrix observable_matrix(const MeasurementRow& row) {
  DensityMatrix out = DensityMatrix::Zero();
  for (const Term& t : row.terms) out += t.coeff * t.ket.projector();
  return out;
}

Eigen::MatrixXd coefficient_matrix(const std::vector<MeasurementRow>& rows) {
  Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()), kVecSize);
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    const DensityMatrix obs = observable_matrix(rows[static_cast<size_t>(r)]);
    int k = 0;
    for (int n = 0; n < kDim; ++n) {
      A(r, k++) = obs(n, n).real();
      for (int m = n + 1; m < kDim; ++m) {
        A(r, k++) = 2.0 * obs(n, m).real();
        A(r, k++) = 2.0 * obs(n, m).imag();
      }
    }
  }
  return A;
}

double condition_number(const Eigen::MatrixXd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smax <= 0.0 || smin < 1e-10 * smax) {
    throw std::invalid_argument("condition_number: matrix is rank deficient");
  }
  return smax / smin;
}

Protocol build_protocol(ProtocolName name) {
  Protocol p;
  p.name = name;
  switch (name) {
    case ProtocolName::Optimal: p.rows = optimal_rows(); break;
    case ProtocolName::MUB: p.rows = mub_rows(); break;
    case ProtocolName::Standard36: p.rows = standard36_rows(); break;
    case ProtocolName::Pauli: p.rows = pauli_rows(); break;
    case ProtocolName::JKMW: p.rows = jkmw_rows(); break;
  }
  p.A = coefficient_matrix(p.rows);
  return p;
}

Protocol build_protocol(const std::string& name) {
  return build_protocol(protocol_name_from_string(name));
}

std::vector<TwoQubitKet> catalog_states() {
  const TwoQubitKet hv = separable_ket("HV");
  const TwoQubitKet vh = separable_ket("VH");
  const auto weighted = [&](double chv, double cvh) {
    return TwoQubitKet::from_amplitudes(chv * hv.amplitudes() + cvh * vh.amplitudes());
  };
  // Elliptic single-photon polarization states, normalized componentwise.
  const auto elliptic = [](Complex h, Complex v) {
    const double n = std::sqrt(std::norm(h) + std::norm(v));
    return SingleQubitKet{{h / n, v / n}, 1.0};
  };
  const SingleQubitKet e1a = elliptic(Complex(-0.6556, 0.6248), Complex(0.4241, 0.0));
  const SingleQubitKet e1b = elliptic(Complex(-0.1415, -0.7165), Complex(0.6831, 0.0));
  const SingleQubitKet e2a = elliptic(Complex(-0.9608, 0.2091), Complex(0.1822, 0.0));
  const SingleQubitKet e2b = elliptic(Complex(0.2613, 0.7338), Complex(0.6271, 0.0));

  std::vector<TwoQubitKet> states;
  states.push_back(bell_ket("Phi-"));                              // psi_1
  states.push_back(bell_ket("Phi+"));                              // psi_2
  states.push_back(bell_ket("PhiI-"));                             // psi_3
  states.push_back(mub_entangled_ket("DR", -kI, "AL"));            // psi_4
  states.push_back(bell_ket("PsiI+"));                             // psi_5
  states.push_back(bell_ket("Psi+"));                              // psi_6
  states.push_back(separable_ket("HV"));                           // psi_7
  states.push_back(bell_ket("PhiI+"));                             // psi_8
  states.push_back(bell_ket("Psi-"));                              // psi_9
  states.push_back(bell_ket("PsiI-"));                             // psi_10
  states.push_back(mub_entangled_ket("DL", kI, "AR"));             // psi_11
  states.push_back(mub_entangled_ket("DL", -kI, "AR"));            // psi_12
  states.push_back(tensor(e1a, e1b));                              // psi_13
  states.push_back(tensor(e2a, e2b));                              // psi_14
  states.push_back(weighted(0.79, -0.61));                         // psi_15
  states.push_back(weighted(0.50, -0.87));                         // psi_16
  states.push_back(weighted(0.35, -0.94));                         // psi_17
  return states;
}

std::vector<std::string> catalog_labels() {
  std::vector<std::string> labels;
  for (int i = 1; i <= 17; ++i) labels.push_back("psi_" + std::to_string(i));
  return labels;
}

TwoQubitKet catalog_state(const std::string& label) {
  const std::vector<std::string> labels = catalog_labels();
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return catalog_states()[i];
  }
  throw std::invalid_argument("unknown catalog state: " + label + " (expected psi_1..psi_17)");
}

std::string protocol_to_json(const Protocol& p) {
  json rows = json::array();
  for (const MeasurementRow& row : p.rows) {
    json terms = json::array();
    for (const Term& t : row.terms) {
      const Eigen::Vector4cd a = t.ket.amplitudes();
      json ket = json::array();
      for (int i = 0; i < kDim; ++i) {
        ket.push_back({round_significant(a[i].real(), 10), round_significant(a[i].imag(), 10)});
      }
      terms.push_back({{"coeff", t.coeff}, {"ket", ket}});
    }
    rows.push_back(
        {{"label", row.label}, {"terms", terms}, {"assembly", assembly_name(row.assembly)}});
  }
  json A = json::array();
  for (Eigen::Index r = 0; r < p.A.rows(); ++r) {
    json arow = json::array();
    for (Eigen::Index c = 0; c < p.A.cols(); ++c) arow.push_back(p.A(r, c));
    A.push_back(arow);
  }
  return json{{"name", protocol_name_string(p.name)}, {"rows", rows}, {"A", A}}.dump(1);
}

}  // namespace tomo
