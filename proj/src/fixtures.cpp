#include "tomo/fixtures.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tomo/noise.hpp"

namespace tomo {

namespace {

std::string join_path(const std::string& dir, const std::string& file) {
  if (dir.empty()) return file;
  if (dir.back() == '/') return dir + file;
  return dir + "/" + file;
}

[[noreturn]] void fail(const std::string& file, int line, const std::string& what) {
  std::ostringstream msg;
  msg << file;
  if (line > 0) msg << ":" << line;
  msg << ": " << what;
  throw std::runtime_error(msg.str());
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

// Numeric CSV without header: exactly `cols` doubles per line.
Eigen::MatrixXd read_matrix_csv(const std::string& path, int rows, int cols) {
  std::ifstream in(path);
  if (!in) fail(path, 0, "cannot open");
  Eigen::MatrixXd m(rows, cols);
  std::string line;
  int r = 0;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (r >= rows) fail(path, line_no, "more rows than the expected " + std::to_string(rows));
    const std::vector<std::string> cells = split_csv(line);
    if (static_cast<int>(cells.size()) != cols)
      fail(path, line_no, "expected " + std::to_string(cols) + " columns, found " +
                              std::to_string(cells.size()));
    for (int c = 0; c < cols; ++c) {
      try {
        size_t used = 0;
        m(r, c) = std::stod(cells[c], &used);
        if (used != cells[c].size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        fail(path, line_no, "bad number '" + cells[c] + "' in column " + std::to_string(c + 1));
      }
    }
    ++r;
  }
  if (r != rows) fail(path, line_no, "expected " + std::to_string(rows) + " rows, found " +
                                         std::to_string(r));
  return m;
}

// Numeric CSV with one header line naming the expected columns.
Eigen::MatrixXd read_table_csv(const std::string& path, int rows,
                               const std::vector<std::string>& header) {
  std::ifstream in(path);
  if (!in) fail(path, 0, "cannot open");
  std::string line;
  if (!std::getline(in, line)) fail(path, 1, "missing header");
  const std::vector<std::string> names = split_csv(line);
  if (names.size() != header.size()) fail(path, 1, "unexpected header column count");
  for (size_t i = 0; i < header.size(); ++i)
    if (names[i] != header[i])
      fail(path, 1, "expected header column '" + header[i] + "', found '" + names[i] + "'");
  const int cols = static_cast<int>(header.size());
  Eigen::MatrixXd m(rows, cols);
  int r = 0;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (r >= rows) fail(path, line_no, "more rows than the expected " + std::to_string(rows));
    const std::vector<std::string> cells = split_csv(line);
    if (static_cast<int>(cells.size()) != cols)
      fail(path, line_no, "expected " + std::to_string(cols) + " columns, found " +
                              std::to_string(cells.size()));
    for (int c = 0; c < cols; ++c) {
      try {
        m(r, c) = std::stod(cells[c]);
      } catch (const std::exception&) {
        fail(path, line_no, "bad number '" + cells[c] + "'");
      }
    }
    ++r;
  }
  if (r != rows) fail(path, line_no, "expected " + std::to_string(rows) + " rows, found " +
                                         std::to_string(r));
  return m;
}

}  // namespace

double fixture_prefactor(char letter) {
  switch (letter) {
    case 'O':
    case 'P':
      return 1.0;
    case 'S':
    case 'J':
    case 'M':
      return 0.25;
    default:
      throw std::invalid_argument(std::string("fixture_prefactor: unknown protocol letter '") +
                                  letter + "'");
  }
}

int fixture_rows(char letter) {
  switch (letter) {
    case 'O':
    case 'P':
    case 'J':
      return 16;
    case 'M':
      return 20;
    case 'S':
      return 36;
    default:
      throw std::invalid_argument(std::string("fixture_rows: unknown protocol letter '") + letter +
                                  "'");
  }
}

std::string default_fixture_dir() {
  const char* env = std::getenv("TOMOLENS_FIXTURES");
  if (env != nullptr && env[0] != '\0') return env;
  return "fixtures";
}

FixtureSet load_fixtures(const std::string& dir) {
  FixtureSet fix;
  fix.dir = dir;
  for (char letter : kProtocolLetters) {
    const std::string a_path = join_path(dir, std::string("A_") + letter + ".csv");
    const std::string b_path = join_path(dir, std::string("b_") + letter + ".csv");
    const int rows = fixture_rows(letter);
    fix.A[letter] = fixture_prefactor(letter) * read_matrix_csv(a_path, rows, kVecSize);
    fix.b[letter] = read_matrix_csv(b_path, rows, kStateCount);
  }
  fix.variance['O'] = read_matrix_csv(join_path(dir, "var_O.csv"), 16, kStateCount);
  fix.variance['P'] = read_matrix_csv(join_path(dir, "var_P.csv"), 16, kStateCount);
  fix.R_table = read_table_csv(join_path(dir, "R.csv"), kStateCount,
                               {"optimal", "mub", "standard36", "pauli", "jkmw"});
  fix.T_table = read_table_csv(join_path(dir, "T.csv"), kStateCount, {"T_OM", "T_OS", "T_MS"});

  for (char letter : kProtocolLetters) {
    std::vector<DensityMatrix>& list = fix.reconstructed[letter];
    list.reserve(kStateCount);
    for (int n = 1; n <= kStateCount; ++n) {
      const std::string path =
          join_path(dir, std::string("rho_") + letter + "_" + std::to_string(n) + ".json");
      try {
        list.push_back(read_density_file(path));
      } catch (const std::exception& e) {
        fail(path, 0, e.what());
      }
    }
  }

  const std::string states_path = join_path(dir, "states.json");
  std::ifstream in(states_path);
  if (!in) fail(states_path, 0, "cannot open");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(states_path, 0, e.what());
  }
  if (!j.contains("states") || !j["states"].is_array() ||
      j["states"].size() != static_cast<size_t>(kStateCount))
    fail(states_path, 0, "expected a 'states' array of length 17");
  for (const auto& entry : j["states"]) {
    if (!entry.contains("label") || !entry.contains("amplitudes") ||
        entry["amplitudes"].size() != 4)
      fail(states_path, 0, "each state needs a label and 4 amplitudes");
    Eigen::Vector4cd ket;
    for (int i = 0; i < 4; ++i) {
      const auto& pair = entry["amplitudes"][i];
      if (!pair.is_array() || pair.size() != 2)
        fail(states_path, 0, "amplitudes must be [re, im] pairs");
      ket(i) = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
    fix.states.push_back(ket);
    fix.state_labels.push_back(entry["label"].get<std::string>());
  }
  return fix;
}

ObservationVector fixture_observations(const FixtureSet& fix, char letter, int state_index) {
  if (state_index < 1 || state_index > kStateCount)
    throw std::out_of_range("fixture_observations: state index must be 1..17");
  const auto b_it = fix.b.find(letter);
  if (b_it == fix.b.end())
    throw std::invalid_argument(std::string("fixture_observations: no counts for protocol '") +
                                letter + "'");
  ObservationVector obs;
  obs.b = b_it->second.col(state_index - 1);
  const auto var_it = fix.variance.find(letter);
  if (var_it != fix.variance.end()) {
    obs.variance = var_it->second.col(state_index - 1);
  } else {
    obs.variance = obs.b.cwiseAbs();  // raw Poisson counts estimate their own variance
  }
  return obs;
}

const DensityMatrix& fixture_density(const FixtureSet& fix, char letter, int state_index) {
  if (state_index < 1 || state_index > kStateCount)
    throw std::out_of_range("fixture_density: state index must be 1..17");
  const auto it = fix.reconstructed.find(letter);
  if (it == fix.reconstructed.end())
    throw std::invalid_argument(std::string("fixture_density: no matrices for protocol '") +
                                letter + "'");
  return it->second[static_cast<size_t>(state_index - 1)];
}

ValidationReport validate_fixtures(const FixtureSet& fix) {
  ValidationReport report;
  auto flag = [&report](const std::string& where, const std::string& what) {
    report.issues.push_back({where, what});
  };

  // Raw coincidence counts are nonnegative for the direct-count protocols.
  for (char letter : {'S', 'J', 'M'}) {
    ++report.checks;
    const Eigen::MatrixXd& b = fix.b.at(letter);
    if (b.minCoeff() < 0.0)
      flag(std::string("b_") + letter, "negative raw count");
  }

  // The first four Optimal rows and the last Pauli row are plain counts, so
  // their variance columns must equal the counts themselves.
  ++report.checks;
  if ((fix.variance.at('O').topRows(4) - fix.b.at('O').topRows(4).cwiseAbs()).cwiseAbs().maxCoeff() >
      0.0)
    flag("var_O", "rows 1-4 must equal the corresponding counts");
  ++report.checks;
  if ((fix.variance.at('P').row(15) - fix.b.at('P').row(15)).cwiseAbs().maxCoeff() > 0.0)
    flag("var_P", "row 16 must equal the corresponding counts");

  // Printed matrices: Hermitian as printed, unit trace to print precision,
  // and close to their preparation target.
  for (char letter : kProtocolLetters) {
    for (int n = 1; n <= kStateCount; ++n) {
      const std::string where = std::string("rho_") + letter + "_" + std::to_string(n);
      const DensityMatrix& rho = fixture_density(fix, letter, n);
      ++report.checks;
      if (hermiticity_error(rho) > 1e-12) flag(where, "not Hermitian as printed");
      ++report.checks;
      const Complex tr = rho.trace();
      if (std::abs(tr.real() - 1.0) > 5e-4 || std::abs(tr.imag()) > 5e-4)
        flag(where, "trace deviates from 1 beyond print precision");
      ++report.checks;
      const Eigen::Vector4cd ket = fix.states[static_cast<size_t>(n - 1)];
      const DensityMatrix target = ket * ket.adjoint();
      const DensityMatrix normalized = rho / rho.trace().real();
      if (trace_distance(normalized, target) >= 0.5)
        flag(where, "further than 0.5 from its preparation target");
    }
  }

  // Preparation targets are unit kets.
  for (int n = 1; n <= kStateCount; ++n) {
    ++report.checks;
    if (std::abs(fix.states[static_cast<size_t>(n - 1)].norm() - 1.0) > 1e-9)
      flag(fix.state_labels[static_cast<size_t>(n - 1)], "target ket is not unit norm");
  }
  return report;
}

// --------------------------------------------------------------------------
// Compact SHA-256 (FIPS 180-4) for manifest verification; avoids an external
// crypto dependency for a single fixed hash.
namespace {

struct Sha256 {
  std::uint32_t state[8] = {0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                            0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};
  std::uint64_t total = 0;
  unsigned char buffer[64];
  size_t buffered = 0;

  static std::uint32_t rotr(std::uint32_t v, int n) { return (v >> n) | (v << (32 - n)); }

  void process(const unsigned char* p) {
    static constexpr std::uint32_t k[64] = {
        0x428a2f98u, 0x71374491u, 0xb5c0fbcfu, 0xe9b5dba5u, 0x3956c25bu, 0x59f111f1u, 0x923f82a4u,
        0xab1c5ed5u, 0xd807aa98u, 0x12835b01u, 0x243185beu, 0x550c7dc3u, 0x72be5d74u, 0x80deb1feu,
        0x9bdc06a7u, 0xc19bf174u, 0xe49b69c1u, 0xefbe4786u, 0x0fc19dc6u, 0x240ca1ccu, 0x2de92c6fu,
        0x4a7484aau, 0x5cb0a9dcu, 0x76f988dau, 0x983e5152u, 0xa831c66du, 0xb00327c8u, 0xbf597fc7u,
        0xc6e00bf3u, 0xd5a79147u, 0x06ca6351u, 0x14292967u, 0x27b70a85u, 0x2e1b2138u, 0x4d2c6dfcu,
        0x53380d13u, 0x650a7354u, 0x766a0abbu, 0x81c2c92eu, 0x92722c85u, 0xa2bfe8a1u, 0xa81a664bu,
        0xc24b8b70u, 0xc76c51a3u, 0xd192e819u, 0xd6990624u, 0xf40e3585u, 0x106aa070u, 0x19a4c116u,
        0x1e376c08u, 0x2748774cu, 0x34b0bcb5u, 0x391c0cb3u, 0x4ed8aa4au, 0x5b9cca4fu, 0x682e6ff3u,
        0x748f82eeu, 0x78a5636fu, 0x84c87814u, 0x8cc70208u, 0x90befffau, 0xa4506cebu, 0xbef9a3f7u,
        0xc67178f2u};
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i)
      w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
             (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
      const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    std::uint32_t a = state[0], b = state[1], c = state[2], d = state[3];
    std::uint32_t e = state[4], f = state[5], g = state[6], h = state[7];
    for (int i = 0; i < 64; ++i) {
      const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      const std::uint32_t ch = (e & f) ^ (~e & g);
      const std::uint32_t t1 = h + s1 + ch + k[i] + w[i];
      const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      const std::uint32_t t2 = s0 + maj;
      h = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    state[0] += a;
    state[1] += b;
    state[2] += c;
    state[3] += d;
    state[4] += e;
    state[5] += f;
    state[6] += g;
    state[7] += h;
  }

  void update(const unsigned char* data, size_t len) {
    total += len;
    while (len > 0) {
      const size_t take = std::min(len, sizeof(buffer) - buffered);
      std::memcpy(buffer + buffered, data, take);
      buffered += take;
      data += take;
      len -= take;
      if (buffered == sizeof(buffer)) {
        process(buffer);
        buffered = 0;
      }
    }
  }

  std::string finish() {
    const std::uint64_t bits = total * 8;
    const unsigned char pad = 0x80;
    update(&pad, 1);
    const unsigned char zero = 0x00;
    while (buffered != 56) update(&zero, 1);
    unsigned char len_bytes[8];
    for (int i = 0; i < 8; ++i) len_bytes[i] = static_cast<unsigned char>(bits >> (56 - 8 * i));
    update(len_bytes, 8);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (std::uint32_t v : state)
      for (int shift = 28; shift >= 0; shift -= 4) out.push_back(hex[(v >> shift) & 0xf]);
    return out;
  }
};

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  Sha256 hash;
  hash.update(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size());
  return hash.finish();
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  Sha256 hash;
  char chunk[1 << 16];
  while (in) {
    in.read(chunk, sizeof(chunk));
    hash.update(reinterpret_cast<const unsigned char*>(chunk),
                static_cast<size_t>(in.gcount()));
  }
  return hash.finish();
}

ValidationReport verify_manifest(const std::string& dir) {
  ValidationReport report;
  const std::string manifest_path = join_path(dir, "MANIFEST.sha256");
  std::ifstream in(manifest_path);
  if (!in) {
    report.issues.push_back({manifest_path, "cannot open"});
    return report;
  }
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const size_t gap = line.find("  ");
    if (gap == std::string::npos || gap != 64) {
      report.issues.push_back(
          {manifest_path + ":" + std::to_string(line_no), "malformed entry"});
      continue;
    }
    const std::string expected = line.substr(0, gap);
    const std::string file = line.substr(gap + 2);
    ++report.checks;
    try {
      const std::string actual = sha256_file(join_path(dir, file));
      if (actual != expected)
        report.issues.push_back({file, "hash mismatch: expected " + expected + ", got " + actual});
    } catch (const std::exception& e) {
      report.issues.push_back({file, e.what()});
    }
  }
  return report;
}

bool GoldenSuiteResult::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const GoldenCheck& c) { return c.pass; });
}

GoldenSuiteResult run_golden_suite(const FixtureSet& fix) {
  GoldenSuiteResult result;
  auto gate = [&result](const std::string& name, double worst, double tolerance) {
    result.checks.push_back({name, worst, tolerance, worst <= tolerance});
  };

  // Closed-form condition numbers; the JKMW value is quoted to ~4 digits.
  const std::map<char, double> kappa_ref{{'O', 1.0},
                                         {'P', std::sqrt(2.0)},
                                         {'M', std::sqrt(5.0)},
                                         {'S', 3.0},
                                         {'J', std::sqrt(60.1)}};
  double worst_exact = 0.0;
  double worst_jkmw = 0.0;
  std::map<char, Protocol> protocols;
  for (char letter : kProtocolLetters) {
    Protocol p = build_protocol(protocol_from_letter(letter));
    const double kappa = condition_number(p.A);
    const double err = std::abs(kappa - kappa_ref.at(letter));
    if (letter == 'J')
      worst_jkmw = err;
    else
      worst_exact = std::max(worst_exact, err);
    protocols.emplace(letter, std::move(p));
  }
  gate("condition numbers (closed-form quartet)", worst_exact, 1e-9);
  gate("condition number (JKMW, 4-digit reference)", worst_jkmw, 5e-3);

  // Built coefficient matrices equal the printed tables bit-exactly: every
  // entry is a dyadic rational on both sides.
  double worst_A = 0.0;
  for (char letter : kProtocolLetters)
    worst_A = std::max(worst_A, (protocols.at(letter).A - fix.A.at(letter)).cwiseAbs().maxCoeff());
  gate("coefficient matrices (bit-exact)", worst_A, 0.0);

  // All 85 reconstructions against the printed 4-decimal matrices.
  double worst_rho = 0.0;
  double worst_R = 0.0;
  for (char letter : kProtocolLetters) {
    const Protocol& protocol = protocols.at(letter);
    const int column = static_cast<int>(
        std::find(kProtocolLetters.begin(), kProtocolLetters.end(), letter) -
        kProtocolLetters.begin());
    for (int n = 1; n <= kStateCount; ++n) {
      const ObservationVector obs = fixture_observations(fix, letter, n);
      const Reconstruction recon = reconstruct_state(protocol.A, obs);
      worst_rho = std::max(
          worst_rho, (recon.rho - fixture_density(fix, letter, n)).cwiseAbs().maxCoeff());
      const double R = error_radius(protocol.A, obs, recon, kDefaultRescale);
      worst_R = std::max(worst_R, std::abs(R - fix.R_table(n - 1, column)));
    }
  }
  gate("reconstructed matrices (print precision)", worst_rho, 5e-4);
  gate("uncertainty-radius table (rescale 1.3)", worst_R, 5e-3);

  // Pairwise distances of the printed matrices, renormalized to unit trace.
  double worst_T = 0.0;
  for (int n = 1; n <= kStateCount; ++n) {
    const DensityMatrix o = fixture_density(fix, 'O', n) / fixture_density(fix, 'O', n).trace();
    const DensityMatrix m = fixture_density(fix, 'M', n) / fixture_density(fix, 'M', n).trace();
    const DensityMatrix s = fixture_density(fix, 'S', n) / fixture_density(fix, 'S', n).trace();
    worst_T = std::max(worst_T, std::abs(trace_distance(o, m) - fix.T_table(n - 1, 0)));
    worst_T = std::max(worst_T, std::abs(trace_distance(o, s) - fix.T_table(n - 1, 1)));
    worst_T = std::max(worst_T, std::abs(trace_distance(m, s) - fix.T_table(n - 1, 2)));
  }
  gate("relative-distance table (print precision)", worst_T, 5e-4);

  return result;
}

}  // namespace tomo
