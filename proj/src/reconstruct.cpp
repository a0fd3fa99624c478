#include "tomo/reconstruct.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tomo {

namespace {

// Integer division by two, rounding toward -infinity.
long long floor_half(long long v) {
  return (v >= 0 || v % 2 == 0) ? v / 2 : v / 2 - 1;
}

void check_arity(const Protocol& protocol, size_t row_count,
                 const std::vector<std::vector<long long>>& raw) {
  if (raw.size() != protocol.rows.size()) {
    throw std::invalid_argument("count table has " + std::to_string(raw.size()) + " rows, protocol " +
                                protocol_name_string(protocol.name) + " expects " +
                                std::to_string(row_count));
  }
  for (size_t r = 0; r < raw.size(); ++r) {
    const int arity = assembly_arity(protocol.rows[r].assembly);
    if (static_cast<int>(raw[r].size()) != arity) {
      throw std::invalid_argument("row " + std::to_string(r + 1) + " (" + protocol.rows[r].label +
                                  "): expected " + std::to_string(arity) + " counts, got " +
                                  std::to_string(raw[r].size()));
    }
    for (long long c : raw[r]) {
      if (c < 0) {
        throw std::invalid_argument("row " + std::to_string(r + 1) + " (" + protocol.rows[r].label +
                                    "): negative count " + std::to_string(c));
      }
    }
  }
}

}  // namespace

ObservationVector assemble_observations(const Protocol& protocol, const CountTable& counts) {
  check_arity(protocol, protocol.rows.size(), counts.raw);
  const Eigen::Index n = static_cast<Eigen::Index>(protocol.rows.size());
  ObservationVector obs{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index r = 0; r < n; ++r) {
    const MeasurementRow& row = protocol.rows[static_cast<size_t>(r)];
    const std::vector<long long>& c = counts.raw[static_cast<size_t>(r)];
    switch (row.assembly) {
      case Assembly::direct:
        obs.b[r] = static_cast<double>(c[0]);
        obs.variance[r] = static_cast<double>(c[0]);
        break;
      case Assembly::half_difference:
        obs.b[r] = static_cast<double>(floor_half(c[0] - c[1]));
        obs.variance[r] = static_cast<double>(floor_half(c[0] + c[1]));
        break;
      case Assembly::signed_sum: {
        long long b = 0;
        long long var = 0;
        for (size_t j = 0; j < c.size(); ++j) {
          b += (row.terms[j].coeff < 0 ? -1 : 1) * c[j];
          var += c[j];
        }
        obs.b[r] = static_cast<double>(b);
        obs.variance[r] = static_cast<double>(var);
        break;
      }
    }
  }
  return obs;
}

ObservationVector assemble_expected(const Protocol& protocol,
                                    const std::vector<std::vector<double>>& rates) {
  if (rates.size() != protocol.rows.size()) {
    throw std::invalid_argument("assemble_expected: rate rows do not match protocol");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(protocol.rows.size());
  ObservationVector obs{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index r = 0; r < n; ++r) {
    const MeasurementRow& row = protocol.rows[static_cast<size_t>(r)];
    const std::vector<double>& c = rates[static_cast<size_t>(r)];
    if (static_cast<int>(c.size()) != assembly_arity(row.assembly)) {
      throw std::invalid_argument("assemble_expected: arity mismatch at row " +
                                  std::to_string(r + 1));
    }
    switch (row.assembly) {
      case Assembly::direct:
        obs.b[r] = c[0];
        obs.variance[r] = c[0];
        break;
      case Assembly::half_difference:
        obs.b[r] = 0.5 * (c[0] - c[1]);
        obs.variance[r] = 0.5 * (c[0] + c[1]);
        break;
      case Assembly::signed_sum: {
        double b = 0.0;
        double var = 0.0;
        for (size_t j = 0; j < c.size(); ++j) {
          b += (row.terms[j].coeff < 0 ? -1.0 : 1.0) * c[j];
          var += c[j];
        }
        obs.b[r] = b;
        obs.variance[r] = var;
        break;
      }
    }
  }
  return obs;
}

Reconstruction reconstruct_state(const Eigen::MatrixXd& A, const ObservationVector& obs) {
  if (obs.b.size() != A.rows()) {
    throw std::invalid_argument("reconstruct_state: observation length " +
                                std::to_string(obs.b.size()) + " does not match " +
                                std::to_string(A.rows()) + " matrix rows");
  }
  Eigen::VectorXd x;
  if (A.rows() == A.cols()) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible()) throw std::invalid_argument("reconstruct_state: singular system");
    x = lu.solve(obs.b);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()(svd.singularValues().size() - 1) <
        1e-10 * svd.singularValues()(0)) {
      throw std::invalid_argument("reconstruct_state: rank-deficient system");
    }
    x = svd.solve(obs.b);
  }

  Reconstruction rec;
  rec.x_raw = x;
  rec.residual_norm = (A * x - obs.b).norm();
  const DensityMatrix unnormalized = unvec_density(rec.x_raw);
  const double trace = unnormalized.trace().real();
  if (std::abs(trace) < 1e-9 * std::max(x.norm(), 1e-300)) {
    throw std::invalid_argument("reconstruct_state: degenerate data, solution trace is zero");
  }
  rec.rho = unnormalized / trace;
  return rec;
}

std::vector<ReconstructionOutcome> reconstruct_all(
    const Protocol& protocol, const std::vector<CountTable>& counts_per_state) {
  std::vector<ReconstructionOutcome> out;
  out.reserve(counts_per_state.size());
  for (const CountTable& counts : counts_per_state) {
    ReconstructionOutcome result;
    result.state_label = counts.state_label;
    try {
      const ObservationVector obs = assemble_observations(protocol, counts);
      result.value = reconstruct_state(protocol.A, obs);
      result.ok = true;
    } catch (const std::exception& e) {
      result.ok = false;
      result.error = e.what();
    }
    out.push_back(std::move(result));
  }
  return out;
}

namespace {

constexpr const char* kCsvHeader = "protocol,state,row_index,row_label,c1,c2,c3,c4";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

std::vector<CountTable> read_count_tables(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(origin + ": empty count file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("protocol,state,row_index,row_label,c1", 0) != 0) {
    throw std::runtime_error(origin + ": missing count CSV header, got: " + line);
  }
  std::vector<CountTable> tables;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() < 5) {
      throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": expected at least 5 fields");
    }
    const std::string& protocol = f[0];
    const std::string& state = f[1];
    if (tables.empty() || tables.back().state_label != state ||
        tables.back().protocol_name != protocol) {
      tables.push_back(CountTable{protocol, state, {}, 5.0});
    }
    CountTable& table = tables.back();
    const long long row_index = std::stoll(f[2]);
    if (row_index != static_cast<long long>(table.raw.size()) + 1) {
      throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": row_index " +
                               std::to_string(row_index) + " out of order (expected " +
                               std::to_string(table.raw.size() + 1) + ")");
    }
    std::vector<long long> counts;
    for (size_t i = 4; i < f.size() && i < 8; ++i) {
      if (f[i].empty()) break;
      counts.push_back(std::stoll(f[i]));
    }
    if (counts.empty()) {
      throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": no counts in row");
    }
    table.raw.push_back(std::move(counts));
  }
  return tables;
}

std::vector<CountTable> read_count_tables_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open count file: " + path);
  return read_count_tables(in, path);
}

void write_count_tables(std::ostream& out, const std::vector<CountTable>& tables) {
  out << kCsvHeader << "\n";
  for (const CountTable& table : tables) {
    // Row labels are advisory on read; emit them when the protocol is known.
    std::vector<std::string> labels(table.raw.size());
    try {
      const Protocol p = build_protocol(table.protocol_name);
      for (size_t r = 0; r < labels.size() && r < p.rows.size(); ++r) labels[r] = p.rows[r].label;
    } catch (const std::exception&) {
    }
    for (size_t r = 0; r < table.raw.size(); ++r) {
      out << table.protocol_name << "," << table.state_label << "," << (r + 1) << "," << labels[r];
      for (size_t i = 0; i < 4; ++i) {
        out << ",";
        if (i < table.raw[r].size()) out << table.raw[r][i];
      }
      out << "\n";
    }
  }
}

void write_count_tables_csv(const std::string& path, const std::vector<CountTable>& tables) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write count file: " + path);
  write_count_tables(out, tables);
}

}  // namespace tomo
