#include "tomo/qmetrics.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tomo {

using json = nlohmann::json;

double hermiticity_error(const DensityMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

StateVector vec_density(const DensityMatrix& rho) {
  const double asym = hermiticity_error(rho);
  if (asym > 1e-9) {
    throw std::invalid_argument("vec_density: input is not Hermitian, max asymmetry " +
                                std::to_string(asym));
  }
  StateVector x;
  int k = 0;
  for (int n = 0; n < kDim; ++n) {
    x[k++] = rho(n, n).real();
    for (int m = n + 1; m < kDim; ++m) {
      x[k++] = rho(n, m).real();
      x[k++] = rho(n, m).imag();
    }
  }
  return x;
}

DensityMatrix unvec_density(const StateVector& x) {
  if (!x.allFinite()) throw std::invalid_argument("unvec_density: non-finite component");
  DensityMatrix rho;
  int k = 0;
  for (int n = 0; n < kDim; ++n) {
    rho(n, n) = Complex(x[k++], 0.0);
    for (int m = n + 1; m < kDim; ++m) {
      const double re = x[k++];
      const double im = x[k++];
      rho(n, m) = Complex(re, im);
      rho(m, n) = Complex(re, -im);
    }
  }
  return rho;
}

SpectralDecomposition spectral_decomposition(const DensityMatrix& m) {
  Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("spectral_decomposition: eigensolver failed");
  }
  SpectralDecomposition out;
  // Eigen returns ascending order; flip to descending.
  for (int i = 0; i < kDim; ++i) {
    out.eigenvalues[i] = solver.eigenvalues()[kDim - 1 - i];
    out.eigenvectors.col(i) = solver.eigenvectors().col(kDim - 1 - i);
  }
  return out;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(rho - sigma, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double hs_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  // For Hermitian differences Tr[(d)^2] equals the squared Frobenius norm.
  return (rho - sigma).norm();
}

DensityMatrix clamp_to_physical(const DensityMatrix& rho) {
  const SpectralDecomposition sd = spectral_decomposition(rho);
  const double zero_tol = 1e-12 * rho.norm();
  Eigen::Vector4d lam = sd.eigenvalues;
  double tr = 0.0;
  for (int i = 0; i < kDim; ++i) {
    if (lam[i] < zero_tol) lam[i] = 0.0;
    tr += lam[i];
  }
  if (tr <= 0.0) throw std::invalid_argument("clamp_to_physical: no positive spectral weight");
  DensityMatrix out = DensityMatrix::Zero();
  for (int i = 0; i < kDim; ++i) {
    out += (lam[i] / tr) * sd.eigenvectors.col(i) * sd.eigenvectors.col(i).adjoint();
  }
  return out;
}

double bures_disturbance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const DensityMatrix r = clamp_to_physical(rho);
  const DensityMatrix s = clamp_to_physical(sigma);
  // sqrt(r) from the (now nonnegative) spectrum.
  const SpectralDecomposition sd = spectral_decomposition(r);
  DensityMatrix root = DensityMatrix::Zero();
  for (int i = 0; i < kDim; ++i) {
    root += std::sqrt(std::max(sd.eigenvalues[i], 0.0)) * sd.eigenvectors.col(i) *
            sd.eigenvectors.col(i).adjoint();
  }
  const DensityMatrix inner = root * s * root;
  Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(inner, Eigen::EigenvaluesOnly);
  double trace_root = 0.0;
  for (int i = 0; i < kDim; ++i) {
    trace_root += std::sqrt(std::max(solver.eigenvalues()[i], 0.0));
  }
  const double fidelity = trace_root * trace_root;
  return 1.0 - fidelity;
}

double round_significant(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

namespace {

json density_to_json_value(const DensityMatrix& rho) {
  json entries = json::array();
  for (int n = 0; n < kDim; ++n) {
    json row = json::array();
    for (int m = 0; m < kDim; ++m) {
      row.push_back({round_significant(rho(n, m).real(), 10),
                     round_significant(rho(n, m).imag(), 10)});
    }
    entries.push_back(row);
  }
  return json{{"dim", kDim}, {"entries", entries}};
}

}  // namespace

std::string density_to_json(const DensityMatrix& rho) {
  return density_to_json_value(rho).dump(1);
}

DensityMatrix density_from_json(const std::string& text) {
  const json doc = json::parse(text);
  if (!doc.contains("dim") || doc["dim"].get<int>() != kDim) {
    throw std::invalid_argument("density_from_json: expected dim " + std::to_string(kDim));
  }
  const json& entries = doc.at("entries");
  if (entries.size() != kDim) {
    throw std::invalid_argument("density_from_json: expected 4 rows");
  }
  DensityMatrix rho;
  for (int n = 0; n < kDim; ++n) {
    const json& row = entries.at(n);
    if (row.size() != kDim) throw std::invalid_argument("density_from_json: expected 4 columns");
    for (int m = 0; m < kDim; ++m) {
      rho(n, m) = Complex(row.at(m).at(0).get<double>(), row.at(m).at(1).get<double>());
    }
  }
  return rho;
}

DensityMatrix read_density_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open density file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return density_from_json(buf.str());
}

void write_density_file(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write density file: " + path);
  out << density_to_json(rho) << "\n";
}

}  // namespace tomo
