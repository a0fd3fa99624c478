#pragma once

// Density-matrix representation for two qubits, the real 16-parameter
// vectorization used throughout the toolkit, and the distance measures
// (trace, Hilbert-Schmidt, Bures) used to compare states.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>

namespace tomo {

inline constexpr int kDim = 4;       // two-qubit Hilbert-space dimension
inline constexpr int kVecSize = 16;  // real parameters of a Hermitian 4x4

using Complex = std::complex<double>;

// 4x4 complex Hermitian matrix in basis order {HH, HV, VH, VV}.
// Positivity is NOT required: linear inversion of noisy data may yield
// negative eigenvalues, and such matrices are kept as-is.
using DensityMatrix = Eigen::Matrix4cd;

// Real vectorization x = vec(rho), component order
//   [r11, Re r12, Im r12, Re r13, Im r13, Re r14, Im r14,
//    r22, Re r23, Im r23, Re r24, Im r24, r33, Re r34, Im r34, r44],
// i.e. a row-major upper-triangle traversal.
using StateVector = Eigen::Matrix<double, kVecSize, 1>;

// Zero-based positions of the four diagonal entries inside the vec layout.
inline constexpr std::array<int, 4> kDiagonalIndices{0, 7, 12, 15};

// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending,
// eigenvectors as matching orthonormal columns.
struct SpectralDecomposition {
  Eigen::Vector4d eigenvalues;
  Eigen::Matrix4cd eigenvectors;
};

// Largest absolute entry of m - m^dagger; zero for exactly Hermitian input.
double hermiticity_error(const DensityMatrix& m);

// rho -> x. Throws std::invalid_argument when the input fails Hermiticity
// beyond 1e-9, reporting the largest asymmetry.
StateVector vec_density(const DensityMatrix& rho);

// x -> rho. Hermitian by construction; exact inverse of vec_density.
DensityMatrix unvec_density(const StateVector& x);

// Hermitian eigendecomposition with descending eigenvalue order.
SpectralDecomposition spectral_decomposition(const DensityMatrix& m);

// Trace distance (1/2)*sum |eigenvalues(rho - sigma)|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Hilbert-Schmidt (Frobenius) distance sqrt(Tr[(rho - sigma)^2]).
double hs_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Bures disturbance 1 - (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2. Negative
// eigenvalues are clamped to zero and the trace renormalized before the
// matrix square roots (the square root of an indefinite matrix is undefined).
double bures_disturbance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Nearest physical matrix used by bures_disturbance: eigenvalues below the
// relative zero threshold (1e-12 * ||m||) are clamped to 0, then the trace is
// renormalized to 1.
DensityMatrix clamp_to_physical(const DensityMatrix& rho);

// JSON form {"dim": 4, "entries": [[[re, im], ...], ...]} row-major.
// Writers emit 10 significant digits; readers accept any finite precision.
std::string density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const std::string& text);
DensityMatrix read_density_file(const std::string& path);
void write_density_file(const std::string& path, const DensityMatrix& rho);

// Round a double to the given number of significant decimal digits (used by
// all JSON writers so that re-running a command is byte-identical).
double round_significant(double value, int digits);

}  // namespace tomo
