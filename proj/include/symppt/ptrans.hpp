#pragma once

// Partial transposition on the product of symmetric sectors, dense
// Hermitian spectra, and the closed-form eigendecomposition of the
// partially transposed symmetric identity rho0^{T_A}.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "symppt/combx.hpp"
#include "symppt/symstate.hpp"

namespace symppt {

inline constexpr double kEigenResidualTolerance = 1e-10;
inline constexpr double kInputHermitianTolerance = 1e-10;
inline constexpr double kDegeneracyGap = 1e-8;

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Value>
struct SpectrumEntry {
  Value value;
  int multiplicity = 0;
};

// Multiset of eigenvalues, ascending by value.
template <class Value>
struct Spectrum {
  std::vector<SpectrumEntry<Value>> entries;

  int total_multiplicity() const {
    int s = 0;
    for (const auto& e : entries) s += e.multiplicity;
    return s;
  }
};

using ExactSpectrum = Spectrum<ExactRational>;
using NumericSpectrum = Spectrum<double>;

// Groups ascending eigenvalues whose consecutive gap is below `gap`; each
// group is reported by its mean.
NumericSpectrum group_eigenvalues(std::vector<double> values, double gap = kDegeneracyGap);

// Expands a spectrum into its sorted list of eigenvalues.
std::vector<double> expand(const NumericSpectrum& s);
std::vector<double> expand(const ExactSpectrum& s);

// {"n", "k", "entries": [{"value": "num/den" | float, "multiplicity"}]}
nlohmann::json to_json(const ExactSpectrum& s, int n, int k);
nlohmann::json to_json(const NumericSpectrum& s, int n, int k);

// Entry ((a,b),(a',b')) moves to ((a',b),(a,b')). Works on any square
// matrix of size dim_a * dim_b.
Eigen::MatrixXcd partial_transpose_A(const Eigen::MatrixXcd& m, int dim_a, int dim_b);
BipartiteOperator partial_transpose_A(const BipartiteOperator& op);

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXcd vector;
  double residual = 0.0;
};

// Smallest eigenpair of a Hermitian matrix. Throws std::invalid_argument on
// non-Hermitian input and NumericalError when the solver fails or the
// residual exceeds kEigenResidualTolerance.
EigenPair min_eigenpair(const Eigen::MatrixXcd& m);
double min_eigenvalue(const BipartiteOperator& op);
std::vector<double> eigenvalues(const Eigen::MatrixXcd& m);

// rho0^{T_A} assembled term by term from the chi coefficients.
BipartiteOperator rho0_pt(const Bipartition& bip);

// lambda_n = C(N+1, n) / ((N+1) C(N, k)) with multiplicity N+1-2n, n = 0..k.
ExactSpectrum rho0_pt_spectrum_analytic(const Bipartition& bip);

// K operators on each factor and M+ = K-^A - K+^B, M- = K+^A - K-^B,
// M0 = K0^A - K0^B on the bipartite space.
struct LadderOperators {
  Bipartition bip;
  Eigen::MatrixXd m_plus;
  Eigen::MatrixXd m_minus;
  Eigen::MatrixXd m_zero;
};

// Single-sector K+, K-, K0 on H^{v n} in the Dicke basis.
Eigen::MatrixXd k_plus(int n);
Eigen::MatrixXd k_minus(int n);
Eigen::MatrixXd k_zero(int n);

LadderOperators ladder_operators(const Bipartition& bip);

struct LadderEigenvector {
  int n = 0;  // rho0^{T_A} quantum number, eigenvalue lambda_n
  int m = 0;  // M0 quantum number, eigenvalue m - N/2
  Eigen::VectorXd vector;
};

// Closed-form |n,n> states raised with M+ and renormalized at each step.
std::vector<LadderEigenvector> rho0_pt_eigenbasis(const Bipartition& bip);

// Closed-form lowest-weight state |n,n> (unit norm).
Eigen::VectorXd lowest_weight_state(const Bipartition& bip, int n);
// Closed-form highest-weight state |n,N-n> (unit norm).
Eigen::VectorXd highest_weight_state(const Bipartition& bip, int n);

// Squared Schmidt coefficients Gamma_r, r = 1..dim_a, descending.
std::vector<double> schmidt(const PureSymmetricState& psi, const Bipartition& bip);

// p / ((N+1) C(N,k)) - (1 - p) sqrt(Gamma_1 Gamma_2).
double sigma_bound(const PureSymmetricState& psi, double p, const Bipartition& bip);

struct GhzEigencheck {
  double eigenvalue = 0.0;
  double residual = 0.0;
  double expected = 0.0;  // p/((N+1)C(N,k)) - (1-p)/2
};

// Applies rho(p)^{T_A} (GHZ with the minus sign) to
// (|0>_A|N-k>_B + |k>_A|0>_B)/sqrt(2).
GhzEigencheck ghz_npt_eigencheck(int n, int k, double p);

struct QuditMinEig {
  double numeric = 0.0;
  ExactRational conjectured;  // 1 / (D C(N,k))
};

inline constexpr int kQuditDimensionCap = 5000;

// rho0^{T_A} on the qudit product of symmetric sectors, diagonalized block
// by block in the conserved label difference b - a. Throws
// std::length_error when dim_a * dim_b exceeds kQuditDimensionCap.
QuditMinEig qudit_rho0_pt_min_eig(int n, int d, int k);

// Full dense matrix of rho0^{T_A} for any local dimension.
Eigen::MatrixXd rho0_pt_matrix(const Bipartition& bip);

}  // namespace symppt
