#pragma once

// Symmetric states in the Dicke basis and their embedding into the product
// of symmetric sectors H^{v k} (x) H^{v (N-k)}.
//
// Qubit Dicke states are labelled by the excitation count alpha = 0..N.
// Qudit Dicke states are labelled by occupation vectors (n_0, ..., n_{d-1})
// summing to N, in descending lexicographic order; for d = 2 the index of
// (N - alpha, alpha) is alpha, so both conventions coincide.
//
// Bipartite operators use row index a * dim_b + b for A-label a and
// B-label b.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "symppt/combx.hpp"

namespace symppt {

using Complex = std::complex<double>;
using DickeLabel = std::vector<int>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

// Occupation vectors of n particles over d levels, in canonical order.
std::vector<DickeLabel> dicke_labels(int n, int d);
// Position of a label within dicke_labels(sum(label), label.size()).
int dicke_label_index(const DickeLabel& label);

struct Bipartition {
  int n = 0;
  int k = 0;
  int d = 2;

  // Validates 1 <= k <= floor(N/2), d >= 2.
  static Bipartition make(int n, int k, int d = 2);

  int dim_a() const;
  int dim_b() const;
  int dim() const { return dim_a() * dim_b(); }
  // Dimension of the full symmetric space of N particles.
  int dim_symmetric() const;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

struct DickeTerm {
  int a = 0;  // label index on the k-particle side
  int b = 0;  // label index on the (N-k)-particle side
  SqrtRational coefficient;
};

// Expansion of the Dicke state with index `label` in products of the
// A- and B-side Dicke states. For qubits the terms are ordered by the
// B-side excitation count.
std::vector<DickeTerm> dicke_decomposition(const Bipartition& bip, int label);

// Isometry V (dim x dim_symmetric) mapping each Dicke state to its product
// expansion.
Eigen::MatrixXd embedding_isometry(const Bipartition& bip);

class PureSymmetricState {
 public:
  PureSymmetricState(int n, int d, Eigen::VectorXcd amplitudes);

  int n() const { return n_; }
  int d() const { return d_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Eigen::MatrixXcd projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  int n_;
  int d_;
  Eigen::VectorXcd amplitudes_;
};

class SymmetricDensityMatrix {
 public:
  SymmetricDensityMatrix(int n, int d, Eigen::MatrixXcd matrix);

  int n() const { return n_; }
  int d() const { return d_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  int n_;
  int d_;
  Eigen::MatrixXcd matrix_;
};

class BipartiteOperator {
 public:
  BipartiteOperator(Bipartition bip, Eigen::MatrixXcd matrix);

  const Bipartition& bipartition() const { return bip_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  int index(int a, int b) const { return a * bip_.dim_b() + b; }

 private:
  Bipartition bip_;
  Eigen::MatrixXcd matrix_;
};

// Relative sign between |D^(0)> and |D^(N)>. The default follows the
// (|D^(0)> - |D^(N)>)/sqrt(2) convention; the published witnesses are
// negative on the Plus variant.
enum class GhzPhase { Minus, Plus };

PureSymmetricState ghz_state(int n, GhzPhase phase = GhzPhase::Minus);

// N-fold tensor power of cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>.
PureSymmetricState coherent_state(int n, double theta, double phi);

// p * 1/(dim) + (1 - p) |psi0><psi0|.
SymmetricDensityMatrix rho_p(double p, const PureSymmetricState& psi0);
SymmetricDensityMatrix maximally_mixed(int n, int d = 2);

BipartiteOperator embed_bipartite(const SymmetricDensityMatrix& rho, const Bipartition& bip);
BipartiteOperator embed_bipartite(const PureSymmetricState& psi, const Bipartition& bip);

// {"n": int, "d": int, "amplitudes": [[re, im], ...]}
nlohmann::json to_json(const PureSymmetricState& psi);
PureSymmetricState state_from_json(const nlohmann::json& j);

}  // namespace symppt
