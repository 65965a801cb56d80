#include "symppt/symstate.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace symppt {

namespace {

void append_labels(int remaining, int levels, DickeLabel& prefix, std::vector<DickeLabel>& out) {
  if (levels == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = remaining; first >= 0; --first) {
    prefix.push_back(first);
    append_labels(remaining - first, levels - 1, prefix, out);
    prefix.pop_back();
  }
}

int to_int(const BigInt& v, const char* what) {
  if (!v.fits_sint_p()) throw std::overflow_error(std::string(what) + ": dimension overflow");
  return static_cast<int>(v.get_si());
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol * std::max(1.0, max_abs(m));
}

}  // namespace

std::vector<DickeLabel> dicke_labels(int n, int d) {
  if (n < 0 || d < 1) throw std::domain_error("dicke_labels: need n >= 0 and d >= 1");
  std::vector<DickeLabel> out;
  DickeLabel prefix;
  prefix.reserve(d);
  append_labels(n, d, prefix, out);
  return out;
}

int dicke_label_index(const DickeLabel& label) {
  if (label.empty()) throw std::invalid_argument("dicke_label_index: empty label");
  int remaining = std::accumulate(label.begin(), label.end(), 0);
  int levels = static_cast<int>(label.size());
  long index = 0;
  for (const int x : label) {
    if (x < 0) throw std::invalid_argument("dicke_label_index: negative occupation");
    if (levels == 1) break;
    // labels whose current entry exceeds x come first
    for (int y = x + 1; y <= remaining; ++y) {
      index += symmetric_dimension(remaining - y, levels - 1).get_si();
    }
    remaining -= x;
    --levels;
  }
  return static_cast<int>(index);
}

Bipartition Bipartition::make(int n, int k, int d) {
  if (d < 2) throw std::invalid_argument("Bipartition: local dimension must be >= 2");
  if (n < 2) throw std::invalid_argument("Bipartition: need N >= 2");
  if (k < 1 || k > n / 2) {
    throw std::invalid_argument("Bipartition: need 1 <= k <= floor(N/2), got N=" + std::to_string(n) +
                                " k=" + std::to_string(k));
  }
  return Bipartition{n, k, d};
}

int Bipartition::dim_a() const { return to_int(symmetric_dimension(k, d), "Bipartition"); }
int Bipartition::dim_b() const { return to_int(symmetric_dimension(n - k, d), "Bipartition"); }
int Bipartition::dim_symmetric() const { return to_int(symmetric_dimension(n, d), "Bipartition"); }

std::vector<DickeTerm> dicke_decomposition(const Bipartition& bip, int label) {
  if (label < 0 || label >= bip.dim_symmetric()) {
    throw std::invalid_argument("dicke_decomposition: invalid Dicke label " + std::to_string(label));
  }
  std::vector<DickeTerm> terms;
  if (bip.d == 2) {
    const int alpha = label;
    for (int beta = std::max(0, alpha - bip.k); beta <= std::min(alpha, bip.n - bip.k); ++beta) {
      terms.push_back({alpha - beta, beta, chi(bip.n, bip.k, alpha, beta)});
    }
    return terms;
  }

  const DickeLabel m = dicke_labels(bip.n, bip.d).at(label);
  const BigInt total = multinomial(m);
  DickeLabel rest(m.size());
  for (const DickeLabel& a : dicke_labels(bip.k, bip.d)) {
    bool fits = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      rest[i] = m[i] - a[i];
      fits = fits && rest[i] >= 0;
    }
    if (!fits) continue;
    const ExactRational weight(multinomial(a) * multinomial(rest), total);
    terms.push_back({dicke_label_index(a), dicke_label_index(rest), SqrtRational(weight)});
  }
  return terms;
}

Eigen::MatrixXd embedding_isometry(const Bipartition& bip) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(bip.dim(), bip.dim_symmetric());
  const int db = bip.dim_b();
  for (int label = 0; label < bip.dim_symmetric(); ++label) {
    for (const DickeTerm& t : dicke_decomposition(bip, label)) {
      v(t.a * db + t.b, label) = t.coefficient.to_double();
    }
  }
  return v;
}

PureSymmetricState::PureSymmetricState(int n, int d, Eigen::VectorXcd amplitudes)
    : n_(n), d_(d), amplitudes_(std::move(amplitudes)) {
  if (n < 1 || d < 2) throw std::invalid_argument("PureSymmetricState: need N >= 1 and d >= 2");
  const BigInt dim = symmetric_dimension(n, d);
  if (dim != static_cast<long>(amplitudes_.size())) {
    throw std::invalid_argument("PureSymmetricState: expected " + dim.get_str() + " amplitudes, got " +
                                std::to_string(amplitudes_.size()));
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("PureSymmetricState: amplitudes are not normalized");
  }
}

SymmetricDensityMatrix::SymmetricDensityMatrix(int n, int d, Eigen::MatrixXcd matrix)
    : n_(n), d_(d), matrix_(std::move(matrix)) {
  const BigInt dim = symmetric_dimension(n, d);
  if (dim != static_cast<long>(matrix_.rows()) || matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("SymmetricDensityMatrix: expected a " + dim.get_str() + "x" + dim.get_str() +
                                " matrix");
  }
  if (!is_hermitian(matrix_, kHermitianTolerance)) {
    throw std::invalid_argument("SymmetricDensityMatrix: matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > kNormTolerance) {
    throw std::invalid_argument("SymmetricDensityMatrix: trace is not 1");
  }
  const Eigen::MatrixXcd h = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() < -kPsdTolerance) {
    throw std::invalid_argument("SymmetricDensityMatrix: matrix is not positive semidefinite");
  }
}

BipartiteOperator::BipartiteOperator(Bipartition bip, Eigen::MatrixXcd matrix)
    : bip_(bip), matrix_(std::move(matrix)) {
  if (matrix_.rows() != bip_.dim() || matrix_.cols() != bip_.dim()) {
    throw std::invalid_argument("BipartiteOperator: matrix does not match the bipartition dimension " +
                                std::to_string(bip_.dim()));
  }
  if (!is_hermitian(matrix_, kHermitianTolerance)) {
    throw std::invalid_argument("BipartiteOperator: matrix is not Hermitian");
  }
}

PureSymmetricState ghz_state(int n, GhzPhase phase) {
  if (n < 2) throw std::invalid_argument("ghz_state: need N >= 2");
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(n + 1);
  const double h = 1.0 / std::sqrt(2.0);
  amp(0) = h;
  amp(n) = phase == GhzPhase::Minus ? -h : h;
  return PureSymmetricState(n, 2, std::move(amp));
}

PureSymmetricState coherent_state(int n, double theta, double phi) {
  if (n < 1) throw std::invalid_argument("coherent_state: need N >= 1");
  const double c = std::cos(theta / 2.0);
  const Complex s = std::sin(theta / 2.0) * std::polar(1.0, phi);
  Eigen::VectorXcd amp(n + 1);
  for (int alpha = 0; alpha <= n; ++alpha) {
    amp(alpha) = std::sqrt(binomial(n, alpha).get_d()) * std::pow(c, n - alpha) * std::pow(s, alpha);
  }
  return PureSymmetricState(n, 2, std::move(amp));
}

SymmetricDensityMatrix rho_p(double p, const PureSymmetricState& psi0) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("rho_p: p must lie in [0, 1]");
  const auto dim = psi0.amplitudes().size();
  Eigen::MatrixXcd m = (p / static_cast<double>(dim)) * Eigen::MatrixXcd::Identity(dim, dim);
  m += (1.0 - p) * psi0.projector();
  return SymmetricDensityMatrix(psi0.n(), psi0.d(), std::move(m));
}

SymmetricDensityMatrix maximally_mixed(int n, int d) {
  const int dim = to_int(symmetric_dimension(n, d), "maximally_mixed");
  return SymmetricDensityMatrix(n, d, Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

BipartiteOperator embed_bipartite(const SymmetricDensityMatrix& rho, const Bipartition& bip) {
  if (rho.n() != bip.n || rho.d() != bip.d) {
    throw std::invalid_argument("embed_bipartite: state and bipartition disagree on N or d");
  }
  const Eigen::MatrixXcd v = embedding_isometry(bip).cast<Complex>();
  Eigen::MatrixXcd out = v * rho.matrix() * v.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return BipartiteOperator(bip, std::move(out));
}

BipartiteOperator embed_bipartite(const PureSymmetricState& psi, const Bipartition& bip) {
  if (psi.n() != bip.n || psi.d() != bip.d) {
    throw std::invalid_argument("embed_bipartite: state and bipartition disagree on N or d");
  }
  const Eigen::VectorXcd v = embedding_isometry(bip).cast<Complex>() * psi.amplitudes();
  return BipartiteOperator(bip, v * v.adjoint());
}

nlohmann::json to_json(const PureSymmetricState& psi) {
  nlohmann::json amps = nlohmann::json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    amps.push_back({psi.amplitudes()(i).real(), psi.amplitudes()(i).imag()});
  }
  return {{"n", psi.n()}, {"d", psi.d()}, {"amplitudes", amps}};
}

PureSymmetricState state_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const int d = j.value("d", 2);
  const auto& amps = j.at("amplitudes");
  Eigen::VectorXcd v(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto& pair = amps[i];
    if (!pair.is_array() || pair.size() != 2) {
      throw std::invalid_argument("state JSON: amplitude entries must be [re, im]");
    }
    v(static_cast<Eigen::Index>(i)) = Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return PureSymmetricState(n, d, std::move(v));
}

}  // namespace symppt
