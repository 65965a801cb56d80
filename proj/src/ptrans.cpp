#include "symppt/ptrans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace symppt {

NumericSpectrum group_eigenvalues(std::vector<double> values, double gap) {
  std::sort(values.begin(), values.end());
  NumericSpectrum out;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i + 1;
    double sum = values[i];
    while (j < values.size() && values[j] - values[j - 1] < gap) sum += values[j++];
    out.entries.push_back({sum / static_cast<double>(j - i), static_cast<int>(j - i)});
    i = j;
  }
  return out;
}

std::vector<double> expand(const NumericSpectrum& s) {
  std::vector<double> out;
  for (const auto& e : s.entries) out.insert(out.end(), e.multiplicity, e.value);
  return out;
}

std::vector<double> expand(const ExactSpectrum& s) {
  std::vector<double> out;
  for (const auto& e : s.entries) out.insert(out.end(), e.multiplicity, e.value.to_double());
  return out;
}

nlohmann::json to_json(const ExactSpectrum& s, int n, int k) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : s.entries) entries.push_back({{"value", e.value.str()}, {"multiplicity", e.multiplicity}});
  return {{"n", n}, {"k", k}, {"entries", entries}};
}

nlohmann::json to_json(const NumericSpectrum& s, int n, int k) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : s.entries) entries.push_back({{"value", e.value}, {"multiplicity", e.multiplicity}});
  return {{"n", n}, {"k", k}, {"entries", entries}};
}

Eigen::MatrixXcd partial_transpose_A(const Eigen::MatrixXcd& m, int dim_a, int dim_b) {
  const Eigen::Index dim = static_cast<Eigen::Index>(dim_a) * dim_b;
  if (m.rows() != dim || m.cols() != dim) {
    throw std::invalid_argument("partial_transpose_A: matrix is not (dim_a*dim_b) square");
  }
  Eigen::MatrixXcd out(dim, dim);
  for (int a = 0; a < dim_a; ++a) {
    for (int b = 0; b < dim_b; ++b) {
      for (int a2 = 0; a2 < dim_a; ++a2) {
        for (int b2 = 0; b2 < dim_b; ++b2) {
          out(a2 * dim_b + b, a * dim_b + b2) = m(a * dim_b + b, a2 * dim_b + b2);
        }
      }
    }
  }
  return out;
}

BipartiteOperator partial_transpose_A(const BipartiteOperator& op) {
  const Bipartition& bip = op.bipartition();
  return BipartiteOperator(bip, partial_transpose_A(op.matrix(), bip.dim_a(), bip.dim_b()));
}

namespace {

Eigen::MatrixXcd checked_hermitian_part(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("eigensolver: matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kInputHermitianTolerance * scale) {
    throw std::invalid_argument("eigensolver: matrix is not Hermitian");
  }
  return 0.5 * (m + m.adjoint());
}

double gamma_product_root(const std::vector<double>& gammas) {
  if (gammas.size() < 2) return 0.0;
  return std::sqrt(std::max(0.0, gammas[0]) * std::max(0.0, gammas[1]));
}

ExactRational lambda_min_exact(const Bipartition& bip) {
  return ExactRational(BigInt(1), symmetric_dimension(bip.n, bip.d) * binomial(bip.n, bip.k));
}

}  // namespace

EigenPair min_eigenpair(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd h = checked_hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  EigenPair out;
  out.value = es.eigenvalues()(0);
  out.vector = es.eigenvectors().col(0);
  out.residual = (h * out.vector - out.value * out.vector).norm();
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (out.residual > kEigenResidualTolerance * scale) {
    throw NumericalError("eigensolver residual " + std::to_string(out.residual) + " above tolerance");
  }
  return out;
}

double min_eigenvalue(const BipartiteOperator& op) { return min_eigenpair(op.matrix()).value; }

std::vector<double> eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(checked_hermitian_part(m), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  const Eigen::VectorXd& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

Eigen::MatrixXd rho0_pt_matrix(const Bipartition& bip) {
  const int dim_sym = bip.dim_symmetric();
  const int db = bip.dim_b();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(bip.dim(), bip.dim());
  for (int label = 0; label < dim_sym; ++label) {
    const std::vector<DickeTerm> terms = dicke_decomposition(bip, label);
    std::vector<double> c(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) c[i] = terms[i].coefficient.to_double();
    // |a_g, b_b><a_b, b_g| for every pair of terms (b, g)
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (std::size_t j = 0; j < terms.size(); ++j) {
        out(terms[j].a * db + terms[i].b, terms[i].a * db + terms[j].b) += c[i] * c[j];
      }
    }
  }
  return out / static_cast<double>(dim_sym);
}

BipartiteOperator rho0_pt(const Bipartition& bip) {
  return BipartiteOperator(bip, rho0_pt_matrix(bip).cast<Complex>());
}

ExactSpectrum rho0_pt_spectrum_analytic(const Bipartition& bip) {
  if (bip.d != 2) throw std::invalid_argument("rho0_pt_spectrum_analytic: qubits only (d = 2)");
  const int n = bip.n;
  const BigInt denom = BigInt(n + 1) * binomial(n, bip.k);
  ExactSpectrum out;
  // lambda_n increases with n for n <= k <= N/2, so the list is already ascending
  for (int q = 0; q <= bip.k; ++q) {
    out.entries.push_back({ExactRational(binomial(n + 1, q), denom), n + 1 - 2 * q});
  }
  return out;
}

Eigen::MatrixXd k_plus(int n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int a = 0; a < n; ++a) m(a + 1, a) = std::sqrt(static_cast<double>((n - a) * (a + 1)));
  return m;
}

Eigen::MatrixXd k_minus(int n) { return k_plus(n).transpose(); }

Eigen::MatrixXd k_zero(int n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int a = 0; a <= n; ++a) m(a, a) = n / 2.0 - a;
  return m;
}

namespace {

Eigen::MatrixXd kron(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  Eigen::MatrixXd out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

}  // namespace

LadderOperators ladder_operators(const Bipartition& bip) {
  if (bip.d != 2) throw std::invalid_argument("ladder_operators: qubits only (d = 2)");
  const int ka = bip.k;
  const int kb = bip.n - bip.k;
  const Eigen::MatrixXd id_a = Eigen::MatrixXd::Identity(ka + 1, ka + 1);
  const Eigen::MatrixXd id_b = Eigen::MatrixXd::Identity(kb + 1, kb + 1);
  LadderOperators out{bip, {}, {}, {}};
  out.m_plus = kron(k_minus(ka), id_b) - kron(id_a, k_plus(kb));
  out.m_minus = kron(k_plus(ka), id_b) - kron(id_a, k_minus(kb));
  out.m_zero = kron(k_zero(ka), id_b) - kron(id_a, k_zero(kb));
  return out;
}

Eigen::VectorXd lowest_weight_state(const Bipartition& bip, int n) {
  const int k = bip.k;
  const int big_n = bip.n;
  if (n < 0 || n > k) throw std::invalid_argument("lowest_weight_state: need 0 <= n <= k");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(bip.dim());
  const BigInt norm = binomial(big_n - n + 1, n);
  for (int r = 0; r <= n; ++r) {
    const BigInt c2 = binomial(k - r, n - r) * binomial(big_n - k - n + r, r);
    v((k - r) * bip.dim_b() + (n - r)) = SqrtRational(ExactRational(c2, norm)).to_double();
  }
  return v;
}

Eigen::VectorXd highest_weight_state(const Bipartition& bip, int n) {
  const int k = bip.k;
  const int big_n = bip.n;
  if (n < 0 || n > k) throw std::invalid_argument("highest_weight_state: need 0 <= n <= k");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(bip.dim());
  const BigInt norm = binomial(big_n - n + 1, n);
  for (int r = 0; r <= n; ++r) {
    const BigInt c2 = binomial(big_n - k - r, n - r) * binomial(k - n + r, r);
    v((n - r) * bip.dim_b() + (big_n - k - r)) = SqrtRational(ExactRational(c2, norm)).to_double();
  }
  return v;
}

std::vector<LadderEigenvector> rho0_pt_eigenbasis(const Bipartition& bip) {
  if (bip.d != 2) throw std::invalid_argument("rho0_pt_eigenbasis: qubits only (d = 2)");
  const LadderOperators ladders = ladder_operators(bip);
  std::vector<LadderEigenvector> out;
  out.reserve(bip.dim());
  for (int n = 0; n <= bip.k; ++n) {
    Eigen::VectorXd v = lowest_weight_state(bip, n);
    out.push_back({n, n, v});
    for (int m = n + 1; m <= bip.n - n; ++m) {
      v = ladders.m_plus * v;
      const double norm = v.norm();
      if (norm < 1e-12) throw NumericalError("rho0_pt_eigenbasis: M+ annihilated a state early");
      v /= norm;
      out.push_back({n, m, v});
    }
  }
  return out;
}

std::vector<double> schmidt(const PureSymmetricState& psi, const Bipartition& bip) {
  if (psi.n() != bip.n || psi.d() != bip.d) {
    throw std::invalid_argument("schmidt: state and bipartition disagree on N or d");
  }
  Eigen::MatrixXcd coeffs = Eigen::MatrixXcd::Zero(bip.dim_a(), bip.dim_b());
  for (int label = 0; label < bip.dim_symmetric(); ++label) {
    const Complex amp = psi.amplitudes()(label);
    if (amp == Complex(0.0, 0.0)) continue;
    for (const DickeTerm& t : dicke_decomposition(bip, label)) coeffs(t.a, t.b) += amp * t.coefficient.to_double();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coeffs);
  std::vector<double> gammas;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    gammas.push_back(svd.singularValues()(i) * svd.singularValues()(i));
  }
  std::sort(gammas.begin(), gammas.end(), std::greater<>());
  return gammas;
}

double sigma_bound(const PureSymmetricState& psi, double p, const Bipartition& bip) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sigma_bound: p must lie in [0, 1]");
  if (bip.d != 2) throw std::invalid_argument("sigma_bound: qubits only (d = 2)");
  return p * lambda_min_exact(bip).to_double() - (1.0 - p) * gamma_product_root(schmidt(psi, bip));
}

GhzEigencheck ghz_npt_eigencheck(int n, int k, double p) {
  const Bipartition bip = Bipartition::make(n, k);
  const BipartiteOperator pt = partial_transpose_A(embed_bipartite(rho_p(p, ghz_state(n)), bip));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(bip.dim());
  const double h = 1.0 / std::sqrt(2.0);
  v(0 * bip.dim_b() + (n - k)) = h;
  v(k * bip.dim_b() + 0) = h;
  const Eigen::VectorXcd av = pt.matrix() * v;
  GhzEigencheck out;
  out.eigenvalue = v.dot(av).real();
  out.residual = (av - out.eigenvalue * v).norm();
  out.expected = p * lambda_min_exact(bip).to_double() - (1.0 - p) / 2.0;
  return out;
}

QuditMinEig qudit_rho0_pt_min_eig(int n, int d, int k) {
  const Bipartition bip = Bipartition::make(n, k, d);
  if (static_cast<long>(symmetric_dimension(k, d).get_si()) * symmetric_dimension(n - k, d).get_si() >
      kQuditDimensionCap) {
    throw std::length_error("qudit_rho0_pt_min_eig: bipartite dimension above " +
                            std::to_string(kQuditDimensionCap));
  }
  const std::vector<DickeLabel> labels_a = dicke_labels(k, d);
  const std::vector<DickeLabel> labels_b = dicke_labels(n - k, d);
  const int da = static_cast<int>(labels_a.size());
  const int db = static_cast<int>(labels_b.size());

  // block id and in-block position for every product index, keyed on b - a
  std::map<std::vector<int>, int> block_of_key;
  std::vector<int> block(da * db), slot(da * db);
  std::vector<int> block_size;
  for (int a = 0; a < da; ++a) {
    for (int b = 0; b < db; ++b) {
      std::vector<int> key(d);
      for (int i = 0; i < d; ++i) key[i] = labels_b[b][i] - labels_a[a][i];
      auto [it, inserted] = block_of_key.try_emplace(key, static_cast<int>(block_size.size()));
      if (inserted) block_size.push_back(0);
      block[a * db + b] = it->second;
      slot[a * db + b] = block_size[it->second]++;
    }
  }
  std::vector<Eigen::MatrixXd> blocks;
  blocks.reserve(block_size.size());
  for (const int s : block_size) blocks.push_back(Eigen::MatrixXd::Zero(s, s));

  const int dim_sym = bip.dim_symmetric();
  for (int label = 0; label < dim_sym; ++label) {
    const std::vector<DickeTerm> terms = dicke_decomposition(bip, label);
    std::vector<double> c(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) c[i] = terms[i].coefficient.to_double();
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (std::size_t j = 0; j < terms.size(); ++j) {
        const int row = terms[j].a * db + terms[i].b;
        const int col = terms[i].a * db + terms[j].b;
        if (block[row] != block[col]) throw std::logic_error("qudit_rho0_pt_min_eig: entry crosses blocks");
        blocks[block[row]](slot[row], slot[col]) += c[i] * c[j];
      }
    }
  }

  double lowest = std::numeric_limits<double>::infinity();
  for (Eigen::MatrixXd& blk : blocks) {
    blk /= static_cast<double>(dim_sym);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blk, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("qudit_rho0_pt_min_eig: eigensolver failed");
    lowest = std::min(lowest, es.eigenvalues()(0));
  }
  return {lowest, lambda_min_exact(bip)};
}

}  // namespace symppt
