#include "symppt/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

#include "symppt/parallel.hpp"

namespace symppt {

namespace {

struct WitnessConstants {
  const char* name;
  std::vector<const char*> half_diagonal;  // entries 0 .. (N-1)/2, mirrored
  const char* corner;
};

// Published values, six significant figures.
const std::vector<WitnessConstants>& witness_table() {
  static const std::vector<WitnessConstants> table = {
      {"W5", {"0.0366656", "-0.134595", "1"}, "-9.31947"},
      {"W7", {"0.00197514", "0.0643064", "-0.189017", "1"}, "-31.2405"},
      {"W9", {"0.00235791", "-0.013747", "0.0621661", "-0.1636915", "1"}, "-114.305"},
  };
  return table;
}

}  // namespace

Witness::Witness(std::string name, std::vector<double> diagonal, double corner)
    : name_(std::move(name)), diagonal_(std::move(diagonal)), corner_(corner) {
  if (diagonal_.size() < 3) throw std::invalid_argument("Witness: need N >= 2 (dimension >= 3)");
  const std::size_t last = diagonal_.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    if (!std::isfinite(diagonal_[i])) throw std::invalid_argument("Witness: non-finite diagonal entry");
    if (std::abs(diagonal_[i] - diagonal_[last - i]) > 1e-12) {
      throw std::invalid_argument("Witness '" + name_ + "': diagonal is not palindromic");
    }
  }
  if (!std::isfinite(corner_)) throw std::invalid_argument("Witness: non-finite corner");
}

double Witness::trace() const {
  double t = 0.0;
  for (const double w : diagonal_) t += w;
  return t;
}

Eigen::MatrixXd Witness::matrix() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) m(i, i) = diagonal_[i];
  m(0, n()) = corner_;
  m(n(), 0) = corner_;
  return m;
}

Witness builtin_witness(std::string_view name) {
  for (const auto& c : witness_table()) {
    if (name != c.name) continue;
    std::vector<double> diag;
    for (const char* v : c.half_diagonal) diag.push_back(std::stod(v));
    for (auto it = c.half_diagonal.rbegin(); it != c.half_diagonal.rend(); ++it) diag.push_back(std::stod(*it));
    return Witness(c.name, std::move(diag), std::stod(c.corner));
  }
  throw std::invalid_argument("unknown witness '" + std::string(name) + "' (expected W5, W7 or W9)");
}

std::vector<std::string> builtin_witness_names() {
  std::vector<std::string> out;
  for (const auto& c : witness_table()) out.emplace_back(c.name);
  return out;
}

nlohmann::json to_json(const Witness& w) {
  return {{"name", w.name()}, {"dim", w.dim()}, {"diagonal", w.diagonal()}, {"corner", w.corner()}};
}

Witness witness_from_json(const nlohmann::json& j) {
  auto diag = j.at("diagonal").get<std::vector<double>>();
  if (j.contains("dim") && j.at("dim").get<int>() != static_cast<int>(diag.size())) {
    throw std::invalid_argument("witness JSON: 'dim' does not match the diagonal length");
  }
  return Witness(j.value("name", std::string("custom")), std::move(diag), j.at("corner").get<double>());
}

double expectation(const SymmetricDensityMatrix& rho, const Witness& w) {
  if (rho.d() != 2 || rho.n() != w.n()) {
    throw std::invalid_argument("expectation: witness dimension " + std::to_string(w.dim()) +
                                " does not match the state");
  }
  const Eigen::MatrixXcd& m = rho.matrix();
  Complex total = 0.0;
  for (int i = 0; i < w.dim(); ++i) total += w.diagonal()[i] * m(i, i);
  total += w.corner() * (m(0, w.n()) + m(w.n(), 0));
  if (std::abs(total.imag()) > 1e-12) throw std::logic_error("expectation: complex trace");
  return total.real();
}

double expectation(const PureSymmetricState& psi, const Witness& w) {
  if (psi.d() != 2 || psi.n() != w.n()) {
    throw std::invalid_argument("expectation: witness dimension does not match the state");
  }
  const Eigen::VectorXcd& a = psi.amplitudes();
  double total = 0.0;
  for (int i = 0; i < w.dim(); ++i) total += w.diagonal()[i] * std::norm(a(i));
  total += 2.0 * w.corner() * (std::conj(a(0)) * a(w.n())).real();
  return total;
}

double product_expectation(const Witness& w, double theta, double phi) {
  const int n = w.n();
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  double total = 0.0;
  double binom = 1.0;
  for (int alpha = 0; alpha <= n; ++alpha) {
    total += w.diagonal()[alpha] * binom * std::pow(c, 2 * (n - alpha)) * std::pow(s, 2 * alpha);
    binom = binom * (n - alpha) / (alpha + 1);
  }
  total += 2.0 * w.corner() * std::pow(c * s, n) * std::cos(n * phi);
  return total;
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

ProductMinimum min_over_products(const Witness& w, GridSize grid) {
  if (grid.theta_points < 3 || grid.phi_points < 1) {
    throw std::invalid_argument("min_over_products: grid needs >= 3 theta points and >= 1 phi point");
  }
  const double pi = std::numbers::pi;
  const int tw = grid.theta_points;
  const int ph = grid.phi_points;
  auto theta_at = [&](int i) { return pi * i / (tw - 1); };
  auto phi_at = [&](int j) { return 2.0 * pi * j / ph; };

  // 2-D scan, one theta row per task, reduced in row order
  std::vector<std::tuple<double, double, double>> row_best(tw);
  parallel_for(static_cast<std::size_t>(tw), [&](std::size_t i) {
    const double theta = theta_at(static_cast<int>(i));
    std::tuple<double, double, double> best{product_expectation(w, theta, 0.0), theta, 0.0};
    for (int j = 1; j < ph; ++j) {
      const double phi = phi_at(j);
      std::tuple<double, double, double> cand{product_expectation(w, theta, phi), theta, phi};
      best = std::min(best, cand);
    }
    row_best[i] = best;
  });
  const auto grid_best = *std::min_element(row_best.begin(), row_best.end());

  ProductMinimum out;
  std::tie(out.grid_value, out.grid_theta, out.grid_phi) = grid_best;

  // a palindromic diagonal makes f(theta) = f(pi - theta), so the 1-D
  // search covers [0, pi/2] only
  const double phi_star = w.corner() <= 0.0 ? 0.0 : pi / w.n();
  auto reduced = [&](double theta) { return product_expectation(w, theta, phi_star); };
  const int half = (tw - 1) / 2;
  int best_i = 0;
  double best_v = reduced(theta_at(0));
  for (int i = 1; i <= half; ++i) {
    const double v = reduced(theta_at(i));
    if (v < best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double lo = theta_at(std::max(0, best_i - 1));
  const double hi = std::min(pi / 2.0, theta_at(best_i + 1));
  double theta = golden_section_minimize(reduced, lo, hi, kThetaTolerance / 2.0);
  double value = reduced(theta);
  for (const double edge : {lo, hi}) {
    const double v = reduced(edge);
    if (v <= value) {
      value = v;
      theta = edge;
    }
  }
  out.value = value;
  out.theta = theta;
  out.phi = phi_star;
  return out;
}

DetectionThreshold detection_threshold(const Witness& w, const PureSymmetricState& psi0) {
  const double on_pure = expectation(psi0, w);
  const double on_mixed = w.trace() / static_cast<double>(w.dim());
  const double denom = on_pure - on_mixed;
  if (std::abs(denom) < 1e-14) throw std::domain_error("detection_threshold: Tr(rho(p) W) does not depend on p");
  DetectionThreshold out;
  out.p_star = on_pure / denom;
  out.p_min = p_min_qubits(w.n());
  out.certifies_sappt_entanglement = out.p_star > out.p_min.to_double();
  return out;
}

DetectionThreshold detection_threshold(const Witness& w, int n) {
  if (n != w.n()) {
    throw std::invalid_argument("detection_threshold: witness " + w.name() + " has dimension " +
                                std::to_string(w.dim()) + ", not N+1 = " + std::to_string(n + 1));
  }
  return detection_threshold(w, ghz_state(n, GhzPhase::Plus));
}

}  // namespace symppt
