#pragma once

// Entanglement witnesses of the form diag(w_0..w_N) + corner (|0><N| + |N><0|)
// in the Dicke basis, their expectation on symmetric states, and their
// positivity over symmetric product (spin-coherent) states.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "symppt/combx.hpp"
#include "symppt/symstate.hpp"

namespace symppt {

class Witness {
 public:
  // Diagonal must be palindromic (entry a equals entry N-a within 1e-12).
  Witness(std::string name, std::vector<double> diagonal, double corner);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(diagonal_.size()); }
  int n() const { return dim() - 1; }
  const std::vector<double>& diagonal() const { return diagonal_; }
  double corner() const { return corner_; }
  double trace() const;
  Eigen::MatrixXd matrix() const;

 private:
  std::string name_;
  std::vector<double> diagonal_;
  double corner_;
};

// "W5", "W7" or "W9" with the published six-figure constants.
Witness builtin_witness(std::string_view name);
std::vector<std::string> builtin_witness_names();

// {"name": str, "dim": int, "diagonal": [floats], "corner": float}
nlohmann::json to_json(const Witness& w);
Witness witness_from_json(const nlohmann::json& j);

// Tr(rho W).
double expectation(const SymmetricDensityMatrix& rho, const Witness& w);
double expectation(const PureSymmetricState& psi, const Witness& w);

// <theta,phi| W |theta,phi> for the N-fold product state.
double product_expectation(const Witness& w, double theta, double phi);

struct GridSize {
  int theta_points = 721;  // over [0, pi], endpoints included
  int phi_points = 360;    // over [0, 2 pi), 0 included
};

struct ProductMinimum {
  double value = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  // best point of the 2-D grid scan
  double grid_value = 0.0;
  double grid_theta = 0.0;
  double grid_phi = 0.0;
};

inline constexpr double kThetaTolerance = 1e-8;

// Global minimum of product_expectation. The phi dependence is
// 2 corner g(theta) cos(N phi) with g >= 0, so the minimum sits at
// cos(N phi) = -sign(corner); theta is refined by golden-section search
// around the best point of a 1-D scan. The 2-D grid is kept as a
// cross-check.
ProductMinimum min_over_products(const Witness& w, GridSize grid = {});

// Minimizes a unimodal f on [lo, hi] to a bracket narrower than tol.
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol);

struct DetectionThreshold {
  double p_star = 0.0;     // Tr(rho(p_star) W) = 0
  ExactRational p_min;     // SAPPT threshold for the same N
  bool certifies_sappt_entanglement = false;  // p_star > p_min
};

// Root of the affine map p -> Tr(rho(p) W) for rho(p) built on psi0.
DetectionThreshold detection_threshold(const Witness& w, const PureSymmetricState& psi0);
// Same with psi0 = (|D^(0)> + |D^(N)>)/sqrt(2).
DetectionThreshold detection_threshold(const Witness& w, int n);

}  // namespace symppt
