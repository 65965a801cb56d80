#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "symppt/symstate.hpp"
#include "test_support.hpp"

using namespace symppt;

namespace {

// Builds every Dicke state of N qudits in the full d^N space, groups the
// first k sites as party A, and projects onto products of A- and B-side
// Dicke states. Returns coefficient[label][(a, b)].
std::vector<std::map<std::pair<int, int>, double>> brute_force_decomposition(const Bipartition& bip) {
  const int n = bip.n, d = bip.d, k = bip.k;
  long total = 1;
  for (int i = 0; i < n; ++i) total *= d;
  const auto labels = dicke_labels(n, d);
  std::vector<std::map<std::pair<int, int>, double>> out(labels.size());
  std::vector<int> digits(n);
  for (long s = 0; s < total; ++s) {
    long x = s;
    for (int i = n - 1; i >= 0; --i) {
      digits[i] = static_cast<int>(x % d);
      x /= d;
    }
    DickeLabel occ(d, 0), occ_a(d, 0), occ_b(d, 0);
    for (int i = 0; i < n; ++i) {
      ++occ[digits[i]];
      ++(i < k ? occ_a : occ_b)[digits[i]];
    }
    // amplitude of this string in |D(occ)> times its amplitude in |D(occ_a)>|D(occ_b)>
    const double w = 1.0 / std::sqrt(multinomial(occ).get_d() * multinomial(occ_a).get_d() * multinomial(occ_b).get_d());
    out[dicke_label_index(occ)][{dicke_label_index(occ_a), dicke_label_index(occ_b)}] += w;
  }
  return out;
}

}  // namespace

TEST_CASE("Dicke label order") {
  const auto q = dicke_labels(4, 2);
  REQUIRE(q.size() == 5);
  for (int alpha = 0; alpha <= 4; ++alpha) {
    CHECK(q[alpha] == DickeLabel{4 - alpha, alpha});
    CHECK(dicke_label_index(q[alpha]) == alpha);
  }
  const auto t = dicke_labels(4, 3);
  CHECK(t.size() == 15);
  CHECK(t.front() == DickeLabel{4, 0, 0});
  CHECK(t.back() == DickeLabel{0, 0, 4});
  for (int d = 2; d <= 5; ++d) {
    const auto all = dicke_labels(6, d);
    for (std::size_t i = 0; i < all.size(); ++i) REQUIRE(dicke_label_index(all[i]) == static_cast<int>(i));
    for (std::size_t i = 1; i < all.size(); ++i) REQUIRE(all[i - 1] > all[i]);
  }
}

TEST_CASE("Bipartition validation") {
  CHECK_THROWS_AS(Bipartition::make(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(Bipartition::make(5, 3), std::invalid_argument);
  CHECK_THROWS_AS(Bipartition::make(5, 2, 1), std::invalid_argument);
  const Bipartition b = Bipartition::make(5, 2);
  CHECK(b.dim_a() == 3);
  CHECK(b.dim_b() == 4);
  CHECK(b.dim() == 12);
  CHECK(Bipartition::make(4, 2, 3).dim() == 36);
}

TEST_CASE("dicke_decomposition examples") {
  const auto d0 = dicke_decomposition(Bipartition::make(5, 2), 0);
  REQUIRE(d0.size() == 1);
  CHECK(d0[0].a == 0);
  CHECK(d0[0].b == 0);
  CHECK(d0[0].coefficient.radicand() == ExactRational(1));

  const auto d1 = dicke_decomposition(Bipartition::make(2, 1), 1);
  REQUIRE(d1.size() == 2);
  CHECK(d1[0].a == 1);
  CHECK(d1[0].b == 0);
  CHECK(d1[1].a == 0);
  CHECK(d1[1].b == 1);
  for (const auto& t : d1) CHECK(t.coefficient.radicand() == ExactRational::parse("1/2"));

  CHECK_THROWS_AS(dicke_decomposition(Bipartition::make(5, 2), 6), std::invalid_argument);
}

TEST_CASE("qutrit decomposition of label (2,1,1) matches the tensor oracle") {
  const Bipartition bip = Bipartition::make(4, 2, 3);
  const int label = dicke_label_index({2, 1, 1});
  const auto oracle = brute_force_decomposition(bip)[label];
  const auto terms = dicke_decomposition(bip, label);
  CHECK(terms.size() == oracle.size());
  for (const auto& t : terms) {
    REQUIRE(oracle.count({t.a, t.b}) == 1);
    CHECK(t.coefficient.to_double() == doctest::Approx(oracle.at({t.a, t.b})).epsilon(1e-13));
  }
}

TEST_CASE("decomposition agrees with the tensor oracle for all d^N <= 1e4") {
  int cases = 0;
  for (int d = 2; d <= 6; ++d) {
    for (int n = 2;; ++n) {
      if (std::pow(d, n) > 1e4) break;
      for (int k = 1; k <= n / 2; ++k) {
        const Bipartition bip = Bipartition::make(n, k, d);
        const auto oracle = brute_force_decomposition(bip);
        for (int label = 0; label < bip.dim_symmetric(); ++label) {
          const auto terms = dicke_decomposition(bip, label);
          REQUIRE(terms.size() == oracle[label].size());
          ExactRational norm;
          for (const auto& t : terms) {
            REQUIRE(std::abs(t.coefficient.to_double() - oracle[label].at({t.a, t.b})) < 1e-12);
            norm += t.coefficient.squared();
          }
          REQUIRE(norm == ExactRational(1));
        }
        ++cases;
      }
    }
  }
  CHECK(cases > 20);
}

TEST_CASE("ghz_state") {
  const auto g = ghz_state(5);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(g.amplitudes()(0).real() == doctest::Approx(h));
  CHECK(g.amplitudes()(5).real() == doctest::Approx(-h));
  for (int i = 1; i < 5; ++i) CHECK(std::abs(g.amplitudes()(i)) == 0.0);
  CHECK(g.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));
  const auto g2 = ghz_state(2);
  CHECK(g2.amplitudes()(2).real() == doctest::Approx(-h));
  CHECK(ghz_state(5, GhzPhase::Plus).amplitudes()(5).real() == doctest::Approx(h));
  CHECK_THROWS_AS(ghz_state(1), std::invalid_argument);
}

TEST_CASE("coherent_state") {
  const double pi = std::numbers::pi;
  const auto north = coherent_state(5, 0.0, 1.234);
  CHECK(std::abs(north.amplitudes()(0) - Complex(1.0, 0.0)) < 1e-15);
  const auto south = coherent_state(5, pi, 0.0);
  CHECK(std::abs(south.amplitudes()(5) - Complex(1.0, 0.0)) < 1e-15);
  for (int a = 0; a < 5; ++a) CHECK(std::abs(south.amplitudes()(a)) < 1e-15);

  // (|0> + |1>)^{x5} / sqrt(32): amplitude of |D^(a)> is sqrt(C(5,a)) / sqrt(32)
  const auto eq = coherent_state(5, pi / 2.0, 0.0);
  for (int a = 0; a <= 5; ++a) {
    CHECK(eq.amplitudes()(a).real() == doctest::Approx(std::sqrt(binomial(5, a).get_d() / 32.0)).epsilon(1e-14));
  }

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> angle(-7.0, 7.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 20;
    const double theta = angle(rng), phi = angle(rng);
    const auto s = coherent_state(n, theta, phi);
    double total = 0.0;
    for (int a = 0; a <= n; ++a) {
      const double expected = binomial(n, a).get_d() * std::pow(std::cos(theta / 2), 2 * (n - a)) *
                              std::pow(std::sin(theta / 2), 2 * a);
      CHECK(std::norm(s.amplitudes()(a)) == doctest::Approx(expected).epsilon(1e-12));
      total += std::norm(s.amplitudes()(a));
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("rho_p") {
  const auto g = ghz_state(5);
  const auto mixed = rho_p(1.0, g);
  CHECK((mixed.matrix() - Eigen::MatrixXcd::Identity(6, 6) / 6.0).norm() < 1e-15);
  const auto pure = rho_p(0.0, g);
  CHECK((pure.matrix() - g.projector()).norm() < 1e-15);

  // p = 30/31: eigenvalues 6/31 once and 5/31 five times
  const auto r = rho_p(30.0 / 31.0, g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r.matrix());
  for (int i = 0; i < 5; ++i) CHECK(es.eigenvalues()(i) == doctest::Approx(5.0 / 31.0).epsilon(1e-13));
  CHECK(es.eigenvalues()(5) == doctest::Approx(6.0 / 31.0).epsilon(1e-13));

  // general two-level spectrum (1 - Np/(N+1), p/(N+1) x N)
  for (const double p : {0.1, 0.5, 0.9}) {
    const auto rp = rho_p(p, ghz_state(7));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e(rp.matrix());
    for (int i = 0; i < 7; ++i) CHECK(e.eigenvalues()(i) == doctest::Approx(p / 8.0).epsilon(1e-13));
    CHECK(e.eigenvalues()(7) == doctest::Approx(1.0 - 7.0 * p / 8.0).epsilon(1e-13));
  }

  CHECK_THROWS_AS(rho_p(-0.1, g), std::invalid_argument);
  CHECK_THROWS_AS(rho_p(1.1, g), std::invalid_argument);
}

TEST_CASE("state validation") {
  CHECK_THROWS_AS(PureSymmetricState(3, 2, Eigen::VectorXcd::Ones(4)), std::invalid_argument);
  CHECK_THROWS_AS(PureSymmetricState(3, 2, Eigen::VectorXcd::Zero(3)), std::invalid_argument);
  Eigen::MatrixXcd not_psd = Eigen::MatrixXcd::Zero(3, 3);
  not_psd(0, 0) = 1.5;
  not_psd(1, 1) = -0.5;
  CHECK_THROWS_AS(SymmetricDensityMatrix(2, 2, not_psd), std::invalid_argument);
  Eigen::MatrixXcd not_herm = Eigen::MatrixXcd::Identity(3, 3) / 3.0;
  not_herm(0, 1) = 0.1;
  CHECK_THROWS_AS(SymmetricDensityMatrix(2, 2, not_herm), std::invalid_argument);
}

TEST_CASE("embed_bipartite of the symmetric identity matches the chi double sum") {
  const int n = 5, k = 2;
  const Bipartition bip = Bipartition::make(n, k);
  const auto op = embed_bipartite(maximally_mixed(n), bip);
  // (N+1)^-1 sum_alpha sum_{beta,gamma} chi(alpha,beta) chi(alpha,gamma) |alpha-beta, beta><alpha-gamma, gamma|
  Eigen::MatrixXd oracle = Eigen::MatrixXd::Zero(bip.dim(), bip.dim());
  for (int alpha = 0; alpha <= n; ++alpha) {
    for (int beta = 0; beta <= alpha; ++beta) {
      for (int gamma = 0; gamma <= alpha; ++gamma) {
        const double c = (chi(n, k, alpha, beta) * chi(n, k, alpha, gamma)).to_double();
        if (c == 0.0) continue;
        oracle((alpha - beta) * bip.dim_b() + beta, (alpha - gamma) * bip.dim_b() + gamma) += c / (n + 1);
      }
    }
  }
  CHECK((op.matrix().real() - oracle).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(op.matrix().imag().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("embed_bipartite of |D_5^(0)> is the product projector") {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(6);
  amp(0) = 1.0;
  const auto op = embed_bipartite(PureSymmetricState(5, 2, amp), Bipartition::make(5, 2));
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(12, 12);
  expected(0, 0) = 1.0;
  CHECK((op.matrix() - expected).norm() < 1e-15);
}

TEST_CASE("embed_bipartite preserves trace, Hermiticity and positivity") {
  std::mt19937 rng(5);
  for (int n = 2; n <= 14; ++n) {
    for (int k = 1; k <= n / 2; ++k) {
      const Bipartition bip = Bipartition::make(n, k);
      const auto rho = testing_support::random_density(n, 2, rng);
      const auto op = embed_bipartite(rho, bip);
      CHECK(std::abs(op.matrix().trace() - Complex(1.0, 0.0)) < 1e-12);
      CHECK((op.matrix() - op.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.matrix(), Eigen::EigenvaluesOnly);
      CHECK(es.eigenvalues()(0) >= -1e-10);

      const auto psi = testing_support::random_pure(n, 2, rng);
      const auto pure = embed_bipartite(psi, bip);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ep(pure.matrix(), Eigen::EigenvaluesOnly);
      const auto& ev = ep.eigenvalues();
      CHECK(ev(ev.size() - 1) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(ev(ev.size() - 2)) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(embed_bipartite(maximally_mixed(5), Bipartition::make(6, 2)), std::invalid_argument);
}

TEST_CASE("qudit embedding of the pure-state projector has rank one") {
  std::mt19937 rng(17);
  const Bipartition bip = Bipartition::make(5, 2, 3);
  const auto psi = testing_support::random_pure(5, 3, rng);
  const auto op = embed_bipartite(psi, bip);
  CHECK(std::abs(op.matrix().trace() - Complex(1.0, 0.0)) < 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.matrix(), Eigen::EigenvaluesOnly);
  CHECK(std::abs(es.eigenvalues()(es.eigenvalues().size() - 2)) < 1e-10);
}

TEST_CASE("state JSON") {
  const auto g = ghz_state(3);
  const auto j = to_json(g);
  CHECK(j.at("n") == 3);
  CHECK(j.at("d") == 2);
  CHECK(j.at("amplitudes").size() == 4);
  CHECK(j.at("amplitudes")[3][0].get<double>() == doctest::Approx(-1.0 / std::sqrt(2.0)));
  std::mt19937 rng(3);
  const auto psi = testing_support::random_pure(4, 3, rng);
  const auto back = state_from_json(nlohmann::json::parse(to_json(psi).dump()));
  CHECK((back.amplitudes() - psi.amplitudes()).norm() == 0.0);

  CHECK_THROWS(state_from_json(nlohmann::json::parse(R"({"n": 2, "d": 2, "amplitudes": [[1,0],[0,0]]})")));
  CHECK_THROWS(state_from_json(nlohmann::json::parse(R"({"n": 1, "amplitudes": [[1,0],[0]]})")));
}
