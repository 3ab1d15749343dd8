#include <doctest.h>

#include "oracles.hpp"
#include "vilenkin/kernels.hpp"

using namespace vilenkin;

namespace {

oracle::Vec to_vec(const Eigen::VectorXcd &v) { return {v.data(), v.data() + v.size()}; }

std::vector<double> q_of(const WeightSequence &w) {
  return {w.q_values().data(), w.q_values().data() + w.n_max()};
}

}  // namespace

TEST_CASE("Dirichlet kernel") {
  const std::vector<int> radices = {2, 3, 2, 2};
  const auto g = make_group(radices, 4);
  const auto chi = oracle::characters(oracle::Group{radices});
  CHECK((dirichlet_kernel(1, g).function.values.array() - 1.0).abs().maxCoeff() < 1e-15);
  for (Index n = 1; n <= g.size(); ++n) {
    const auto d = dirichlet_kernel(n, g).function.values;
    CHECK(oracle::max_abs_diff(to_vec(d), oracle::dirichlet(chi, n)) < 1e-11);
    CHECK(std::abs(d[0] - static_cast<double>(n)) < 1e-11);
  }
  for (int j = 0; j <= g.level(); ++j) {
    const Index mj = g.cumprod(j);
    const auto d = dirichlet_kernel(mj, g).function.values;
    for (Index x = 0; x < g.size(); ++x) {
      const double expected = x % mj == 0 ? static_cast<double>(mj) : 0.0;
      REQUIRE(std::abs(d[x] - expected) < 1e-11);
    }
  }
  CHECK_THROWS(dirichlet_kernel(0, g));
  CHECK_THROWS(dirichlet_kernel(g.size() + 1, g));
  const auto family = dirichlet_family(g, g.size());
  CHECK((family.col(4) - dirichlet_kernel(5, g).function.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Fejer kernel and its closed form at M_j") {
  for (const std::vector<int> radices :
       {std::vector<int>{2, 2, 2, 2}, {2, 3, 4}, {3, 3, 2}, {5, 5}}) {
    const auto g = make_group(radices, static_cast<int>(radices.size()));
    const auto chi = oracle::characters(oracle::Group{radices});
    CHECK((fejer_kernel(1, g).function.values.array() - 1.0).abs().maxCoeff() < 1e-15);
    for (Index n = 1; n <= g.size(); ++n) {
      const auto k = fejer_kernel(n, g).function.values;
      REQUIRE(oracle::max_abs_diff(to_vec(k), oracle::fejer(chi, n)) < 1e-10);
      // K_n(0) = (n + 1) / 2 since D_k(0) = k.
      REQUIRE(std::abs(k[0] - (static_cast<double>(n) + 1.0) / 2.0) < 1e-10);
    }
    for (int j = 0; j <= g.level(); ++j) {
      const Index mj = g.cumprod(j);
      const auto closed = fejer_kernel_closed(j, g).function.values;
      CHECK(oracle::max_abs_diff(to_vec(closed), oracle::fejer(chi, mj)) < 1e-10);
      CHECK(std::abs(closed[0] - (static_cast<double>(mj) + 1.0) / 2.0) < 1e-12);
    }
  }
  const auto g = make_group({2, 2}, 2);
  // Dyadic K_2 = (D_1 + D_2) / 2 = (2 + r_0) / 2 and K_4 from the formula.
  const auto k2 = fejer_kernel_closed(1, g).function.values;
  CHECK(std::abs(k2[0] - 1.5) < 1e-15);
  CHECK(std::abs(k2[1] - 0.5) < 1e-15);
  CHECK_THROWS(fejer_kernel_closed(3, g));
}

TEST_CASE("Norlund kernel: definition, Abel form and special values") {
  const std::vector<int> radices = {2, 3, 2, 2};
  const auto g = make_group(radices, 4);
  const auto chi = oracle::characters(oracle::Group{radices});
  const auto q = oracle::random_weights(g.size(), 17);
  const auto w = WeightSequence::custom(q, "random");
  for (Index n = 1; n <= g.size(); ++n) {
    const auto f = norlund_kernel(n, w, g).function.values;
    REQUIRE(oracle::max_abs_diff(to_vec(f), oracle::norlund_kernel(chi, q, n)) < 1e-10);
    REQUIRE((f - norlund_kernel_abel(n, w, g).function.values).cwiseAbs().maxCoeff() < 1e-9);
    double f0 = 0.0;
    for (Index k = 1; k <= n; ++k) f0 += q[static_cast<std::size_t>(n - k)] * static_cast<double>(k);
    CHECK(std::abs(f[0] - f0 / w.Q(n)) < 1e-9);
    CHECK(std::abs(f.mean() - 1.0) < 1e-12);
  }
  const auto one = WeightSequence::constant(g.size());
  for (Index n = 1; n <= g.size(); ++n) {
    CHECK((norlund_kernel(n, one, g).function.values - fejer_kernel(n, g).function.values)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("summation by parts reproduces Q_n") {
  for (const auto &w : {WeightSequence::constant(200), WeightSequence::log_family(1, 1, 200),
                        WeightSequence::log_family(2, 2, 200),
                        WeightSequence::custom(oracle::random_weights(200, 3))}) {
    for (Index n = 1; n <= 200; ++n) {
      double sum = w.q(0) * static_cast<double>(n);
      for (Index j = 1; j < n; ++j) sum += (w.q(n - j) - w.q(n - j - 1)) * static_cast<double>(j);
      REQUIRE(std::abs(sum - w.Q(n)) < 1e-9 * w.Q(n));
    }
  }
}

TEST_CASE("coefficient matrices reproduce the kernel families") {
  const auto g = make_group({2, 3, 2}, 3);
  const auto w = WeightSequence::log_family(1, 1, g.size());
  const auto d = dirichlet_family(g, g.size());
  const auto k = fejer_family(d);
  const Eigen::MatrixXcd f1 = d * norlund_coefficients(w, g.size()).cast<Complex>();
  const Eigen::MatrixXcd f2 = k * norlund_abel_coefficients(w, g.size()).cast<Complex>();
  CHECK((f1 - f2).cwiseAbs().maxCoeff() < 1e-10);
  for (Index n = 1; n <= g.size(); ++n) {
    CHECK((k.col(n - 1) - fejer_kernel(n, g).function.values).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((f1.col(n - 1) - norlund_kernel(n, w, g).function.values).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("tail kernel") {
  const std::vector<int> radices = {2, 2, 3, 2};
  const auto g = make_group(radices, 4);
  const auto chi = oracle::characters(oracle::Group{radices});
  const auto q = oracle::random_weights(g.size(), 8);
  const auto w = WeightSequence::custom(q);
  for (int level = 0; level < g.level(); ++level) {
    const Index first = g.cumprod(level);
    for (Index n = first; n <= g.size(); ++n) {
      const auto t = tail_kernel(n, level, w, g).function.values;
      REQUIRE(oracle::max_abs_diff(to_vec(t), oracle::tail_kernel(chi, q, n, first)) < 1e-10);
    }
    // One-term sum at n = M_{N0}.
    const auto single = tail_kernel(first, level, w, g).function.values;
    const Eigen::VectorXcd expected =
        q[0] * dirichlet_kernel(first, g).function.values / w.Q(first);
    CHECK((single - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
  // Full range: the tail kernel is the Norlund kernel.
  for (Index n = 1; n <= g.size(); ++n) {
    CHECK((tail_kernel(n, 0, w, g).function.values - norlund_kernel(n, w, g).function.values)
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
  CHECK_THROWS(tail_kernel(1, 1, w, g));
  CHECK_THROWS(tail_kernel(4, 4, w, g));
}
