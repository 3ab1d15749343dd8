#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vilenkin/spaces.hpp"
#include "vilenkin/summability.hpp"

using namespace vilenkin;

namespace {

Eigen::VectorXcd to_eigen(const oracle::Vec &v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Index>(v.size()));
}
oracle::Vec to_vec(const Eigen::VectorXcd &v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST_CASE("L_p quasi-norms") {
  const auto g = make_group({2, 3, 2}, 3);
  const auto c = CylinderFunction::constant(g, Complex(3.0, 4.0));
  for (double p : {0.25, 0.5, 1.0, 2.0}) {
    CHECK(lp_quasinorm(c, p) == doctest::Approx(5.0));
    CHECK(weak_lp_quasinorm(c, p) == doctest::Approx(5.0));
  }
  const auto ind = interval_indicator(g, 1);
  CHECK(lp_quasinorm(ind, 0.5) == doctest::Approx(0.25));
  CHECK_THROWS(lp_quasinorm(ind, 0.0));
  CHECK_THROWS(weak_lp_quasinorm(ind, -1.0));
  // Parseval at p = 2.
  const auto f = oracle::random_function(g.size(), 4);
  const auto s = forward_transform({g, to_eigen(f)});
  CHECK(std::pow(lp_quasinorm({g, to_eigen(f)}, 2.0), 2.0) ==
        doctest::Approx(s.coeffs.squaredNorm()));
}

TEST_CASE("weak L_p against a threshold scan") {
  // Two-valued function: 3 cells at 4, 9 cells at 1.
  Eigen::VectorXd two(12);
  two << 4, 4, 4, 1, 1, 1, 1, 1, 1, 1, 1, 1;
  const double p = 0.5;
  const double expected = std::max(4.0 * std::pow(0.25, 2.0), 1.0);
  CHECK(weak_lp_quasinorm(two, p) == doctest::Approx(expected));
  double scan = 0.0;
  for (int i = 0; i < 40000; ++i) {
    const double lambda = i * 1e-4;
    double count = 0;
    for (Index x = 0; x < two.size(); ++x) count += two[x] > lambda ? 1 : 0;
    scan = std::max(scan, lambda * std::pow(count / 12.0, 1.0 / p));
  }
  CHECK(scan <= weak_lp_quasinorm(two, p) + 1e-12);
  CHECK(scan > weak_lp_quasinorm(two, p) - 1e-3);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto f = oracle::abs(oracle::random_function(60, seed));
    const Eigen::Map<const Eigen::VectorXd> m(f.data(), 60);
    for (double q : {0.25, 0.5, 1.0}) {
      REQUIRE(weak_lp_quasinorm(m, q) <= lp_quasinorm(m, q) * (1.0 + 1e-12));
      REQUIRE(weak_lp_quasinorm(m, q) == doctest::Approx(oracle::weak_lp(f, q)).epsilon(1e-13));
    }
  }
}

TEST_CASE("maximal function and Hardy quasi-norm") {
  const std::vector<int> radices = {2, 3, 2, 2};
  const auto g = make_group(radices, 4);
  const oracle::Group o{radices};
  const auto c = forward_transform(CylinderFunction::constant(g, -2.0));
  CHECK((maximal_function(c).array() - 2.0).abs().maxCoeff() < 1e-12);
  CHECK(hardy_quasinorm(c, 0.5) == doctest::Approx(2.0));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = oracle::random_function(g.size(), seed);
    const auto s = forward_transform({g, to_eigen(f)});
    const auto star = maximal_function(s);
    CHECK((star.array() >= to_eigen(f).cwiseAbs().array() - 1e-12).all());
    CHECK((star.array() >= std::abs(s.coeffs[0]) - 1e-12).all());
    for (double p : {0.25, 0.5, 1.0}) {
      CHECK(hardy_quasinorm(s, p) == doctest::Approx(oracle::hardy(o, f, p)).epsilon(1e-12));
      CHECK(hardy_quasinorm(s, p) >= lp_quasinorm({g, to_eigen(f)}, p) * (1.0 - 1e-12));
    }
  }
  CHECK_THROWS(hardy_quasinorm(c, 1.5));
}

TEST_CASE("generated atoms are valid and orthogonal to low frequencies") {
  const auto g = make_group({2, 2, 3, 2, 2, 2}, 6);
  for (int level = 1; level < g.level(); ++level) {
    for (double p : {0.25, 1.0 / 3.0, 0.5, 1.0}) {
      for (int resolution : {0, 1, 3}) {
        const Atom a = make_atom(g, level, p, 0x5EED + level, resolution);
        REQUIRE_FALSE(a.degenerate);
        const auto check = validate_atom(a.function, p, level);
        REQUIRE_MESSAGE(check.ok, check.reason);
        const double bound = std::pow(static_cast<double>(g.cumprod(level)), 1.0 / p);
        CHECK(a.function.values.cwiseAbs().maxCoeff() == doctest::Approx(bound));
        const auto s = forward_transform(a.function);
        for (Index n = 0; n <= g.cumprod(level); ++n) {
          REQUIRE(partial_sum(s, n).values.cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, bound));
        }
      }
    }
  }
  const Atom same = make_atom(g, 2, 0.5, 7);
  CHECK(same.function.values == make_atom(g, 2, 0.5, 7).function.values);
  CHECK(same.function.values != make_atom(g, 2, 0.5, 8).function.values);
}

TEST_CASE("coarse atoms repeat on finer cells") {
  const auto g = make_group({2, 2, 2, 2, 2, 2}, 6);
  const Atom a = make_atom(g, 2, 0.5, 3, 2);
  // Values depend on digits 2 and 3 only.
  for (Index x = 0; x < g.size(); x += 4) CHECK(a.function.values[x] == a.function.values[x % 16]);
}

TEST_CASE("single-cell support gives the flagged zero atom") {
  const auto g = make_group({2, 3}, 2);
  const Atom a = make_atom(g, 2, 0.5, 1);
  CHECK(a.degenerate);
  CHECK(a.function.values.isZero());
  CHECK(validate_atom(a.function, 0.5, 2).ok);
  CHECK_THROWS(make_atom(g, 0, 0.5, 1));
  CHECK_THROWS(make_atom(g, 1, 1.5, 1));
}

TEST_CASE("perturbed atoms fail validation") {
  const auto g = make_group({2, 2, 2, 2, 2}, 5);
  for (double p : {0.25, 0.5, 1.0}) {
    const int level = 2;
    const Atom a = make_atom(g, level, p, 11);
    auto scaled = a.function;
    scaled.values *= 1.01;
    CHECK_FALSE(validate_atom(scaled, p, level).ok);
    auto doubled = a.function;
    doubled.values *= 2.0;
    CHECK_FALSE(validate_atom(doubled, p, level).ok);
    // Shift the integral over the support by 1e-6.
    auto shifted = a.function;
    const double delta = 1e-6 * static_cast<double>(g.cumprod(level));
    for (Index x = 0; x < g.size(); x += g.cumprod(level)) shifted.values[x] += delta;
    CHECK_FALSE(validate_atom(shifted, p, level).ok);
    auto leaking = a.function;
    leaking.values[1] = 1e-3;
    CHECK_FALSE(validate_atom(leaking, p, level).ok);
  }
}

TEST_CASE("strong sums") {
  const auto g = make_group({2, 2, 2, 2}, 4);
  const auto w = WeightSequence::constant(g.size());
  const auto zero = forward_transform(CylinderFunction::zero(g));
  CHECK(strong_sum_1a(zero, 0.25, w, g.size()) == 0.0);
  CHECK(strong_sum_1b(zero, w, g.size()) == 0.0);
  const auto one = forward_transform(CylinderFunction::constant(g, 1.0));
  double harmonic = 0.0;
  for (Index k = 1; k <= g.size(); ++k) harmonic += 1.0 / static_cast<double>(k);
  CHECK(strong_sum_1b(one, w, g.size()) == doctest::Approx(harmonic / 4.0));
  const Atom a = make_atom(g, 1, 0.25, 5);
  const auto s = forward_transform(a.function);
  double prev = 0.0;
  for (Index n = 1; n <= g.size(); ++n) {
    const double cur = strong_sum_1a(s, 0.25, w, n);
    CHECK(cur >= prev);
    prev = cur;
  }
  CHECK_THROWS(strong_sum_1a(s, 0.5, w, 4));
  CHECK_THROWS(strong_sum_1b(s, w, 1));
  CHECK(regularity_constant(w, g.size()) == doctest::Approx(1.0));
}

TEST_CASE("strong sum 1a against the brute-force pipeline") {
  const std::vector<int> radices = {2, 2, 3, 2};
  const auto g = make_group(radices, 4);
  const auto w = WeightSequence::constant(g.size());
  const std::vector<double> q(static_cast<std::size_t>(g.size()), 1.0);
  const Atom a = make_atom(g, 1, 0.25, 9);
  const auto s = forward_transform(a.function);
  const double ratio =
      strong_sum_1a(s, 0.25, w, g.size()) / std::pow(hardy_quasinorm(s, 0.25), 0.25);
  CHECK(ratio == doctest::Approx(oracle::strong_1a_ratio(oracle::Group{radices},
                                                         to_vec(a.function.values), q, 0.25))
                     .epsilon(1e-10));
}
