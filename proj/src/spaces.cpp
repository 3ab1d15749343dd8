#include "vilenkin/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "vilenkin/summability.hpp"

namespace vilenkin {

namespace {

void check_p(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("quasi-norm exponent must be positive");
}

double unit_interval_draw(std::mt19937_64 &gen) {
  return static_cast<double>(gen() >> 11) * 0x1p-53;
}

} // namespace

double lp_quasinorm(const Eigen::Ref<const Eigen::VectorXd> &magnitudes, double p,
                    double scale) {
  check_p(p);
  if (magnitudes.size() == 0) return 0.0;
  const Eigen::ArrayXd mag = magnitudes.array().abs();
  const double floor = kLpNoiseFloor * std::max(scale, mag.maxCoeff());
  const double mean = (mag > floor).select(mag.pow(p), 0.0).sum() /
                      static_cast<double>(magnitudes.size());
  return std::pow(mean, 1.0 / p);
}

double lp_quasinorm(const CylinderFunction &f, double p) {
  return lp_quasinorm(f.values.cwiseAbs(), p);
}

double weak_lp_quasinorm(const Eigen::Ref<const Eigen::VectorXd> &magnitudes, double p) {
  check_p(p);
  std::vector<double> v(magnitudes.data(), magnitudes.data() + magnitudes.size());
  for (double &x : v) x = std::abs(x);
  std::sort(v.begin(), v.end(), std::greater<>());
  const double total = static_cast<double>(v.size());
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    // Only the last position of a run of equal values counts all of them.
    if (i + 1 < v.size() && v[i + 1] == v[i]) continue;
    const double measure = static_cast<double>(i + 1) / total;
    best = std::max(best, v[i] * std::pow(measure, 1.0 / p));
  }
  return best;
}

double weak_lp_quasinorm(const CylinderFunction &f, double p) {
  return weak_lp_quasinorm(f.values.cwiseAbs(), p);
}

Eigen::VectorXd maximal_function(const Spectrum &s) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(s.spec.size());
  for (int n = 0; n <= s.spec.level(); ++n) {
    out = out.cwiseMax(partial_sum(s, s.spec.cumprod(n)).values.cwiseAbs());
  }
  return out;
}

double hardy_quasinorm(const Spectrum &s, double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("Hardy quasi-norm requires 0 < p <= 1");
  }
  return lp_quasinorm(maximal_function(s), p);
}

AtomCheck validate_atom(const CylinderFunction &f, double p, int support_level) {
  const GroupSpec &spec = f.spec;
  if (!(p > 0.0 && p <= 1.0)) return {false, "p outside (0, 1]"};
  if (support_level < 0 || support_level > spec.level()) {
    return {false, "support level outside [0, N]"};
  }
  const double mass = static_cast<double>(spec.cumprod(support_level));
  const double bound = std::pow(mass, 1.0 / p);
  Complex integral = 0.0;
  double sup = 0.0;
  for (Index x = 0; x < spec.size(); ++x) {
    const Complex v = f.values[x];
    if (!in_interval(x, support_level, spec)) {
      if (v != Complex(0.0)) return {false, "nonzero outside the support interval"};
      continue;
    }
    integral += v;
    sup = std::max(sup, std::abs(v));
  }
  integral /= static_cast<double>(spec.size());
  const double mean_tol = 1e-12 * std::max(1.0, bound / mass);
  if (std::abs(integral) > mean_tol) return {false, "mean over the support is not zero"};
  if (sup > bound * (1.0 + 1e-12)) return {false, "sup norm exceeds mu(I)^{-1/p}"};
  return {};
}

Atom make_atom(const GroupSpec &spec, int support_level, double p,
               std::uint64_t seed, int resolution) {
  if (support_level < 1 || support_level > spec.level()) {
    throw std::out_of_range("atom support level must lie in [1, N]");
  }
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("atom requires 0 < p <= 1");
  if (resolution < 0) throw std::invalid_argument("atom resolution must be >= 0");
  const Index stride = spec.cumprod(support_level);
  const Index cells = spec.size() / stride;
  const int fine_level =
      resolution == 0 ? spec.level() : std::min(spec.level(), support_level + resolution);
  const Index drawn = spec.cumprod(fine_level) / stride;
  Atom atom{CylinderFunction::zero(spec), p, support_level, seed, false};
  if (drawn == 1) {
    atom.degenerate = true;
    return atom;
  }
  const double bound = std::pow(static_cast<double>(stride), 1.0 / p);
  std::uint64_t state = seed;
  for (;;) {
    std::mt19937_64 gen(state);
    Eigen::VectorXd v(drawn);
    for (Index i = 0; i < drawn; ++i) v[i] = 2.0 * unit_interval_draw(gen) - 1.0;
    v.array() -= v.mean();
    const double peak = v.cwiseAbs().maxCoeff();
    if (peak > 1e-9) {
      v *= bound / peak;
      for (Index i = 0; i < cells; ++i) atom.function.values[i * stride] = v[i % drawn];
      return atom;
    }
    state += 0x9E3779B97F4A7C15ULL;
  }
}

double strong_sum_1a(const Eigen::MatrixXcd &means, double p) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::invalid_argument("the strong sum of type 1a requires 0 < p < 1/2");
  }
  const double scale = means.cwiseAbs().maxCoeff();
  double total = 0.0;
  for (Index k = 1; k <= means.cols(); ++k) {
    const double norm_p = std::pow(lp_quasinorm(means.col(k - 1).cwiseAbs(), p, scale), p);
    total += norm_p / std::pow(static_cast<double>(k), 2.0 - 2.0 * p);
  }
  return total;
}

double strong_sum_1b(const Eigen::MatrixXcd &means) {
  if (means.cols() < 2) throw std::invalid_argument("strong sum 1b requires n_max >= 2");
  const double scale = means.cwiseAbs().maxCoeff();
  double total = 0.0;
  for (Index k = 1; k <= means.cols(); ++k) {
    total += std::sqrt(lp_quasinorm(means.col(k - 1).cwiseAbs(), 0.5, scale)) /
             static_cast<double>(k);
  }
  return total / std::log2(static_cast<double>(means.cols()));
}

double strong_sum_1a(const Spectrum &s, double p, const WeightSequence &w,
                     Index n_max) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::invalid_argument("the strong sum of type 1a requires 0 < p < 1/2");
  }
  return strong_sum_1a(norlund_means(s, w, n_max), p);
}

double strong_sum_1b(const Spectrum &s, const WeightSequence &w, Index n_max) {
  if (n_max < 2) throw std::invalid_argument("strong sum 1b requires n_max >= 2");
  return strong_sum_1b(norlund_means(s, w, n_max));
}

double regularity_constant(const WeightSequence &w, Index n_max) {
  double c = 0.0;
  for (Index n = 2; n <= std::min(n_max, w.n_max()); ++n) {
    c = std::max(c, static_cast<double>(n) * regularity_ratio(w, n));
  }
  return c;
}

} // namespace vilenkin
