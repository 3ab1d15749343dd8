#include "vilenkin/summability.hpp"

#include <cmath>
#include <stdexcept>

namespace vilenkin {

namespace {

void check_mean_index(Index n, const Spectrum &s, const WeightSequence &w) {
  if (n < 1 || n > s.spec.size()) {
    throw std::out_of_range("mean index " + std::to_string(n) +
                            " outside [1, M_N]");
  }
  if (n > w.n_max()) {
    throw std::out_of_range("weights provide Q_n only up to n = " +
                            std::to_string(w.n_max()));
  }
}

void check_finite(const Spectrum &s) {
  if (!s.coeffs.allFinite()) {
    throw std::invalid_argument("spectrum contains NaN or infinite values");
  }
}

} // namespace

Eigen::VectorXd norlund_multiplier(const WeightSequence &w, Index n, Index size) {
  Eigen::VectorXd mult = Eigen::VectorXd::Zero(size);
  const double qn = w.Q(n);
  for (Index j = 0; j < n; ++j) mult[j] = w.Q(n - j) / qn;
  return mult;
}

CylinderFunction norlund_mean(const Spectrum &s, Index n, const WeightSequence &w) {
  check_mean_index(n, s, w);
  return apply_multiplier(s, norlund_multiplier(w, n, s.spec.size()));
}

CylinderFunction fejer_mean(const Spectrum &s, Index n) {
  return norlund_mean(s, n, WeightSequence::constant(std::max<Index>(n, 1)));
}

Eigen::MatrixXcd norlund_means(const Spectrum &s, const WeightSequence &w,
                               Index n_max) {
  check_mean_index(n_max, s, w);
  Eigen::MatrixXcd out(s.spec.size(), n_max);
  for (Index n = 1; n <= n_max; ++n) {
    out.col(n - 1) = apply_multiplier(s, norlund_multiplier(w, n, s.spec.size())).values;
  }
  return out;
}

Eigen::VectorXd weighted_maximal(const Spectrum &s, double p, Index n_max,
                                 const WeightSequence &w) {
  const MaximalWeight weight(p);
  check_finite(s);
  return pointwise_sup(norlund_means(s, w, n_max),
                       [&](Index n) { return weight(n); });
}

Eigen::VectorXd unweighted_maximal(const Spectrum &s, Index n_max,
                                   const WeightSequence &w) {
  check_finite(s);
  return pointwise_sup(norlund_means(s, w, n_max), [](Index) { return 1.0; });
}

} // namespace vilenkin
