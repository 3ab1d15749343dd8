#pragma once

#include <Eigen/Core>

#include "vilenkin/spectral.hpp"
#include "vilenkin/weights.hpp"

namespace vilenkin {

/// Spectral multiplier of t_n: Q_{n-j} / Q_n for j < n, zero otherwise.
///
/// Follows from exchanging the sums in (1/Q_n) sum_k q_{n-k} S_k f: the
/// coefficient of frequency j collects q_0 + ... + q_{n-j-1}.
Eigen::VectorXd norlund_multiplier(const WeightSequence &w, Index n, Index size);

/// t_n f = (1/Q_n) sum_{k=1}^n q_{n-k} S_k f.
CylinderFunction norlund_mean(const Spectrum &s, Index n, const WeightSequence &w);

/// sigma_n f, the Nörlund mean with q == 1.
CylinderFunction fejer_mean(const Spectrum &s, Index n);

/// Columns t_1 f .. t_{n_max} f.
Eigen::MatrixXcd norlund_means(const Spectrum &s, const WeightSequence &w,
                               Index n_max);

/// sup_{1 <= n <= n_max} |t_n f| / w_p(n) pointwise.
Eigen::VectorXd weighted_maximal(const Spectrum &s, double p, Index n_max,
                                 const WeightSequence &w);

/// sup_{1 <= n <= n_max} |t_n f| pointwise.
Eigen::VectorXd unweighted_maximal(const Spectrum &s, Index n_max,
                                   const WeightSequence &w);

/// Pointwise maxima of |column n| / divisor(n) over the columns of a family
/// of means, as used by both maximal operators.
template <typename Divisor>
Eigen::VectorXd pointwise_sup(const Eigen::MatrixXcd &means, Divisor divisor) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(means.rows());
  for (Index n = 1; n <= means.cols(); ++n) {
    out = out.cwiseMax(means.col(n - 1).cwiseAbs() / divisor(n));
  }
  return out;
}

} // namespace vilenkin
