#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "vilenkin/group.hpp"

namespace vilenkin {

enum class WeightKind { constant, log_family, custom };

/// Nörlund coefficients q_0..q_{n_max-1} with cumulative sums
/// Q_n = q_0 + ... + q_{n-1} for n = 0..n_max.
///
/// The public factories enforce q_0 > 0 and a non-decreasing sequence.
/// unchecked() exists only to build counterexamples for negative controls.
class WeightSequence {
public:
  static WeightSequence constant(Index n_max);

  /// q_k = log^{(beta)}(max(k, k0)^alpha), base-2 iterated logarithm, where k0
  /// is the smallest integer for which the iterated logarithm is at least 1.
  static WeightSequence log_family(double alpha, int beta, Index n_max);

  static WeightSequence custom(std::vector<double> q, std::string label = "");

  static WeightSequence unchecked(std::vector<double> q, std::string label);

  WeightKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  int beta() const { return beta_; }
  Index log_floor() const { return k0_; }

  /// Largest n for which Q_n is available.
  Index n_max() const { return q_.size(); }

  double q(Index k) const { return q_[k]; }
  double Q(Index n) const { return Q_[n]; }
  const Eigen::VectorXd &q_values() const { return q_; }
  const Eigen::VectorXd &Q_values() const { return Q_; }

  bool non_decreasing() const;

  /// CLI-style family string: "const", "log:a=1,b=2" or "custom:<label>".
  std::string describe() const;

private:
  WeightSequence(WeightKind kind, Eigen::VectorXd q, std::string label);

  WeightKind kind_;
  Eigen::VectorXd q_;
  Eigen::VectorXd Q_;
  std::string label_;
  double alpha_ = 0.0;
  int beta_ = 0;
  Index k0_ = 0;
};

/// log^{(beta)}(k^alpha) in base 2; -infinity where undefined.
double iterated_log2_power(double k, double alpha, int beta);

/// Parses "const", "log:a=<alpha>,b=<beta>" or "custom:<path>" (one q_k per
/// line). Custom files must provide at least n_max values; extra values are
/// dropped.
WeightSequence make_weights(std::string_view family, Index n_max);

std::vector<double> read_weight_file(const std::string &path);

/// q_{n-1} / Q_n.
double regularity_ratio(const WeightSequence &w, Index n);

/// Weight (n+1)^{1/p-2} log2^{2[1/2+p]}(n+1) of the weighted maximal operator.
class MaximalWeight {
public:
  explicit MaximalWeight(double p);

  double p() const { return p_; }
  int log_power() const { return log_power_; }
  double operator()(Index n) const;

private:
  double p_;
  int log_power_;
};

} // namespace vilenkin
