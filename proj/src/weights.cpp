#include "vilenkin/weights.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace vilenkin {

namespace {

Eigen::VectorXd cumulative(const Eigen::VectorXd &q) {
  Eigen::VectorXd Q(q.size() + 1);
  Q[0] = 0.0;
  for (Index k = 0; k < q.size(); ++k) Q[k + 1] = Q[k] + q[k];
  return Q;
}

void check_weights(const Eigen::VectorXd &q) {
  if (q.size() == 0) throw std::invalid_argument("weight sequence is empty");
  if (!(q[0] > 0.0)) throw std::invalid_argument("q_0 must be positive");
  for (Index k = 0; k < q.size(); ++k) {
    if (!std::isfinite(q[k])) {
      throw std::invalid_argument("weight q_" + std::to_string(k) +
                                  " is not finite");
    }
    if (k > 0 && q[k] < q[k - 1]) {
      throw std::invalid_argument("weights must be non-decreasing: q_" +
                                  std::to_string(k) + " < q_" +
                                  std::to_string(k - 1));
    }
  }
}

double parse_real(std::string_view s, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed " + std::string(what) + " '" +
                                std::string(s) + "'");
  }
  return v;
}

} // namespace

WeightSequence::WeightSequence(WeightKind kind, Eigen::VectorXd q,
                               std::string label)
    : kind_(kind), q_(std::move(q)), Q_(cumulative(q_)), label_(std::move(label)) {}

WeightSequence WeightSequence::constant(Index n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  return WeightSequence(WeightKind::constant, Eigen::VectorXd::Ones(n_max), "");
}

double iterated_log2_power(double k, double alpha, int beta) {
  if (k <= 0.0) return -std::numeric_limits<double>::infinity();
  double v = alpha * std::log2(k);
  for (int i = 1; i < beta; ++i) {
    if (v <= 0.0) return -std::numeric_limits<double>::infinity();
    v = std::log2(v);
  }
  return v;
}

WeightSequence WeightSequence::log_family(double alpha, int beta, Index n_max) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (beta < 1) throw std::invalid_argument("beta must be at least 1");
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  auto ok = [&](double k) { return iterated_log2_power(k, alpha, beta) >= 1.0; };
  // Smallest integer k0 >= 1 with log^{(beta)}(k0^alpha) >= 1.
  double hi = 1.0;
  while (!ok(hi)) {
    hi *= 2.0;
    if (hi > 0x1p52) {
      throw std::invalid_argument("iterated logarithm never reaches 1 in range");
    }
  }
  double lo = hi / 2.0;
  if (hi == 1.0) lo = 0.0;
  while (hi - lo > 1.0) {
    const double mid = std::floor((lo + hi) / 2.0);
    (ok(mid) ? hi : lo) = mid;
  }
  const double k0 = hi;
  Eigen::VectorXd q(n_max);
  for (Index k = 0; k < n_max; ++k) {
    q[k] = iterated_log2_power(std::max(static_cast<double>(k), k0), alpha, beta);
  }
  WeightSequence w(WeightKind::log_family, std::move(q), "");
  w.alpha_ = alpha;
  w.beta_ = beta;
  w.k0_ = static_cast<Index>(k0);
  check_weights(w.q_);
  return w;
}

WeightSequence WeightSequence::custom(std::vector<double> q, std::string label) {
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(q.data(),
                                                        static_cast<Index>(q.size()));
  check_weights(v);
  return WeightSequence(WeightKind::custom, std::move(v), std::move(label));
}

WeightSequence WeightSequence::unchecked(std::vector<double> q, std::string label) {
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(q.data(),
                                                        static_cast<Index>(q.size()));
  if (v.size() == 0 || !(v[0] > 0.0)) {
    throw std::invalid_argument("q_0 must be positive");
  }
  return WeightSequence(WeightKind::custom, std::move(v), std::move(label));
}

bool WeightSequence::non_decreasing() const {
  for (Index k = 1; k < q_.size(); ++k) {
    if (q_[k] < q_[k - 1]) return false;
  }
  return true;
}

std::string WeightSequence::describe() const {
  switch (kind_) {
  case WeightKind::constant:
    return "const";
  case WeightKind::log_family: {
    char buf[64];
    auto a = std::to_chars(buf, buf + sizeof(buf), alpha_);
    return "log:a=" + std::string(buf, a.ptr) + ",b=" + std::to_string(beta_);
  }
  case WeightKind::custom:
    return "custom:" + label_;
  }
  return "custom:" + label_;
}

std::vector<double> read_weight_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weight file '" + path + "'");
  std::vector<double> q;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    std::size_t start = line.find_first_not_of(' ');
    if (start == std::string::npos || line[start] == '#') continue;
    q.push_back(parse_real(std::string_view(line).substr(start), "weight"));
  }
  return q;
}

WeightSequence make_weights(std::string_view family, Index n_max) {
  if (family == "const") return WeightSequence::constant(n_max);
  if (family.rfind("log:", 0) == 0) {
    std::string_view rest = family.substr(4);
    double alpha = -1.0;
    double beta = -1.0;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      std::string_view item = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (item.rfind("a=", 0) == 0) {
        alpha = parse_real(item.substr(2), "alpha");
      } else if (item.rfind("b=", 0) == 0) {
        beta = parse_real(item.substr(2), "beta");
      } else {
        throw std::invalid_argument("unknown log-family field '" + std::string(item) + "'");
      }
    }
    if (beta != std::floor(beta)) {
      throw std::invalid_argument("beta must be a positive integer");
    }
    return WeightSequence::log_family(alpha, static_cast<int>(beta), n_max);
  }
  if (family.rfind("custom:", 0) == 0) {
    const std::string path(family.substr(7));
    auto q = read_weight_file(path);
    if (static_cast<Index>(q.size()) < n_max) {
      throw std::invalid_argument("weight file '" + path + "' has " +
                                  std::to_string(q.size()) +
                                  " values, need " + std::to_string(n_max));
    }
    q.resize(static_cast<std::size_t>(n_max));
    return WeightSequence::custom(std::move(q), path);
  }
  throw std::invalid_argument("unknown weight family '" + std::string(family) + "'");
}

double regularity_ratio(const WeightSequence &w, Index n) {
  if (n < 1 || n > w.n_max()) {
    throw std::out_of_range("regularity ratio index outside [1, n_max]");
  }
  return w.q(n - 1) / w.Q(n);
}

MaximalWeight::MaximalWeight(double p) : p_(p) {
  if (!(p > 0.0 && p <= 0.5)) {
    throw std::invalid_argument("maximal weight requires 0 < p <= 1/2");
  }
  log_power_ = 2 * static_cast<int>(std::floor(0.5 + p));
}

double MaximalWeight::operator()(Index n) const {
  const double x = static_cast<double>(n) + 1.0;
  double w = std::pow(x, 1.0 / p_ - 2.0);
  if (log_power_ != 0) w *= std::pow(std::log2(x), log_power_);
  return w;
}

} // namespace vilenkin
