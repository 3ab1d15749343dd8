#include "vilenkin/kernels.hpp"

#include <stdexcept>

namespace vilenkin {

namespace {

void check_index(Index n, const GroupSpec &spec) {
  if (n < 1 || n > spec.size()) {
    throw std::out_of_range("kernel index " + std::to_string(n) +
                            " outside [1, M_N]");
  }
}

void check_weights(Index n, const WeightSequence &w) {
  if (n > w.n_max()) {
    throw std::out_of_range("weights provide Q_n only up to n = " +
                            std::to_string(w.n_max()));
  }
  if (!(w.Q(n) != 0.0)) throw std::invalid_argument("Q_n vanishes");
}

/// Columns D_1..D_n as a running sum of characters.
Eigen::MatrixXcd dirichlet_columns(const GroupSpec &spec, Index n) {
  Eigen::MatrixXcd d(spec.size(), n);
  Eigen::VectorXcd running = Eigen::VectorXcd::Zero(spec.size());
  for (Index k = 0; k < n; ++k) {
    running += character_vector(k, spec);
    d.col(k) = running;
  }
  return d;
}

} // namespace

std::string to_string(KernelKind kind) {
  switch (kind) {
  case KernelKind::dirichlet: return "dirichlet";
  case KernelKind::fejer: return "fejer";
  case KernelKind::fejer_closed: return "fejer-closed";
  case KernelKind::norlund: return "norlund";
  case KernelKind::norlund_abel: return "norlund-abel";
  case KernelKind::tail: return "tail";
  }
  return "unknown";
}

KernelFunction dirichlet_kernel(Index n, const GroupSpec &spec) {
  check_index(n, spec);
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(spec.size());
  for (Index k = 0; k < n; ++k) d += character_vector(k, spec);
  return {KernelKind::dirichlet, n, "", CylinderFunction(spec, std::move(d))};
}

KernelFunction fejer_kernel(Index n, const GroupSpec &spec) {
  check_index(n, spec);
  Eigen::VectorXcd running = Eigen::VectorXcd::Zero(spec.size());
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(spec.size());
  for (Index k = 0; k < n; ++k) {
    running += character_vector(k, spec);
    sum += running;
  }
  sum /= static_cast<double>(n);
  return {KernelKind::fejer, n, "const", CylinderFunction(spec, std::move(sum))};
}

KernelFunction fejer_kernel_closed(int j, const GroupSpec &spec) {
  if (j < 0 || j > spec.level()) {
    throw std::out_of_range("closed-form Fejér index j outside [0, N]");
  }
  const Index mj = spec.cumprod(j);
  Eigen::VectorXcd k = Eigen::VectorXcd::Zero(spec.size());
  for (Index x = 0; x < spec.size(); ++x) {
    if (in_interval(x, j, spec)) {
      k[x] = (static_cast<double>(mj) + 1.0) / 2.0;
      continue;
    }
    // t is the position of the first nonzero digit; t < j here.
    int t = 0;
    while (digit(x, t, spec) == 0) ++t;
    const Index without_t = x - digit(x, t, spec) * spec.cumprod(t);
    if (in_interval(without_t, j, spec)) {
      const Complex r = std::polar(1.0, 2.0 * std::numbers::pi * digit(x, t, spec) /
                                            spec.radix(t));
      k[x] = static_cast<double>(spec.cumprod(t)) / (1.0 - r);
    }
  }
  return {KernelKind::fejer_closed, mj, "const", CylinderFunction(spec, std::move(k))};
}

KernelFunction norlund_kernel(Index n, const WeightSequence &w,
                              const GroupSpec &spec) {
  check_index(n, spec);
  check_weights(n, w);
  Eigen::VectorXcd running = Eigen::VectorXcd::Zero(spec.size());
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(spec.size());
  for (Index k = 1; k <= n; ++k) {
    running += character_vector(k - 1, spec);
    f += w.q(n - k) * running;
  }
  f /= w.Q(n);
  return {KernelKind::norlund, n, w.describe(), CylinderFunction(spec, std::move(f))};
}

KernelFunction norlund_kernel_abel(Index n, const WeightSequence &w,
                                   const GroupSpec &spec) {
  check_index(n, spec);
  check_weights(n, w);
  Eigen::VectorXcd running_d = Eigen::VectorXcd::Zero(spec.size());
  Eigen::VectorXcd running_k = Eigen::VectorXcd::Zero(spec.size());
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(spec.size());
  for (Index j = 1; j <= n; ++j) {
    running_d += character_vector(j - 1, spec);
    running_k += running_d;  // j K_j
    const double c = j < n ? w.q(n - j) - w.q(n - j - 1) : w.q(0);
    if (c != 0.0) f += c * running_k;
  }
  f /= w.Q(n);
  return {KernelKind::norlund_abel, n, w.describe(),
          CylinderFunction(spec, std::move(f))};
}

KernelFunction tail_kernel(Index n, int tail_level, const WeightSequence &w,
                           const GroupSpec &spec) {
  if (tail_level < 0 || tail_level >= spec.level()) {
    throw std::out_of_range("tail level must satisfy 0 <= N0 < N");
  }
  const Index first = spec.cumprod(tail_level);
  if (n < first || n > spec.size()) {
    throw std::out_of_range("tail kernel requires M_N0 <= n <= M_N");
  }
  check_weights(n, w);
  Eigen::VectorXcd running = Eigen::VectorXcd::Zero(spec.size());
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(spec.size());
  for (Index j = 1; j <= n; ++j) {
    running += character_vector(j - 1, spec);
    if (j >= first) f += w.q(n - j) * running;
  }
  f /= w.Q(n);
  return {KernelKind::tail, n, w.describe(), CylinderFunction(spec, std::move(f))};
}

Eigen::MatrixXcd dirichlet_family(const GroupSpec &spec, Index n_max) {
  check_index(n_max, spec);
  return dirichlet_columns(spec, n_max);
}

Eigen::MatrixXcd fejer_family(const Eigen::MatrixXcd &dirichlet) {
  Eigen::MatrixXcd k(dirichlet.rows(), dirichlet.cols());
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(dirichlet.rows());
  for (Index n = 1; n <= dirichlet.cols(); ++n) {
    sum += dirichlet.col(n - 1);
    k.col(n - 1) = sum / static_cast<double>(n);
  }
  return k;
}

Eigen::MatrixXd norlund_coefficients(const WeightSequence &w, Index n_max) {
  return tail_coefficients(w, n_max, 1);
}

Eigen::MatrixXd norlund_abel_coefficients(const WeightSequence &w, Index n_max) {
  check_weights(n_max, w);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_max, n_max);
  for (Index n = 1; n <= n_max; ++n) {
    for (Index j = 1; j < n; ++j) {
      a(j - 1, n - 1) = (w.q(n - j) - w.q(n - j - 1)) * static_cast<double>(j) / w.Q(n);
    }
    a(n - 1, n - 1) = w.q(0) * static_cast<double>(n) / w.Q(n);
  }
  return a;
}

Eigen::MatrixXd tail_coefficients(const WeightSequence &w, Index n_max,
                                  Index first) {
  check_weights(n_max, w);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n_max, n_max);
  for (Index n = 1; n <= n_max; ++n) {
    for (Index k = std::max<Index>(first, 1); k <= n; ++k) {
      c(k - 1, n - 1) = w.q(n - k) / w.Q(n);
    }
  }
  return c;
}

} // namespace vilenkin
