#pragma once

#include <string>

#include <Eigen/Core>

#include "vilenkin/spectral.hpp"
#include "vilenkin/weights.hpp"

namespace vilenkin {

enum class KernelKind { dirichlet, fejer, fejer_closed, norlund, norlund_abel, tail };

std::string to_string(KernelKind kind);

struct KernelFunction {
  KernelKind kind;
  Index n;
  std::string weights;
  CylinderFunction function;
};

/// D_n = psi_0 + ... + psi_{n-1}, 1 <= n <= M_N.
KernelFunction dirichlet_kernel(Index n, const GroupSpec &spec);

/// K_n = (D_1 + ... + D_n) / n.
KernelFunction fejer_kernel(Index n, const GroupSpec &spec);

/// Closed form of K_{M_j}, 0 <= j <= N:
///   (M_j + 1) / 2        on I_j,
///   M_t / (1 - r_t(x))   if x in I_t \ I_{t+1} and x - x_t e_t in I_j (t < j),
///   0                    otherwise.
KernelFunction fejer_kernel_closed(int j, const GroupSpec &spec);

/// F_n = (1/Q_n) sum_{k=1}^n q_{n-k} D_k.
KernelFunction norlund_kernel(Index n, const WeightSequence &w,
                              const GroupSpec &spec);

/// F_n through summation by parts:
///   (1/Q_n) (sum_{j=1}^{n-1} (q_{n-j} - q_{n-j-1}) j K_j + q_0 n K_n).
KernelFunction norlund_kernel_abel(Index n, const WeightSequence &w,
                                   const GroupSpec &spec);

/// (1/Q_n) sum_{j=M_{N0}}^{n} q_{n-j} D_j for M_{N0} <= n <= M_N, N0 < N.
KernelFunction tail_kernel(Index n, int tail_level, const WeightSequence &w,
                           const GroupSpec &spec);

// Kernel families: column n-1 holds the kernel of index n, n = 1..n_max.
// Used by the sweeps, which need every n at once.

Eigen::MatrixXcd dirichlet_family(const GroupSpec &spec, Index n_max);

/// Fejér family from a Dirichlet family (running mean of its columns).
Eigen::MatrixXcd fejer_family(const Eigen::MatrixXcd &dirichlet);

/// Coefficient matrix C with F = D * C: C(k-1, n-1) = q_{n-k} / Q_n, k <= n.
Eigen::MatrixXd norlund_coefficients(const WeightSequence &w, Index n_max);

/// Coefficient matrix A with F = K * A from the summation-by-parts form.
Eigen::MatrixXd norlund_abel_coefficients(const WeightSequence &w, Index n_max);

/// Tail coefficients: column n-1 keeps only rows j-1 with j >= first.
Eigen::MatrixXd tail_coefficients(const WeightSequence &w, Index n_max,
                                  Index first);

} // namespace vilenkin
