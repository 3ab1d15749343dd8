#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "vilenkin/spectral.hpp"
#include "vilenkin/weights.hpp"

namespace vilenkin {

/// Magnitudes at or below this fraction of a reference scale are rounding
/// noise and count as zero in lp_quasinorm. For p < 1 a residue of 1e-17
/// would otherwise contribute 1e-17^p, which is far from negligible.
inline constexpr double kLpNoiseFloor = 1e-13;

/// (mean of |f|^p)^{1/p}, p > 0, with the noise floor taken relative to the
/// larger of `scale` and the largest magnitude. Pass the scale of a whole
/// family (e.g. all means of one function) when some members vanish exactly.
double lp_quasinorm(const CylinderFunction &f, double p);
double lp_quasinorm(const Eigen::Ref<const Eigen::VectorXd> &magnitudes, double p,
                    double scale = 0.0);

/// sup_lambda lambda mu(|f| > lambda)^{1/p}, evaluated exactly over the
/// values the simple function attains.
double weak_lp_quasinorm(const CylinderFunction &f, double p);
double weak_lp_quasinorm(const Eigen::Ref<const Eigen::VectorXd> &magnitudes, double p);

/// f* = max_{0 <= n <= N} |S_{M_n} f|.
Eigen::VectorXd maximal_function(const Spectrum &s);

/// ||f*||_p for 0 < p <= 1.
double hardy_quasinorm(const Spectrum &s, double p);

/// A p-atom supported on I_{support_level}(0).
struct Atom {
  CylinderFunction function;
  double p;
  int support_level;
  std::uint64_t seed;
  /// Set when the support is a single cell and the only admissible atom is 0.
  bool degenerate = false;
};

struct AtomCheck {
  bool ok = true;
  std::string reason;
};

/// Checks support, vanishing mean and the sup bound M_{N'}^{1/p}.
/// The mean tolerance is 1e-12 relative to the largest admissible
/// integral M_{N'}^{1/p - 1} (absolute below 1); the sup bound allows a
/// relative excess of 1e-12.
AtomCheck validate_atom(const CylinderFunction &f, double p, int support_level);

/// Seeded random p-atom: uniform values on the cells of I_{N'}, projected to
/// zero mean and rescaled so that max |a| = M_{N'}^{1/p}.
///
/// With resolution L > 0 the values are drawn on level N' + L (capped at N)
/// and held constant on finer cells, so atoms at different N' are rescaled
/// copies of one another. Resolution 0 draws at level N.
Atom make_atom(const GroupSpec &spec, int support_level, double p,
               std::uint64_t seed, int resolution = 0);

/// sum_{k=1}^{n_max} ||t_k f||_p^p / k^{2-2p}, 0 < p < 1/2.
double strong_sum_1a(const Spectrum &s, double p, const WeightSequence &w,
                     Index n_max);

/// (1/log2 n_max) sum_{k=1}^{n_max} ||t_k f||_{1/2}^{1/2} / k, n_max >= 2.
double strong_sum_1b(const Spectrum &s, const WeightSequence &w, Index n_max);

/// The same sums evaluated on precomputed means (column k-1 holds t_k f).
double strong_sum_1a(const Eigen::MatrixXcd &means, double p);
double strong_sum_1b(const Eigen::MatrixXcd &means);

/// max_{2 <= n <= n_max} n q_{n-1} / Q_n, the finite-range proxy for
/// q_{n-1}/Q_n = O(1/n).
double regularity_constant(const WeightSequence &w, Index n_max);

} // namespace vilenkin
