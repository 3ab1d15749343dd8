#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vilenkin/kernels.hpp"
#include "vilenkin/spaces.hpp"
#include "vilenkin/weights.hpp"

namespace vilenkin {

struct CaseRecord {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct ReportSummary {
  double max_ratio = 0.0;
  double estimated_constant = 0.0;
  bool pass = false;
  /// Threshold the pass flag was judged against.
  double tolerance = 0.0;
  /// How the pass flag was derived from the records and the tolerance.
  std::string policy;
  /// Report-only suites always pass.
  bool report_only = false;
};

/// Measured quantities of one verification suite. The pass flag is a pure
/// function of the records and the policy named in the summary.
struct VerificationReport {
  std::string suite;
  std::string spec;
  std::optional<double> p;
  std::string weights;
  std::string n_range;
  std::string seeds;
  std::vector<CaseRecord> records;
  ReportSummary summary;
  /// Additional named values (bookkeeping counts, per-level constants).
  std::vector<std::pair<std::string, std::string>> details;
};

inline constexpr std::uint64_t kDefaultSeedBase = 0x5EED;
inline constexpr int kDefaultAtomCount = 50;
inline constexpr double kKernelDriftTolerance = 0.10;
inline constexpr double kTheoremDriftTolerance = 0.15;
inline constexpr double kLemma2Tolerance = 1e-10;
inline constexpr int kTheoremAtomResolution = 4;

/// Relative change |current - previous| / previous.
double relative_drift(double previous, double current);

// ---------------------------------------------------------------------------
// Kernel lemmas

using ClosedFormKernel = std::function<KernelFunction(int, const GroupSpec &)>;

/// Compares the closed form of K_{M_j} against the summed Fejér kernel for
/// every j <= N; passes when the largest deviation is below 1e-10.
VerificationReport verify_lemma2(const GroupSpec &spec,
                                 const ClosedFormKernel &closed = fejer_kernel_closed);

/// Closed form with M_{t+1} in place of M_t; used as a negative control.
KernelFunction corrupted_fejer_closed(int j, const GroupSpec &spec);

struct KernelConstants {
  /// max n |K_n(x)| / sum_{l <= |n|} M_l |K_{M_l}(x)|
  double fejer_domination = 0.0;
  /// max_n ||K_n||_1
  double fejer_l1 = 0.0;
  /// max n |F_n(x)| / sum_{j <= |n|} M_j |K_{M_j}(x)|
  double norlund_domination = 0.0;
  /// max_{n >= 2} n q_{n-1} / Q_n
  double regularity = 0.0;
  /// Cells skipped because the dominating sum was below 1e-12.
  Index excluded_cells = 0;
  /// Skipped cells where the dominated side was not below 1e-9.
  Index excluded_violations = 0;
};

KernelConstants measure_kernel_constants(const GroupSpec &spec,
                                         const WeightSequence &w, int workers = 1);

/// Measures the constants at level N and N + 1 (the group must carry a radix
/// for level N + 1) and passes when each is finite and drifts by less than
/// the tolerance.
VerificationReport verify_kernel_bounds(const GroupSpec &spec, const WeightSequence &w,
                                        double drift_tolerance = kKernelDriftTolerance,
                                        int workers = 1);

/// Integral estimates over I_{N0} for x in the annulus pieces I_{N0}^{k,l}.
///
/// verify_lemma5 uses the full kernel F_n with n in (M_{N0}, M_N] and the
/// bounds M_l M_k / (n M_{N0}) (l < N0) and M_k / M_{N0} (l = N0).
/// verify_lemma5aaa uses the tail kernel with n in [M_{N0}, M_N] and the bound
/// M_l M_k / M_{N0}^2. Records hold, per (k, l), the integral and bound at the
/// maximizing (n, x). Both pass when every ratio is finite.
VerificationReport verify_lemma5(const GroupSpec &spec, const WeightSequence &w,
                                 int inner_level);
VerificationReport verify_lemma5aaa(const GroupSpec &spec, const WeightSequence &w,
                                    int inner_level);

/// Runs a lemma over several inner levels N0 with the group truncated at
/// N0 + offset and judges the drift of the estimated constants.
VerificationReport lemma5_sweep(const GroupSpec &spec, const WeightSequence &w,
                                const std::vector<int> &inner_levels, int offset,
                                bool tail, double drift_tolerance = kKernelDriftTolerance);

/// Combines per-level reports into one whose records compare consecutive
/// estimated constants (lhs = current, rhs = previous, ratio = drift).
VerificationReport stability_report(const std::string &suite,
                                    const std::vector<VerificationReport> &levels,
                                    const std::vector<std::string> &labels,
                                    double drift_tolerance);

// ---------------------------------------------------------------------------
// Theorem sweeps over atoms

enum class Theorem { strong_1a, strong_1b, maximal_2 };

std::string to_string(Theorem which);
Theorem parse_theorem(const std::string &name);

struct AtomPlan {
  std::uint64_t seed_base = kDefaultSeedBase;
  int count = kDefaultAtomCount;
  std::vector<int> support_levels;
  /// Levels of random detail below N'; see make_atom. 0 means full.
  int resolution = 0;
};

struct TheoremOptions {
  Theorem which = Theorem::strong_1a;
  double p = 0.25;
  AtomPlan atoms;
  /// Largest mean index; 0 selects M_N.
  Index n_max = 0;
  double drift_tolerance = kTheoremDriftTolerance;
  int workers = 1;
};

/// Checks the p range each theorem is stated for; throws on mismatch.
void check_theorem_parameters(Theorem which, double p);

/// LHS of the theorem for one function given its spectrum.
double theorem_lhs(Theorem which, const Spectrum &s, double p, const WeightSequence &w,
                   Index n_max);

/// For every atom: LHS per the theorem and RHS = ||a||_{H_p}^p. Passes when
/// the per-level maximum ratio drifts by less than the tolerance between
/// consecutive support levels.
VerificationReport verify_theorem(const GroupSpec &spec, const WeightSequence &w,
                                  const TheoremOptions &options);

/// Growth of ||t* a||_{weak-L_p} / ||a||_{H_p} (unweighted maximal operator)
/// over support levels, with the weighted operator alongside for comparison.
/// Report only.
VerificationReport explore_unboundedness(const GroupSpec &spec, const WeightSequence &w,
                                         double p, const AtomPlan &atoms,
                                         int workers = 1);

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Each index is
/// processed exactly once; callers write results into per-index slots.
void parallel_for(Index count, int workers, const std::function<void(Index)> &fn);

// ---------------------------------------------------------------------------
// Report emission

enum class ReportFormat { csv, json };

ReportFormat parse_format(const std::string &name);

/// CSV: one header row, then one row per case; every row repeats the suite
/// metadata (suite, spec, p, weights, tolerance).
void write_csv(std::ostream &out, const VerificationReport &r);
std::string to_json(const VerificationReport &r);
VerificationReport report_from_json(const std::string &text);

/// Writes the report to `path`; throws std::runtime_error on I/O failure.
void emit_report(const VerificationReport &r, ReportFormat format,
                 const std::string &path);

} // namespace vilenkin
