#include "vilenkin/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "vilenkin/summability.hpp"

namespace vilenkin {

namespace {

std::string level_label(int level) { return "N'=" + std::to_string(level); }

double finite_max(double a, double b) {
  if (!std::isfinite(b)) return std::numeric_limits<double>::infinity();
  return std::max(a, b);
}

/// |F| for the columns n in [first, last] of kernel family F = D * C.
Eigen::MatrixXd kernel_magnitudes(const Eigen::MatrixXcd &dirichlet,
                                  const Eigen::MatrixXd &coeffs, Index first,
                                  Index last) {
  const Index count = last - first + 1;
  Eigen::MatrixXcd f = dirichlet * coeffs.middleCols(first - 1, count).cast<Complex>();
  return f.cwiseAbs();
}

VerificationReport lemma5_impl(const GroupSpec &spec, const WeightSequence &w,
                               int inner, bool tail) {
  if (inner < 1 || inner >= spec.level()) {
    throw std::out_of_range("inner level N0 must satisfy 1 <= N0 < N");
  }
  if (!w.non_decreasing()) {
    // Allowed for negative controls; the report records it.
  }
  const Index size = spec.size();
  const Index inner_size = spec.cumprod(inner);
  const Index first_n = tail ? inner_size : inner_size + 1;
  const Index last_n = size;
  const Index fibre = size / inner_size;

  const Eigen::MatrixXcd d = dirichlet_family(spec, size);
  const Eigen::MatrixXd coeffs =
      tail ? tail_coefficients(w, size, inner_size) : norlund_coefficients(w, size);
  const Eigen::MatrixXd mag = kernel_magnitudes(d, coeffs, first_n, last_n);

  // Points x outside I_{N0}, their annulus piece, and x - t for t in I_{N0}.
  struct Probe {
    Index x;
    std::size_t piece;
    std::vector<Index> shifted;
  };
  const auto pieces = annulus_partition(spec, inner);
  std::vector<Probe> probes;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (Index x : pieces[i].members) {
      Probe pr{x, i, std::vector<Index>(static_cast<std::size_t>(fibre))};
      for (Index u = 0; u < fibre; ++u) {
        pr.shifted[static_cast<std::size_t>(u)] = index_sub(x, u * inner_size, spec);
      }
      probes.push_back(std::move(pr));
    }
  }

  struct Best {
    double ratio = -1.0;
    double integral = 0.0;
    double bound = 0.0;
    Index n = 0;
    Index x = 0;
  };
  std::vector<Best> best(pieces.size());
  const double m_inner = static_cast<double>(inner_size);
  for (Index n = first_n; n <= last_n; ++n) {
    const auto col = mag.col(n - first_n);
    for (const auto &pr : probes) {
      double acc = 0.0;
      for (Index y : pr.shifted) acc += col[y];
      const double integral = acc / static_cast<double>(size);
      const auto &piece = pieces[pr.piece];
      const double mk = static_cast<double>(spec.cumprod(piece.k));
      const double ml = static_cast<double>(spec.cumprod(piece.l));
      double bound = 0.0;
      if (tail) {
        bound = ml * mk / (m_inner * m_inner);
      } else if (piece.l < inner) {
        bound = ml * mk / (static_cast<double>(n) * m_inner);
      } else {
        bound = mk / m_inner;
      }
      const double ratio = integral / bound;
      auto &b = best[pr.piece];
      if (ratio > b.ratio || !std::isfinite(ratio)) {
        b = Best{ratio, integral, bound, n, pr.x};
      }
    }
  }

  VerificationReport r;
  r.suite = tail ? "lemma5aaa" : "lemma5";
  r.spec = spec.describe();
  r.weights = w.describe();
  r.n_range = std::to_string(first_n) + ".." + std::to_string(last_n);
  double max_ratio = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto &b = best[i];
    r.records.push_back({"k=" + std::to_string(pieces[i].k) + ";l=" +
                             std::to_string(pieces[i].l),
                         b.integral, b.bound, b.ratio});
    max_ratio = finite_max(max_ratio, b.ratio);
  }
  r.summary.max_ratio = max_ratio;
  r.summary.estimated_constant = max_ratio;
  r.summary.pass = std::isfinite(max_ratio);
  r.summary.tolerance = std::numeric_limits<double>::infinity();
  r.summary.policy = "every ratio finite";
  r.details.emplace_back("inner_level", std::to_string(inner));
  r.details.emplace_back("weights_non_decreasing", w.non_decreasing() ? "true" : "false");
  return r;
}

} // namespace

double relative_drift(double previous, double current) {
  if (!std::isfinite(previous) || !std::isfinite(current) || previous == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return std::abs(current - previous) / std::abs(previous);
}

void parallel_for(Index count, int workers, const std::function<void(Index)> &fn) {
  const int threads = static_cast<int>(
      std::clamp<Index>(static_cast<Index>(std::max(workers, 1)), 1, std::max<Index>(count, 1)));
  if (threads == 1) {
    for (Index i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<Index> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (Index i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

VerificationReport verify_lemma2(const GroupSpec &spec, const ClosedFormKernel &closed) {
  VerificationReport r;
  r.suite = "lemma2";
  r.spec = spec.describe();
  r.weights = "const";
  r.n_range = "M_0..M_" + std::to_string(spec.level());
  // Summed Fejér kernels K_{M_j}, snapshotted from one pass over n.
  std::vector<Eigen::VectorXcd> summed;
  Eigen::VectorXcd running = Eigen::VectorXcd::Zero(spec.size());
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(spec.size());
  int next_j = 0;
  for (Index n = 1; n <= spec.size(); ++n) {
    running += character_vector(n - 1, spec);
    acc += running;
    if (n == spec.cumprod(next_j)) {
      summed.push_back(acc / static_cast<double>(n));
      ++next_j;
    }
  }
  double worst = 0.0;
  bool pass = true;
  for (int j = 0; j <= spec.level(); ++j) {
    const auto kc = closed(j, spec);
    const double diff =
        (kc.function.values - summed[static_cast<std::size_t>(j)]).cwiseAbs().maxCoeff();
    const double ratio = diff / kLemma2Tolerance;
    r.records.push_back({"j=" + std::to_string(j), diff, kLemma2Tolerance, ratio});
    worst = finite_max(worst, ratio);
    pass = pass && diff < kLemma2Tolerance;
  }
  r.summary.max_ratio = worst;
  r.summary.estimated_constant = worst * kLemma2Tolerance;
  r.summary.pass = pass;
  r.summary.tolerance = kLemma2Tolerance;
  r.summary.policy = "max |closed - summed| < tolerance for every j";
  return r;
}

KernelFunction corrupted_fejer_closed(int j, const GroupSpec &spec) {
  auto k = fejer_kernel_closed(j, spec);
  for (Index x = 0; x < spec.size(); ++x) {
    if (in_interval(x, j, spec)) continue;
    int t = 0;
    while (digit(x, t, spec) == 0) ++t;
    if (t + 1 <= spec.level()) {
      k.function.values[x] *= static_cast<double>(spec.cumprod(t + 1)) /
                              static_cast<double>(spec.cumprod(t));
    }
  }
  return k;
}

KernelConstants measure_kernel_constants(const GroupSpec &spec, const WeightSequence &w,
                                         int workers) {
  const Index size = spec.size();
  if (w.n_max() < size) throw std::invalid_argument("weights must cover n up to M_N");

  // K_n and F_n are synthesized from their multipliers one n at a time.
  auto fejer_at = [&](Index n) {
    Eigen::VectorXcd m = Eigen::VectorXcd::Zero(size);
    for (Index j = 0; j < n; ++j) {
      m[j] = static_cast<double>(n - j) / static_cast<double>(n);
    }
    vilenkin_transform_inplace(spec, m, Direction::inverse);
    return m;
  };

  // dominating[l] = sum_{i <= l} M_i |K_{M_i}|
  std::vector<Eigen::VectorXd> dominating;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(size);
  for (int l = 0; l <= spec.level(); ++l) {
    const Index ml = spec.cumprod(l);
    acc += static_cast<double>(ml) * fejer_at(ml).cwiseAbs();
    dominating.push_back(acc);
  }

  std::vector<KernelConstants> per_n(static_cast<std::size_t>(size));
  parallel_for(size, workers, [&](Index i) {
    const Index n = i + 1;
    const Eigen::VectorXd k = fejer_at(n).cwiseAbs();
    Eigen::VectorXcd fm = norlund_multiplier(w, n, size).cast<Complex>();
    vilenkin_transform_inplace(spec, fm, Direction::inverse);
    const Eigen::VectorXd f = fm.cwiseAbs();
    const auto &dom = dominating[static_cast<std::size_t>(leading_index(n, spec))];
    const double nd = static_cast<double>(n);
    auto &c = per_n[static_cast<std::size_t>(i)];
    c.fejer_l1 = k.mean();
    for (Index x = 0; x < size; ++x) {
      const double lhs_k = nd * k[x];
      const double lhs_f = nd * f[x];
      if (dom[x] < 1e-12) {
        ++c.excluded_cells;
        if (lhs_k >= 1e-9 || lhs_f >= 1e-9) ++c.excluded_violations;
        continue;
      }
      c.fejer_domination = std::max(c.fejer_domination, lhs_k / dom[x]);
      c.norlund_domination = std::max(c.norlund_domination, lhs_f / dom[x]);
    }
  });

  KernelConstants c;
  c.regularity = regularity_constant(w, size);
  for (const auto &part : per_n) {
    c.fejer_l1 = std::max(c.fejer_l1, part.fejer_l1);
    c.fejer_domination = std::max(c.fejer_domination, part.fejer_domination);
    c.norlund_domination = std::max(c.norlund_domination, part.norlund_domination);
    c.excluded_cells += part.excluded_cells;
    c.excluded_violations += part.excluded_violations;
  }
  return c;
}

VerificationReport verify_kernel_bounds(const GroupSpec &spec, const WeightSequence &w,
                                        double drift_tolerance, int workers) {
  if (!spec.can_refine()) {
    throw std::invalid_argument("kernel-bound stability needs a radix for level N + 1");
  }
  if (!w.non_decreasing()) {
    throw std::invalid_argument("kernel bounds require non-decreasing weights");
  }
  const GroupSpec finer = spec.at_level(spec.level() + 1);
  if (w.n_max() < finer.size()) {
    throw std::invalid_argument("weights must cover n up to M_{N+1}");
  }
  const auto coarse_c = measure_kernel_constants(spec, w, workers);
  const auto fine_c = measure_kernel_constants(finer, w, workers);

  VerificationReport r;
  r.suite = "kernel-bounds";
  r.spec = spec.describe();
  r.weights = w.describe();
  r.n_range = "1.." + std::to_string(finer.size());
  auto add = [&](const std::string &id, double prev, double cur) {
    r.records.push_back({id, cur, prev, cur / prev});
  };
  add("fejer_domination", coarse_c.fejer_domination, fine_c.fejer_domination);
  add("fejer_l1", coarse_c.fejer_l1, fine_c.fejer_l1);
  add("norlund_domination", coarse_c.norlund_domination, fine_c.norlund_domination);
  add("regularity", coarse_c.regularity, fine_c.regularity);

  const bool regular =
      relative_drift(coarse_c.regularity, fine_c.regularity) < drift_tolerance;
  bool pass = coarse_c.excluded_violations == 0 && fine_c.excluded_violations == 0;
  double max_ratio = 0.0;
  double constant = 0.0;
  for (const auto &rec : r.records) {
    const bool judged = rec.id != "regularity" && (rec.id != "norlund_domination" || regular);
    if (!judged) continue;
    pass = pass && std::isfinite(rec.lhs) &&
           relative_drift(rec.rhs, rec.lhs) < drift_tolerance;
    max_ratio = finite_max(max_ratio, rec.ratio);
    constant = finite_max(constant, rec.lhs);
  }
  r.summary.max_ratio = max_ratio;
  r.summary.estimated_constant = constant;
  r.summary.pass = pass;
  r.summary.tolerance = drift_tolerance;
  r.summary.policy = "each constant finite and |C(N+1)/C(N) - 1| < tolerance";
  r.details.emplace_back("excluded_cells",
                         std::to_string(coarse_c.excluded_cells + fine_c.excluded_cells));
  r.details.emplace_back("excluded_violations",
                         std::to_string(coarse_c.excluded_violations +
                                        fine_c.excluded_violations));
  r.details.emplace_back("norlund_domination_judged", regular ? "true" : "false");
  return r;
}

VerificationReport verify_lemma5(const GroupSpec &spec, const WeightSequence &w,
                                 int inner_level) {
  if (!w.non_decreasing()) {
    throw std::invalid_argument("the F_n integral estimate needs non-decreasing weights");
  }
  return lemma5_impl(spec, w, inner_level, false);
}

VerificationReport verify_lemma5aaa(const GroupSpec &spec, const WeightSequence &w,
                                    int inner_level) {
  return lemma5_impl(spec, w, inner_level, true);
}

VerificationReport stability_report(const std::string &suite,
                                    const std::vector<VerificationReport> &levels,
                                    const std::vector<std::string> &labels,
                                    double drift_tolerance) {
  if (levels.empty() || levels.size() != labels.size()) {
    throw std::invalid_argument("stability report needs one label per level");
  }
  VerificationReport r;
  r.suite = suite;
  r.spec = levels.front().spec;
  r.p = levels.front().p;
  r.weights = levels.front().weights;
  bool pass = true;
  double max_ratio = 0.0;
  double constant = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double c = levels[i].summary.estimated_constant;
    r.details.emplace_back(labels[i], format_double(c));
    pass = pass && levels[i].summary.pass && std::isfinite(c);
    constant = finite_max(constant, c);
    if (i == 0) continue;
    const double prev = levels[i - 1].summary.estimated_constant;
    r.records.push_back({labels[i - 1] + "->" + labels[i], c, prev, c / prev});
    max_ratio = finite_max(max_ratio, c / prev);
    pass = pass && relative_drift(prev, c) < drift_tolerance;
  }
  r.n_range = labels.front() + ".." + labels.back();
  r.summary.max_ratio = max_ratio;
  r.summary.estimated_constant = constant;
  r.summary.pass = pass;
  r.summary.tolerance = drift_tolerance;
  r.summary.policy = "every level passes and |C_i/C_{i-1} - 1| < tolerance";
  return r;
}

VerificationReport lemma5_sweep(const GroupSpec &spec, const WeightSequence &w,
                                const std::vector<int> &inner_levels, int offset,
                                bool tail, double drift_tolerance) {
  std::vector<VerificationReport> levels;
  std::vector<std::string> labels;
  for (int inner : inner_levels) {
    const int level = inner + offset;
    if (static_cast<std::size_t>(level) > spec.available_radices().size()) {
      throw std::invalid_argument("group has too few radices for N0 + offset = " +
                                  std::to_string(level));
    }
    const GroupSpec g = spec.at_level(level);
    levels.push_back(tail ? verify_lemma5aaa(g, w, inner) : verify_lemma5(g, w, inner));
    labels.push_back("N0=" + std::to_string(inner));
  }
  auto r = stability_report(tail ? "lemma5aaa" : "lemma5", levels, labels, drift_tolerance);
  r.spec = spec.describe();
  return r;
}

std::string to_string(Theorem which) {
  switch (which) {
  case Theorem::strong_1a: return "theorem1a";
  case Theorem::strong_1b: return "theorem1b";
  case Theorem::maximal_2: return "theorem2";
  }
  return "theorem";
}

Theorem parse_theorem(const std::string &name) {
  if (name == "theorem1a" || name == "1a") return Theorem::strong_1a;
  if (name == "theorem1b" || name == "1b") return Theorem::strong_1b;
  if (name == "theorem2" || name == "2") return Theorem::maximal_2;
  throw std::invalid_argument("unknown theorem '" + name + "'");
}

void check_theorem_parameters(Theorem which, double p) {
  switch (which) {
  case Theorem::strong_1a:
    if (!(p > 0.0 && p < 0.5)) throw std::invalid_argument("theorem1a requires 0 < p < 1/2");
    break;
  case Theorem::strong_1b:
    if (p != 0.5) throw std::invalid_argument("theorem1b requires p = 1/2");
    break;
  case Theorem::maximal_2:
    if (!(p > 0.0 && p <= 0.5)) throw std::invalid_argument("theorem2 requires 0 < p <= 1/2");
    break;
  }
}

double theorem_lhs(Theorem which, const Spectrum &s, double p, const WeightSequence &w,
                   Index n_max) {
  check_theorem_parameters(which, p);
  const Eigen::MatrixXcd means = norlund_means(s, w, n_max);
  switch (which) {
  case Theorem::strong_1a:
    return strong_sum_1a(means, p);
  case Theorem::strong_1b:
    return strong_sum_1b(means);
  case Theorem::maximal_2: {
    const MaximalWeight weight(p);
    const auto sup = pointwise_sup(means, [&](Index n) { return weight(n); });
    return std::pow(lp_quasinorm(sup, p), p);
  }
  }
  return 0.0;
}

VerificationReport verify_theorem(const GroupSpec &spec, const WeightSequence &w,
                                  const TheoremOptions &options) {
  check_theorem_parameters(options.which, options.p);
  if (options.which != Theorem::maximal_2 && !w.non_decreasing()) {
    throw std::invalid_argument("strong-sum theorems require non-decreasing weights");
  }
  const auto &levels = options.atoms.support_levels;
  if (levels.empty()) throw std::invalid_argument("no atom support levels given");
  for (int lev : levels) {
    if (lev < 1 || lev >= spec.level()) {
      throw std::out_of_range("atom support level must satisfy 1 <= N' < N");
    }
  }
  const Index n_max = options.n_max == 0 ? spec.size() : options.n_max;
  if (n_max < 1 || n_max > spec.size() || n_max > w.n_max()) {
    throw std::out_of_range("n_max outside [1, min(M_N, weights)]");
  }
  if (options.which == Theorem::strong_1b && n_max < 2) {
    throw std::invalid_argument("theorem1b needs n_max >= 2");
  }
  const Index count = options.atoms.count;
  const Index total = count * static_cast<Index>(levels.size());
  std::vector<CaseRecord> records(static_cast<std::size_t>(total));
  parallel_for(total, options.workers, [&](Index i) {
    const int level = levels[static_cast<std::size_t>(i / count)];
    const std::uint64_t seed = options.atoms.seed_base + static_cast<std::uint64_t>(i % count);
    const Atom atom = make_atom(spec, level, options.p, seed, options.atoms.resolution);
    const Spectrum s = forward_transform(atom.function);
    const double lhs = theorem_lhs(options.which, s, options.p, w, n_max);
    const double rhs = std::pow(hardy_quasinorm(s, options.p), options.p);
    records[static_cast<std::size_t>(i)] = {
        level_label(level) + ";seed=" + std::to_string(seed), lhs, rhs, lhs / rhs};
  });

  VerificationReport r;
  r.suite = to_string(options.which);
  r.spec = spec.describe();
  r.p = options.p;
  r.weights = w.describe();
  r.n_range = "1.." + std::to_string(n_max);
  r.seeds = std::to_string(options.atoms.seed_base) + "+" + std::to_string(count);
  r.details.emplace_back("atom_resolution", std::to_string(options.atoms.resolution));
  r.records = std::move(records);

  std::vector<double> level_max(levels.size(), 0.0);
  for (Index i = 0; i < total; ++i) {
    auto &m = level_max[static_cast<std::size_t>(i / count)];
    m = finite_max(m, r.records[static_cast<std::size_t>(i)].ratio);
  }
  bool pass = true;
  double overall = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    r.details.emplace_back("max_ratio_" + level_label(levels[i]), format_double(level_max[i]));
    overall = finite_max(overall, level_max[i]);
    pass = pass && std::isfinite(level_max[i]);
    if (i > 0) {
      const double drift = relative_drift(level_max[i - 1], level_max[i]);
      r.details.emplace_back("drift_" + level_label(levels[i - 1]) + "->" +
                                 level_label(levels[i]),
                             format_double(drift));
      pass = pass && drift < options.drift_tolerance;
    }
  }
  r.summary.max_ratio = overall;
  r.summary.estimated_constant = overall;
  r.summary.pass = pass;
  r.summary.tolerance = options.drift_tolerance;
  r.summary.policy =
      "per-level max ratio finite and |R(N'_i)/R(N'_{i-1}) - 1| < tolerance";
  return r;
}

VerificationReport explore_unboundedness(const GroupSpec &spec, const WeightSequence &w,
                                         double p, const AtomPlan &atoms, int workers) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::invalid_argument("exploration is defined for 0 < p < 1/2");
  }
  const auto &levels = atoms.support_levels;
  for (int lev : levels) {
    if (lev < 1 || lev >= spec.level()) {
      throw std::out_of_range("atom support level must satisfy 1 <= N' < N");
    }
  }
  const Index count = atoms.count;
  const Index total = count * static_cast<Index>(levels.size());
  const Index n_max = std::min(spec.size(), w.n_max());
  const MaximalWeight weight(p);
  struct Sample {
    double unweighted, weighted, hardy;
  };
  std::vector<Sample> samples(static_cast<std::size_t>(total));
  parallel_for(total, workers, [&](Index i) {
    const int level = levels[static_cast<std::size_t>(i / count)];
    const Atom atom = make_atom(spec, level, p, atoms.seed_base + static_cast<std::uint64_t>(i % count),
                                atoms.resolution);
    const Spectrum s = forward_transform(atom.function);
    const Eigen::MatrixXcd means = norlund_means(s, w, n_max);
    const auto plain = pointwise_sup(means, [](Index) { return 1.0; });
    const auto weighted = pointwise_sup(means, [&](Index n) { return weight(n); });
    samples[static_cast<std::size_t>(i)] = {weak_lp_quasinorm(plain, p),
                                            weak_lp_quasinorm(weighted, p),
                                            hardy_quasinorm(s, p)};
  });

  VerificationReport r;
  r.suite = "explore";
  r.spec = spec.describe();
  r.p = p;
  r.weights = w.describe();
  r.n_range = "1.." + std::to_string(n_max);
  r.seeds = std::to_string(atoms.seed_base) + "+" + std::to_string(count);
  r.details.emplace_back("atom_resolution", std::to_string(atoms.resolution));
  double overall = 0.0;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    CaseRecord plain{"unweighted;" + level_label(levels[li]), 0.0, 0.0, -1.0};
    CaseRecord weighted{"weighted;" + level_label(levels[li]), 0.0, 0.0, -1.0};
    for (Index a = 0; a < count; ++a) {
      const auto &smp = samples[li * static_cast<std::size_t>(count) + static_cast<std::size_t>(a)];
      if (smp.unweighted / smp.hardy > plain.ratio) {
        plain = {plain.id, smp.unweighted, smp.hardy, smp.unweighted / smp.hardy};
      }
      if (smp.weighted / smp.hardy > weighted.ratio) {
        weighted = {weighted.id, smp.weighted, smp.hardy, smp.weighted / smp.hardy};
      }
    }
    overall = finite_max(overall, plain.ratio);
    r.records.push_back(plain);
    r.records.push_back(weighted);
  }
  r.summary.max_ratio = overall;
  r.summary.estimated_constant = overall;
  r.summary.pass = true;
  r.summary.report_only = true;
  r.summary.tolerance = 0.0;
  r.summary.policy = "report only";
  return r;
}

} // namespace vilenkin
