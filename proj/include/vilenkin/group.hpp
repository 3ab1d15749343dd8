#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace vilenkin {

using Index = Eigen::Index;

/// Truncation of a bounded Vilenkin group at a finite level N.
///
/// Holds the radix sequence m_0, m_1, ... and the cumulative products
/// M_0 = 1, M_{k+1} = m_k M_k up to M_N. Every cell and every frequency
/// below M_N is addressed by the same mixed-radix encoding (digit k weighted
/// by M_k). Radices beyond the level may be kept so that coarser or finer
/// truncations can be derived with at_level().
class GroupSpec {
public:
  static constexpr int kDefaultMaxRadix = 64;

  GroupSpec(std::vector<int> radices, int level,
            int max_radix = kDefaultMaxRadix);

  int level() const { return level_; }
  int max_radix() const { return max_radix_; }

  /// m_k for k < level().
  int radix(int k) const { return radices_[static_cast<std::size_t>(k)]; }

  /// M_k for 0 <= k <= level().
  Index cumprod(int k) const { return cumprod_[static_cast<std::size_t>(k)]; }

  /// M_N, the number of level-N cells.
  Index size() const { return cumprod_.back(); }

  const std::vector<Index> &cumprods() const { return cumprod_; }

  /// Radices actually used by this truncation (length level()).
  std::vector<int> radices() const;

  /// All radices supplied at construction, possibly more than level().
  const std::vector<int> &available_radices() const { return radices_; }

  GroupSpec at_level(int level) const;
  bool can_refine() const { return radices_.size() > static_cast<std::size_t>(level_); }

  /// Compact identifier, e.g. "2;3;4@3".
  std::string describe() const;

  /// Least common multiple of the radices in use; characters take values in
  /// the lcm-th roots of unity.
  Index radix_lcm() const { return lcm_; }

  friend bool operator==(const GroupSpec &a, const GroupSpec &b) {
    return a.level_ == b.level_ && a.radices() == b.radices();
  }

private:
  std::vector<int> radices_;
  int level_;
  int max_radix_;
  std::vector<Index> cumprod_;
  Index lcm_ = 1;
};

GroupSpec make_group(const std::vector<int> &radices, int level);

/// Parses "2,3,4" into radices. Whitespace around entries is ignored.
std::vector<int> parse_radices(std::string_view text);

/// Parses a radix list; level defaults to the number of radices.
GroupSpec parse_group(std::string_view radices, int level = -1);

/// A group element truncated at level N, stored as its digits x_0..x_{N-1}.
struct Point {
  std::vector<int> digits;

  friend bool operator==(const Point &, const Point &) = default;
};

std::vector<int> index_to_digits(Index n, const GroupSpec &spec);
Index digits_to_index(const std::vector<int> &digits, const GroupSpec &spec);

Point point_of(Index cell, const GroupSpec &spec);
Index index_of(const Point &x, const GroupSpec &spec);

/// x - t, coordinatewise modulo m_k.
Point point_sub(const Point &x, const Point &t, const GroupSpec &spec);
Point point_add(const Point &x, const Point &t, const GroupSpec &spec);

/// Index form of point_sub, without materializing digit vectors.
Index index_sub(Index x, Index t, const GroupSpec &spec);

/// Digit k of the mixed-radix expansion of n.
inline int digit(Index n, int k, const GroupSpec &spec) {
  return static_cast<int>((n / spec.cumprod(k)) % spec.radix(k));
}

/// The unique j with M_j <= n < M_{j+1}; requires 1 <= n < M_N.
/// n = M_N is accepted and yields N.
int leading_index(Index n, const GroupSpec &spec);

/// True when the first `level` digits of the cell vanish (cell lies in I_level).
bool in_interval(Index cell, int level, const GroupSpec &spec);

/// One piece I^{k,l} of the decomposition of the complement of I_level.
struct AnnulusCell {
  int k = 0;
  int l = 0;
  std::vector<Index> members;
};

/// Classifies the cell by the positions of its first two nonzero digits among
/// the leading `level` digits. Returns {k, l} with l == level when only one
/// nonzero digit occurs, or {-1, -1} for cells of I_level.
std::pair<int, int> annulus_of(Index cell, int level, const GroupSpec &spec);

/// Decomposition of the complement of I_N into the sets I_N^{k,l},
/// 0 <= k < l <= N, ordered by (k, l).
std::vector<AnnulusCell> annulus_partition(const GroupSpec &spec);

/// Same decomposition for the complement of I_level, with cells taken at the
/// spec's (finer) level.
std::vector<AnnulusCell> annulus_partition(const GroupSpec &spec, int level);

} // namespace vilenkin
