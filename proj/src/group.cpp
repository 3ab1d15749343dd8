#include "vilenkin/group.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vilenkin {

GroupSpec::GroupSpec(std::vector<int> radices, int level, int max_radix)
    : radices_(std::move(radices)), level_(level), max_radix_(max_radix) {
  if (level_ < 1) {
    throw std::invalid_argument("group level must be at least 1");
  }
  if (radices_.size() < static_cast<std::size_t>(level_)) {
    throw std::invalid_argument("group level " + std::to_string(level_) +
                                " exceeds the " +
                                std::to_string(radices_.size()) +
                                " supplied radices");
  }
  for (int m : radices_) {
    if (m < 2) {
      throw std::invalid_argument("radix " + std::to_string(m) +
                                  " is smaller than 2");
    }
    if (m > max_radix_) {
      throw std::invalid_argument("radix " + std::to_string(m) +
                                  " exceeds the declared bound " +
                                  std::to_string(max_radix_));
    }
  }
  cumprod_.reserve(static_cast<std::size_t>(level_) + 1);
  cumprod_.push_back(1);
  for (int k = 0; k < level_; ++k) {
    const Index m = radices_[static_cast<std::size_t>(k)];
    if (cumprod_.back() > std::numeric_limits<Index>::max() / m) {
      throw std::overflow_error("M_N overflows the index range");
    }
    cumprod_.push_back(cumprod_.back() * m);
    lcm_ = std::lcm(lcm_, m);
  }
}

std::vector<int> GroupSpec::radices() const {
  return {radices_.begin(), radices_.begin() + level_};
}

GroupSpec GroupSpec::at_level(int level) const {
  return GroupSpec(radices_, level, max_radix_);
}

std::string GroupSpec::describe() const {
  std::string out;
  for (int k = 0; k < level_; ++k) {
    if (k) out += ';';
    out += std::to_string(radix(k));
  }
  out += '@';
  out += std::to_string(level_);
  return out;
}

GroupSpec make_group(const std::vector<int> &radices, int level) {
  return GroupSpec(radices, level);
}

std::vector<int> parse_radices(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw std::invalid_argument("malformed radix list '" + std::string(text) +
                                  "'");
    }
    out.push_back(value);
    pos = end + 1;
  }
  return out;
}

GroupSpec parse_group(std::string_view radices, int level) {
  auto parsed = parse_radices(radices);
  const int n = level < 0 ? static_cast<int>(parsed.size()) : level;
  return GroupSpec(std::move(parsed), n);
}

std::vector<int> index_to_digits(Index n, const GroupSpec &spec) {
  if (n < 0 || n >= spec.size()) {
    throw std::out_of_range("index " + std::to_string(n) + " outside [0, " +
                            std::to_string(spec.size()) + ")");
  }
  std::vector<int> digits(static_cast<std::size_t>(spec.level()));
  for (int k = 0; k < spec.level(); ++k) {
    digits[static_cast<std::size_t>(k)] = static_cast<int>(n % spec.radix(k));
    n /= spec.radix(k);
  }
  return digits;
}

Index digits_to_index(const std::vector<int> &digits, const GroupSpec &spec) {
  if (digits.size() != static_cast<std::size_t>(spec.level())) {
    throw std::invalid_argument("digit count does not match the group level");
  }
  Index n = 0;
  for (int k = 0; k < spec.level(); ++k) {
    const int d = digits[static_cast<std::size_t>(k)];
    if (d < 0 || d >= spec.radix(k)) {
      throw std::out_of_range("digit " + std::to_string(d) + " at position " +
                              std::to_string(k) + " outside [0, " +
                              std::to_string(spec.radix(k)) + ")");
    }
    n += d * spec.cumprod(k);
  }
  return n;
}

Point point_of(Index cell, const GroupSpec &spec) {
  return Point{index_to_digits(cell, spec)};
}

Index index_of(const Point &x, const GroupSpec &spec) {
  return digits_to_index(x.digits, spec);
}

Point point_sub(const Point &x, const Point &t, const GroupSpec &spec) {
  // Validates both operands.
  index_of(x, spec);
  index_of(t, spec);
  Point out{std::vector<int>(x.digits.size())};
  for (int k = 0; k < spec.level(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    const int m = spec.radix(k);
    out.digits[i] = ((x.digits[i] - t.digits[i]) % m + m) % m;
  }
  return out;
}

Point point_add(const Point &x, const Point &t, const GroupSpec &spec) {
  index_of(x, spec);
  index_of(t, spec);
  Point out{std::vector<int>(x.digits.size())};
  for (int k = 0; k < spec.level(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    out.digits[i] = (x.digits[i] + t.digits[i]) % spec.radix(k);
  }
  return out;
}

Index index_sub(Index x, Index t, const GroupSpec &spec) {
  Index out = 0;
  for (int k = 0; k < spec.level(); ++k) {
    const Index m = spec.radix(k);
    const Index d = (x % m - t % m + m) % m;
    out += d * spec.cumprod(k);
    x /= m;
    t /= m;
  }
  return out;
}

int leading_index(Index n, const GroupSpec &spec) {
  if (n < 1 || n > spec.size()) {
    throw std::out_of_range("leading_index requires 1 <= n <= M_N, got " +
                            std::to_string(n));
  }
  int j = 0;
  while (j < spec.level() && spec.cumprod(j + 1) <= n) ++j;
  return j;
}

bool in_interval(Index cell, int level, const GroupSpec &spec) {
  return cell % spec.cumprod(level) == 0;
}

std::pair<int, int> annulus_of(Index cell, int level, const GroupSpec &spec) {
  int k = -1;
  for (int j = 0; j < level; ++j) {
    if (digit(cell, j, spec) != 0) {
      if (k < 0) {
        k = j;
      } else {
        return {k, j};
      }
    }
  }
  if (k < 0) return {-1, -1};
  return {k, level};
}

std::vector<AnnulusCell> annulus_partition(const GroupSpec &spec) {
  return annulus_partition(spec, spec.level());
}

std::vector<AnnulusCell> annulus_partition(const GroupSpec &spec, int level) {
  if (level < 1 || level > spec.level()) {
    throw std::out_of_range("annulus level must lie in [1, N]");
  }
  // Slot for (k, l) in row-major order over 0 <= k < l <= level.
  auto slot = [level](int k, int l) {
    return static_cast<std::size_t>(k * level - k * (k - 1) / 2 + (l - k - 1));
  };
  std::vector<AnnulusCell> cells;
  cells.reserve(static_cast<std::size_t>(level * (level + 1) / 2));
  for (int k = 0; k < level; ++k) {
    for (int l = k + 1; l <= level; ++l) {
      cells.push_back(AnnulusCell{k, l, {}});
    }
  }
  for (Index x = 0; x < spec.size(); ++x) {
    auto [k, l] = annulus_of(x, level, spec);
    if (k >= 0) cells[slot(k, l)].members.push_back(x);
  }
  return cells;
}

} // namespace vilenkin
