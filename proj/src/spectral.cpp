#include "vilenkin/spectral.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace vilenkin {

namespace {

/// Roots of unity of order L = lcm(m_k); psi_n(x) = roots[phase(n, x)].
struct PhaseTable {
  explicit PhaseTable(const GroupSpec &spec) : spec(spec) {
    const Index order = spec.radix_lcm();
    roots.resize(order);
    for (Index r = 0; r < order; ++r) {
      roots[r] = std::polar(1.0, 2.0 * std::numbers::pi *
                                     static_cast<double>(r) /
                                     static_cast<double>(order));
    }
    for (int k = 0; k < spec.level(); ++k) {
      weight.push_back(order / spec.radix(k));
    }
  }

  Index phase(Index n, Index x) const {
    const Index order = spec.radix_lcm();
    Index acc = 0;
    for (int k = 0; k < spec.level(); ++k) {
      const Index m = spec.radix(k);
      acc += (n % m) * (x % m) * weight[static_cast<std::size_t>(k)];
      n /= m;
      x /= m;
    }
    return acc % order;
  }

  const GroupSpec &spec;
  Eigen::VectorXcd roots;
  std::vector<Index> weight;
};

void check_frequency(Index n, const GroupSpec &spec) {
  if (n < 0 || n >= spec.size()) {
    throw std::out_of_range("frequency " + std::to_string(n) +
                            " outside [0, M_N)");
  }
}

} // namespace

Complex haar_integrate(const CylinderFunction &f) {
  return f.values.sum() / static_cast<double>(f.spec.size());
}

CylinderFunction interval_indicator(const GroupSpec &spec, int level) {
  if (level < 0 || level > spec.level()) {
    throw std::out_of_range("interval level outside [0, N]");
  }
  auto f = CylinderFunction::zero(spec);
  for (Index x = 0; x < spec.size(); x += spec.cumprod(level)) {
    f.values[x] = 1.0;
  }
  return f;
}

Complex rademacher(int k, const Point &x, const GroupSpec &spec) {
  if (k < 0 || k >= spec.level()) {
    throw std::out_of_range("Rademacher index " + std::to_string(k) +
                            " outside [0, N)");
  }
  index_of(x, spec);
  const int xk = x.digits[static_cast<std::size_t>(k)];
  if (xk == 0) return 1.0;
  return std::polar(1.0, 2.0 * std::numbers::pi * xk / spec.radix(k));
}

Complex character(Index n, const Point &x, const GroupSpec &spec) {
  check_frequency(n, spec);
  const auto nd = index_to_digits(n, spec);
  Complex out = 1.0;
  for (int k = 0; k < spec.level(); ++k) {
    const int power = nd[static_cast<std::size_t>(k)];
    if (power != 0) out *= std::pow(rademacher(k, x, spec), power);
  }
  return out;
}

Eigen::VectorXcd character_vector(Index n, const GroupSpec &spec) {
  check_frequency(n, spec);
  PhaseTable table(spec);
  Eigen::VectorXcd out(spec.size());
  for (Index x = 0; x < spec.size(); ++x) {
    out[x] = table.roots[table.phase(n, x)];
  }
  return out;
}

Eigen::MatrixXcd character_matrix(const GroupSpec &spec) {
  PhaseTable table(spec);
  Eigen::MatrixXcd out(spec.size(), spec.size());
  for (Index n = 0; n < spec.size(); ++n) {
    for (Index x = 0; x < spec.size(); ++x) {
      out(x, n) = table.roots[table.phase(n, x)];
    }
  }
  return out;
}

Spectrum naive_transform(const CylinderFunction &f) {
  Eigen::MatrixXcd col = f.values;
  return {f.spec, naive_transform_columns(f.spec, col).col(0)};
}

Eigen::MatrixXcd naive_transform_columns(const GroupSpec &spec,
                                         const Eigen::MatrixXcd &columns) {
  if (columns.rows() != spec.size()) {
    throw std::invalid_argument("naive transform input length mismatch");
  }
  const Eigen::MatrixXcd psi = character_matrix(spec);
  Eigen::MatrixXcd out = psi.adjoint() * columns;
  out /= static_cast<double>(spec.size());
  return out;
}

Spectrum forward_transform(const CylinderFunction &f) {
  return {f.spec, vilenkin_transform(f.spec, f.values, Direction::forward)};
}

CylinderFunction inverse_transform(const Spectrum &s) {
  return {s.spec, vilenkin_transform(s.spec, s.coeffs, Direction::inverse)};
}

CylinderFunction partial_sum(const Spectrum &s, Index n) {
  if (n < 0 || n > s.spec.size()) {
    throw std::out_of_range("partial sum index " + std::to_string(n) +
                            " outside [0, M_N]");
  }
  Eigen::VectorXcd c = s.coeffs;
  c.tail(s.spec.size() - n).setZero();
  vilenkin_transform_inplace(s.spec, c, Direction::inverse);
  return {s.spec, std::move(c)};
}

CylinderFunction apply_multiplier(const Spectrum &s,
                                  const Eigen::VectorXd &multiplier) {
  if (multiplier.size() != s.spec.size()) {
    throw std::invalid_argument("multiplier length does not match M_N");
  }
  Eigen::VectorXcd c = s.coeffs.cwiseProduct(multiplier.cast<Complex>());
  vilenkin_transform_inplace(s.spec, c, Direction::inverse);
  return {s.spec, std::move(c)};
}

CylinderFunction convolve(const CylinderFunction &f, const CylinderFunction &g) {
  if (!(f.spec == g.spec)) {
    throw std::invalid_argument("convolution operands live on different groups");
  }
  const GroupSpec &spec = f.spec;
  const Index size = spec.size();
  Eigen::VectorXcd h = Eigen::VectorXcd::Zero(size);
  for (Index x = 0; x < size; ++x) {
    Complex acc = 0.0;
    for (Index t = 0; t < size; ++t) {
      if (f.values[t] == Complex(0.0)) continue;
      acc += f.values[t] * g.values[index_sub(x, t, spec)];
    }
    h[x] = acc / static_cast<double>(size);
  }
  return {spec, std::move(h)};
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_values_csv(std::ostream &out, const Eigen::VectorXcd &values,
                      const std::vector<std::string> &header) {
  for (const auto &line : header) out << "# " << line << '\n';
  out << "index,re,im\n";
  for (Index i = 0; i < values.size(); ++i) {
    out << i << ',' << format_double(values[i].real()) << ','
        << format_double(values[i].imag()) << '\n';
  }
}

Eigen::VectorXcd read_values_csv(std::istream &in) {
  std::vector<std::pair<Index, Complex>> rows;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string &what) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || line.rfind("index", 0) == 0) continue;
    std::string_view rest(line);
    std::array<std::string_view, 3> fields;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto comma = rest.find(',');
      if (i < 2 && comma == std::string_view::npos) fail("expected 3 columns");
      fields[i] = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{}
                                             : rest.substr(comma + 1);
    }
    if (!rest.empty()) fail("expected 3 columns");
    Index idx = 0;
    double re = 0.0;
    double im = 0.0;
    auto parse = [&](std::string_view s, auto &value) {
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        fail("malformed number '" + std::string(s) + "'");
      }
    };
    parse(fields[0], idx);
    parse(fields[1], re);
    parse(fields[2], im);
    rows.emplace_back(idx, Complex(re, im));
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Index>(rows.size()));
  std::vector<bool> seen(rows.size(), false);
  for (const auto &[idx, value] : rows) {
    if (idx < 0 || idx >= out.size() || seen[static_cast<std::size_t>(idx)]) {
      throw std::invalid_argument("row indices must be a permutation of 0..n-1");
    }
    seen[static_cast<std::size_t>(idx)] = true;
    out[idx] = value;
  }
  return out;
}

} // namespace vilenkin
