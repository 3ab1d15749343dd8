#pragma once

#include <complex>
#include <iosfwd>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vilenkin/group.hpp"

namespace vilenkin {

using Complex = std::complex<double>;

/// Values of a level-N cylinder function, one per cell in mixed-radix order.
struct CylinderFunction {
  GroupSpec spec;
  Eigen::VectorXcd values;

  CylinderFunction(GroupSpec s, Eigen::VectorXcd v)
      : spec(std::move(s)), values(std::move(v)) {
    if (values.size() != spec.size()) {
      throw std::invalid_argument("cylinder function length " +
                                  std::to_string(values.size()) +
                                  " does not match M_N = " +
                                  std::to_string(spec.size()));
    }
  }

  static CylinderFunction zero(const GroupSpec &s) {
    return {s, Eigen::VectorXcd::Zero(s.size())};
  }
  static CylinderFunction constant(const GroupSpec &s, Complex c) {
    return {s, Eigen::VectorXcd::Constant(s.size(), c)};
  }
};

/// Vilenkin-Fourier coefficients in natural frequency order, so that the
/// partial sum S_n keeps exactly the first n entries.
struct Spectrum {
  GroupSpec spec;
  Eigen::VectorXcd coeffs;

  Spectrum(GroupSpec s, Eigen::VectorXcd c)
      : spec(std::move(s)), coeffs(std::move(c)) {
    if (coeffs.size() != spec.size()) {
      throw std::invalid_argument("spectrum length does not match M_N");
    }
  }
};

/// Mean of f with respect to the normalized Haar measure.
Complex haar_integrate(const CylinderFunction &f);

/// Indicator of the interval I_level(0) on the given group.
CylinderFunction interval_indicator(const GroupSpec &spec, int level);

/// r_k(x) = exp(2 pi i x_k / m_k).
Complex rademacher(int k, const Point &x, const GroupSpec &spec);

/// psi_n(x), the product of r_k(x)^{n_k}.
Complex character(Index n, const Point &x, const GroupSpec &spec);

/// psi_n sampled on every cell.
Eigen::VectorXcd character_vector(Index n, const GroupSpec &spec);

/// Matrix whose (x, n) entry is psi_n(x).
Eigen::MatrixXcd character_matrix(const GroupSpec &spec);

enum class Direction { forward, inverse };

namespace detail {

/// Roots exp(sign * 2 pi i a / m), a = 0..m-1.
inline std::vector<Complex> axis_twiddles(int m, double sign) {
  std::vector<Complex> w(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    w[static_cast<std::size_t>(a)] =
        std::polar(1.0, sign * 2.0 * std::numbers::pi * a / m);
  }
  return w;
}

} // namespace detail

/// In-place separable transform: one length-m_k DFT along every digit axis.
///
/// Forward applies exp(-2 pi i n_k x_k / m_k) and divides by M_N; inverse
/// applies the conjugate kernel without scaling. Cost O(M_N * sum m_k).
/// Works on any dense complex column expression whose scalar is
/// std::complex<T>.
template <typename Derived>
void vilenkin_transform_inplace(const GroupSpec &spec,
                                Eigen::MatrixBase<Derived> &v, Direction dir) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Scalar::value_type;
  if (v.size() != spec.size()) {
    throw std::invalid_argument("transform input length does not match M_N");
  }
  const double sign = dir == Direction::forward ? -1.0 : 1.0;
  std::vector<Scalar> gather;
  std::vector<Scalar> scatter;
  for (int k = 0; k < spec.level(); ++k) {
    const int m = spec.radix(k);
    const Index stride = spec.cumprod(k);
    const Index block = spec.cumprod(k + 1);
    const auto w = detail::axis_twiddles(m, sign);
    std::vector<Scalar> tw(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      tw[i] = Scalar(static_cast<Real>(w[i].real()), static_cast<Real>(w[i].imag()));
    }
    gather.assign(static_cast<std::size_t>(m), Scalar(0));
    scatter.assign(static_cast<std::size_t>(m), Scalar(0));
    for (Index base = 0; base < spec.size(); base += block) {
      for (Index o = 0; o < stride; ++o) {
        for (int a = 0; a < m; ++a) {
          gather[static_cast<std::size_t>(a)] = v.coeff(base + o + a * stride);
        }
        for (int c = 0; c < m; ++c) {
          Scalar acc(0);
          for (int a = 0; a < m; ++a) {
            acc += gather[static_cast<std::size_t>(a)] *
                   tw[static_cast<std::size_t>((a * c) % m)];
          }
          scatter[static_cast<std::size_t>(c)] = acc;
        }
        for (int c = 0; c < m; ++c) {
          v.coeffRef(base + o + c * stride) = scatter[static_cast<std::size_t>(c)];
        }
      }
    }
  }
  if (dir == Direction::forward) {
    v /= static_cast<Real>(spec.size());
  }
}

/// Expression-friendly wrapper returning a transformed copy.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
vilenkin_transform(const GroupSpec &spec, const Eigen::MatrixBase<Derived> &v,
                   Direction dir) {
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out = v;
  vilenkin_transform_inplace(spec, out, dir);
  return out;
}

/// f^(n) = integral of f conj(psi_n), evaluated by brute force in O(M_N^2).
Spectrum naive_transform(const CylinderFunction &f);

/// Naive transform of several functions at once (one per column).
Eigen::MatrixXcd naive_transform_columns(const GroupSpec &spec,
                                         const Eigen::MatrixXcd &columns);

Spectrum forward_transform(const CylinderFunction &f);
CylinderFunction inverse_transform(const Spectrum &s);

/// S_n f, the sum of the first n terms of the Vilenkin-Fourier series.
CylinderFunction partial_sum(const Spectrum &s, Index n);

/// Spectrum multiplied pointwise by a real multiplier and inverted.
CylinderFunction apply_multiplier(const Spectrum &s,
                                  const Eigen::VectorXd &multiplier);

/// h(x) = integral of f(t) g(x - t) dmu(t), summed directly over all cells.
CylinderFunction convolve(const CylinderFunction &f, const CylinderFunction &g);

/// Writes "index,re,im" rows preceded by optional "# key=value" header lines.
void write_values_csv(std::ostream &out, const Eigen::VectorXcd &values,
                      const std::vector<std::string> &header = {});

/// Reads the format written by write_values_csv; '#' lines are skipped.
Eigen::VectorXcd read_values_csv(std::istream &in);

/// Shortest round-trip text for a double.
std::string format_double(double value);

} // namespace vilenkin
