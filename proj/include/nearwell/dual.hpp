#pragma once

#include <array>
#include <cmath>

namespace nearwell {

/// Forward-mode derivative scalar with N slots. The assembler evaluates
/// fluxes, accumulation terms, and well rates on Duals whose slots map to
/// the local unknowns of the term (cell pressures/saturations, p_bhp), and
/// scatters the propagated derivatives into the sparse Jacobian. Property
/// correlations are templated on the scalar type so they stay
/// differentiable by construction.
template <int N>
struct Dual {
  double v = 0.0;
  std::array<double, N> d{};

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit by design (constants)

  static Dual var(double value, int slot) {
    Dual x(value);
    x.d[slot] = 1.0;
    return x;
  }

  Dual operator-() const {
    Dual r(-v);
    for (int i = 0; i < N; ++i) r.d[i] = -d[i];
    return r;
  }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (int i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (int i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (int i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Dual& operator+=(double c) { v += c; return *this; }
  Dual& operator-=(double c) { v -= c; return *this; }
  Dual& operator*=(double c) {
    v *= c;
    for (int i = 0; i < N; ++i) d[i] *= c;
    return *this;
  }
};

template <int N>
Dual<N> operator+(Dual<N> a, const Dual<N>& b) { return a += b; }
template <int N>
Dual<N> operator+(Dual<N> a, double b) { return a += b; }
template <int N>
Dual<N> operator+(double a, Dual<N> b) { return b += a; }

template <int N>
Dual<N> operator-(Dual<N> a, const Dual<N>& b) { return a -= b; }
template <int N>
Dual<N> operator-(Dual<N> a, double b) { return a -= b; }
template <int N>
Dual<N> operator-(double a, const Dual<N>& b) { return -b + a; }

template <int N>
Dual<N> operator*(Dual<N> a, const Dual<N>& b) { return a *= b; }
template <int N>
Dual<N> operator*(Dual<N> a, double b) { return a *= b; }
template <int N>
Dual<N> operator*(double a, Dual<N> b) { return b *= a; }

template <int N>
Dual<N> operator/(const Dual<N>& a, const Dual<N>& b) {
  Dual<N> r(a.v / b.v);
  const double inv = 1.0 / b.v;
  for (int i = 0; i < N; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) * inv;
  return r;
}
template <int N>
Dual<N> operator/(Dual<N> a, double b) { return a *= (1.0 / b); }
template <int N>
Dual<N> operator/(double a, const Dual<N>& b) { return Dual<N>(a) / b; }

template <int N>
bool operator<(const Dual<N>& a, const Dual<N>& b) { return a.v < b.v; }
template <int N>
bool operator>(const Dual<N>& a, const Dual<N>& b) { return a.v > b.v; }
template <int N>
bool operator<(const Dual<N>& a, double b) { return a.v < b; }
template <int N>
bool operator>(const Dual<N>& a, double b) { return a.v > b; }

template <int N>
Dual<N> exp(const Dual<N>& x) {
  Dual<N> r(std::exp(x.v));
  for (int i = 0; i < N; ++i) r.d[i] = r.v * x.d[i];
  return r;
}

template <int N>
Dual<N> log(const Dual<N>& x) {
  Dual<N> r(std::log(x.v));
  const double inv = 1.0 / x.v;
  for (int i = 0; i < N; ++i) r.d[i] = inv * x.d[i];
  return r;
}

/// pow with constant exponent. For x <= 0 value and derivative are 0
/// (callers clamp the base to [0, 1] first; Corey exponents are >= 1).
template <int N>
Dual<N> pow(const Dual<N>& x, double a) {
  if (x.v <= 0.0) return Dual<N>(0.0);
  Dual<N> r(std::pow(x.v, a));
  const double c = a * std::pow(x.v, a - 1.0);
  for (int i = 0; i < N; ++i) r.d[i] = c * x.d[i];
  return r;
}

template <int N>
Dual<N> fmax(const Dual<N>& a, const Dual<N>& b) { return a.v >= b.v ? a : b; }
template <int N>
Dual<N> fmin(const Dual<N>& a, const Dual<N>& b) { return a.v <= b.v ? a : b; }

inline double value(double x) { return x; }
template <int N>
double value(const Dual<N>& x) { return x.v; }

}  // namespace nearwell
