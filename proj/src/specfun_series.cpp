#include <quadmath.h>

#include <cmath>

#include "sabine/specfun.hpp"

namespace sabine::detail {
namespace {

template <class T>
struct Cx {
  T re, im;
};

template <class T>
Cx<T> operator+(Cx<T> a, Cx<T> b) {
  return {a.re + b.re, a.im + b.im};
}
template <class T>
Cx<T> operator-(Cx<T> a, Cx<T> b) {
  return {a.re - b.re, a.im - b.im};
}
template <class T>
Cx<T> operator*(Cx<T> a, Cx<T> b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class T>
Cx<T> operator*(T s, Cx<T> a) {
  return {s * a.re, s * a.im};
}
template <class T>
T abs2(Cx<T> a) {
  return a.re * a.re + a.im * a.im;
}
template <class T>
Cx<T> reciprocal(Cx<T> a) {
  const T d = abs2(a);
  return {a.re / d, -a.im / d};
}

struct LongDouble {
  using T = long double;
  static T pi() { return 3.141592653589793238462643383279502884L; }
  static T euler() { return 0.577215664901532860606512090082402431L; }
  static T eps() { return 1e-22L; }
  static T log(T x) { return std::log(x); }
  static T atan2(T y, T x) { return std::atan2(y, x); }
};

struct Quad {
  using T = __float128;
  static T pi() { return M_PIq; }
  static T euler() {
    static const T g = strtoflt128("0.57721566490153286060651209008240243104215933593992", nullptr);
    return g;
  }
  static T eps() { return strtoflt128("1e-36", nullptr); }
  static T log(T x) { return logq(x); }
  static T atan2(T y, T x) { return atan2q(y, x); }
};

template <class P>
Series01 run(cplx zd, bool order_one) {
  using T = typename P::T;
  const Cx<T> z{static_cast<T>(zd.real()), static_cast<T>(zd.imag())};
  const T one = 1, two = 2, quarter = static_cast<T>(0.25);
  const Cx<T> q = (-quarter) * (z * z);
  const T qa = static_cast<T>(std::abs(zd) * std::abs(zd) / 4.0);
  const T euler = P::euler();
  const T eps2 = P::eps() * P::eps();

  Cx<T> t0{one, 0}, t1{one, 0};
  Cx<T> sj0{0, 0}, sj1{0, 0}, sy0{0, 0}, sy1{0, 0};
  T harmonic = 0;
  T peak2 = 1;
  for (int k = 0; k < 400; ++k) {
    const T kp1 = static_cast<T>(k + 1);
    const T harmonic_next = harmonic + one / kp1;
    sj0 = sj0 + t0;
    sy0 = sy0 + harmonic * t0;
    if (order_one) {
      sj1 = sj1 + t1;
      sy1 = sy1 + (harmonic + harmonic_next - two * euler) * t1;
    }
    const T m2 = abs2(t0);
    if (m2 > peak2) peak2 = m2;
    if (kp1 * kp1 > qa && m2 < eps2 * peak2) break;
    harmonic = harmonic_next;
    t0 = (one / (kp1 * kp1)) * (t0 * q);
    t1 = (one / (kp1 * (kp1 + one))) * (t1 * q);
  }

  const T pi = P::pi();
  const Cx<T> half_z = (one / two) * z;
  const Cx<T> log_half_z{P::log(abs2(half_z)) / two, P::atan2(half_z.im, half_z.re)};
  const Cx<T> j0 = sj0;
  const Cx<T> y0 = (two / pi) * ((log_half_z + Cx<T>{euler, 0}) * j0 - sy0);

  auto out = [](Cx<T> a) { return cplx(static_cast<double>(a.re), static_cast<double>(a.im)); };
  auto hankel = [](Cx<T> j, Cx<T> y) { return Cx<T>{j.re - y.im, j.im + y.re}; };
  auto hankel2 = [](Cx<T> j, Cx<T> y) { return Cx<T>{j.re + y.im, j.im - y.re}; };
  Series01 s;
  s.j0 = out(j0);
  s.h0 = out(hankel(j0, y0));
  s.h2_0 = out(hankel2(j0, y0));
  if (order_one) {
    const Cx<T> j1 = half_z * sj1;
    const Cx<T> y1 =
        (-two / pi) * reciprocal(z) + (two / pi) * (log_half_z * j1) - (one / pi) * (half_z * sy1);
    s.j1 = out(j1);
    s.h1 = out(hankel(j1, y1));
    s.h2_1 = out(hankel2(j1, y1));
  }
  return s;
}

}  // namespace

Series01 series01(cplx z, bool quad, bool order_one) {
  return quad ? run<Quad>(z, order_one) : run<LongDouble>(z, order_one);
}

}  // namespace sabine::detail
