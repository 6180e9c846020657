#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace sabine {

using cplx = std::complex<double>;

/// J_n, J_n', H_n^{(1)}, H_n^{(1)}' at one argument.
struct BesselEval {
  int n = 0;
  cplx z;
  cplx J, dJ, H, dH;
};

/// Validated region: 0 < Re z <= 2000 and |Im z| <= 50. Bessel J also
/// accepts z = 0.
bool in_validated_region(cplx z);

cplx bessel_j(int n, cplx z);
cplx bessel_j_deriv(int n, cplx z);
cplx hankel1(int n, cplx z);
cplx hankel1_deriv(int n, cplx z);

/// Orders 0..n_max at a common argument. Requires n_max <= 4|z| + 200.
std::vector<BesselEval> bessel_row(int n_max, cplx z);

/// Single order, same accuracy as bessel_row but without the row storage.
BesselEval bessel_eval(int n, cplx z);

/// (J_0(w), H_0^{(1)}(w)) for the boundary-integral kernel.
std::pair<cplx, cplx> bessel_j0_hankel0(cplx w);

namespace detail {

struct Series01 {
  cplx j0, j1;
  cplx h0, h1;    // first kind
  cplx h2_0, h2_1;  // second kind
};

/// J_0, J_1 and both Hankel kinds of orders 0 and 1 from the power series with
/// logarithmic terms, accumulated in long double or, with `quad`, in 113-bit
/// precision. The Hankel values are formed before rounding to double. Order
/// one is skipped when `order_one` is false.
Series01 series01(cplx z, bool quad, bool order_one = true);

}  // namespace detail

}  // namespace sabine
