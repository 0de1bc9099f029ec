#include "fockeig/detail/xprec.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace fockeig::detail {

namespace {

using XReal = boost::multiprecision::cpp_bin_float_100;
using XComplex = boost::multiprecision::cpp_complex_100;

XComplex widen(Complex z) { return XComplex(z.real(), z.imag()); }

Complex narrow(const XComplex& z) {
  return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
}

}  // namespace

Complex terminating_2f1(int n, Complex a, Complex c, Complex z) {
  const XComplex xa = widen(a), xc = widen(c), xz = widen(z);
  XComplex term(1);
  XComplex sum(1);
  for (int l = 0; l < n; ++l) {
    term *= XComplex(l - n) * (xa + XComplex(l)) / (xc + XComplex(l)) * xz / XComplex(l + 1);
    sum += term;
  }
  return narrow(sum);
}

std::vector<Complex> kummer_operator_coefficients(Complex u, Complex a, Complex b, Complex w, int count,
                                                  const std::function<double(int)>& norm_step_sq) {
  std::vector<Complex> out;
  if (count <= 0) return out;
  out.reserve(static_cast<std::size_t>(count));

  const XComplex xu = widen(u), xa = widen(a), xb = widen(b), xw = widen(w);
  std::vector<XComplex> exp_part(static_cast<std::size_t>(count));
  std::vector<XComplex> kummer_part(static_cast<std::size_t>(count));
  exp_part[0] = XComplex(1);
  kummer_part[0] = XComplex(1);
  for (int k = 1; k < count; ++k) {
    exp_part[k] = exp_part[k - 1] * xu / XComplex(k);
    kummer_part[k] = kummer_part[k - 1] * (xa + XComplex(k - 1)) / (xb + XComplex(k - 1)) * xw / XComplex(k);
  }

  XReal norm(1);
  for (int n = 0; n < count; ++n) {
    if (n > 0) norm *= boost::multiprecision::sqrt(XReal(norm_step_sq(n)));
    XComplex sum(0);
    for (int k = 0; k <= n; ++k) sum += exp_part[k] * kummer_part[n - k];
    out.push_back(narrow(sum * XComplex(norm)));
  }
  return out;
}

}  // namespace fockeig::detail
