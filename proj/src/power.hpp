#pragma once

#include <cmath>
#include <complex>

namespace bplab::detail {

// n^{-s}. The imaginary part is formed from |t| and then signed, so that
// conj(s) gives exactly conj(n^{-s}).
inline std::complex<double> power_neg(double n, std::complex<double> s) {
  const double mag = std::pow(n, -s.real());
  if (s.imag() == 0.0) return {mag, 0.0};
  const double angle = std::abs(s.imag()) * std::log(n);
  const double im = -mag * std::sin(angle);
  return {mag * std::cos(angle), s.imag() > 0 ? im : -im};
}

}  // namespace bplab::detail
