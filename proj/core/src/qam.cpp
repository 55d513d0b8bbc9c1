#include "gsvdlink/qam.hpp"

#include <cmath>

#include "gsvdlink/errors.hpp"

namespace gsvdlink {

namespace {
constexpr double kAmp = 0.7071067811865475244;  // 1/sqrt(2)
}

VectorXc qam_map(const std::vector<std::uint8_t>& bits) {
  if (bits.size() % 2 != 0) {
    throw ArgumentError("qam_map: bit count must be even");
  }
  VectorXc symbols(static_cast<Index>(bits.size() / 2));
  for (Index i = 0; i < symbols.size(); ++i) {
    const double re = bits[2 * i] ? -kAmp : kAmp;
    const double im = bits[2 * i + 1] ? -kAmp : kAmp;
    symbols(i) = Complex(re, im);
  }
  return symbols;
}

std::vector<std::uint8_t> qam_demap_hard(const VectorXc& symbols) {
  std::vector<std::uint8_t> bits(2 * static_cast<std::size_t>(symbols.size()));
  for (Index i = 0; i < symbols.size(); ++i) {
    bits[2 * i] = symbols(i).real() < 0.0 ? 1 : 0;
    bits[2 * i + 1] = symbols(i).imag() < 0.0 ? 1 : 0;
  }
  return bits;
}

}  // namespace gsvdlink
