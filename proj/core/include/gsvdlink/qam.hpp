#pragma once

#include <cstdint>
#include <vector>

#include "gsvdlink/types.hpp"

namespace gsvdlink {

/// Gray-labelled 4-QAM with unit symbol energy. Bit b0 selects the real-part
/// sign, b1 the imaginary-part sign: (0,0) -> (+1+j)/sqrt(2),
/// (1,1) -> (-1-j)/sqrt(2).
VectorXc qam_map(const std::vector<std::uint8_t>& bits);

/// Nearest-point hard decision, inverse of qam_map for noiseless symbols.
/// A zero component decides as positive (maps to bit 0).
std::vector<std::uint8_t> qam_demap_hard(const VectorXc& symbols);

}  // namespace gsvdlink
