#pragma once

#include <cstdint>

#include "pedkin/pedigree.hpp"

namespace pedkin {

struct WrightFisherParams {
  std::uint32_t pairs = 1;        // N: 2N individuals per generation
  std::uint32_t generations = 1;  // G
  std::uint64_t seed = 0;
  // Children draw a random couple out of N fixed couples instead of an
  // independent mother and father.
  bool monogamous = false;
};

// Generation g holds individuals "g<g>_<k>", k < N female and k >= N male.
// Throws Error(invalid_argument) for N == 0 or G == 0.
Pedigree wright_fisher_pedigree(const WrightFisherParams& params);

// n individuals; the first round(n * founder_fraction) are founders, every
// later one picks parents of the right sex among strictly earlier ones.
// Throws Error(invalid_argument) when no parent of a required sex exists.
Pedigree random_pedigree(std::uint32_t n, double founder_fraction, std::uint64_t seed);

}  // namespace pedkin
