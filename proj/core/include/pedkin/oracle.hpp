#pragma once

#include <cstdint>

#include "pedkin/kinship_matrix.hpp"
#include "pedkin/pedigree.hpp"

namespace pedkin {

inline constexpr std::size_t kOracleMaxNonFounders = 12;

struct OracleResult {
  KinshipMatrix matrix;  // inbreeding diagonal
  std::uint64_t enumerated = 0;
};

/// Kinship by exhaustive enumeration of all 4^k segregation vectors of the
/// k non-founders, with outbred, unrelated founders. Shares no code with the
/// recursive or sampling algorithms. Throws Error(too_large) for k > 12.
OracleResult brute_force_kinship(const Pedigree& pedigree);

}  // namespace pedkin
