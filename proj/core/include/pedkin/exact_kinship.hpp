#pragma once

#include <cstddef>

#include "pedkin/founder_kinship.hpp"
#include "pedkin/kinship_matrix.hpp"
#include "pedkin/pedigree.hpp"

namespace pedkin {

struct ExactOptions {
  std::size_t threads = 1;
  // Build ancestor sets and assert that every recursion step pairs i with a
  // non-descendant. Costs O(n^2 / 64) extra.
#ifdef NDEBUG
  bool check_ancestry = false;
#else
  bool check_ancestry = true;
#endif
};

/// All pairwise kinship coefficients, seeded from founder kinship `psi`.
/// Output uses the inbreeding diagonal convention and dense-index order.
/// O(n^2) time and memory.
KinshipMatrix exact_kinship(const Pedigree& pedigree, const FounderKinship& psi,
                            const ExactOptions& options = {});

// Outbred founders.
KinshipMatrix exact_kinship(const Pedigree& pedigree);

// Kinship of an outbred pair from its probabilities of sharing 0, 1 or 2
// alleles IBD: (2 f2 + f1) / 4.
double outbred_kinship_from_ibd_fractions(double f0, double f1, double f2);

}  // namespace pedkin
