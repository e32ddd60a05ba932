#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "pedkin/founder_kinship.hpp"
#include "pedkin/kinship_matrix.hpp"
#include "pedkin/pedigree.hpp"

namespace pedkin {

using Rng = std::mt19937_64;

// Independent stream for one replicate, derived from (seed, replicate).
Rng replicate_rng(std::uint64_t seed, std::uint64_t replicate) noexcept;

// Allele slots of an individual.
enum class Slot : std::uint8_t { maternal = 0, paternal = 1 };

// Which of the parent's two alleles was transmitted: the copy the parent
// got from its own mother (maternal) or father (paternal).
struct Segregation {
  Slot from_mother = Slot::maternal;
  Slot from_father = Slot::maternal;
};

// Indexed by individual; entries of founders are ignored.
using SegregationSample = std::vector<Segregation>;

// Connected-component label of each allele, indexed [individual][slot].
using AlleleLabels = std::array<std::uint64_t, 2>;
using CCLabels = std::vector<AlleleLabels>;

enum class MergeRule {
  // Merge each paired founder-allele slot with probability Psi_fg.
  // Biased: E[estimate] = Psi_fg / 2.
  literal,
  // Merge with probability min(1, 2 Psi_fg) so E[estimate] = Psi_fg.
  unbiased_2psi,
};

struct SamplerConfig {
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  MergeRule merge_rule = MergeRule::unbiased_2psi;
  std::size_t threads = 1;
};

void sample_segregation(const Pedigree& pedigree, Rng& rng, SegregationSample& out);
SegregationSample sample_segregation(const Pedigree& pedigree, Rng& rng);

/// Founder-allele merge probabilities precomputed from Psi.
class FounderMerges {
 public:
  struct Pair {
    Index f;
    Index g;
    double probability;
  };
  struct Self {
    Index f;
    double probability;
  };

  FounderMerges(const Pedigree& pedigree, const FounderKinship& psi, MergeRule rule);

  std::span<const Pair> pairs() const noexcept { return pairs_; }
  std::span<const Self> selves() const noexcept { return selves_; }

 private:
  std::vector<Pair> pairs_;
  std::vector<Self> selves_;
};

// Two founder alleles unified during the merge step.
struct AlleleLink {
  Index a;
  Slot a_slot;
  Index b;
  Slot b_slot;
};

/// Labels every allele by its connected component in the inheritance graph
/// of `seg`, after random founder merges.
///
/// Leaf alleles get distinct labels; an upward pass pushes the larger label
/// to the transmitting parent allele; founder alleles with no label get
/// fresh ones; founder merges are applied; a downward pass copies founder
/// labels along the transmission edges. Pairs and selves with non-zero
/// probability consume randomness from `rng`; pass `links` to record them.
void compute_cc_labels(const Pedigree& pedigree, const SegregationSample& seg,
                       const FounderMerges& merges, Rng& rng, CCLabels& labels,
                       std::vector<AlleleLink>* links = nullptr);

CCLabels compute_cc_labels(const Pedigree& pedigree, const SegregationSample& seg,
                           const FounderKinship& psi, MergeRule rule, Rng& rng,
                           std::vector<AlleleLink>* links = nullptr);

/// Per-entry sums of per-replicate contributions over an interest set.
///
/// Contributions are kept as exact integer units: e(ab) in {0,1,2,4} off
/// the diagonal (contribution e/4), the IBD indicator on the diagonal, so
/// merging partial accumulators in any order is bit-identical.
class EstimateAccumulator {
 public:
  explicit EstimateAccumulator(std::size_t interest_size);

  std::size_t size() const noexcept { return n_; }
  std::uint64_t replicates() const noexcept { return replicates_; }

  void add_units(std::size_t i, std::size_t j, std::uint32_t units);
  void finish_replicate() noexcept { ++replicates_; }
  void merge(const EstimateAccumulator& other);

  double mean(std::size_t i, std::size_t j) const;
  // Sample standard deviation of the contributions over sqrt(S).
  // Throws Error(invalid_argument) when fewer than two replicates were added.
  double standard_error(std::size_t i, std::size_t j) const;

 private:
  std::size_t n_;
  std::uint64_t replicates_ = 0;
  std::vector<std::uint64_t> sum_;
  std::vector<std::uint64_t> sum_sq_;

  std::size_t slot(std::size_t i, std::size_t j) const noexcept;
};

struct KinshipEstimate {
  KinshipMatrix estimate;                       // inbreeding diagonal
  std::optional<KinshipMatrix> standard_error;  // present when samples >= 2
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Labels computed (and reported via `accumulator`) for one replicate.
void accumulate_replicate(const CCLabels& labels, std::span<const Index> interest,
                          EstimateAccumulator& accumulator);

/// Monte Carlo kinship over `interest`. Replicates are seeded from
/// (config.seed, replicate index), so results do not depend on threads.
KinshipEstimate estimate_kinship(const Pedigree& pedigree, const FounderKinship& psi,
                                 std::span<const Index> interest,
                                 const SamplerConfig& config);

// Per-entry standard errors from an accumulator, as a matrix over `ids`.
KinshipMatrix standard_errors(const EstimateAccumulator& accumulator,
                              std::vector<std::string> ids);

}  // namespace pedkin
