#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pedkin/exact_kinship.hpp"
#include "pedkin/founder_kinship.hpp"
#include "pedkin/kinship_matrix.hpp"
#include "pedkin/pedigree.hpp"

namespace pedkin {

// Longest-path depth from the founders: founders 0, others 1 + max(parents).
std::vector<int> assign_generations(const Pedigree& pedigree);

/// Segmentation of a pedigree into generation bands, oldest first.
///
/// Segment k owns every individual whose generation lies in
/// [boundaries[k-1], boundaries[k]) (with implicit 0 and infinity at the
/// ends) and additionally holds, as founders, the individuals handed down
/// from the segment above: parents of its members that sit above the cut,
/// individuals the segment below needs, and (for the last segment) the
/// individuals of interest.
struct CutPlan {
  std::vector<int> boundaries;
  std::vector<Index> interest;

  // Derived from the pedigree; ascending dense indices.
  std::vector<std::vector<Index>> members;
  // cut_parents[k] = founders of segment k + 1 (the set P of cut k).
  std::vector<std::vector<Index>> cut_parents;
  // cut_edges[k] = (parent, child) edges crossing cut k.
  std::vector<std::vector<std::pair<Index, Index>>> cut_edges;

  std::size_t segment_count() const noexcept { return members.size(); }
  std::size_t max_segment_size() const noexcept;
};

// Builds a plan from explicit cut generations. Throws Error(plan_mismatch)
// unless boundaries are strictly increasing within [1, max generation].
CutPlan plan_from_boundaries(const Pedigree& pedigree, std::span<const Index> interest,
                             std::vector<int> boundaries);

// Cut above every generation.
CutPlan per_generation_plan(const Pedigree& pedigree, std::span<const Index> interest);

// Greedy from the oldest generation: a band grows while its estimated size
// (members plus the parents it needs from above) stays within
// `max_segment_size`. A single generation that exceeds the bound becomes its
// own band; check max_segment_size() for the achieved s.
CutPlan plan_cuts(const Pedigree& pedigree, std::span<const Index> interest,
                  std::size_t max_segment_size);

enum class SegmentRole { interior, cut_founder, cut_leaf, pass_through };

struct Segment {
  Pedigree pedigree;
  std::vector<Index> original;     // segment index -> index in the full pedigree
  std::vector<SegmentRole> roles;  // per segment index
};

// Throws Error(plan_mismatch) when the plan does not describe `pedigree`.
std::vector<Segment> cut_pedigree(const Pedigree& pedigree, const CutPlan& plan);

/// Exact kinship over the youngest segment, computed segment by segment;
/// each segment's founders are seeded with the kinship of the cut members
/// from the segment above. Inbreeding diagonal.
KinshipMatrix recursive_cut_kinship(const Pedigree& pedigree, const FounderKinship& psi,
                                    std::span<const Index> interest, const CutPlan& plan,
                                    const ExactOptions& options = {});

// Human-readable plan summary for the CLI.
std::string describe_plan(const CutPlan& plan);

}  // namespace pedkin
