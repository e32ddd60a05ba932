#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pedkin/pedigree.hpp"

namespace pedkin {

/// Row i is the bitset A_i: i together with all of its ancestors.
/// Rows are packed 64 bits per word, row-major.
class AncestorSets {
 public:
  AncestorSets() = default;
  explicit AncestorSets(const Pedigree& pedigree);

  std::size_t size() const noexcept { return n_; }

  // member in A_of (non-strict; A_i contains i).
  bool contains(Index of, Index member) const noexcept {
    return (bits_[of * words_ + member / 64] >> (member % 64)) & 1U;
  }

  // Strict ancestry: a in A_b and a != b. Throws Error(unknown_id) on a bad index.
  bool is_ancestor(Index a, Index b) const;

  std::vector<Index> members(Index i) const;
  std::size_t count(Index i) const;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

AncestorSets compute_ancestor_sets(const Pedigree& pedigree);

}  // namespace pedkin
