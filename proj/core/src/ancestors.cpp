#include "pedkin/ancestors.hpp"

#include <bit>

#include "pedkin/error.hpp"

namespace pedkin {

AncestorSets::AncestorSets(const Pedigree& pedigree)
    : n_(pedigree.size()), words_((pedigree.size() + 63) / 64), bits_(n_ * words_, 0) {
  // Parents precede children in topological order, so their rows are final.
  for (Index i : pedigree.topological_order()) {
    std::uint64_t* row = bits_.data() + i * words_;
    if (!pedigree.is_founder(i)) {
      const std::uint64_t* m = bits_.data() + pedigree.mother(i) * words_;
      const std::uint64_t* f = bits_.data() + pedigree.father(i) * words_;
      for (std::size_t w = 0; w < words_; ++w) row[w] = m[w] | f[w];
    }
    row[i / 64] |= std::uint64_t{1} << (i % 64);
  }
}

bool AncestorSets::is_ancestor(Index a, Index b) const {
  if (a >= n_ || b >= n_) {
    throw Error(ErrorCode::unknown_id, "individual index out of range");
  }
  return a != b && contains(b, a);
}

std::vector<Index> AncestorSets::members(Index i) const {
  std::vector<Index> out;
  const std::uint64_t* row = bits_.data() + i * words_;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t word = row[w];
    while (word) {
      out.push_back(static_cast<Index>(w * 64 + std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

std::size_t AncestorSets::count(Index i) const {
  std::size_t c = 0;
  const std::uint64_t* row = bits_.data() + i * words_;
  for (std::size_t w = 0; w < words_; ++w) c += std::popcount(row[w]);
  return c;
}

AncestorSets compute_ancestor_sets(const Pedigree& pedigree) { return AncestorSets(pedigree); }

}  // namespace pedkin
