#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace pedkin {

// The four alleles of an ordered pair (a, b): a1, a2 of a and b1, b2 of b.
enum class Allele : std::uint8_t { a1 = 0, a2 = 1, b1 = 2, b2 = 3 };

/// Identity state as a set partition of {a1, a2, b1, b2} into IBD classes.
/// Stored as a restricted growth string so equal partitions compare equal.
class AllelePartition {
 public:
  // Four singleton classes.
  AllelePartition() noexcept : blocks_{0, 1, 2, 3} {}

  // Any labelling of the four alleles; equal values share a class.
  template <typename T>
  static AllelePartition from_labels(const std::array<T, 4>& labels) noexcept {
    AllelePartition p;
    std::uint8_t next = 0;
    for (int i = 0; i < 4; ++i) {
      int first = i;
      for (int j = 0; j < i; ++j) {
        if (labels[j] == labels[i]) {
          first = j;
          break;
        }
      }
      p.blocks_[i] = first == i ? next++ : p.blocks_[first];
    }
    return p;
  }

  std::uint8_t block(Allele a) const noexcept { return blocks_[static_cast<int>(a)]; }
  bool same_class(Allele x, Allele y) const noexcept { return block(x) == block(y); }
  int class_count() const noexcept;
  const std::array<std::uint8_t, 4>& blocks() const noexcept { return blocks_; }

  friend bool operator==(const AllelePartition&, const AllelePartition&) = default;

 private:
  std::array<std::uint8_t, 4> blocks_;
};

AllelePartition partition_from_labels(std::uint64_t ci_m, std::uint64_t ci_f,
                                      std::uint64_t cj_m, std::uint64_t cj_f) noexcept;

enum class EdgeType { aa, ab, bb };

// Number of IBD edges of type t in the clique-union graph of p.
int edge_count(const AllelePartition& p, EdgeType t) noexcept;

// detailed: 1..15, condensed: 1..9 (Jacquard order; 1 = all IBD, 9 = none).
struct StateIndex {
  int detailed = 0;
  int condensed = 0;
};

StateIndex classify(const AllelePartition& p) noexcept;

int founder_allele_count(const AllelePartition& p) noexcept;
bool is_outbred(const AllelePartition& p) noexcept;

// same_individual: e(aa) (inbreeding term); otherwise e(ab) / 4.
double kinship_contribution(const AllelePartition& p, bool same_individual) noexcept;

// The 15 identity states, ordered by detailed index.
std::span<const AllelePartition, 15> all_identity_states() noexcept;

// e.g. "{a1,b1}{a2}{b2}"
std::string describe(const AllelePartition& p);

}  // namespace pedkin
