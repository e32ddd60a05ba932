#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pedkin {

// Dense individual index, 0..n-1, assigned once when a pedigree is built.
using Index = std::uint32_t;
inline constexpr Index kNoIndex = std::numeric_limits<Index>::max();

enum class Sex : std::uint8_t { female, male, unknown };

const char* to_string(Sex sex) noexcept;

// One input row before validation. Empty parent strings mean "unknown".
struct PedigreeRecord {
  std::string id;
  std::string father;
  std::string mother;
  Sex sex = Sex::unknown;
};

struct PedigreeOptions {
  // A record with exactly one known parent gets a dummy founder for the
  // other one. When false such records are rejected.
  bool synthesize_missing_parent = true;
};

struct Individual {
  std::string id;
  Sex sex = Sex::unknown;
  Index mother = kNoIndex;
  Index father = kNoIndex;
  bool synthesized = false;

  bool is_founder() const noexcept { return mother == kNoIndex; }
};

/// Validated, immutable pedigree graph (parent -> child edges).
///
/// Dense indices follow input order: declared records first, then
/// individuals that only appear as parents (in order of first reference),
/// then synthesized dummy founders. Every non-founder has both parents.
class Pedigree {
 public:
  Pedigree() = default;

  static Pedigree from_records(std::span<const PedigreeRecord> records,
                               const PedigreeOptions& options = {});

  std::size_t size() const noexcept { return individuals_.size(); }
  bool empty() const noexcept { return individuals_.empty(); }

  const Individual& operator[](Index i) const { return individuals_[i]; }
  std::span<const Individual> individuals() const noexcept { return individuals_; }
  const std::string& id(Index i) const { return individuals_[i].id; }

  bool is_founder(Index i) const { return individuals_[i].is_founder(); }
  Index mother(Index i) const { return individuals_[i].mother; }
  Index father(Index i) const { return individuals_[i].father; }

  std::span<const Index> children(Index i) const { return children_[i]; }
  std::span<const Index> founders() const noexcept { return founders_; }
  std::span<const Index> leaves() const noexcept { return leaves_; }

  // Founders first, then non-founders as soon as both parents are placed;
  // ties are broken by dense index.
  std::span<const Index> topological_order() const noexcept { return topo_; }

  std::size_t founder_count() const noexcept { return founders_.size(); }
  std::size_t nonfounder_count() const noexcept { return size() - founders_.size(); }

  std::optional<Index> find(std::string_view id) const;
  // Throws Error(unknown_id).
  Index index_of(std::string_view id) const;

  std::vector<Index> indices_of(std::span<const std::string> ids) const;
  std::vector<std::string> ids() const;

 private:
  std::vector<Individual> individuals_;
  std::vector<std::vector<Index>> children_;
  std::vector<Index> founders_;
  std::vector<Index> leaves_;
  std::vector<Index> topo_;
  std::unordered_map<std::string, Index> index_;
};

std::vector<Index> topological_order(const Pedigree& pedigree);

// O(n + e) check that `order` is a permutation with parents before children.
bool is_topological_order(const Pedigree& pedigree, std::span<const Index> order);

}  // namespace pedkin
