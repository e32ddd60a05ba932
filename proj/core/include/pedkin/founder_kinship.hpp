#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pedkin {

class Pedigree;

enum class FounderMode { full, average_psi, zero };

/// Kinship among the founders of a pedigree (Psi), keyed by founder id.
///
/// The diagonal holds founder inbreeding coefficients Psi_ff; off-diagonal
/// entries are founder-pair kinship. In average_psi mode every distinct pair
/// is seeded with psi_bar, the mean founder inbreeding.
class FounderKinship {
 public:
  FounderKinship() = default;

  static FounderKinship zero(std::vector<std::string> founder_ids);
  static FounderKinship zero(const Pedigree& pedigree);
  // `matrix` is row-major F x F. Throws on asymmetry or values outside [0, 1].
  static FounderKinship full(std::vector<std::string> founder_ids,
                             std::vector<double> matrix);

  // Same Psi, reinterpreted under another mode.
  FounderKinship with_mode(FounderMode mode) const;

  FounderMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  std::optional<std::size_t> position(std::string_view id) const;

  // Psi_ff (0 in zero mode).
  double inbreeding(std::size_t f) const;
  // Seed kinship for a distinct founder pair under the current mode.
  double kinship(std::size_t f, std::size_t g) const;
  double psi_bar() const noexcept { return psi_bar_; }

  // Raw stored Psi entry, independent of mode.
  double stored(std::size_t f, std::size_t g) const { return matrix_[f * size() + g]; }

  // Throws Error(founder_mismatch) unless ids are exactly the pedigree's founders.
  void check_matches(const Pedigree& pedigree) const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> matrix_;
  std::unordered_map<std::string, std::size_t> index_;
  FounderMode mode_ = FounderMode::zero;
  double psi_bar_ = 0.0;

  void build_index();
};

}  // namespace pedkin
