#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pedkin {

// What the diagonal of a kinship matrix holds.
//   inbreeding:   Phi_ii = 2 phi_ii - 1, in [0, 1]
//   self_kinship: phi_ii,                in [1/2, 1]
enum class Diagonal { inbreeding, self_kinship };

const char* to_string(Diagonal d) noexcept;
std::optional<Diagonal> parse_diagonal(std::string_view text);

/// Dense symmetric n x n matrix of kinship coefficients labelled by
/// individual id. Off-diagonal entries are always kinship coefficients.
class KinshipMatrix {
 public:
  KinshipMatrix() = default;
  KinshipMatrix(std::vector<std::string> ids, Diagonal diagonal);
  // `values` is row-major n x n and must already be symmetric.
  KinshipMatrix(std::vector<std::string> ids, Diagonal diagonal,
                std::vector<double> values);

  std::size_t size() const noexcept { return ids_.size(); }
  Diagonal diagonal() const noexcept { return diagonal_; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
  // Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value);

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * size(), size()};
  }
  std::span<const double> values() const noexcept { return values_; }

  std::optional<std::size_t> find(std::string_view id) const;
  // Lookup by id; throws Error(unknown_id).
  double at(std::string_view a, std::string_view b) const;

  // Submatrix over `ids`, in the given order.
  KinshipMatrix restricted_to(std::span<const std::string> ids) const;

  bool operator==(const KinshipMatrix& other) const;

 private:
  std::vector<std::string> ids_;
  Diagonal diagonal_ = Diagonal::inbreeding;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Off-diagonal untouched; diagonal mapped by Phi = 2 phi - 1 or phi = (1 + Phi) / 2.
KinshipMatrix convert_diagonal(const KinshipMatrix& matrix, Diagonal target);

// Largest |a_ij - b_ij| together with every entry above `tolerance`.
struct MatrixMismatch {
  std::string id_i;
  std::string id_j;
  double a = 0.0;
  double b = 0.0;
};

struct ComparisonReport {
  double max_abs_difference = 0.0;
  std::vector<MatrixMismatch> mismatches;

  bool ok() const noexcept { return mismatches.empty(); }
};

// Throws Error(invalid_argument) when ids or diagonal conventions differ.
ComparisonReport compare_matrices(const KinshipMatrix& a, const KinshipMatrix& b,
                                  double tolerance);

}  // namespace pedkin
