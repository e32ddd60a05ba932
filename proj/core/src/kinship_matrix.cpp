#include "pedkin/kinship_matrix.hpp"

#include <cmath>

#include "pedkin/error.hpp"

namespace pedkin {

const char* to_string(Diagonal d) noexcept {
  return d == Diagonal::inbreeding ? "inbreeding" : "self-kinship";
}

std::optional<Diagonal> parse_diagonal(std::string_view text) {
  if (text == "inbreeding") return Diagonal::inbreeding;
  if (text == "self-kinship" || text == "self_kinship") return Diagonal::self_kinship;
  return std::nullopt;
}

KinshipMatrix::KinshipMatrix(std::vector<std::string> ids, Diagonal diagonal)
    : KinshipMatrix(ids, diagonal, std::vector<double>(ids.size() * ids.size(), 0.0)) {}

KinshipMatrix::KinshipMatrix(std::vector<std::string> ids, Diagonal diagonal,
                             std::vector<double> values)
    : ids_(std::move(ids)), diagonal_(diagonal), values_(std::move(values)) {
  if (values_.size() != ids_.size() * ids_.size()) {
    throw Error(ErrorCode::invalid_argument, "matrix values do not match id count");
  }
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw Error(ErrorCode::duplicate_id, "duplicate matrix id '" + ids_[i] + "'");
    }
  }
}

void KinshipMatrix::set(std::size_t i, std::size_t j, double value) {
  values_[i * size() + j] = value;
  values_[j * size() + i] = value;
}

std::optional<std::size_t> KinshipMatrix::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double KinshipMatrix::at(std::string_view a, std::string_view b) const {
  const auto i = find(a);
  const auto j = find(b);
  if (!i || !j) {
    throw Error(ErrorCode::unknown_id,
                "unknown matrix id '" + std::string(i ? b : a) + "'");
  }
  return (*this)(*i, *j);
}

KinshipMatrix KinshipMatrix::restricted_to(std::span<const std::string> ids) const {
  std::vector<std::size_t> rows;
  rows.reserve(ids.size());
  for (const auto& id : ids) {
    auto i = find(id);
    if (!i) throw Error(ErrorCode::unknown_id, "unknown matrix id '" + id + "'");
    rows.push_back(*i);
  }
  const std::size_t m = rows.size();
  std::vector<double> values(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) values[a * m + b] = (*this)(rows[a], rows[b]);
  }
  return KinshipMatrix({ids.begin(), ids.end()}, diagonal_, std::move(values));
}

bool KinshipMatrix::operator==(const KinshipMatrix& other) const {
  return ids_ == other.ids_ && diagonal_ == other.diagonal_ && values_ == other.values_;
}

KinshipMatrix convert_diagonal(const KinshipMatrix& matrix, Diagonal target) {
  if (matrix.diagonal() == target) return matrix;
  std::vector<double> values(matrix.values().begin(), matrix.values().end());
  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    double& d = values[i * n + i];
    d = target == Diagonal::inbreeding ? 2.0 * d - 1.0 : (1.0 + d) / 2.0;
  }
  return KinshipMatrix(matrix.ids(), target, std::move(values));
}

ComparisonReport compare_matrices(const KinshipMatrix& a, const KinshipMatrix& b,
                                  double tolerance) {
  if (a.ids() != b.ids()) {
    throw Error(ErrorCode::invalid_argument, "matrices are over different individuals");
  }
  if (a.diagonal() != b.diagonal()) {
    throw Error(ErrorCode::invalid_argument, "matrices use different diagonal conventions");
  }
  ComparisonReport report;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double d = std::abs(a(i, j) - b(i, j));
      // NaN counts as a mismatch.
      if (!(d <= report.max_abs_difference)) report.max_abs_difference = d;
      if (!(d <= tolerance)) report.mismatches.push_back({a.ids()[i], a.ids()[j], a(i, j), b(i, j)});
    }
  }
  return report;
}

}  // namespace pedkin
