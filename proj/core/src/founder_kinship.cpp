#include "pedkin/founder_kinship.hpp"


#include "pedkin/error.hpp"
#include "pedkin/pedigree.hpp"

namespace pedkin {

FounderKinship FounderKinship::zero(std::vector<std::string> founder_ids) {
  FounderKinship psi;
  psi.ids_ = std::move(founder_ids);
  psi.matrix_.assign(psi.ids_.size() * psi.ids_.size(), 0.0);
  psi.mode_ = FounderMode::zero;
  psi.build_index();
  return psi;
}

FounderKinship FounderKinship::zero(const Pedigree& pedigree) {
  std::vector<std::string> ids;
  ids.reserve(pedigree.founder_count());
  for (Index f : pedigree.founders()) ids.push_back(pedigree.id(f));
  return zero(std::move(ids));
}

FounderKinship FounderKinship::full(std::vector<std::string> founder_ids,
                                    std::vector<double> matrix) {
  const std::size_t F = founder_ids.size();
  if (matrix.size() != F * F) {
    throw Error(ErrorCode::invalid_argument, "founder kinship must be F x F");
  }
  for (std::size_t f = 0; f < F; ++f) {
    for (std::size_t g = 0; g < F; ++g) {
      const double v = matrix[f * F + g];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::value_out_of_range,
                    "founder kinship (" + founder_ids[f] + ", " + founder_ids[g] +
                        ") = " + std::to_string(v) + " outside [0, 1]");
      }
      if (v != matrix[g * F + f]) {
        throw Error(ErrorCode::conflicting_entry, "founder kinship is not symmetric at (" +
                                                      founder_ids[f] + ", " + founder_ids[g] + ")");
      }
    }
  }
  FounderKinship psi;
  psi.ids_ = std::move(founder_ids);
  psi.matrix_ = std::move(matrix);
  psi.mode_ = FounderMode::full;
  psi.build_index();
  return psi;
}

FounderKinship FounderKinship::with_mode(FounderMode mode) const {
  FounderKinship psi = *this;
  psi.mode_ = mode;
  psi.psi_bar_ = 0.0;
  if (mode == FounderMode::average_psi && size() > 0) {
    // Extended precision keeps the mean of equal values exact.
    long double total = 0.0L;
    for (std::size_t h = 0; h < size(); ++h) total += stored(h, h);
    psi.psi_bar_ = static_cast<double>(total / static_cast<long double>(size()));
  }
  return psi;
}

std::optional<std::size_t> FounderKinship::position(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double FounderKinship::inbreeding(std::size_t f) const {
  return mode_ == FounderMode::zero ? 0.0 : stored(f, f);
}

double FounderKinship::kinship(std::size_t f, std::size_t g) const {
  if (f == g) return inbreeding(f);
  switch (mode_) {
    case FounderMode::full: return stored(f, g);
    case FounderMode::average_psi: return psi_bar_;
    case FounderMode::zero: return 0.0;
  }
  return 0.0;
}

void FounderKinship::check_matches(const Pedigree& pedigree) const {
  if (pedigree.founder_count() != size()) {
    throw Error(ErrorCode::founder_mismatch,
                "founder kinship covers " + std::to_string(size()) + " founders, pedigree has " +
                    std::to_string(pedigree.founder_count()));
  }
  for (Index f : pedigree.founders()) {
    if (!position(pedigree.id(f))) {
      throw Error(ErrorCode::founder_mismatch,
                  "founder '" + pedigree.id(f) + "' missing from founder kinship");
    }
  }
}

void FounderKinship::build_index() {
  index_.clear();
  index_.reserve(ids_.size());
  for (std::size_t k = 0; k < ids_.size(); ++k) {
    if (!index_.emplace(ids_[k], k).second) {
      throw Error(ErrorCode::duplicate_id, "duplicate founder id '" + ids_[k] + "'");
    }
  }
}

}  // namespace pedkin
