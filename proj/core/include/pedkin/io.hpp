#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pedkin/founder_kinship.hpp"
#include "pedkin/kinship_matrix.hpp"
#include "pedkin/pedigree.hpp"

namespace pedkin {

// PED-like text: whitespace-separated `id father mother sex`, with an
// optional leading family-id column detected from the column count (4 or
// 5). "0" is a missing parent; lines starting with '#' are ignored. Sex
// accepts M/F/U, 1/2/0 and male/female/unknown.
Pedigree parse_pedigree(std::istream& in, const PedigreeOptions& options = {});
Pedigree read_pedigree_file(const std::filesystem::path& path,
                            const PedigreeOptions& options = {});

// Four-column output in dense-index order. Re-parsing yields the same pedigree.
void write_pedigree(const Pedigree& pedigree, std::ostream& out);

enum class MatrixFormat { dense, triplet };

// dense:   "# diagonal=..." comment, tab-separated id header, n rows of n values
// triplet: "# diagonal=..." comment, then "id_i id_j value" for the upper
//          triangle including the diagonal, zeros omitted
// Values are printed with 17 significant digits.
void write_kinship_matrix(const KinshipMatrix& matrix, MatrixFormat format,
                          std::ostream& out);

// Reads the dense format back.
KinshipMatrix read_kinship_matrix(std::istream& in);

// Triplet lines "founder_i founder_j value"; diagonal lines carry Psi_ff.
// Missing entries are 0. Result is in mode full over the pedigree's founders.
FounderKinship read_founder_kinship(std::istream& in, const Pedigree& pedigree);
FounderKinship read_founder_kinship_file(const std::filesystem::path& path,
                                         const Pedigree& pedigree);

// Whitespace-separated ids, '#' comments allowed.
std::vector<std::string> read_id_list(std::istream& in);
std::vector<std::string> read_id_list_file(const std::filesystem::path& path);

}  // namespace pedkin
