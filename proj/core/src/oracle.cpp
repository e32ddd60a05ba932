#include "pedkin/oracle.hpp"

#include <array>
#include <vector>

#include "pedkin/error.hpp"

namespace pedkin {

OracleResult brute_force_kinship(const Pedigree& pedigree) {
  const std::size_t n = pedigree.size();

  // Own parents-first ordering: repeatedly take anyone whose parents are placed.
  std::vector<char> placed(n, 0);
  std::vector<Index> nonfounders;
  for (Index i = 0; i < n; ++i) placed[i] = pedigree[i].is_founder();
  for (bool progress = true; progress;) {
    progress = false;
    for (Index i = 0; i < n; ++i) {
      const Individual& p = pedigree[i];
      if (placed[i] || !placed[p.mother] || !placed[p.father]) continue;
      placed[i] = 1;
      nonfounders.push_back(i);
      progress = true;
    }
  }
  const std::size_t k = nonfounders.size();
  if (k > kOracleMaxNonFounders) {
    throw Error(ErrorCode::too_large, "oracle enumeration limited to " +
                                          std::to_string(kOracleMaxNonFounders) +
                                          " non-founders, pedigree has " + std::to_string(k));
  }

  std::vector<std::array<std::uint32_t, 2>> allele(n);
  std::uint32_t next = 0;
  for (Index i = 0; i < n; ++i) {
    if (pedigree[i].is_founder()) allele[i] = {next, next + 1}, next += 2;
  }

  const std::uint64_t vectors = std::uint64_t{1} << (2 * k);
  std::vector<std::uint64_t> shared(n * n, 0);  // sum of cross-IBD pair counts
  std::vector<std::uint64_t> autozygous(n, 0);
  for (std::uint64_t v = 0; v < vectors; ++v) {
    for (std::size_t q = 0; q < k; ++q) {
      const Individual& p = pedigree[nonfounders[q]];
      allele[nonfounders[q]] = {allele[p.mother][(v >> (2 * q)) & 1U],
                                allele[p.father][(v >> (2 * q + 1)) & 1U]};
    }
    for (std::size_t a = 0; a < n; ++a) {
      const auto& x = allele[a];
      autozygous[a] += x[0] == x[1];
      for (std::size_t b = a + 1; b < n; ++b) {
        const auto& y = allele[b];
        shared[a * n + b] += (x[0] == y[0]) + (x[0] == y[1]) + (x[1] == y[0]) + (x[1] == y[1]);
      }
    }
  }

  OracleResult result{KinshipMatrix(pedigree.ids(), Diagonal::inbreeding), vectors};
  const double total = static_cast<double>(vectors);
  for (std::size_t a = 0; a < n; ++a) {
    result.matrix.set(a, a, static_cast<double>(autozygous[a]) / total);
    for (std::size_t b = a + 1; b < n; ++b) {
      result.matrix.set(a, b, static_cast<double>(shared[a * n + b]) / (4.0 * total));
    }
  }
  return result;
}

}  // namespace pedkin
