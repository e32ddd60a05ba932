#include "pedkin/exact_kinship.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>

#ifdef __linux__
#include <sys/mman.h>
#endif

#include "pedkin/ancestors.hpp"
#include "pedkin/error.hpp"
#include "pedkin/worker_pool.hpp"

namespace pedkin {

namespace {

constexpr std::size_t kParallelRowThreshold = 4096;
constexpr std::size_t kBlock = 64;

void advise_huge_pages([[maybe_unused]] void* data, [[maybe_unused]] std::size_t bytes) {
#ifdef __linux__
  constexpr std::uintptr_t kHuge = std::uintptr_t{1} << 21;
  if (bytes < 4 * kHuge) return;
  const auto begin = (reinterpret_cast<std::uintptr_t>(data) + kHuge - 1) & ~(kHuge - 1);
  const auto end = (reinterpret_cast<std::uintptr_t>(data) + bytes) & ~(kHuge - 1);
  if (end > begin) madvise(reinterpret_cast<void*>(begin), end - begin, MADV_HUGEPAGE);
#endif
}

// In place: entry (t, u) moves to (order[t], order[u]).
void permute_to_dense(std::vector<double>& m, std::size_t n, std::span<const Index> order) {
  bool identity = true;
  for (std::size_t t = 0; t < n && identity; ++t) identity = order[t] == t;
  if (identity) return;
  std::vector<double> buffer(n);
  for (std::size_t t = 0; t < n; ++t) {
    double* row = m.data() + t * n;
    for (std::size_t u = 0; u < n; ++u) buffer[order[u]] = row[u];
    std::copy(buffer.begin(), buffer.end(), row);
  }
  // Rows follow the cycles of the permutation.
  std::vector<double> carry(n), displaced(n);
  std::vector<char> done(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (done[start]) continue;
    std::copy_n(m.data() + start * n, n, carry.begin());
    for (std::size_t t = start; !done[t];) {
      done[t] = 1;
      double* target = m.data() + static_cast<std::size_t>(order[t]) * n;
      std::copy_n(target, n, displaced.begin());
      std::copy(carry.begin(), carry.end(), target);
      carry.swap(displaced);
      t = order[t];
    }
  }
}

}  // namespace

KinshipMatrix exact_kinship(const Pedigree& pedigree, const FounderKinship& psi,
                            const ExactOptions& options) {
  psi.check_matches(pedigree);
  const std::size_t n = pedigree.size();
  const std::size_t F = pedigree.founder_count();
  const auto order = pedigree.topological_order();
  std::vector<std::size_t> pos(n);
  for (std::size_t t = 0; t < n; ++t) pos[order[t]] = t;

  // Self-kinship (phi) in topological-position space while running.
  std::vector<double> phi;
  phi.reserve(n * n);
  advise_huge_pages(phi.data(), n * n * sizeof(double));
  phi.resize(n * n, 0.0);
  double* const P = phi.data();
  auto at = [&](std::size_t a, std::size_t b) -> double& { return P[a * n + b]; };

  std::vector<std::size_t> psi_pos(F);
  for (std::size_t a = 0; a < F; ++a) {
    psi_pos[a] = *psi.position(pedigree.id(order[a]));
    at(a, a) = (1.0 + psi.inbreeding(psi_pos[a])) / 2.0;
    for (std::size_t b = 0; b < a; ++b) {
      at(a, b) = at(b, a) = psi.kinship(psi_pos[a], psi_pos[b]);
    }
  }

  std::optional<AncestorSets> ancestry;
  if (options.check_ancestry) ancestry.emplace(pedigree);
  std::optional<WorkerPool> pool;
  if (options.threads > 1) pool.emplace(options.threads);

  // Rows before `T` are complete; rows of the current block are filled left
  // of T first, then inside the block (lower triangle), then mirrored.
  for (std::size_t T = F; T < n; T += kBlock) {
    const std::size_t E = std::min(n, T + kBlock);
    // Lower-triangle lookup, valid once max(a, b) >= T has been computed.
    auto lower = [&](std::size_t a, std::size_t b) { return a >= b ? at(a, b) : at(b, a); };

    for (std::size_t t = T; t < E; ++t) {
      const Index i = order[t];
      const std::size_t m = pos[pedigree.mother(i)];
      const std::size_t p = pos[pedigree.father(i)];
      double* row_t = P + t * n;
      const double* row_m = P + m * n;
      const double* row_p = P + p * n;

      auto sweep = [&](std::size_t begin, std::size_t end) {
        for (std::size_t u = begin; u < end; ++u) row_t[u] = (row_m[u] + row_p[u]) / 2.0;
      };
      if (pool && T >= kParallelRowThreshold) {
        pool->parallel_for(T, sweep);
      } else {
        sweep(0, T);
      }
      for (std::size_t u = T; u < t; ++u) row_t[u] = (lower(m, u) + lower(p, u)) / 2.0;
      row_t[t] = (1.0 + (std::max(m, p) < T ? at(m, p) : lower(m, p))) / 2.0;

      if (ancestry) {
        for (std::size_t u = 0; u < t; ++u) {
          if (ancestry->is_ancestor(i, order[u])) {
            throw Error(ErrorCode::invalid_argument,
                        "topological order violated: '" + pedigree.id(i) +
                            "' is an ancestor of '" + pedigree.id(order[u]) + "'");
          }
        }
      }
    }

    auto mirror = [&](std::size_t begin, std::size_t end) {
      for (std::size_t u = begin; u < end; ++u) {
        for (std::size_t t = std::max(T, u + 1); t < E; ++t) at(u, t) = at(t, u);
      }
    };
    if (pool && T >= kParallelRowThreshold) {
      pool->parallel_for(E, mirror);
    } else {
      mirror(0, E);
    }
  }

  // Inbreeding diagonal: Psi_ff for founders, phi_mp otherwise.
  for (std::size_t a = 0; a < F; ++a) at(a, a) = psi.inbreeding(psi_pos[a]);
  for (std::size_t t = F; t < n; ++t) {
    const Index i = order[t];
    at(t, t) = at(pos[pedigree.mother(i)], pos[pedigree.father(i)]);
  }

  permute_to_dense(phi, n, order);
  return KinshipMatrix(pedigree.ids(), Diagonal::inbreeding, std::move(phi));
}

KinshipMatrix exact_kinship(const Pedigree& pedigree) {
  return exact_kinship(pedigree, FounderKinship::zero(pedigree));
}

double outbred_kinship_from_ibd_fractions(double f0, double f1, double f2) {
  for (double f : {f0, f1, f2}) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw Error(ErrorCode::invalid_argument, "IBD fractions must lie in [0, 1]");
    }
  }
  if (std::abs(f0 + f1 + f2 - 1.0) > 1e-12) {
    throw Error(ErrorCode::invalid_argument, "IBD fractions must sum to 1");
  }
  return (2.0 * f2 + f1) / 4.0;
}

}  // namespace pedkin
