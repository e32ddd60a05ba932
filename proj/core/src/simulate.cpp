#include "pedkin/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "pedkin/error.hpp"

namespace pedkin {

namespace {

std::string wf_id(std::uint32_t generation, std::uint32_t k) {
  return "g" + std::to_string(generation) + "_" + std::to_string(k);
}

}  // namespace

Pedigree wright_fisher_pedigree(const WrightFisherParams& params) {
  const std::uint32_t N = params.pairs;
  const std::uint32_t G = params.generations;
  if (N == 0 || G == 0) {
    throw Error(ErrorCode::invalid_argument, "Wright-Fisher needs N >= 1 and G >= 1");
  }
  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, N - 1);
  std::vector<PedigreeRecord> records;
  records.reserve(static_cast<std::size_t>(2) * N * G);
  std::vector<std::uint32_t> partner(N);
  for (std::uint32_t g = 0; g < G; ++g) {
    if (g > 0 && params.monogamous) {
      std::iota(partner.begin(), partner.end(), 0U);
      std::shuffle(partner.begin(), partner.end(), rng);
    }
    for (std::uint32_t k = 0; k < 2 * N; ++k) {
      PedigreeRecord r;
      r.id = wf_id(g, k);
      r.sex = k < N ? Sex::female : Sex::male;
      if (g > 0) {
        std::uint32_t mother = pick(rng);
        std::uint32_t father = params.monogamous ? partner[mother] : pick(rng);
        r.mother = wf_id(g - 1, mother);
        r.father = wf_id(g - 1, N + father);
      }
      records.push_back(std::move(r));
    }
  }
  return Pedigree::from_records(records);
}

Pedigree random_pedigree(std::uint32_t n, double founder_fraction, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "pedigree size must be positive");
  if (!(founder_fraction > 0.0 && founder_fraction <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "founder fraction must lie in (0, 1]");
  }
  const auto founders = static_cast<std::uint32_t>(std::clamp<long long>(
      std::llround(founder_fraction * n), 1, static_cast<long long>(n)));
  if (founders < n && founders < 2) {
    throw Error(ErrorCode::invalid_argument,
                "need at least one female and one male founder to place non-founders");
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<PedigreeRecord> records;
  std::vector<std::uint32_t> females, males;
  for (std::uint32_t k = 0; k < n; ++k) {
    PedigreeRecord r;
    r.id = "i" + std::to_string(k);
    r.sex = k == 0 ? Sex::female : k == 1 ? Sex::male : (coin(rng) ? Sex::male : Sex::female);
    if (k >= founders) {
      std::uniform_int_distribution<std::size_t> mom(0, females.size() - 1);
      std::uniform_int_distribution<std::size_t> dad(0, males.size() - 1);
      r.mother = records[females[mom(rng)]].id;
      r.father = records[males[dad(rng)]].id;
    }
    (r.sex == Sex::female ? females : males).push_back(k);
    records.push_back(std::move(r));
  }
  return Pedigree::from_records(records);
}

}  // namespace pedkin
