#include "pedkin/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "pedkin/error.hpp"
#include "pedkin/identity_states.hpp"
#include "pedkin/worker_pool.hpp"

namespace pedkin {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform on [0, 1) with 53 random bits.
double uniform01(Rng& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double merge_probability(double psi_fg, MergeRule rule) noexcept {
  return rule == MergeRule::unbiased_2psi ? std::min(1.0, 2.0 * psi_fg) : psi_fg;
}

// Union-find over the 2F founder-allele slots; the smaller slot is the root.
class SlotForest {
 public:
  explicit SlotForest(std::size_t slots) : parent_(slots) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Rng replicate_rng(std::uint64_t seed, std::uint64_t replicate) noexcept {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(replicate + 0x632be59bd9b4e019ULL)));
}

void sample_segregation(const Pedigree& pedigree, Rng& rng, SegregationSample& out) {
  out.assign(pedigree.size(), Segregation{});
  std::uint64_t word = 0;
  int left = 0;
  auto coin = [&]() {
    if (left == 0) {
      word = rng();
      left = 64;
    }
    const bool bit = word & 1U;
    word >>= 1;
    --left;
    return bit ? Slot::paternal : Slot::maternal;
  };
  for (Index i = 0; i < pedigree.size(); ++i) {
    if (pedigree.is_founder(i)) continue;
    out[i].from_mother = coin();
    out[i].from_father = coin();
  }
}

SegregationSample sample_segregation(const Pedigree& pedigree, Rng& rng) {
  SegregationSample seg;
  sample_segregation(pedigree, rng, seg);
  return seg;
}

FounderMerges::FounderMerges(const Pedigree& pedigree, const FounderKinship& psi,
                             MergeRule rule) {
  psi.check_matches(pedigree);
  const auto founders = pedigree.founders();
  std::vector<std::size_t> pos;
  pos.reserve(founders.size());
  for (Index f : founders) pos.push_back(*psi.position(pedigree.id(f)));
  for (std::size_t a = 0; a < founders.size(); ++a) {
    const double self = psi.inbreeding(pos[a]);
    if (self > 0.0) selves_.push_back({static_cast<Index>(a), self});
    for (std::size_t b = a + 1; b < founders.size(); ++b) {
      const double p = merge_probability(psi.kinship(pos[a], pos[b]), rule);
      if (p > 0.0) pairs_.push_back({static_cast<Index>(a), static_cast<Index>(b), p});
    }
  }
}

void compute_cc_labels(const Pedigree& pedigree, const SegregationSample& seg,
                       const FounderMerges& merges, Rng& rng, CCLabels& labels,
                       std::vector<AlleleLink>* links) {
  const std::size_t n = pedigree.size();
  if (seg.size() != n) {
    throw Error(ErrorCode::invalid_argument, "segregation sample does not match pedigree");
  }
  const auto order = pedigree.topological_order();
  labels.assign(n, AlleleLabels{0, 0});
  std::uint64_t counter = 1;
  for (Index leaf : pedigree.leaves()) {
    labels[leaf] = {counter, counter + 1};
    counter += 2;
  }

  // Children before parents: each allele hands its label to the parent
  // allele it was copied from; the larger label wins.
  for (std::size_t t = n; t-- > 0;) {
    const Index i = order[t];
    if (pedigree.is_founder(i)) continue;
    auto& from_m = labels[pedigree.mother(i)][static_cast<int>(seg[i].from_mother)];
    auto& from_f = labels[pedigree.father(i)][static_cast<int>(seg[i].from_father)];
    from_m = std::max(from_m, labels[i][0]);
    from_f = std::max(from_f, labels[i][1]);
  }

  const auto founders = pedigree.founders();
  for (Index f : founders) {
    for (auto& c : labels[f]) {
      if (c == 0) c = counter++;
    }
  }

  if (!merges.pairs().empty() || !merges.selves().empty()) {
    SlotForest forest(2 * founders.size());
    for (const auto& pair : merges.pairs()) {
      // Coin: pair (f1,g1)(f2,g2) or (f1,g2)(f2,g1).
      const bool crossed = rng() >> 63;
      for (int x = 0; x < 2; ++x) {
        if (!(uniform01(rng) < pair.probability)) continue;
        const int y = crossed ? 1 - x : x;
        forest.unite(2 * pair.f + x, 2 * pair.g + y);
        if (links) {
          links->push_back({founders[pair.f], static_cast<Slot>(x), founders[pair.g],
                            static_cast<Slot>(y)});
        }
      }
    }
    for (const auto& self : merges.selves()) {
      if (!(uniform01(rng) < self.probability)) continue;
      forest.unite(2 * self.f, 2 * self.f + 1);
      if (links) {
        links->push_back({founders[self.f], Slot::maternal, founders[self.f], Slot::paternal});
      }
    }
    std::vector<std::uint64_t> before(2 * founders.size());
    for (std::size_t a = 0; a < founders.size(); ++a) {
      before[2 * a] = labels[founders[a]][0];
      before[2 * a + 1] = labels[founders[a]][1];
    }
    for (std::size_t a = 0; a < founders.size(); ++a) {
      labels[founders[a]][0] = before[forest.find(2 * a)];
      labels[founders[a]][1] = before[forest.find(2 * a + 1)];
    }
  }

  // Parents before children: copy founder labels down the transmission edges.
  for (Index i : order) {
    if (pedigree.is_founder(i)) continue;
    labels[i][0] = labels[pedigree.mother(i)][static_cast<int>(seg[i].from_mother)];
    labels[i][1] = labels[pedigree.father(i)][static_cast<int>(seg[i].from_father)];
  }
}

CCLabels compute_cc_labels(const Pedigree& pedigree, const SegregationSample& seg,
                           const FounderKinship& psi, MergeRule rule, Rng& rng,
                           std::vector<AlleleLink>* links) {
  CCLabels labels;
  compute_cc_labels(pedigree, seg, FounderMerges(pedigree, psi, rule), rng, labels, links);
  return labels;
}

EstimateAccumulator::EstimateAccumulator(std::size_t interest_size)
    : n_(interest_size), sum_(n_ * n_, 0), sum_sq_(n_ * n_, 0) {}

std::size_t EstimateAccumulator::slot(std::size_t i, std::size_t j) const noexcept {
  return i <= j ? i * n_ + j : j * n_ + i;
}

void EstimateAccumulator::add_units(std::size_t i, std::size_t j, std::uint32_t units) {
  const std::size_t s = slot(i, j);
  sum_[s] += units;
  sum_sq_[s] += static_cast<std::uint64_t>(units) * units;
}

void EstimateAccumulator::merge(const EstimateAccumulator& other) {
  if (other.n_ != n_) throw Error(ErrorCode::invalid_argument, "accumulator size mismatch");
  for (std::size_t k = 0; k < sum_.size(); ++k) {
    sum_[k] += other.sum_[k];
    sum_sq_[k] += other.sum_sq_[k];
  }
  replicates_ += other.replicates_;
}

double EstimateAccumulator::mean(std::size_t i, std::size_t j) const {
  if (replicates_ == 0) return 0.0;
  const double scale = i == j ? 1.0 : 0.25;
  return scale * static_cast<double>(sum_[slot(i, j)]) / static_cast<double>(replicates_);
}

double EstimateAccumulator::standard_error(std::size_t i, std::size_t j) const {
  if (replicates_ < 2) {
    throw Error(ErrorCode::invalid_argument, "standard errors need at least two replicates");
  }
  const double S = static_cast<double>(replicates_);
  const double sum = static_cast<double>(sum_[slot(i, j)]);
  const double sum_sq = static_cast<double>(sum_sq_[slot(i, j)]);
  const double var = std::max(0.0, (S * sum_sq - sum * sum) / (S * (S - 1.0)));
  const double scale = i == j ? 1.0 : 0.25;
  return scale * std::sqrt(var / S);
}

void accumulate_replicate(const CCLabels& labels, std::span<const Index> interest,
                          EstimateAccumulator& accumulator) {
  for (std::size_t a = 0; a < interest.size(); ++a) {
    const AlleleLabels& ci = labels[interest[a]];
    if (ci[0] == ci[1]) accumulator.add_units(a, a, 1);
    for (std::size_t b = a + 1; b < interest.size(); ++b) {
      const AlleleLabels& cj = labels[interest[b]];
      const int e = edge_count(partition_from_labels(ci[0], ci[1], cj[0], cj[1]), EdgeType::ab);
      if (e > 0) accumulator.add_units(a, b, static_cast<std::uint32_t>(e));
    }
  }
  accumulator.finish_replicate();
}

KinshipMatrix standard_errors(const EstimateAccumulator& accumulator,
                              std::vector<std::string> ids) {
  KinshipMatrix se(std::move(ids), Diagonal::inbreeding);
  for (std::size_t i = 0; i < accumulator.size(); ++i) {
    for (std::size_t j = i; j < accumulator.size(); ++j) se.set(i, j, accumulator.standard_error(i, j));
  }
  return se;
}

KinshipEstimate estimate_kinship(const Pedigree& pedigree, const FounderKinship& psi,
                                 std::span<const Index> interest_in,
                                 const SamplerConfig& config) {
  if (config.samples == 0) throw Error(ErrorCode::invalid_argument, "samples must be positive");
  std::vector<Index> interest;
  for (Index i : interest_in) {
    if (i >= pedigree.size()) throw Error(ErrorCode::unknown_id, "interest index out of range");
    if (std::find(interest.begin(), interest.end(), i) == interest.end()) interest.push_back(i);
  }
  const FounderMerges merges(pedigree, psi, config.merge_rule);

  const std::size_t chunks = static_cast<std::size_t>(
      std::clamp<std::uint64_t>(config.threads, 1, config.samples));
  std::vector<EstimateAccumulator> partial(chunks, EstimateAccumulator(interest.size()));
  auto run_chunk = [&](std::size_t c) {
    const std::uint64_t begin = config.samples * c / chunks;
    const std::uint64_t end = config.samples * (c + 1) / chunks;
    SegregationSample seg;
    CCLabels labels;
    for (std::uint64_t r = begin; r < end; ++r) {
      Rng rng = replicate_rng(config.seed, r);
      sample_segregation(pedigree, rng, seg);
      compute_cc_labels(pedigree, seg, merges, rng, labels);
      accumulate_replicate(labels, interest, partial[c]);
    }
  };
  if (chunks == 1) {
    run_chunk(0);
  } else {
    WorkerPool pool(chunks);
    pool.parallel_for(chunks, [&](std::size_t b, std::size_t e) {
      for (std::size_t c = b; c < e; ++c) run_chunk(c);
    });
  }
  EstimateAccumulator total(interest.size());
  for (const auto& p : partial) total.merge(p);

  std::vector<std::string> ids;
  ids.reserve(interest.size());
  for (Index i : interest) ids.push_back(pedigree.id(i));

  KinshipEstimate result;
  result.estimate = KinshipMatrix(ids, Diagonal::inbreeding);
  for (std::size_t a = 0; a < interest.size(); ++a) {
    for (std::size_t b = a; b < interest.size(); ++b) result.estimate.set(a, b, total.mean(a, b));
  }
  if (total.replicates() >= 2) result.standard_error = standard_errors(total, std::move(ids));
  result.samples = config.samples;
  result.seed = config.seed;
  return result;
}

}  // namespace pedkin
