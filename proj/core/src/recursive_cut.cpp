#include "pedkin/recursive_cut.hpp"

#include <algorithm>
#include <sstream>

#include "pedkin/error.hpp"

namespace pedkin {

std::vector<int> assign_generations(const Pedigree& pedigree) {
  std::vector<int> gen(pedigree.size(), 0);
  for (Index i : pedigree.topological_order()) {
    if (pedigree.is_founder(i)) continue;
    gen[i] = 1 + std::max(gen[pedigree.mother(i)], gen[pedigree.father(i)]);
  }
  return gen;
}

std::size_t CutPlan::max_segment_size() const noexcept {
  std::size_t s = 0;
  for (const auto& m : members) s = std::max(s, m.size());
  return s;
}

namespace {

void check_interest(const Pedigree& pedigree, std::span<const Index> interest) {
  if (interest.empty()) throw Error(ErrorCode::invalid_argument, "interest set is empty");
  for (Index i : interest) {
    if (i >= pedigree.size()) throw Error(ErrorCode::unknown_id, "interest index out of range");
  }
}

}  // namespace

CutPlan plan_from_boundaries(const Pedigree& pedigree, std::span<const Index> interest,
                             std::vector<int> boundaries) {
  check_interest(pedigree, interest);
  const auto gen = assign_generations(pedigree);
  const int max_gen = gen.empty() ? 0 : *std::max_element(gen.begin(), gen.end());
  for (std::size_t k = 0; k < boundaries.size(); ++k) {
    if (boundaries[k] < 1 || boundaries[k] > max_gen ||
        (k > 0 && boundaries[k] <= boundaries[k - 1])) {
      throw Error(ErrorCode::plan_mismatch,
                  "cut generations must be strictly increasing within [1, " +
                      std::to_string(max_gen) + "]");
    }
  }

  const std::size_t m = boundaries.size() + 1;
  auto segment_of = [&](Index i) {
    return static_cast<std::size_t>(
        std::upper_bound(boundaries.begin(), boundaries.end(), gen[i]) - boundaries.begin());
  };
  std::vector<std::vector<Index>> interior(m);
  std::vector<std::size_t> seg(pedigree.size());
  for (Index i = 0; i < pedigree.size(); ++i) {
    seg[i] = segment_of(i);
    interior[seg[i]].push_back(i);
  }

  CutPlan plan;
  plan.boundaries = std::move(boundaries);
  plan.interest.assign(interest.begin(), interest.end());
  plan.members.resize(m);
  plan.cut_parents.resize(m - 1);
  plan.cut_edges.resize(m - 1);

  // Youngest first: each segment learns which individuals it must receive
  // from above (its founders) from its own members and from what the
  // segment below asked for.
  std::vector<long> mark(pedigree.size(), -1);
  std::vector<Index> required(plan.interest);
  for (std::size_t k = m; k-- > 0;) {
    std::vector<Index> founders;
    std::vector<std::pair<Index, Index>> edges;
    auto take = [&](Index q) {
      if (mark[q] != static_cast<long>(k)) {
        mark[q] = static_cast<long>(k);
        founders.push_back(q);
      }
    };
    for (Index x : interior[k]) {
      if (pedigree.is_founder(x)) continue;
      for (Index q : {pedigree.mother(x), pedigree.father(x)}) {
        if (seg[q] < k) {
          take(q);
          edges.emplace_back(q, x);
        }
      }
    }
    for (Index x : required) {
      if (seg[x] < k) take(x);
    }
    std::sort(founders.begin(), founders.end());
    std::sort(edges.begin(), edges.end());

    auto& members = plan.members[k];
    members.reserve(interior[k].size() + founders.size());
    std::merge(interior[k].begin(), interior[k].end(), founders.begin(), founders.end(),
               std::back_inserter(members));
    required = founders;
    if (k > 0) {
      plan.cut_parents[k - 1] = std::move(founders);
      plan.cut_edges[k - 1] = std::move(edges);
    }
  }
  return plan;
}

CutPlan per_generation_plan(const Pedigree& pedigree, std::span<const Index> interest) {
  const auto gen = assign_generations(pedigree);
  const int max_gen = gen.empty() ? 0 : *std::max_element(gen.begin(), gen.end());
  std::vector<int> boundaries;
  for (int g = 1; g <= max_gen; ++g) boundaries.push_back(g);
  return plan_from_boundaries(pedigree, interest, std::move(boundaries));
}

CutPlan plan_cuts(const Pedigree& pedigree, std::span<const Index> interest,
                  std::size_t max_segment_size) {
  check_interest(pedigree, interest);
  if (max_segment_size == 0) {
    throw Error(ErrorCode::invalid_argument, "maximum segment size must be positive");
  }
  const auto gen = assign_generations(pedigree);
  const int max_gen = gen.empty() ? 0 : *std::max_element(gen.begin(), gen.end());
  std::vector<std::vector<Index>> by_gen(static_cast<std::size_t>(max_gen) + 1);
  for (Index i = 0; i < pedigree.size(); ++i) by_gen[gen[i]].push_back(i);

  std::vector<int> boundaries;
  // committed[q] == lo: parent q is already counted for the band starting at lo.
  std::vector<int> committed(pedigree.size(), -1);
  std::vector<long> probed(pedigree.size(), -1);
  long probe = 0;
  int lo = 0;
  // Members of generation g plus their not-yet-counted parents above lo.
  auto cost = [&](int g, bool commit) {
    ++probe;
    std::size_t added = by_gen[g].size();
    for (Index x : by_gen[g]) {
      if (pedigree.is_founder(x)) continue;
      for (Index q : {pedigree.mother(x), pedigree.father(x)}) {
        if (gen[q] >= lo || committed[q] == lo || probed[q] == probe) continue;
        probed[q] = probe;
        ++added;
        if (commit) committed[q] = lo;
      }
    }
    return added;
  };
  while (lo <= max_gen) {
    std::size_t estimate = cost(lo, true);
    int hi = lo;
    while (hi < max_gen && estimate + cost(hi + 1, false) <= max_segment_size) {
      estimate += cost(hi + 1, true);
      ++hi;
    }
    if (hi < max_gen) boundaries.push_back(hi + 1);
    lo = hi + 1;
  }
  return plan_from_boundaries(pedigree, interest, std::move(boundaries));
}

std::vector<Segment> cut_pedigree(const Pedigree& pedigree, const CutPlan& plan) {
  const std::size_t m = plan.members.size();
  if (m == 0 || plan.boundaries.size() + 1 != m || plan.cut_parents.size() + 1 != m) {
    throw Error(ErrorCode::plan_mismatch, "cut plan has inconsistent segment counts");
  }
  const std::size_t n = pedigree.size();
  std::vector<long> member_mark(n, -1);
  std::vector<long> founder_mark(n, -1);
  std::vector<long> leaf_mark(n, -1);
  std::vector<char> covered(n, 0);

  std::vector<Segment> segments;
  segments.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const long key = static_cast<long>(k);
    if (k > 0) {
      for (Index x : plan.cut_parents[k - 1]) {
        if (x >= n || member_mark[x] != key - 1) {
          throw Error(ErrorCode::plan_mismatch,
                      "cut parent is not a member of the segment above");
        }
        founder_mark[x] = key;
      }
    }
    if (k + 1 < m) {
      for (Index x : plan.cut_parents[k]) {
        if (x < n) leaf_mark[x] = key;
      }
    }
    for (Index x : plan.members[k]) {
      if (x >= n) throw Error(ErrorCode::plan_mismatch, "cut plan references unknown individual");
      member_mark[x] = key;
      covered[x] = 1;
    }

    Segment s;
    std::vector<PedigreeRecord> records;
    records.reserve(plan.members[k].size());
    for (Index x : plan.members[k]) {
      const Individual& p = pedigree[x];
      PedigreeRecord r{p.id, {}, {}, p.sex};
      const bool cut_founder = founder_mark[x] == key;
      const bool cut_leaf = leaf_mark[x] == key;
      if (!cut_founder && !p.is_founder()) {
        if (member_mark[p.mother] != key || member_mark[p.father] != key) {
          throw Error(ErrorCode::plan_mismatch,
                      "parents of '" + p.id + "' are outside its segment");
        }
        r.father = pedigree.id(p.father);
        r.mother = pedigree.id(p.mother);
      }
      records.push_back(std::move(r));
      s.original.push_back(x);
      s.roles.push_back(cut_founder && cut_leaf ? SegmentRole::pass_through
                        : cut_founder           ? SegmentRole::cut_founder
                        : cut_leaf              ? SegmentRole::cut_leaf
                                                : SegmentRole::interior);
    }
    s.pedigree = Pedigree::from_records(records);
    segments.push_back(std::move(s));
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
    throw Error(ErrorCode::plan_mismatch, "cut plan does not cover every individual");
  }
  return segments;
}

KinshipMatrix recursive_cut_kinship(const Pedigree& pedigree, const FounderKinship& psi,
                                    std::span<const Index> interest, const CutPlan& plan,
                                    const ExactOptions& options) {
  psi.check_matches(pedigree);
  const auto segments = cut_pedigree(pedigree, plan);
  const Segment& last = segments.back();
  for (Index i : interest) {
    if (i >= pedigree.size() || !last.pedigree.find(pedigree.id(i))) {
      throw Error(ErrorCode::plan_mismatch, "individual of interest '" +
                                                (i < pedigree.size() ? pedigree.id(i) : "?") +
                                                "' is not in the final segment");
    }
  }

  KinshipMatrix current = exact_kinship(segments.front().pedigree, psi, options);
  for (std::size_t k = 1; k < segments.size(); ++k) {
    const Pedigree& sub = segments[k].pedigree;
    std::vector<std::string> ids;
    std::vector<std::size_t> rows;
    ids.reserve(sub.founder_count());
    for (Index f : sub.founders()) {
      ids.push_back(sub.id(f));
      rows.push_back(*current.find(sub.id(f)));
    }
    // Inbreeding on the diagonal is exactly the founder-kinship convention.
    const std::size_t F = ids.size();
    std::vector<double> seed(F * F);
    for (std::size_t a = 0; a < F; ++a) {
      for (std::size_t b = 0; b < F; ++b) seed[a * F + b] = current(rows[a], rows[b]);
    }
    current = exact_kinship(sub, FounderKinship::full(std::move(ids), std::move(seed)), options);
  }
  return current;
}

std::string describe_plan(const CutPlan& plan) {
  std::ostringstream out;
  out << "segments\t" << plan.segment_count() << '\n';
  out << "max_segment_size\t" << plan.max_segment_size() << '\n';
  out << "cut_generations\t";
  for (std::size_t k = 0; k < plan.boundaries.size(); ++k) out << (k ? "," : "") << plan.boundaries[k];
  out << '\n';
  for (std::size_t k = 0; k < plan.segment_count(); ++k) {
    const int lo = k == 0 ? 0 : plan.boundaries[k - 1];
    out << "segment\t" << k << "\tfirst_generation=" << lo
        << "\tmembers=" << plan.members[k].size()
        << "\tcut_founders=" << (k == 0 ? 0 : plan.cut_parents[k - 1].size()) << '\n';
  }
  return out.str();
}

}  // namespace pedkin
