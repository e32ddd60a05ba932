#include "pedkin/pedigree.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>

#include "pedkin/error.hpp"

namespace pedkin {

const char* to_string(Sex sex) noexcept {
  switch (sex) {
    case Sex::female: return "F";
    case Sex::male: return "M";
    case Sex::unknown: return "U";
  }
  return "U";
}

namespace {

std::string unique_dummy_id(const std::string& base,
                            const std::unordered_map<std::string, Index>& taken) {
  std::string id = base;
  for (int k = 2; taken.count(id) != 0; ++k) id = base + "_" + std::to_string(k);
  return id;
}

// Names one cycle among the individuals left over by Kahn's algorithm.
std::string describe_cycle(const std::vector<Individual>& people,
                           const std::vector<char>& placed) {
  Index start = kNoIndex;
  for (Index i = 0; i < people.size(); ++i) {
    if (!placed[i]) {
      start = i;
      break;
    }
  }
  // Every unplaced individual has an unplaced parent; walk up until a repeat.
  std::vector<int> seen(people.size(), -1);
  std::vector<Index> path;
  Index v = start;
  while (seen[v] < 0) {
    seen[v] = static_cast<int>(path.size());
    path.push_back(v);
    const Individual& p = people[v];
    v = (p.mother != kNoIndex && !placed[p.mother]) ? p.mother : p.father;
  }
  std::string out;
  for (std::size_t k = static_cast<std::size_t>(seen[v]); k < path.size(); ++k) {
    if (!out.empty()) out += " <- ";
    out += people[path[k]].id;
  }
  return out;
}

}  // namespace

Pedigree Pedigree::from_records(std::span<const PedigreeRecord> records,
                                const PedigreeOptions& options) {
  Pedigree ped;
  auto& people = ped.individuals_;
  auto& index = ped.index_;

  for (const auto& r : records) {
    if (r.id.empty()) throw Error(ErrorCode::malformed_input, "empty individual id");
    if (!index.emplace(r.id, static_cast<Index>(people.size())).second) {
      throw Error(ErrorCode::duplicate_id, "duplicate individual id '" + r.id + "'");
    }
    people.push_back(Individual{r.id, r.sex, kNoIndex, kNoIndex, false});
  }
  const std::size_t declared = people.size();

  // Individuals referenced only as parents become founders.
  auto resolve = [&](const std::string& id, Sex role) -> Index {
    auto [it, inserted] = index.emplace(id, static_cast<Index>(people.size()));
    if (inserted) people.push_back(Individual{id, role, kNoIndex, kNoIndex, false});
    return it->second;
  };
  std::vector<std::pair<Index, Index>> parents(declared, {kNoIndex, kNoIndex});
  for (std::size_t i = 0; i < declared; ++i) {
    const auto& r = records[i];
    if (!r.father.empty()) parents[i].second = resolve(r.father, Sex::male);
    if (!r.mother.empty()) parents[i].first = resolve(r.mother, Sex::female);
  }

  for (std::size_t i = 0; i < declared; ++i) {
    auto& [mother, father] = parents[i];
    if ((mother == kNoIndex) == (father == kNoIndex)) continue;
    if (!options.synthesize_missing_parent) {
      throw Error(ErrorCode::missing_parent,
                  "individual '" + people[i].id + "' has exactly one known parent");
    }
    const bool need_mother = mother == kNoIndex;
    const std::string id = unique_dummy_id(
        (need_mother ? "_mother_of_" : "_father_of_") + people[i].id, index);
    const Index d = static_cast<Index>(people.size());
    index.emplace(id, d);
    people.push_back(Individual{id, need_mother ? Sex::female : Sex::male, kNoIndex,
                                kNoIndex, true});
    (need_mother ? mother : father) = d;
  }
  for (std::size_t i = 0; i < declared; ++i) {
    people[i].mother = parents[i].first;
    people[i].father = parents[i].second;
  }

  const std::size_t n = people.size();
  ped.children_.assign(n, {});
  for (Index i = 0; i < n; ++i) {
    const Individual& p = people[i];
    if (p.is_founder()) continue;
    if (p.mother == i || p.father == i) {
      throw Error(ErrorCode::cycle, "individual '" + p.id + "' is its own parent: " + p.id);
    }
    ped.children_[p.mother].push_back(i);
    if (p.father != p.mother) ped.children_[p.father].push_back(i);
  }

  // Kahn's algorithm keyed on (non-founder, index): all founders come first.
  std::vector<int> missing(n, 0);
  using Key = std::pair<int, Index>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (Index i = 0; i < n; ++i) {
    const Individual& p = people[i];
    if (p.is_founder()) {
      ready.push({0, i});
    } else {
      missing[i] = p.mother == p.father ? 1 : 2;
    }
  }
  std::vector<char> placed(n, 0);
  ped.topo_.reserve(n);
  while (!ready.empty()) {
    const Index v = ready.top().second;
    ready.pop();
    placed[v] = 1;
    ped.topo_.push_back(v);
    for (Index c : ped.children_[v]) {
      if (--missing[c] == 0) ready.push({1, c});
    }
  }
  if (ped.topo_.size() != n) {
    throw Error(ErrorCode::cycle, "pedigree contains a cycle: " + describe_cycle(people, placed));
  }

  // Parenthood fixes sex; declared sex must agree.
  std::vector<char> as_mother(n, 0), as_father(n, 0);
  for (const Individual& p : people) {
    if (p.is_founder()) continue;
    as_mother[p.mother] = 1;
    as_father[p.father] = 1;
  }
  for (Index i = 0; i < n; ++i) {
    Individual& p = people[i];
    if (as_mother[i] && as_father[i]) {
      throw Error(ErrorCode::sex_inconsistency,
                  "individual '" + p.id + "' is used as both mother and father");
    }
    if (as_mother[i]) {
      if (p.sex == Sex::male) {
        throw Error(ErrorCode::sex_inconsistency,
                    "individual '" + p.id + "' is declared male but is a mother");
      }
      p.sex = Sex::female;
    }
    if (as_father[i]) {
      if (p.sex == Sex::female) {
        throw Error(ErrorCode::sex_inconsistency,
                    "individual '" + p.id + "' is declared female but is a father");
      }
      p.sex = Sex::male;
    }
  }

  for (Index i = 0; i < n; ++i) {
    if (people[i].is_founder()) ped.founders_.push_back(i);
    if (ped.children_[i].empty()) ped.leaves_.push_back(i);
  }
  return ped;
}

std::optional<Index> Pedigree::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Index Pedigree::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorCode::unknown_id, "unknown individual '" + std::string(id) + "'");
}

std::vector<Index> Pedigree::indices_of(std::span<const std::string> ids) const {
  std::vector<Index> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(index_of(id));
  return out;
}

std::vector<std::string> Pedigree::ids() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (const auto& p : individuals_) out.push_back(p.id);
  return out;
}

std::vector<Index> topological_order(const Pedigree& pedigree) {
  auto order = pedigree.topological_order();
  return {order.begin(), order.end()};
}

bool is_topological_order(const Pedigree& pedigree, std::span<const Index> order) {
  const std::size_t n = pedigree.size();
  if (order.size() != n) return false;
  std::vector<std::size_t> position(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (order[k] >= n || position[order[k]] != n) return false;
    position[order[k]] = k;
  }
  for (Index i = 0; i < n; ++i) {
    if (pedigree.is_founder(i)) continue;
    if (position[pedigree.mother(i)] >= position[i]) return false;
    if (position[pedigree.father(i)] >= position[i]) return false;
  }
  return true;
}

}  // namespace pedkin
