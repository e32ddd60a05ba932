#include "pedkin/identity_states.hpp"

#include <algorithm>
#include <vector>

namespace pedkin {

namespace {

constexpr const char* kAlleleNames[4] = {"a1", "a2", "b1", "b2"};

// Jacquard's condensed state from the three edge-type counts.
int condensed_state(const AllelePartition& p) noexcept {
  const bool aa = edge_count(p, EdgeType::aa) == 1;
  const bool bb = edge_count(p, EdgeType::bb) == 1;
  const int ab = edge_count(p, EdgeType::ab);
  if (aa && bb) return ab == 4 ? 1 : 2;
  if (aa) return ab == 2 ? 3 : 4;
  if (bb) return ab == 2 ? 5 : 6;
  if (ab == 2) return 7;
  return ab == 1 ? 8 : 9;
}

// Classes as sorted allele-name strings, e.g. {"a1b1", "a2", "b2"}.
std::vector<std::string> signature(const AllelePartition& p) {
  std::vector<std::string> classes(static_cast<std::size_t>(p.class_count()));
  for (int a = 0; a < 4; ++a) classes[p.blocks()[a]] += kAlleleNames[a];
  std::sort(classes.begin(), classes.end());
  return classes;
}

struct StateTable {
  std::array<AllelePartition, 15> states;

  StateTable() {
    std::vector<AllelePartition> all;
    // Restricted growth strings of length 4.
    for (int b1 = 0; b1 <= 1; ++b1) {
      for (int b2 = 0; b2 <= std::max(0, b1) + 1; ++b2) {
        for (int b3 = 0; b3 <= std::max({0, b1, b2}) + 1; ++b3) {
          all.push_back(AllelePartition::from_labels(std::array<int, 4>{0, b1, b2, b3}));
        }
      }
    }
    std::sort(all.begin(), all.end(), [](const AllelePartition& x, const AllelePartition& y) {
      const int cx = condensed_state(x);
      const int cy = condensed_state(y);
      if (cx != cy) return cx < cy;
      return signature(x) < signature(y);
    });
    std::copy(all.begin(), all.end(), states.begin());
  }
};

const StateTable& table() {
  static const StateTable t;
  return t;
}

}  // namespace

int AllelePartition::class_count() const noexcept {
  return 1 + *std::max_element(blocks_.begin(), blocks_.end());
}

AllelePartition partition_from_labels(std::uint64_t ci_m, std::uint64_t ci_f,
                                      std::uint64_t cj_m, std::uint64_t cj_f) noexcept {
  return AllelePartition::from_labels(std::array<std::uint64_t, 4>{ci_m, ci_f, cj_m, cj_f});
}

int edge_count(const AllelePartition& p, EdgeType t) noexcept {
  const auto& b = p.blocks();
  switch (t) {
    case EdgeType::aa: return b[0] == b[1] ? 1 : 0;
    case EdgeType::bb: return b[2] == b[3] ? 1 : 0;
    case EdgeType::ab:
      return (b[0] == b[2]) + (b[0] == b[3]) + (b[1] == b[2]) + (b[1] == b[3]);
  }
  return 0;
}

StateIndex classify(const AllelePartition& p) noexcept {
  const auto& states = table().states;
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k] == p) return {static_cast<int>(k) + 1, condensed_state(p)};
  }
  return {};
}

int founder_allele_count(const AllelePartition& p) noexcept { return p.class_count(); }

bool is_outbred(const AllelePartition& p) noexcept {
  return edge_count(p, EdgeType::aa) == 0 && edge_count(p, EdgeType::bb) == 0;
}

double kinship_contribution(const AllelePartition& p, bool same_individual) noexcept {
  if (same_individual) return edge_count(p, EdgeType::aa);
  return edge_count(p, EdgeType::ab) / 4.0;
}

std::span<const AllelePartition, 15> all_identity_states() noexcept { return table().states; }

std::string describe(const AllelePartition& p) {
  std::string out;
  for (int c = 0; c < p.class_count(); ++c) {
    out += '{';
    bool first = true;
    for (int a = 0; a < 4; ++a) {
      if (p.blocks()[a] != c) continue;
      if (!first) out += ',';
      out += kAlleleNames[a];
      first = false;
    }
    out += '}';
  }
  return out;
}

}  // namespace pedkin
