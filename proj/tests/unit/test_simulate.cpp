#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "oracles.hpp"
#include "pedkin/error.hpp"
#include "pedkin/io.hpp"
#include "pedkin/recursive_cut.hpp"
#include "pedkin/simulate.hpp"

using namespace pedkin;

TEST(WrightFisher, SinglePairSingleGeneration) {
  const auto ped = wright_fisher_pedigree({1, 1, 0, false});
  EXPECT_EQ(ped.size(), 2u);
  EXPECT_EQ(ped.founder_count(), 2u);
}

TEST(WrightFisher, StructureN2G3) {
  const auto ped = wright_fisher_pedigree({2, 3, 4, false});
  ASSERT_EQ(ped.size(), 12u);
  const auto gen = assign_generations(ped);
  std::vector<int> per_gen(3, 0);
  for (Index i = 0; i < ped.size(); ++i) {
    ++per_gen[gen[i]];
    if (!ped.is_founder(i)) {
      EXPECT_EQ(gen[ped.mother(i)], gen[i] - 1);
      EXPECT_EQ(gen[ped.father(i)], gen[i] - 1);
      EXPECT_EQ(ped[ped.mother(i)].sex, Sex::female);
      EXPECT_EQ(ped[ped.father(i)].sex, Sex::male);
    }
  }
  EXPECT_EQ(per_gen, (std::vector<int>{4, 4, 4}));
}

TEST(WrightFisher, ConstructionGenerationMatchesAssigned) {
  const auto ped = wright_fisher_pedigree({25, 8, 99, false});
  ASSERT_EQ(ped.size(), 400u);
  const auto gen = assign_generations(ped);
  for (Index i = 0; i < ped.size(); ++i) {
    const auto& id = ped.id(i);
    EXPECT_EQ(std::stoi(id.substr(1, id.find('_') - 1)), gen[i]) << id;
  }
}

TEST(WrightFisher, DeterministicPerSeed) {
  auto text = [](std::uint64_t seed, bool mono) {
    std::ostringstream out;
    write_pedigree(wright_fisher_pedigree({6, 5, seed, mono}), out);
    return out.str();
  };
  EXPECT_EQ(text(3, false), text(3, false));
  EXPECT_NE(text(3, false), text(4, false));
  EXPECT_EQ(text(3, true), text(3, true));
}

TEST(WrightFisher, MonogamousChildrenShareCouples) {
  const auto ped = wright_fisher_pedigree({4, 6, 2, true});
  std::map<Index, Index> partner_of_mother, partner_of_father;
  for (Index i = 0; i < ped.size(); ++i) {
    if (ped.is_founder(i)) continue;
    const auto [m, inserted_m] = partner_of_mother.emplace(ped.mother(i), ped.father(i));
    EXPECT_EQ(m->second, ped.father(i));
    const auto [f, inserted_f] = partner_of_father.emplace(ped.father(i), ped.mother(i));
    EXPECT_EQ(f->second, ped.mother(i));
  }
}

TEST(WrightFisher, RejectsEmptyParams) {
  EXPECT_THROW(wright_fisher_pedigree({0, 3, 0, false}), Error);
  EXPECT_THROW(wright_fisher_pedigree({3, 0, 0, false}), Error);
}

TEST(RandomPedigree, AllFounders) {
  const auto ped = random_pedigree(2, 1.0, 0);
  EXPECT_EQ(ped.size(), 2u);
  EXPECT_EQ(ped.founder_count(), 2u);
}

TEST(RandomPedigree, ValidAndParentsEarlier) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto ped = random_pedigree(10, 0.3, seed);
    EXPECT_EQ(ped.size(), 10u);
    EXPECT_TRUE(is_topological_order(ped, topological_order(ped)));
    for (Index i = 0; i < ped.size(); ++i) {
      if (ped.is_founder(i)) continue;
      EXPECT_LT(ped.mother(i), i);
      EXPECT_LT(ped.father(i), i);
    }
  }
}

TEST(RandomPedigree, InfeasibleParameters) {
  EXPECT_THROW(random_pedigree(5, 0.2, 0), Error);
  EXPECT_THROW(random_pedigree(5, 0.0, 0), Error);
  EXPECT_THROW(random_pedigree(5, 1.5, 0), Error);
}
