#include <gtest/gtest.h>

#include "gridclass/errors.hpp"
#include "gridclass/oracle.hpp"
#include "json.hpp"
#include "suite.hpp"

using namespace gridclass;
using fixtures::perm;
using fixtures::perms;
using fixtures::signed_matrix;

TEST(Oracle, SimplePermutationCounts) {
  const std::vector<std::size_t> expected{1, 1, 2, 0, 2, 6, 46, 338};
  for (std::size_t n = 0; n < expected.size(); ++n) EXPECT_EQ(oracle::brute_simple(n).size(), expected[n]) << n;
  EXPECT_EQ(oracle::brute_simple(4), (std::set<Permutation>{perm("2413"), perm("3142")}));
}

TEST(Oracle, Containment) {
  EXPECT_TRUE(oracle::occurs_in(perm("12"), perm("312")));
  EXPECT_FALSE(oracle::occurs_in(perm("123"), perm("3142")));
  EXPECT_TRUE(oracle::occurs_in(Permutation{}, Permutation{}));
}

TEST(Oracle, MonotoneClasses) {
  EXPECT_EQ(oracle::brute_members(signed_matrix("1"), 4), (std::set<Permutation>{perm("1234")}));
  EXPECT_EQ(oracle::brute_members(signed_matrix("-1"), 3), (std::set<Permutation>{perm("321")}));
  EXPECT_EQ(oracle::brute_gridded(signed_matrix("1 -1"), 5).size(), 32u);
}

TEST(Oracle, PlacementOfOneWord) {
  const auto g = oracle::place(signed_matrix("1 -1"), {1, 0, 1});
  EXPECT_EQ(g.perm, perm("231"));
  EXPECT_EQ(g.cell_of, (std::vector<CellIndex>{0, 1, 1}));
}

TEST(Oracle, Griddings) {
  const auto s = signed_matrix("1 -1");
  EXPECT_EQ(oracle::brute_griddings(s, perm("1")).size(), 2u);
  const auto least = oracle::brute_minimal_gridding(s, perm("21"));
  EXPECT_EQ(least.cell_of, (std::vector<CellIndex>{0, 1}));
  EXPECT_THROW(oracle::brute_minimal_gridding(s, perm("2413")), InputError);
}

TEST(Oracle, MinimalNonMembers) {
  std::vector<std::set<Permutation>> increasing;
  for (std::size_t n = 0; n <= 4; ++n) increasing.push_back({Permutation::identity(n)});
  EXPECT_EQ(oracle::minimal_non_members(increasing), perms("21"));
  EXPECT_EQ(oracle::brute_basis(signed_matrix("1 -1"), 5), perms("213; 312"));
  EXPECT_EQ(oracle::minimal_simple_non_members(increasing), perms("21"));
}

TEST(Oracle, WordBudget) {
  EXPECT_THROW(oracle::brute_members(signed_matrix("1 1 / 1 -1"), 6, 1000), BudgetExceeded);
}

TEST(Oracle, ReportJson) {
  const auto report = oracle::make_report(signed_matrix("1 -1"), 1, 4);
  EXPECT_EQ(report.members.size(), 4u);
  EXPECT_EQ(report.gridded_counts, (std::vector<std::size_t>{2, 4, 8, 16}));
  EXPECT_EQ(report.minimal_non_members, perms("213; 312"));
  const auto j = nlohmann::json::parse(oracle::to_json(report));
  EXPECT_EQ(j["matrix"], "1 -1");
  EXPECT_EQ(j["lengths"][2]["count"], 4);
  EXPECT_EQ(j["lengths"][0]["gridded_count"], 2);
}
