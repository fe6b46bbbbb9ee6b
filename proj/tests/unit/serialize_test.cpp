#include <gtest/gtest.h>

#include "gridclass/analysis.hpp"
#include "gridclass/errors.hpp"
#include "gridclass/serialize.hpp"
#include "json.hpp"
#include "suite.hpp"

using namespace gridclass;
using namespace gridclass::analysis;
using fixtures::perms;
using fixtures::signed_matrix;

TEST(Serialize, BasisResultRoundTrips) {
  BasisResult bounded;
  bounded.elements = perms("213; 312");
  bounded.length = 6;
  bounded.diagnostic = "scan stopped";
  EXPECT_EQ(basis_result_from_json(to_json(bounded)), bounded);

  BasisOptions opts;
  opts.extension_matrix = small_extension_matrix_for_increasing();
  const auto certified = compute_basis(signed_matrix("1"), opts);
  const auto text = to_json(certified);
  EXPECT_EQ(basis_result_from_json(text), certified);
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["mode"], "certified-complete");
  EXPECT_EQ(j["basis"], nlohmann::json::array({"2 1"}));
}

TEST(Serialize, BoundedModeNamesItsLength) {
  BasisResult r;
  r.length = 6;
  EXPECT_EQ(nlohmann::json::parse(to_json(r))["mode"], "bounded-up-to-6");
}

TEST(Serialize, GeneratingFunctionsRoundTrip) {
  const auto r = generating_function(signed_matrix("1 / 1"));
  const auto back = gf_result_from_json(to_json(r));
  EXPECT_EQ(back.gf, r.gf);
  EXPECT_EQ(back.series, r.series);
  EXPECT_EQ(back.states, r.states);
  EXPECT_EQ(gf_from_json(to_json(r.gf)), r.gf);
  // Coefficients beyond 64 bits survive.
  const RationalGF big(Polynomial({BigInt("123456789012345678901234567890")}), Polynomial({1, -3}));
  EXPECT_EQ(gf_from_json(to_json(big)), big);
}

TEST(Serialize, MembershipWitness) {
  const auto p = fixtures::perm("132");
  const auto j = nlohmann::json::parse(to_json(p, membership(p, signed_matrix("1 -1"))));
  EXPECT_EQ(j["member"], true);
  EXPECT_EQ(j["witness_cells"], nlohmann::json::array({1, 1, 2}));
  const auto no = nlohmann::json::parse(to_json(fixtures::perm("21"), membership(fixtures::perm("21"), signed_matrix("1"))));
  EXPECT_TRUE(no["witness_cells"].is_null());
}

TEST(Serialize, MalformedInputRejected) {
  EXPECT_THROW(basis_result_from_json("{"), InputError);
  EXPECT_THROW(basis_result_from_json("{\"basis\": []}"), InputError);
  EXPECT_THROW(gf_from_json("{\"numerator\": [\"1\"]}"), InputError);
  EXPECT_THROW(gf_from_json("{\"numerator\": [\"x\"], \"denominator\": [\"1\"]}"), InputError);
  EXPECT_THROW(gf_from_json("{\"numerator\": [\"1\"], \"denominator\": [\"0\", \"1\"]}"), InputError);
}
