#pragma once

#include <string>
#include <string_view>

#include "gridclass/analysis.hpp"
#include "gridclass/gf.hpp"

// JSON forms of analysis results. Permutations are one-line strings,
// polynomials are coefficient arrays (lowest degree first) of decimal strings.
namespace gridclass {

std::string to_json(const analysis::BasisResult& r);
analysis::BasisResult basis_result_from_json(std::string_view text);

std::string to_json(const RationalGF& gf);
RationalGF gf_from_json(std::string_view text);

std::string to_json(const analysis::GFResult& r);
analysis::GFResult gf_result_from_json(std::string_view text);

std::string to_json(const Permutation& p, const analysis::MembershipResult& r);

}  // namespace gridclass
