#include "gridclass/serialize.hpp"

#include <stdexcept>

#include "json.hpp"

namespace gridclass {

namespace {

using Json = nlohmann::ordered_json;

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json polynomial_json(const Polynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coefficients()) a.push_back(c.str());
  return a;
}

Polynomial polynomial_from(const Json& j) {
  std::vector<BigInt> c;
  for (const auto& v : j) {
    const auto digits = v.get<std::string>();
    try {
      c.emplace_back(digits);
    } catch (const std::runtime_error&) {
      throw InputError("coefficient '" + digits + "' is not an integer");
    }
  }
  return Polynomial(std::move(c));
}

Json gf_json(const RationalGF& gf) {
  Json j;
  j["text"] = gf.to_string();
  j["numerator"] = polynomial_json(gf.numerator());
  j["denominator"] = polynomial_json(gf.denominator());
  return j;
}

RationalGF gf_from(const Json& j) {
  try {
    return RationalGF(polynomial_from(j.at("numerator")), polynomial_from(j.at("denominator")));
  } catch (const std::domain_error& e) {
    throw InputError(std::string("invalid generating function: ") + e.what());
  }
}

}  // namespace

std::string to_json(const analysis::BasisResult& r) {
  Json j;
  std::vector<std::string> elements;
  for (const auto& p : r.elements) elements.push_back(p.to_string());
  j["basis"] = elements;
  j["mode"] = r.mode == analysis::BasisMode::certified_complete ? "certified-complete"
                                                              : "bounded-up-to-" + std::to_string(r.length);
  j["length"] = r.length;
  if (r.certificate) {
    const auto& c = *r.certificate;
    j["certificate"] = {{"sentence", c.sentence},
                        {"extension", c.extension},
                        {"letters", c.letters},
                        {"states", c.states},
                        {"universal", c.universal},
                        {"extension_validated_only", c.extension_validated_only}};
  } else {
    j["certificate"] = nullptr;
  }
  j["budget_exhausted"] = r.budget_exhausted;
  j["caveat"] = r.caveat;
  j["diagnostic"] = r.diagnostic;
  return j.dump(2);
}

analysis::BasisResult basis_result_from_json(std::string_view text) {
  const Json j = parse(text);
  analysis::BasisResult r;
  try {
    for (const auto& p : j.at("basis")) r.elements.push_back(parse_permutation(p.get<std::string>()));
    r.mode = j.at("mode").get<std::string>() == "certified-complete" ? analysis::BasisMode::certified_complete
                                                                     : analysis::BasisMode::bounded;
    r.length = j.at("length").get<std::size_t>();
    if (!j.at("certificate").is_null()) {
      const Json& c = j.at("certificate");
      r.certificate = analysis::Certificate{c.at("sentence").get<std::string>(),
                                            c.at("extension").get<std::string>(),
                                            c.at("letters").get<std::size_t>(),
                                            c.at("states").get<std::size_t>(),
                                            c.at("universal").get<bool>(),
                                            c.at("extension_validated_only").get<bool>()};
    }
    r.budget_exhausted = j.at("budget_exhausted").get<bool>();
    r.caveat = j.at("caveat").get<bool>();
    r.diagnostic = j.at("diagnostic").get<std::string>();
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed basis result: ") + e.what());
  }
  return r;
}

std::string to_json(const RationalGF& gf) { return gf_json(gf).dump(2); }

RationalGF gf_from_json(std::string_view text) {
  try {
    return gf_from(parse(text));
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed generating function: ") + e.what());
  }
}

std::string to_json(const analysis::GFResult& r) {
  Json j = gf_json(r.gf);
  Json series = Json::array();
  for (const auto& c : r.series) series.push_back(c.str());
  j["series"] = series;
  j["states"] = r.states;
  return j.dump(2);
}

analysis::GFResult gf_result_from_json(std::string_view text) {
  const Json j = parse(text);
  analysis::GFResult r;
  try {
    r.gf = gf_from(j);
    for (const auto& c : j.at("series")) r.series.emplace_back(c.get<std::string>());
    r.states = j.at("states").get<std::size_t>();
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed generating function: ") + e.what());
  }
  return r;
}

std::string to_json(const Permutation& p, const analysis::MembershipResult& r) {
  Json j;
  j["permutation"] = p.to_string();
  j["member"] = r.member;
  if (r.witness) {
    Json cells = Json::array();
    for (auto c : r.witness->cell_of) cells.push_back(c + 1);
    j["witness_cells"] = cells;
  } else {
    j["witness_cells"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace gridclass
