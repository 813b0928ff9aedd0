#pragma once

#include <string>

#include <json.hpp>

#include "royalgamma/gamma.hpp"

namespace royal {

using Json = nlohmann::ordered_json;

/// Parses text, turning syntax errors into InvalidData with line and column.
Json parse_json_text(const std::string& text, const std::string& source = "<input>");

// Complex numbers are [re, im]; polynomials are ascending coefficient lists.
Json to_json(cplx z);
Json to_json(const Poly& p);
Json to_json(const RationalFn& f);
Json to_json(const BlaschkeData& d);
Json to_json(const PickMatrix& m);
Json to_json(const Parametrization& p);
Json to_json(const GammaInnerFn& h);
Json to_json(const S0P0Solution& s);
Json to_json(const RoyalData& r);
Json to_json(const VerificationReport& r);

// Readers throw InvalidData naming the offending field path.
cplx complex_from_json(const Json& j, const std::string& path);
Poly poly_from_json(const Json& j, const std::string& path);
RationalFn rational_from_json(const Json& j, const std::string& path);
BlaschkeData data_from_json(const Json& j);
GammaInnerFn gamma_from_json(const Json& j, const std::string& path = "h");

}  // namespace royal
