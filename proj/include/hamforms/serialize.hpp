#pragma once

#include <string>

#include "json.hpp"

#include "hamforms/bridge.hpp"
#include "hamforms/hampair.hpp"
#include "hamforms/transforms.hpp"

namespace hamforms {

using Json = nlohmann::ordered_json;

// Coefficients: "p/q" for constants, [{"exponents":[..],"coeff":"p/q"}, ..] for
// polynomials, {"num":poly,"den":poly} otherwise.
Json to_json(const Rational& q);
Json to_json(const Poly& p);
Json to_json(const RatFunc& f);
Json to_json(const AltForm<RatFunc>& f);
Json to_json(const HamPair& pair);
Json to_json(const OmegaForm& om);

// `where` names the field in diagnostics.
Rational rational_from_json(const Json& j, const std::string& where);
Poly poly_from_json(const Json& j, const std::string& where);
RatFunc ratfunc_from_json(const Json& j, const std::string& where);
// {"degree":k,"dim":m,"terms":[{"idx":[..],"coeff":..}]}
AltForm<RatFunc> form_from_json(const Json& j, const std::string& where);
// {"N":n,"T":form,"g0":form,"A":form,"B":[..]}
HamPair pair_from_json(const Json& j);
// {"N":n,"terms":[..]}
OmegaForm omega_from_json(const Json& j);
// {"a":[[..],..]}
ProjectiveMap projective_from_json(const Json& j);
// {"alpha":[..],"alpha0":..,"beta":..,"beta_i":[..],"c":..,"d":..}
ReciprocalMap reciprocal_from_json(const Json& j);

// Reads and parses a file; ParseError carries the line for syntax errors.
Json read_json_file(const std::string& path);
OmegaForm parse_omega_file(const std::string& path);
HamPair parse_pair_file(const std::string& path);

}  // namespace hamforms
