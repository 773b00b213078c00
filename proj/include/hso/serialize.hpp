#pragma once

#include <json.hpp>

#include "hso/einstein.hpp"
#include "hso/orbits.hpp"
#include "hso/spaces.hpp"

namespace hso {

// floats are rounded to 12 significant digits before serialization so output
// is bit-stable across runs and platforms
double sig12(double x);

nlohmann::json json_of(const Rational& r);
nlohmann::json json_of(const RestrictedRoot& r);
nlohmann::json json_of(const SpaceDescriptor& s);
nlohmann::json json_of(const OrbitReport& r);
nlohmann::json json_of(const ContactStatus& c);
nlohmann::json json_of(const std::vector<TableRow>& rows);

// key,value lines from a flattened json object; arrays index numerically.
// Carries exactly the same content as the json form.
std::string csv_from_json(const nlohmann::json& j);

}  // namespace hso
