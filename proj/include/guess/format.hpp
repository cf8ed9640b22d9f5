#pragma once

#include "guess/rational.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace guess::fmt {

/// 12 significant digits.
std::string number(double x);

nlohmann::json rational_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace guess::fmt
