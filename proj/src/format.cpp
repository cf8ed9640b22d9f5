#include "guess/format.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace guess {

std::string to_string(const Rational& r) {
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace guess

namespace guess::fmt {

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

nlohmann::json rational_json(const Rational& r) {
  return {{"num", numerator(r).str()}, {"den", denominator(r).str()}};
}

Rational rational_from_json(const nlohmann::json& j) {
  try {
    if (j.is_number_integer()) return Rational{BigInt{j.get<std::int64_t>()}};
    if (j.is_string()) {
      const auto s = j.get<std::string>();
      const auto slash = s.find('/');
      if (slash == std::string::npos) return Rational{BigInt{s}};
      return Rational{BigInt{s.substr(0, slash)}, BigInt{s.substr(slash + 1)}};
    }
    const auto num = j.at("num");
    const auto den = j.at("den");
    auto big = [](const nlohmann::json& v) {
      return v.is_string() ? BigInt{v.get<std::string>()} : BigInt{v.get<std::int64_t>()};
    };
    const BigInt d = big(den);
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rational{big(num), d};
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad rational: ") + e.what());
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument(std::string("bad rational: ") + e.what());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  return out;
}

}  // namespace guess::fmt
