#include "singmod/json_io.hpp"

#include <stdexcept>

namespace singmod::io {
namespace {

BigInt parse_int(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long>());
  if (!j.is_string()) throw std::invalid_argument("expected an integer or decimal string");
  BigInt out;
  if (out.set_str(j.get<std::string>(), 10) != 0) {
    throw std::invalid_argument("not a decimal integer: '" + j.get<std::string>() + "'");
  }
  return out;
}

BigRational parse_rational(const Json& j) {
  if (j.is_number_integer()) return BigRational(j.get<long>());
  if (!j.is_string()) throw std::invalid_argument("expected a rational as \"a\" or \"a/b\"");
  return BigRational::parse(j.get<std::string>());
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw std::invalid_argument(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

}  // namespace

Json to_json(const qseries::QExpansion& f) {
  Json j;
  j["weight_times_two"] = f.weight_times_two();
  j["level"] = f.level();
  j["truncation"] = f.truncation();
  if (f.modulus()) {
    j["modulus"] = {{"p", f.modulus()->p()}, {"m", f.modulus()->m()}};
  } else {
    j["modulus"] = nullptr;
  }
  Json coeffs = Json::array();
  for (const auto& c : f.coefficients()) coeffs.push_back(c.str());
  j["coefficients"] = std::move(coeffs);
  return j;
}

qseries::QExpansion qexpansion_from_json(const Json& j, std::optional<long> weight_times_two) {
  const Json* coeffs = &j;
  long level = 1;
  std::optional<qseries::ModulusContext> modulus;
  if (j.is_object()) {
    coeffs = &field(j, "coefficients");
    weight_times_two = field(j, "weight_times_two").get<long>();
    if (j.contains("level")) level = j.at("level").get<long>();
    if (j.contains("modulus") && !j.at("modulus").is_null()) {
      const Json& m = j.at("modulus");
      modulus.emplace(field(m, "p").get<long>(), field(m, "m").get<long>());
    }
  }
  if (!coeffs->is_array()) throw std::invalid_argument("coefficients must be an array");
  if (!weight_times_two) throw std::invalid_argument("a bare coefficient array needs the weight");
  std::vector<BigRational> c;
  for (const auto& x : *coeffs) c.push_back(parse_rational(x));
  if (c.empty()) throw std::invalid_argument("coefficients must not be empty");
  if (j.is_object() && j.contains("truncation") &&
      j.at("truncation").get<long>() != static_cast<long>(c.size()) - 1) {
    throw std::invalid_argument("truncation does not match the coefficient count");
  }
  qseries::QExpansion f(std::move(c), *weight_times_two, level);
  return modulus ? f.reduce(*modulus) : f;
}

Json to_json(const fourier::FourierTable& t) {
  Json j;
  j["degree"] = t.degree;
  j["weight_times_two"] = t.weight_times_two;
  j["bounds"] = {{"rank_bound", t.bounds.rank_bound}, {"det_doubled_max", t.bounds.det_doubled_max}};
  Json entries = Json::object();
  for (const auto& [key, value] : t.entries) entries[key.to_text()] = value.get_str();
  j["entries"] = std::move(entries);
  return j;
}

fourier::FourierTable fourier_table_from_json(const Json& j) {
  fourier::FourierTable t;
  t.degree = field(j, "degree").get<int>();
  t.weight_times_two = field(j, "weight_times_two").get<long>();
  const Json& b = field(j, "bounds");
  t.bounds = {field(b, "rank_bound").get<int>(), field(b, "det_doubled_max").get<std::int64_t>()};
  const Json& entries = field(j, "entries");
  if (!entries.is_object()) throw std::invalid_argument("entries must be an object");
  for (const auto& [text, value] : entries.items()) {
    const auto key = lambda::HalfIntegralMatrix::from_text(text);
    if (key.degree() != t.degree) throw std::invalid_argument("entry key has the wrong degree");
    const auto info = lambda::inspect(key);
    if (info.positivity == lambda::Positivity::indefinite) throw std::invalid_argument("entry key is indefinite");
    const auto core = lambda::core_of(key, info.rank);
    if (!core || (info.rank > 0 && !(lambda::reduce(*core).reduced == *core))) {
      throw std::invalid_argument("entry key is not canonical:\n" + text);
    }
    t.entries.emplace(key, parse_int(value));
  }
  return t;
}

Json to_json(const jacobi::JacobiTable& t) {
  Json j;
  j["index"] = t.index;
  j["weight_times_two"] = t.weight_times_two;
  j["n_max"] = t.n_max;
  Json entries = Json::array();
  for (const auto& [nr, c] : t.entries) entries.push_back(Json::array({nr.first, nr.second, c.get_str()}));
  j["entries"] = std::move(entries);
  return j;
}

jacobi::JacobiTable jacobi_table_from_json(const Json& j) {
  jacobi::JacobiTable t;
  t.index = field(j, "index").get<long>();
  t.weight_times_two = field(j, "weight_times_two").get<long>();
  t.n_max = field(j, "n_max").get<long>();
  if (t.index < 1) throw std::invalid_argument("index must be >= 1");
  for (const auto& e : field(j, "entries")) {
    if (!e.is_array() || e.size() != 3) throw std::invalid_argument("entries must be [n, r, c] triples");
    const long n = e[0].get<long>();
    const long r = e[1].get<long>();
    if (4 * n * t.index - r * r < 0) throw std::invalid_argument("entry with 4nm - r^2 < 0");
    t.entries[{n, r}] = parse_int(e[2]);
  }
  return t;
}

Json to_json(const ValuationProfile& profile) {
  Json j;
  j["weight_times_two"] = profile.weight_times_two;
  j["p"] = profile.p;
  Json entries = Json::array();
  for (const auto& e : profile.entries) {
    Json value = e.value.is_infinite() ? Json("inf") : Json(e.value.value());
    entries.push_back({{"rank", e.rank}, {"value", value}, {"bound", std::string(to_string(e.bound))}});
  }
  j["entries"] = std::move(entries);
  return j;
}

ValuationProfile valuation_profile_from_json(const Json& j) {
  ValuationProfile profile;
  profile.weight_times_two = field(j, "weight_times_two").get<long>();
  profile.p = field(j, "p").get<long>();
  for (const auto& e : field(j, "entries")) {
    const Json& v = field(e, "value");
    ExtendedValuation value;
    if (v.is_string()) {
      if (v.get<std::string>() != "inf") throw std::invalid_argument("valuation must be an integer or \"inf\"");
    } else {
      value = ExtendedValuation(v.get<long>());
    }
    profile.entries.push_back({field(e, "rank").get<long>(), value,
                               bound_from_string(field(e, "bound").get<std::string>())});
  }
  return profile;
}

}  // namespace singmod::io
