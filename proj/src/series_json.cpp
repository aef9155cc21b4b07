#include "sheafbetti/series_json.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace sheafbetti {

using nlohmann::json;

namespace {

json laurent_terms(const WLaurent& p) {
  json arr = json::array();
  for (const auto& [e, c] : p.terms()) arr.push_back(json::array({e, c.to_string()}));
  return arr;
}

Rational parse_rational(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("coefficient must be a \"p/q\" string");
}

WLaurent parse_laurent(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("w-polynomial must be an array of [wexp, \"p/q\"] pairs");
  std::map<int, Rational> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer()) {
      throw std::invalid_argument("malformed w-term " + t.dump());
    }
    terms[t[0].get<int>()] += parse_rational(t[1]);
  }
  return WLaurent::from_terms(terms);
}

template <class R, class ParseCoeff>
PuiseuxSeries<R> parse_series(const json& j, ParseCoeff parse) {
  if (!j.is_object()) throw std::invalid_argument("series must be a JSON object");
  const long den = j.value("lattice_den", 0L);
  if (den != kLatticeDen) {
    throw std::invalid_argument("lattice_den " + std::to_string(den) + " does not match " +
                                std::to_string(kLatticeDen));
  }
  const json& cut = j.at("cutoff");
  const QExponent cutoff = cut.is_null() ? QExponent::infinite() : QExponent::from_lattice(cut.get<long>());
  typename PuiseuxSeries<R>::TermMap terms;
  for (const auto& t : j.at("terms")) {
    const QExponent e = QExponent::from_lattice(t.at("q_num").get<long>());
    if (e > cutoff) throw std::invalid_argument("term at q^" + e.to_string() + " lies beyond the cutoff");
    if (!terms.emplace(e, parse(t.at("coeff"))).second) {
      throw std::invalid_argument("duplicate exponent q^" + e.to_string());
    }
  }
  return PuiseuxSeries<R>::from_terms(std::move(terms), cutoff);
}

template <class R>
json series_json(const PuiseuxSeries<R>& s) {
  json terms = json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back({{"q_num", e.lattice()}, {"coeff", to_json_value(c)}});
  json out;
  out["lattice_den"] = kLatticeDen;
  out["cutoff"] = s.is_exact() ? json(nullptr) : json(s.cutoff().lattice());
  out["terms"] = std::move(terms);
  return out;
}

}  // namespace

json to_json_value(const Rational& c) { return c.to_string(); }

json to_json_value(const WRational& c) {
  return {{"num", laurent_terms(c.numerator())}, {"den", laurent_terms(c.denominator())}};
}

json to_json_value(const RationalSeries& s) { return series_json(s); }
json to_json_value(const WSeries& s) { return series_json(s); }

RationalSeries rational_series_from_json(const json& j) {
  try {
    return parse_series<Rational>(j, parse_rational);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed series JSON: ") + e.what());
  }
}

WSeries wseries_from_json(const json& j) {
  try {
    return parse_series<WRational>(j, [](const json& c) {
      if (c.is_string()) return WRational(parse_rational(c));
      return WRational(parse_laurent(c.at("num")), parse_laurent(c.at("den")));
    });
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed series JSON: ") + e.what());
  }
}

}  // namespace sheafbetti
