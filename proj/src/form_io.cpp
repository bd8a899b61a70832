#include "torcx/form_io.hpp"

#include "torcx/error.hpp"

namespace torcx {

using nlohmann::json;

namespace {

IntVec int_vec(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string("'") + what + "' must be an array");
  IntVec v;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw ConfigError(std::string("'") + what + "' entries must be integers");
    v.push_back(e.get<std::int64_t>());
  }
  return v;
}

template <class S, class Conv>
TrigPForm<S> read_form(const json& j, Conv conv) {
  try {
    const int n = j.at("n").get<int>();
    const int N = j.at("N").get<int>();
    const int degree = j.at("degree").get<int>();
    TrigPForm<S> u(n, N, degree);
    for (const auto& t : j.at("terms")) {
      std::vector<int> K;
      for (const auto& k : t.at("K")) K.push_back(k.get<int>());
      Frequency f{int_vec(t.at("eta"), "eta"), int_vec(t.at("xi"), "xi")};
      json z = {{"re", t.contains("re") ? t["re"] : json(0)},
                {"im", t.contains("im") ? t["im"] : json(0)}};
      u.add(f, MultiIndex(K), conv(z));
    }
    return u;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed form document: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid form document: ") + e.what());
  }
}

template <class S>
json write_form(const TrigPForm<S>& u) {
  json terms = json::array();
  for (const auto& [f, s] : u.slices())
    for (const auto& [K, v] : s.terms()) {
      json t = to_json(v);
      t["K"] = K.entries();
      t["eta"] = f.eta;
      t["xi"] = f.xi;
      terms.push_back(std::move(t));
    }
  return {{"n", u.n()}, {"N", u.N()}, {"degree", u.degree()}, {"terms", std::move(terms)}};
}

template <class S>
json write_const(const ConstPForm<S>& f) {
  json terms = json::array();
  for (const auto& [K, v] : f.terms()) {
    json t = to_json(v);
    t["K"] = K.entries();
    terms.push_back(std::move(t));
  }
  return {{"n", f.dim()}, {"degree", f.degree()}, {"terms", std::move(terms)}};
}

}  // namespace

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) {
    const std::string text = j.dump();
    if (text.find_first_of("eE") == std::string::npos) return parse_rational(text);
    Rational q(j.get<double>());
    return q;
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ConfigError("expected a number or rational string, got " + j.dump());
}

GaussRational gauss_from_json(const json& j) {
  if (j.is_object()) {
    const Rational re = j.contains("re") ? rational_from_json(j["re"]) : Rational(0);
    const Rational im = j.contains("im") ? rational_from_json(j["im"]) : Rational(0);
    return {re, im};
  }
  return GaussRational(rational_from_json(j));
}

namespace {
double real_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  return to_double(rational_from_json(j));
}
}  // namespace

Complex complex_from_json(const json& j) {
  if (j.is_object())
    return {j.contains("re") ? real_from_json(j["re"]) : 0.0,
            j.contains("im") ? real_from_json(j["im"]) : 0.0};
  return {real_from_json(j), 0.0};
}

json to_json(const Complex& z) { return {{"re", z.real()}, {"im", z.imag()}}; }
json to_json(const GaussRational& z) { return {{"re", to_string(z.re)}, {"im", to_string(z.im)}}; }

json to_json(const TrigPForm<Complex>& u) { return write_form(u); }
json to_json(const TrigPForm<GaussRational>& u) { return write_form(u); }
json to_json(const ConstPForm<Complex>& f) { return write_const(f); }
json to_json(const ConstPForm<GaussRational>& f) { return write_const(f); }

TrigPForm<Complex> trig_form_from_json(const json& j) {
  return read_form<Complex>(j, [](const json& z) { return complex_from_json(z); });
}

TrigPForm<GaussRational> exact_trig_form_from_json(const json& j) {
  return read_form<GaussRational>(j, [](const json& z) { return gauss_from_json(z); });
}

}  // namespace torcx
