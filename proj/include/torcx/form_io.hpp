#pragma once

#include "torcx/trig_form.hpp"

#include <json.hpp>

namespace torcx {

/// {n, N, degree, terms: [{K, eta, xi, re, im}]}; exact forms write re/im as "num/den".
nlohmann::json to_json(const TrigPForm<Complex>& u);
nlohmann::json to_json(const TrigPForm<GaussRational>& u);

/// Numbers and "num/den" or decimal strings are accepted in both modes.
TrigPForm<Complex> trig_form_from_json(const nlohmann::json& j);
TrigPForm<GaussRational> exact_trig_form_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Complex& z);
nlohmann::json to_json(const GaussRational& z);
nlohmann::json to_json(const ConstPForm<Complex>& f);
nlohmann::json to_json(const ConstPForm<GaussRational>& f);

/// Scalar from a JSON number, rational string, or {re, im} object.
Rational rational_from_json(const nlohmann::json& j);
GaussRational gauss_from_json(const nlohmann::json& j);
Complex complex_from_json(const nlohmann::json& j);

}  // namespace torcx
