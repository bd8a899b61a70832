#include "torcx/config.hpp"

#include "torcx/error.hpp"
#include "torcx/examples.hpp"
#include "torcx/form_io.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace torcx {

using json = nlohmann::json;

namespace {

std::string at(const std::string& path) { return path.empty() ? "/" : path; }

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(at(path) + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail(path, std::string("missing key '") + key + "'");
  return j[key];
}

int get_int(const json& j, const char* key, const std::string& path, std::optional<int> def = {}) {
  if (!j.contains(key)) {
    if (def) return *def;
    fail(path, std::string("missing key '") + key + "'");
  }
  if (!j[key].is_number_integer()) fail(path + "/" + key, "expected an integer");
  return j[key].get<int>();
}

double get_double(const json& j, const char* key, double def, const std::string& path) {
  if (!j.contains(key)) return def;
  if (!j[key].is_number()) fail(path + "/" + key, "expected a number");
  return j[key].get<double>();
}

Rational exact_rational(const json& j, const std::string& path) {
  try {
    return rational_from_json(j);
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

std::vector<Rational> rational_list(const json& j, const char* key, const std::string& path) {
  std::vector<Rational> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) fail(path + "/" + key, "expected an array");
  for (std::size_t i = 0; i < j[key].size(); ++i)
    out.push_back(exact_rational(j[key][i], path + "/" + key + "/" + std::to_string(i)));
  return out;
}

ToroidalSymbol symbol_from_json(const json& s, int N, const std::string& path, LoadedSystem& out,
                                std::vector<ComplexInput>& linear, std::vector<ComplexInput>& hom,
                                std::pair<int, int>& hom_exp, bool& all_linear, bool& all_hom) {
  const std::string kind = need(s, "kind", path).is_string() ? s["kind"].get<std::string>() : "";
  if (kind == "linear") {
    const auto a = complex_input_from_json(need(s, "a", path), path + "/a");
    const int axis = get_int(s, "axis", path, 1);
    if (axis < 1 || axis > N) fail(path + "/axis", "axis out of range");
    out.digits = std::max({out.digits, a.re.digits, a.im.digits});
    all_hom = false;
    if (N == 1) linear.push_back(a);
    else all_linear = false;
    return ToroidalSymbol::linear(N, a.value(), axis);
  }
  all_linear = false;
  if (kind == "homogeneous") {
    const auto c = complex_input_from_json(need(s, "c", path), path + "/c");
    const int rho = get_int(s, "rho", path), mu = get_int(s, "mu", path, 1);
    out.digits = std::max({out.digits, c.re.digits, c.im.digits});
    if (hom.empty()) hom_exp = {rho, mu};
    else if (hom_exp != std::pair{rho, mu}) all_hom = false;
    if (N == 1) hom.push_back(c);
    else all_hom = false;
    const bool exact = c.re.is_exact() && c.im.is_exact();
    try {
      return ToroidalSymbol::homogeneous(N, c.value().to_complex(), rho, mu,
                                         exact ? std::optional(c.value()) : std::nullopt);
    } catch (const DomainError& e) {
      fail(path, e.what());
    }
  }
  all_hom = false;
  if (kind == "polynomial") {
    std::vector<Monomial> terms;
    const auto& ts = need(s, "terms", path);
    if (!ts.is_array()) fail(path + "/terms", "expected an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const std::string tp = path + "/terms/" + std::to_string(i);
      Monomial m;
      m.coeff = gauss_from_json(need(ts[i], "coeff", tp));
      const auto& ex = need(ts[i], "exponents", tp);
      if (!ex.is_array() || static_cast<int>(ex.size()) != N) fail(tp + "/exponents", "expected N exponents");
      for (const auto& e : ex) m.exponents.push_back(e.get<int>());
      terms.push_back(std::move(m));
    }
    return ToroidalSymbol::polynomial(N, std::move(terms));
  }
  if (kind == "constant") return ToroidalSymbol::constant(N, complex_input_from_json(need(s, "value", path), path + "/value").value());
  if (kind == "logarithmic") return ToroidalSymbol::logarithmic(N, get_double(s, "scale", 1.0, path));
  if (kind == "tabulated") {
    const std::int64_t X = get_int(s, "X", path);
    const auto& vs = need(s, "values", path);
    if (!vs.is_array()) fail(path + "/values", "expected an array");
    std::vector<GaussRational> vals;
    for (std::size_t i = 0; i < vs.size(); ++i)
      vals.push_back(complex_input_from_json(vs[i], path + "/values/" + std::to_string(i)).value());
    try {
      return ToroidalSymbol::tabulated_exact(N, X, std::move(vals), get_double(s, "order", 0.0, path));
    } catch (const DomainError& e) {
      fail(path, e.what());
    }
  }
  fail(path + "/kind", "unknown symbol kind '" + kind + "'");
}

TrigPoly<GaussRational> coefficient_from_json(const json& c, int n, int j, const std::string& path) {
  const std::string kind = c.value("kind", "constant");
  if (kind == "constant") return TrigPoly<GaussRational>::constant(n, complex_input_from_json(need(c, "value", path), path + "/value").value());
  if (kind == "decoupled") {
    auto p = fourier_1d(n, j, c.contains("a0") ? exact_rational(c["a0"], path + "/a0") : Rational(0),
                        rational_list(c, "cos", path), rational_list(c, "sin", path));
    if (c.contains("im")) {
      const auto& im = c["im"];
      const std::string ip = path + "/im";
      auto q = fourier_1d(n, j, im.contains("a0") ? exact_rational(im["a0"], ip + "/a0") : Rational(0),
                          rational_list(im, "cos", ip), rational_list(im, "sin", ip));
      p += q * GaussRational(Rational(0), Rational(1));
    }
    return p;
  }
  if (kind == "trig") {
    TrigPoly<GaussRational> p(n);
    const auto& ts = need(c, "terms", path);
    if (!ts.is_array()) fail(path + "/terms", "expected an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const std::string tp = path + "/terms/" + std::to_string(i);
      const auto& eta = need(ts[i], "eta", tp);
      if (!eta.is_array() || static_cast<int>(eta.size()) != n) fail(tp + "/eta", "expected n entries");
      IntVec e;
      for (const auto& v : eta) e.push_back(v.get<std::int64_t>());
      p.add(e, gauss_from_json(ts[i]));
    }
    return p;
  }
  fail(path + "/kind", "unknown coefficient kind '" + kind + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

HighPrecisionReal real_from_json(const json& j, const std::string& path) {
  try {
    if (j.is_number()) return HighPrecisionReal::exact(rational_from_json(j));
    if (j.is_string()) return HighPrecisionReal::parse(j.get<std::string>());
    if (!j.is_object() || j.size() != 1) fail(path, "expected a real number or a one-key constant object");
    const auto& [key, v] = *j.items().begin();
    const std::string sub = path + "/" + key;
    auto digits = [&](const json& o) {
      const int d = o.is_number_integer() ? o.get<int>() : get_int(o, "digits", sub);
      if (d < 1) fail(sub, "digits must be >= 1");
      return d;
    };
    if (key == "golden") return HighPrecisionReal::golden(digits(v));
    if (key == "liouville") return HighPrecisionReal::liouville(digits(v));
    if (key == "factorial_series") return HighPrecisionReal::factorial_series(get_int(v, "base", sub), digits(v));
    if (key == "root")
      return HighPrecisionReal::root(exact_rational(need(v, "of", sub), sub + "/of"), get_int(v, "index", sub),
                                     digits(v));
    if (key == "sum" || key == "product") {
      if (!v.is_array() || v.empty()) fail(sub, "expected a nonempty array");
      auto acc = real_from_json(v[0], sub + "/0");
      for (std::size_t i = 1; i < v.size(); ++i) {
        const auto x = real_from_json(v[i], sub + "/" + std::to_string(i));
        acc = key == "sum" ? acc + x : acc * x;
      }
      return acc;
    }
    fail(path, "unknown constant '" + key + "'");
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
}

ComplexInput complex_input_from_json(const json& j, const std::string& path) {
  if (j.is_object() && (j.contains("re") || j.contains("im"))) {
    ComplexInput c{HighPrecisionReal::exact(0), HighPrecisionReal::exact(0)};
    if (j.contains("re")) c.re = real_from_json(j["re"], path + "/re");
    if (j.contains("im")) c.im = real_from_json(j["im"], path + "/im");
    return c;
  }
  return {real_from_json(j, path), HighPrecisionReal::exact(0)};
}

std::vector<std::string> named_systems() {
  return {"mixed-growth", "sign-definite", "positive-im", "real-form"};
}

LoadedSystem system_from_json(const json& j) {
  const std::string path = "/system";
  if (!j.is_object()) fail(path, "expected an object");
  if (j.contains("named")) {
    const std::string name = j["named"].is_string() ? j["named"].get<std::string>() : "";
    VariableSystem v = name == "mixed-growth"    ? mixed_growth_system()
                       : name == "sign-definite" ? sign_definite_system()
                       : name == "positive-im"   ? positive_im_system()
                       : name == "real-form"     ? real_form_system()
                                                 : throw ConfigError(path + "/named: unknown system '" + name + "'");
    LoadedSystem out(v.spec);
    out.name = name;
    out.profile = v.profile;
    return out;
  }
  const int n = get_int(j, "n", path), N = get_int(j, "N", path);
  if (n < 1 || N < 1) fail(path, "n and N must be >= 1");
  const auto& syms = need(j, "symbols", path);
  if (!syms.is_array() || static_cast<int>(syms.size()) != n) fail(path + "/symbols", "expected n symbols");
  LoadedSystem out(SystemSpec(1, 1, {ToroidalSymbol::constant(1, GaussRational(0))}));
  std::vector<ToroidalSymbol> symbols;
  std::vector<ComplexInput> linear, hom;
  std::pair<int, int> hom_exp{1, 1};
  bool all_linear = true, all_hom = true;
  for (int k = 0; k < n; ++k)
    symbols.push_back(symbol_from_json(syms[k], N, path + "/symbols/" + std::to_string(k), out, linear, hom,
                                       hom_exp, all_linear, all_hom));
  out.spec = SystemSpec(n, N, std::move(symbols));
  if (all_linear && N == 1) out.linear = linear;
  if (all_hom && N == 1) out.homogeneous = LoadedSystem::Homogeneous{hom, hom_exp.first, hom_exp.second};
  if (j.contains("coefficients")) {
    const auto& cs = j["coefficients"];
    if (!cs.is_array()) fail(path + "/coefficients", "expected an array");
    auto prof = CoefficientProfile<GaussRational>::constant_one(n);
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string cp = path + "/coefficients/" + std::to_string(i);
      const int jj = get_int(cs[i], "j", cp);
      if (jj < 1 || jj > n) fail(cp + "/j", "index out of range");
      if (seen[jj - 1]) fail(cp + "/j", "duplicate coefficient index");
      seen[jj - 1] = true;
      prof.c[jj - 1] = coefficient_from_json(cs[i], n, jj, cp);
    }
    out.profile = std::move(prof);
  }
  out.name = j.value("name", "");
  return out;
}

json Tolerances::to_json() const {
  return {{"eps", eps},           {"eps_int", eps_int},       {"compat_eps", compat_eps},
          {"eps_zero", eps_zero}, {"lambda_max", lambda_max}, {"residual", residual}};
}

Config config_from_text(const std::string& text, const std::string& base_dir) {
  Config c;
  try {
    c.raw = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  const json& r = c.raw;
  if (!r.is_object()) fail("", "config must be a JSON object");
  for (const auto& [key, v] : r.items())
    if (key != "name" && key != "system" && key != "box" && key != "tolerances" && key != "precision" &&
        key != "seed" && key != "analyze" && key != "solve" && key != "witness" && key != "reduce" &&
        key != "description")
      fail("/" + key, "unknown section");
  c.base_dir = base_dir;
  c.name = r.value("name", "");
  c.system = system_from_json(need(r, "system", ""));
  const auto& box = need(r, "box", "");
  const int H = get_int(box, "H", "/box"), X = get_int(box, "X", "/box");
  if (H < 0 || X < 0) fail("/box", "bounds must be >= 0");
  if (H == 0 && X == 0) fail("/box", "empty box (H = X = 0)");
  c.box = FrequencyBox(H, X);
  if (r.contains("tolerances")) {
    const auto& t = r["tolerances"];
    const std::string tp = "/tolerances";
    c.tol.eps = get_double(t, "eps", c.tol.eps, tp);
    c.tol.eps_int = get_double(t, "eps_int", c.tol.eps_int, tp);
    c.tol.compat_eps = get_double(t, "compat_eps", c.tol.compat_eps, tp);
    c.tol.eps_zero = get_double(t, "eps_zero", c.tol.eps_zero, tp);
    c.tol.lambda_max = get_double(t, "lambda_max", c.tol.lambda_max, tp);
    c.tol.residual = get_double(t, "residual", c.tol.residual, tp);
  }
  if (r.contains("precision")) {
    const auto& p = r["precision"];
    const std::string a = p.value("arithmetic", "float");
    if (a != "exact" && a != "float") fail("/precision/arithmetic", "expected \"exact\" or \"float\"");
    c.exact = a == "exact";
  }
  if (r.contains("seed")) {
    if (!r["seed"].is_number_unsigned()) fail("/seed", "expected a nonnegative integer");
    c.seed = r["seed"].get<std::uint64_t>();
  }
  for (const char* k : {"analyze", "solve", "witness", "reduce"})
    if (r.contains(k) && !r[k].is_object()) fail(std::string("/") + k, "expected an object");
  c.analyze = r.value("analyze", json::object());
  c.solve = r.value("solve", json::object());
  c.witness = r.value("witness", json::object());
  c.reduce = r.value("reduce", json::object());
  return c;
}

Config load_config(const std::string& path) {
  const std::string text = read_text(path);
  const auto dir = std::filesystem::path(path).parent_path();
  return config_from_text(text, dir.empty() ? "." : dir.string());
}

std::string config_hash(const json& raw) {
  const std::string canon = raw.dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(canon.data(), canon.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

}  // namespace torcx
