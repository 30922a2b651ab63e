#include "lfun/config.hpp"

#include <fstream>
#include <sstream>

#include "lfun/errors.hpp"

namespace lfun {

using nlohmann::json;

namespace {

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

cplx complex_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError("field '" + field + "' must be a number or a [re, im] pair");
}

const json& require(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError("missing field '" + where + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError("field '" + field + "' must be a number");
  return j.get<double>();
}

std::string builtin_name(BuiltinCoefficients rule) {
  switch (rule) {
    case BuiltinCoefficients::Zeta:
      return "zeta";
    case BuiltinCoefficients::Chi4:
      return "chi4";
    case BuiltinCoefficients::Delta:
      return "delta";
    case BuiltinCoefficients::None:
      break;
  }
  return "";
}

}  // namespace

json to_json(const SelbergData& data) {
  json j;
  j["m"] = data.m;
  j["epsilon"] = complex_to_json(data.epsilon);
  j["Q"] = data.Q;
  j["factors"] = json::array();
  for (const auto& f : data.factors) j["factors"].push_back({{"lambda", f.lambda}, {"mu", complex_to_json(f.mu)}});
  if (data.coefficients.rule() != BuiltinCoefficients::None) {
    j["coefficients"] = {{"builtin", builtin_name(data.coefficients.rule())}, {"n_max", data.coefficients.size()}};
  } else {
    json list = json::array();
    for (const auto& a : data.coefficients.values()) {
      list.push_back(a.imag() == 0 ? json(a.real()) : complex_to_json(a));
    }
    j["coefficients"] = {{"list", list}};
  }
  return j;
}

SelbergData selberg_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("L-function data must be a JSON object");
  SelbergData d;
  const json& m = require(j, "m", "");
  if (!m.is_number_integer()) throw ConfigError("field 'm' must be an integer");
  d.m = m.get<int>();
  d.epsilon = j.contains("epsilon") ? complex_from_json(j.at("epsilon"), "epsilon") : cplx(1);
  d.Q = number(require(j, "Q", ""), "Q");
  const json& factors = require(j, "factors", "");
  if (!factors.is_array()) throw ConfigError("field 'factors' must be an array");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::string where = "factors[" + std::to_string(i) + "].";
    GammaFactor f;
    f.lambda = number(require(factors[i], "lambda", where), where + "lambda");
    f.mu = complex_from_json(require(factors[i], "mu", where), where + "mu");
    d.factors.push_back(f);
  }
  const json& coeffs = require(j, "coefficients", "");
  if (coeffs.contains("builtin")) {
    const json& name = coeffs.at("builtin");
    if (!name.is_string()) throw ConfigError("field 'coefficients.builtin' must be a string");
    std::size_t n_max = 1000;
    if (coeffs.contains("n_max")) {
      if (!coeffs.at("n_max").is_number_unsigned()) throw ConfigError("field 'coefficients.n_max' must be a positive integer");
      n_max = coeffs.at("n_max").get<std::size_t>();
    }
    const std::string s = name.get<std::string>();
    if (s == "zeta") {
      d.coefficients = CoefficientSource::builtin(BuiltinCoefficients::Zeta, n_max);
    } else if (s == "chi4") {
      d.coefficients = CoefficientSource::builtin(BuiltinCoefficients::Chi4, n_max);
    } else if (s == "delta") {
      d.coefficients = CoefficientSource::builtin(BuiltinCoefficients::Delta, n_max);
    } else {
      throw ConfigError("field 'coefficients.builtin' must be one of zeta, chi4, delta");
    }
  } else if (coeffs.contains("list")) {
    const json& list = coeffs.at("list");
    if (!list.is_array()) throw ConfigError("field 'coefficients.list' must be an array");
    std::vector<cplx> values;
    for (std::size_t i = 0; i < list.size(); ++i) {
      values.push_back(complex_from_json(list[i], "coefficients.list[" + std::to_string(i) + "]"));
    }
    d.coefficients = CoefficientSource::list(std::move(values));
  } else {
    throw ConfigError("field 'coefficients' needs 'builtin' or 'list'");
  }
  return d;
}

json to_json(const DerivedConstants& c) {
  auto log_complex = [](const LogComplex<double>& v) {
    const cplx value = v.value();
    return json{{"re", value.real()}, {"im", value.imag()}, {"log_abs", v.log_abs}, {"phase", v.phase}};
  };
  json j;
  j["k"] = c.k;
  j["Lambda"] = c.Lambda;
  j["M"] = complex_to_json(c.M);
  j["Mprime"] = c.Mprime;
  j["a_hat"] = c.a_hat;
  j["log_a_hat"] = std::log(c.a_hat);
  j["b_hat"] = complex_to_json(c.b_hat);
  j["B_hat"] = log_complex(c.B_hat);
  j["a"] = c.a;
  j["log_a"] = std::log(c.a);
  j["b"] = c.b;
  j["B"] = log_complex(c.B);
  j["theta"] = c.theta;
  return j;
}

void RunConfig::check() const {
  if (!(tol > 0)) throw ConfigError("field 'tol' must be positive");
  for (long n : ns) {
    if (n < 0) throw ConfigError("field 'n' must hold nonnegative integers");
  }
  if (grid < 2) throw ConfigError("field 'grid' must be at least 2");
  if (zmin && zmax && !(*zmax > *zmin)) throw ConfigError("z range is empty (zmax must exceed zmin)");
  if (!(xmax > xmin)) throw ConfigError("x range is empty (xmax must exceed xmin)");
  if (poly_power < 0) throw ConfigError("field 'm' must be nonnegative");
}

json to_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["lfunction"] = to_json(cfg.lfunction);
  j["n"] = cfg.ns;
  if (cfg.zmin) j["zmin"] = *cfg.zmin;
  if (cfg.zmax) j["zmax"] = *cfg.zmax;
  j["grid"] = cfg.grid;
  j["kernel"] = cfg.kernel;
  j["tol"] = cfg.tol;
  j["lambda"] = cfg.lambdas;
  j["alpha"] = cfg.alphas;
  j["T"] = cfg.Ts;
  j["poly_power"] = cfg.poly_power;
  j["xmin"] = cfg.xmin;
  j["xmax"] = cfg.xmax;
  return j;
}

RunConfig run_config_from_json(const json& j) {
  RunConfig cfg;
  try {
    cfg.lfunction = selberg_from_json(require(j, "lfunction", ""));
    if (j.contains("command")) cfg.command = j.at("command").get<std::string>();
    if (j.contains("n")) cfg.ns = j.at("n").get<std::vector<long>>();
    if (j.contains("zmin")) cfg.zmin = number(j.at("zmin"), "zmin");
    if (j.contains("zmax")) cfg.zmax = number(j.at("zmax"), "zmax");
    if (j.contains("grid")) cfg.grid = j.at("grid").get<int>();
    if (j.contains("kernel")) cfg.kernel = j.at("kernel").get<std::string>();
    if (j.contains("tol")) cfg.tol = number(j.at("tol"), "tol");
    if (j.contains("lambda")) cfg.lambdas = j.at("lambda").get<std::vector<double>>();
    if (j.contains("alpha")) cfg.alphas = j.at("alpha").get<std::vector<double>>();
    if (j.contains("T")) cfg.Ts = j.at("T").get<std::vector<double>>();
    if (j.contains("poly_power")) cfg.poly_power = j.at("poly_power").get<int>();
    if (j.contains("xmin")) cfg.xmin = number(j.at("xmin"), "xmin");
    if (j.contains("xmax")) cfg.xmax = number(j.at("xmax"), "xmax");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed run configuration: ") + e.what());
  }
  return cfg;
}

LoadedConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  LoadedConfig loaded;
  if (j.is_object() && j.contains("lfunction")) {
    loaded.config = run_config_from_json(j);
    loaded.full = true;
  } else {
    loaded.config.lfunction = selberg_from_json(j);
  }
  return loaded;
}

}  // namespace lfun
