#include "fracspec/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fracspec/error.hpp"

namespace fracspec {

namespace {

void reject_unknown(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!keys.count(it.key())) {
      throw ConfigError("unknown key '" + (where.empty() ? "" : where + ".") + it.key() + "'");
    }
  }
}

double number(const Json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(field + " must be finite");
  return x;
}

int integer(const Json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field + " must be an integer");
  const auto x = v.get<long long>();
  if (x < -2147483647LL || x > 2147483647LL) throw ConfigError(field + " is out of range");
  return static_cast<int>(x);
}

std::string text(const Json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigError(field + " must be a string");
  return v.get<std::string>();
}

double positive(const Json& v, const std::string& field) {
  const double x = number(v, field);
  if (!(x > 0.0)) throw ConfigError(field + " must be positive");
  return x;
}

double order(const Json& v, const std::string& field) {
  const double m = number(v, field);
  if (!(m > 0.0) || m > kMaxOrder) throw ConfigError(field + " out of range (0, 8]");
  return m;
}

Domain parse_domain(const Json& d) {
  if (!d.is_object() || !d.contains("kind")) throw ConfigError("domain.kind is required");
  const DomainKind kind = domain_kind_from_string(text(d["kind"], "domain.kind"));
  auto need = [&](const char* key) {
    if (!d.contains(key)) throw ConfigError(std::string("domain.") + key + " is required");
    return positive(d[key], std::string("domain.") + key);
  };
  switch (kind) {
    case DomainKind::interval:
      reject_unknown(d, "domain", {"kind", "L"});
      return Domain::interval(need("L"));
    case DomainKind::rectangle:
      reject_unknown(d, "domain", {"kind", "a", "b"});
      return Domain::rectangle(need("a"), need("b"));
    case DomainKind::disk:
      reject_unknown(d, "domain", {"kind", "R"});
      return Domain::disk(need("R"));
    case DomainKind::slit_square:
      reject_unknown(d, "domain", {"kind", "s", "l"});
      return Domain::slit_square(need("s"), need("l"));
  }
  throw ConfigError("unknown domain kind");
}

Json domain_json(const Domain& d) {
  Json j;
  j["kind"] = std::string(to_string(d.kind()));
  switch (d.kind()) {
    case DomainKind::interval:
      j["L"] = d.param(0);
      break;
    case DomainKind::rectangle:
      j["a"] = d.param(0);
      j["b"] = d.param(1);
      break;
    case DomainKind::disk:
      j["R"] = d.param(0);
      break;
    case DomainKind::slit_square:
      j["s"] = d.param(0);
      j["l"] = d.param(1);
      break;
  }
  return j;
}

bool needs_domain(std::string_view command) {
  return command == "assemble" || command == "spectrum" || command == "weyl-fit" ||
         command == "billiard";
}

bool needs_order(std::string_view command) {
  return command == "assemble" || command == "spectrum" || command == "weyl-fit" ||
         command == "kappa";
}

}  // namespace

ModelParams JobConfig::model_params(double m) const {
  ModelParams p = ModelParams::defaults(m);
  p.L_trunc = model.L_trunc;
  p.n = model.n;
  p.x_max = model.x_max.value_or(model.L_trunc / 4.0);
  p.lambda_max = model.lambda_max.value_or(default_lambda_max(m));
  return p;
}

Json JobConfig::to_json() const {
  Json j;
  j["command"] = command;
  if (domain) j["domain"] = domain_json(*domain);
  if (sweep) {
    j["m_list"] = m_list;
  } else if (!m_list.empty()) {
    j["m"] = m_list.front();
  }
  j["grid"] = {{"n", grid.points_per_axis}, {"box_factor", grid.box_factor}};
  j["symbol"] = std::string(to_string(symbol));
  j["zero_mode"] = std::string(to_string(zero_mode));
  Json model_json = {{"d", model.d}, {"L_trunc", model.L_trunc}, {"n", model.n}};
  if (model.x_max) model_json["x_max"] = *model.x_max;
  if (model.lambda_max) model_json["lambda_max"] = *model.lambda_max;
  j["model"] = model_json;
  j["fit"] = {{"method", std::string(to_string(method))},
              {"lo", window.lo_fraction},
              {"hi", window.hi_fraction}};
  j["billiard"] = {{"samples", billiard.samples},
                   {"T", billiard.horizon},
                   {"epsilon", billiard.epsilons}};
  j["props"] = {{"repeats", repeats}};
  if (seed) j["seed"] = *seed;
  j["matrix_cap"] = matrix_cap;
  if (!inputs.empty()) j["inputs"] = inputs;
  return j;
}

JobConfig validate_config(std::string_view raw, std::string_view command,
                          std::optional<std::uint64_t> seed_override) {
  if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands)) {
    throw ConfigError("unknown command '" + std::string(command) + "'");
  }
  Json j;
  try {
    j = Json::parse(raw);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(j, "", {"command", "domain", "m", "m_list", "grid", "symbol", "zero_mode", "model",
                         "fit", "billiard", "props", "seed", "matrix_cap", "inputs"});

  JobConfig cfg;
  cfg.command = std::string(command);
  if (j.contains("command") && text(j["command"], "command") != command) {
    throw ConfigError("command field '" + j["command"].get<std::string>() +
                      "' does not match the requested command");
  }
  if (j.contains("domain")) cfg.domain = parse_domain(j["domain"]);

  if (j.contains("m") && j.contains("m_list")) throw ConfigError("give either m or m_list, not both");
  if (j.contains("m")) cfg.m_list = {order(j["m"], "m")};
  if (j.contains("m_list")) {
    if (!j["m_list"].is_array() || j["m_list"].empty()) throw ConfigError("m_list must be a non-empty array");
    for (std::size_t i = 0; i < j["m_list"].size(); ++i) {
      cfg.m_list.push_back(order(j["m_list"][i], "m_list[" + std::to_string(i) + "]"));
    }
    cfg.sweep = true;
  }

  if (j.contains("grid")) {
    const Json& g = j["grid"];
    reject_unknown(g, "grid", {"n", "box_factor"});
    if (g.contains("n")) {
      const int n = integer(g["n"], "grid.n");
      if (n < 64 || n > 4096 || (n & (n - 1)) != 0) {
        throw ConfigError("grid.n must be a power of two in [64, 4096]");
      }
      cfg.grid.points_per_axis = n;
    }
    if (g.contains("box_factor")) {
      const double bf = number(g["box_factor"], "grid.box_factor");
      if (bf < 2.0 || bf > 8.0) throw ConfigError("grid.box_factor out of range [2, 8]");
      cfg.grid.box_factor = bf;
    }
  }

  cfg.symbol = command == "weyl-fit" ? SymbolKind::exact : SymbolKind::discrete;
  if (j.contains("symbol")) cfg.symbol = symbol_kind_from_string(text(j["symbol"], "symbol"));
  if (j.contains("zero_mode")) cfg.zero_mode = zero_mode_from_string(text(j["zero_mode"], "zero_mode"));

  cfg.model.d = cfg.domain ? cfg.domain->dimension() : 2;
  if (j.contains("model")) {
    const Json& mj = j["model"];
    reject_unknown(mj, "model", {"d", "L_trunc", "n", "x_max", "lambda_max"});
    if (mj.contains("d")) {
      cfg.model.d = integer(mj["d"], "model.d");
      if (cfg.model.d < 1 || cfg.model.d > 2) throw ConfigError("model.d must be 1 or 2");
    }
    if (mj.contains("L_trunc")) cfg.model.L_trunc = positive(mj["L_trunc"], "model.L_trunc");
    if (mj.contains("n")) {
      cfg.model.n = integer(mj["n"], "model.n");
      if (cfg.model.n < 64 || cfg.model.n > 4095) throw ConfigError("model.n out of range [64, 4095]");
    }
    if (mj.contains("x_max")) cfg.model.x_max = positive(mj["x_max"], "model.x_max");
    if (mj.contains("lambda_max")) cfg.model.lambda_max = number(mj["lambda_max"], "model.lambda_max");
  }
  if (cfg.model.x_max && *cfg.model.x_max > cfg.model.L_trunc / 4.0) {
    throw ConfigError("model.x_max must not exceed model.L_trunc / 4");
  }
  if (cfg.model.lambda_max && *cfg.model.lambda_max < 4.0) throw ConfigError("model.lambda_max must be at least 4");

  if (j.contains("fit")) {
    const Json& f = j["fit"];
    reject_unknown(f, "fit", {"method", "lo", "hi"});
    if (f.contains("method")) cfg.method = fit_method_from_string(text(f["method"], "fit.method"));
    if (f.contains("lo")) cfg.window.lo_fraction = number(f["lo"], "fit.lo");
    if (f.contains("hi")) cfg.window.hi_fraction = number(f["hi"], "fit.hi");
    if (cfg.window.lo_fraction < 0.0 || cfg.window.hi_fraction > 0.2 ||
        cfg.window.lo_fraction >= cfg.window.hi_fraction) {
      throw ConfigError("fit window must satisfy 0 <= lo < hi <= 0.2");
    }
  }

  if (j.contains("billiard")) {
    const Json& b = j["billiard"];
    reject_unknown(b, "billiard", {"samples", "T", "epsilon"});
    if (b.contains("samples")) {
      cfg.billiard.samples = integer(b["samples"], "billiard.samples");
      if (cfg.billiard.samples < 1000) throw ConfigError("billiard.samples must be at least 1000");
    }
    if (b.contains("T")) cfg.billiard.horizon = positive(b["T"], "billiard.T");
    if (b.contains("epsilon")) {
      const Json& e = b["epsilon"];
      cfg.billiard.epsilons.clear();
      if (e.is_array()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
          cfg.billiard.epsilons.push_back(positive(e[i], "billiard.epsilon[" + std::to_string(i) + "]"));
        }
      } else {
        cfg.billiard.epsilons.push_back(positive(e, "billiard.epsilon"));
      }
      if (cfg.billiard.epsilons.empty()) throw ConfigError("billiard.epsilon must not be empty");
    }
  }

  if (j.contains("props")) {
    const Json& p = j["props"];
    reject_unknown(p, "props", {"repeats"});
    if (p.contains("repeats")) {
      cfg.repeats = integer(p["repeats"], "props.repeats");
      if (cfg.repeats < 1) throw ConfigError("props.repeats must be positive");
    }
  }

  if (j.contains("seed")) {
    const Json& s = j["seed"];
    if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0)) {
      throw ConfigError("seed must be a non-negative 64-bit integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }
  if (seed_override) cfg.seed = seed_override;

  if (j.contains("matrix_cap")) {
    const int cap = integer(j["matrix_cap"], "matrix_cap");
    if (cap < 1) throw ConfigError("matrix_cap must be positive");
    cfg.matrix_cap = static_cast<std::size_t>(cap);
  }

  if (j.contains("inputs")) {
    if (!j["inputs"].is_array()) throw ConfigError("inputs must be an array of paths");
    for (std::size_t i = 0; i < j["inputs"].size(); ++i) {
      cfg.inputs.push_back(text(j["inputs"][i], "inputs[" + std::to_string(i) + "]"));
    }
  }

  if (needs_domain(command) && !cfg.domain) throw ConfigError("domain is required for " + cfg.command);
  if (needs_order(command) && cfg.m_list.empty()) throw ConfigError("m is required for " + cfg.command);
  if (cfg.sweep && command != "kappa") throw ConfigError("m_list is only supported by kappa");
  if ((command == "props" || command == "billiard") && !cfg.seed) {
    throw ConfigError("seed is required for " + cfg.command);
  }
  if (command == "billiard" && cfg.domain->kind() == DomainKind::slit_square) {
    throw ConfigError("billiard does not support the slit square");
  }
  if (command == "report" && cfg.inputs.empty()) throw ConfigError("report needs a non-empty inputs list");
  return cfg;
}

}  // namespace fracspec
