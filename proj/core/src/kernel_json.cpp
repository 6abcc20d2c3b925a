#include "poloc/kernel_json.hpp"

#include <cmath>

namespace poloc {

namespace {

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw DomainError(std::string("kernel spec: numeric field '") + key + "' missing");
  return j.at(key).get<double>();
}

std::vector<MixtureAtom> atoms(const json& j, const char* key) {
  std::vector<MixtureAtom> out;
  if (!j.contains(key)) return out;
  for (const auto& a : j.at(key)) {
    if (!a.is_array() || a.size() != 2) throw DomainError("kernel spec: mixture atoms are [lambda, weight] pairs");
    out.push_back({a[0].get<double>(), a[1].get<double>()});
  }
  return out;
}

}  // namespace

MixtureSpec mixture_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("kernel spec: mixture must be an object");
  MixtureSpec s;
  s.principal = atoms(j, "principal");
  s.supplementary = atoms(j, "supplementary");
  if (j.contains("density_grid")) {
    for (const auto& a : j.at("density_grid")) {
      if (!a.is_array() || a.size() != 2) throw DomainError("kernel spec: density_grid entries are [lambda, w]");
      s.density_grid.emplace_back(a[0].get<double>(), a[1].get<double>());
    }
  }
  return s;
}

RadialProfile profile_from_json(const json& j, double m) {
  if (!j.is_object() || !j.contains("profile") || !j.at("profile").is_string())
    throw DomainError("kernel spec: parameters.profile missing");
  const std::string kind = j.at("profile").get<std::string>();
  if (kind == "power") return power_profile(number(j, "r"), m);
  if (kind == "principal") return profile_irreducible(Series::principal, number(j, "lambda"), m);
  if (kind == "supplementary") return profile_irreducible(Series::supplementary, number(j, "lambda"), m);
  if (kind == "gaussian") return gaussian_profile(number(j, "sigma"), m);
  if (kind == "mixture") {
    if (!j.contains("mixture")) throw DomainError("kernel spec: mixture profile without mixture block");
    return profile_mixture(mixture_from_json(j.at("mixture")), m);
  }
  if (kind == "product") {
    if (!j.contains("factors") || j.at("factors").size() != 2) throw DomainError("kernel spec: product needs two factors");
    return profile_product(profile_from_json(j.at("factors")[0], m), profile_from_json(j.at("factors")[1], m));
  }
  throw DomainError("kernel spec: profile '" + kind + "' cannot be built from JSON");
}

Kernel kernel_from_json(const json& spec) {
  try {
    if (!spec.is_object() || !spec.contains("family") || !spec.at("family").is_string())
      throw DomainError("kernel spec: 'family' missing");
    const std::string fam = spec.at("family").get<std::string>();
    const double m = spec.contains("m") ? spec.at("m").get<double>() : 1.0;
    if (!(m > 0)) throw DomainError("kernel spec: m must be positive");
    if (fam == "nwl") return kernel_nwl(m);
    if (fam == "terno_moretti" || fam == "tm") return kernel_terno_moretti(m);
    if (fam == "tct") return kernel_tct(m);
    if (fam == "causal" || fam == "lorentz") {
      if (!spec.contains("parameters")) throw DomainError("kernel spec: parameters missing");
      json params = spec.at("parameters");
      if (spec.contains("mixture") && !params.contains("mixture")) params["mixture"] = spec.at("mixture");
      const RadialProfile g = profile_from_json(params, m);
      return fam == "causal" ? kernel_causal(g) : kernel_lorentz(g);
    }
    if (fam == "product") {
      if (!spec.contains("factors") || spec.at("factors").size() != 2)
        throw DomainError("kernel spec: product needs two factors");
      return kernel_product(kernel_from_json(spec.at("factors")[0]), kernel_from_json(spec.at("factors")[1]));
    }
    if (fam == "shell") {
      if (!spec.contains("base")) throw DomainError("kernel spec: shell needs base");
      return kernel_to_shell(kernel_from_json(spec.at("base")));
    }
    throw DomainError("kernel spec: unknown family '" + fam + "'");
  } catch (const json::exception& e) {
    throw DomainError(std::string("kernel spec: ") + e.what());
  }
}

Kernel kernel_from_name(const std::string& name, double m) {
  auto tail = [&](std::size_t n) {
    try {
      return std::stod(name.substr(n));
    } catch (const std::exception&) {
      throw DomainError("unknown kernel name '" + name + "'");
    }
  };
  if (name == "nwl") return kernel_nwl(m);
  if (name == "tm") return kernel_terno_moretti(m);
  if (name == "tct") return kernel_tct(m);
  if (name.rfind("gP", 0) == 0) return kernel_lorentz(profile_irreducible(Series::principal, tail(2), m));
  if (name.rfind("gS", 0) == 0) return kernel_lorentz(profile_irreducible(Series::supplementary, tail(2), m));
  if (name.rfind("KgS", 0) == 0)
    return kernel_product(kernel_causal_power(1.5, m),
                          kernel_lorentz(profile_irreducible(Series::supplementary, tail(3), m)));
  if (name.rfind("K", 0) == 0) return kernel_causal_power(tail(1), m);
  if (name.rfind("g", 0) == 0) return kernel_lorentz(power_profile(tail(1), m));
  throw DomainError("unknown kernel name '" + name + "'");
}

}  // namespace poloc
