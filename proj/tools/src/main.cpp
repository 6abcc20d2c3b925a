#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "poloc/cli/config.hpp"
#include "poloc/cli/report.hpp"
#include "poloc/cli/run_log.hpp"
#include "poloc/cli/suites.hpp"
#include "poloc/poloc.hpp"

namespace fs = std::filesystem;
using namespace poloc;
using namespace poloc::cli;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

json read_json_arg(const std::string& arg) {
  try {
    if (!arg.empty() && arg.front() == '{') return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw ConfigError("cannot open " + arg);
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in " + arg + ": " + e.what());
  }
}

Kernel kernel_arg(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || fs::exists(arg))) return kernel_from_json(read_json_arg(arg));
  return kernel_from_name(arg);
}

// g<r>, gP<l>, gS<l>, gauss<s>, or a JSON profile
RadialProfile profile_arg(const std::string& arg) {
  auto tail = [&](std::size_t n) {
    try {
      std::size_t used = 0;
      const double v = std::stod(arg.substr(n), &used);
      if (used != arg.size() - n) throw std::invalid_argument(arg);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("bad profile '" + arg + "'");
    }
  };
  if (!arg.empty() && (arg.front() == '{' || fs::exists(arg))) return profile_from_json(read_json_arg(arg));
  if (arg.rfind("gauss", 0) == 0) return gaussian_profile(tail(5));
  if (arg.rfind("gP", 0) == 0) return profile_irreducible(Series::principal, tail(2));
  if (arg.rfind("gS", 0) == 0) return profile_irreducible(Series::supplementary, tail(2));
  if (arg.rfind("g", 0) == 0) return power_profile(tail(1));
  throw ConfigError("bad profile '" + arg + "'");
}

std::vector<double> list_arg(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + item + "' in list");
    }
  }
  if (v.empty()) throw ConfigError("empty list");
  return v;
}

// stdout unless a path is given
struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
    file.open(path);
    if (!file) throw ConfigError("cannot write " + path);
    os = &file;
  }
  std::ostream& operator*() { return *os; }
};

void emit(const std::string& out, const json& j) {
  Sink s(out);
  *s << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"poloc: positive operator valued localization kernels and probabilities"};
  app.require_subcommand(1);
  int code = kPass;

  std::string kernel = "nwl", out, config_path, output;
  std::uint64_t seed = 1;
  bool parallel = false;

  auto* eval = app.add_subcommand("eval", "evaluate a kernel on momentum pairs");
  std::string points;
  eval->add_option("--kernel", kernel, "kernel name or JSON spec")->required();
  eval->add_option("--points", points, "file with kx ky kz px py pz per line")->required();
  eval->add_option("--out", out);

  auto* expand = app.add_subcommand("expand", "Legendre coefficients on a radial grid");
  int J = 8;
  std::string grid = "0.5,1,2,5";
  expand->add_option("--kernel", kernel)->required();
  expand->add_option("-J,--order", J);
  expand->add_option("--grid", grid);
  expand->add_option("--out", out);

  auto* pdt = app.add_subcommand("pd-test", "Gram tests and structured violation search");
  int sets = 200, npts = 30;
  std::string expect;
  pdt->add_option("--kernel", kernel)->required();
  pdt->add_option("--sets", sets);
  pdt->add_option("--points", npts);
  pdt->add_option("--seed", seed);
  pdt->add_option("--expect", expect)->check(CLI::IsMember({"pd", "violated"}));
  pdt->add_option("--out", out);

  auto* nc = app.add_subcommand("nc-check", "necessary condition margins");
  std::string profile = "g1.5", mode = "prefactor";
  double rho_min = 0.05, rho_max = 50;
  int nrho = 50;
  nc->add_option("--profile", profile);
  nc->add_option("--mode", mode)->check(CLI::IsMember({"profile", "prefactor"}));
  nc->add_option("--rho-min", rho_min);
  nc->add_option("--rho-max", rho_max);
  nc->add_option("-n", nrho);
  nc->add_option("--out", out);

  auto* inv = app.add_subcommand("invert", "weight function of a principal-class profile");
  inv->add_option("--profile", profile)->required();
  inv->add_option("--out", out);

  auto* maxi = app.add_subcommand("maximality", "compare a kernel with K_{3/2} on sampled pairs");
  std::uint64_t npairs = 100000;
  bool strict = false;
  maxi->add_option("--kernel", kernel)->required();
  maxi->add_option("--pairs", npairs);
  maxi->add_option("--seed", seed);
  maxi->add_flag("--strict", strict);
  maxi->add_option("--out", out);

  double s = 1.0, R = 1.0, t = 1.0, n = 4.0;
  std::string method = "automatic", state = "gaussian";
  auto method_of = [&]() {
    if (method == "tensor") return Method::tensor_quadrature;
    if (method == "partial-wave") return Method::partial_wave;
    if (method == "qmc") return Method::quasi_monte_carlo;
    return Method::automatic;
  };
  auto* ct = app.add_subcommand("ct-check", "grown-ball inequality for a Gaussian state");
  ct->add_option("--kernel", kernel)->required();
  ct->add_option("-s", s);
  ct->add_option("-R", R);
  ct->add_option("-t", t);
  ct->add_option("--out", out);

  auto* loc = app.add_subcommand("localize", "ball localization probability");
  loc->add_option("--kernel", kernel)->required();
  loc->add_option("--state", state)->check(CLI::IsMember({"gaussian", "plss"}));
  loc->add_option("-s", s, "Gaussian width");
  loc->add_option("-n", n, "PLSS index");
  loc->add_option("-R", R);
  loc->add_option("-t", t, "evolution time")->default_val(0.0);
  loc->add_option("--method", method)->check(CLI::IsMember({"automatic", "tensor", "partial-wave", "qmc"}));
  loc->add_option("--seed", seed);
  loc->add_option("--out", out);

  auto* pl = app.add_subcommand("plss", "point-localized state sequence at the origin");
  std::string ns = "2,4,8,16,32";
  pl->add_option("--kernel", kernel)->required();
  pl->add_option("-R", R)->default_val(2.0);
  pl->add_option("--n", ns);
  pl->add_option("--out", out);

  auto* nb = app.add_subcommand("norm-bound", "Rayleigh-quotient lower bound for the ball operator norm");
  int N = 12;
  nb->add_option("--kernel", kernel)->required();
  nb->add_option("-R", R);
  nb->add_option("-N", N);
  nb->add_option("--out", out);

  auto* od = app.add_subcommand("onedim", "one-dimensional identities and the Gaussian counterexample");
  double varsigma = 2.0;
  od->add_option("--varsigma", varsigma);
  od->add_option("--seed", seed);
  od->add_option("--out", out);

  auto* su = app.add_subcommand("suite", "run a named suite and append its record to the run log");
  std::string suite_name;
  std::optional<std::uint64_t> seed_override;
  su->add_option("name", suite_name, "pd, nc, invert, maximality, ct, plss, onedim or all")->required();
  su->add_option("--config", config_path);
  su->add_option("--seed", seed_override);
  su->add_flag("--parallel", parallel);
  su->add_option("--output", output, "output directory");

  auto* rep = app.add_subcommand("report", "summary tables from a run log");
  std::string log_path, csv_path;
  rep->add_option("log", log_path)->required();
  rep->add_option("--csv", csv_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*eval) {
      const Kernel K = kernel_arg(kernel);
      std::ifstream in(points);
      if (!in) throw ConfigError("cannot open points file " + points);
      Sink sink(out);
      auto& os = *sink;
      os << "kx,ky,kz,px,py,pz,K,rounding_tol\n" << std::setprecision(17);
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& ch : line)
          if (ch == ',') ch = ' ';
        std::istringstream ls(line);
        double v[6];
        for (double& x : v)
          if (!(ls >> x)) throw ConfigError("points file: need six numbers per line");
        const Vec3 k(v[0], v[1], v[2]), p(v[3], v[4], v[5]);
        const double val = K(k, p);
        for (double x : v) os << x << ',';
        os << val << ',' << 1e-14 * std::max(1.0, std::abs(val)) << '\n';
      }
    } else if (*expand) {
      const Kernel K = kernel_arg(kernel);
      const auto g = list_arg(grid);
      const auto c = extract_coefficients(K, J, g);
      Sink sink(out);
      write_coefficients_csv(*sink, c, g);
    } else if (*pdt) {
      const Kernel K = kernel_arg(kernel);
      SearchOptions opt;
      opt.n = npts;
      for (int i = 0; i < sets; ++i) opt.seeds.push_back(seed * 1000003ULL + i);
      const GramReport r = violation_search(K, opt);
      json j = to_json(r);
      j["kernel"] = K.spec();
      emit(out, j);
      if (expect == "pd" && r.verdict != Verdict::pd_on_sample) code = kFail;
      if (expect == "violated" && r.verdict != Verdict::violated) code = kFail;
    } else if (*nc) {
      std::vector<double> rho;
      for (int i = 0; i < nrho; ++i) rho.push_back(rho_min * std::pow(rho_max / rho_min, i / std::max(1.0, nrho - 1.0)));
      const auto r = nc_check(profile_arg(profile), mode == "profile" ? NcMode::profile_only : NcMode::with_prefactor, rho);
      Sink sink(out);
      write_nc_csv(*sink, r);
    } else if (*inv) {
      const WeightFunction w = invert(profile_arg(profile));
      Sink sink(out);
      write_weight_csv(*sink, w);
    } else if (*maxi) {
      const Kernel K = kernel_arg(kernel);
      const auto pairs = sample_pairs(seed, npairs);
      const MaximalityReport m = maximality_check(K, pairs, strict);
      emit(out, to_json(m));
      if (!m.ok()) code = kFail;
    } else if (*ct) {
      const CtMargin m = ct_inequality(kernel_arg(kernel), gaussian_state(s), BallRegion(R), t);
      emit(out, json{{"margin", m.margin}, {"error", m.error}, {"grown", to_json(m.grown)}, {"evolved", to_json(m.evolved)}});
      if (m.margin < -3.0 * m.error) code = kFail;
    } else if (*loc) {
      const Kernel K = kernel_arg(kernel);
      StateWavepacket phi = state == "gaussian" ? gaussian_state(s, Vec3::Zero(), K.mass())
                                                : plss_state(K, Vec3(0, 0, 1), Vec3::Zero(), n,
                                                             K.amplitudes() ? K.amplitudes()->max_order() : 16);
      if (t != 0.0) phi = evolve(phi, t);
      ProbabilityOptions po;
      po.method = method_of();
      po.seed = seed;
      emit(out, to_json(probability(K, phi, BallRegion(R), po)));
    } else if (*pl) {
      const auto nv = list_arg(ns);
      const auto seq = plss_sequence(kernel_arg(kernel), Vec3(0, 0, 1), Vec3::Zero(), BallRegion(R), nv);
      Sink sink(out);
      *sink << "n,value,error,method\n" << std::setprecision(12);
      for (std::size_t i = 0; i < nv.size(); ++i)
        *sink << nv[i] << ',' << seq[i].value << ',' << seq[i].error << ',' << to_string(seq[i].method) << '\n';
    } else if (*nb) {
      const NormBound b = norm_lower_bound(kernel_arg(kernel), BallRegion(R), N);
      emit(out, json{{"bound", b.bound}, {"basis_size", b.basis_size}, {"kept", b.kept},
                     {"block_l0", b.block_bound[0]}, {"block_l1", b.block_bound[1]}});
    } else if (*od) {
      json j;
      j["identities"] = to_json(amkk_identities(power_profile(1.0), 100, seed));
      j["gaussian"] = to_json(gaussian_counterexample(varsigma));
      j["h_shift_sup"] = h_shift_sup(1.0);
      std::vector<double> xs;
      for (int i = 0; i <= 20; ++i) xs.push_back(0.5 * i);
      json rows = json::array();
      for (const auto& r : infinite_divisibility_check(xs)) rows.push_back(to_json(r));
      j["levy_khinchin"] = rows;
      emit(out, j);
    } else if (*su) {
      if (!is_suite(suite_name)) throw ConfigError("unknown suite '" + suite_name + "'");
      RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
      cfg.command = "suite " + suite_name;
      if (seed_override) cfg.seed = *seed_override;
      if (parallel) cfg.parallel = true;
      if (!output.empty()) cfg.output_dir = output;
      cfg.validate();
      const fs::path log = output_dir(cfg) / "runs.jsonl";
      for (const auto& r : run_suites(suite_name, cfg)) {
        append(log, r);
        std::cout << (r.pass() ? "PASS " : "FAIL ") << r.suite << " (" << r.assertions.size() << " assertions)\n";
        for (const auto& a : r.assertions)
          if (!a.pass) std::cout << "  failed: " << a.name << " value " << a.value << " " << a.relation << " " << a.tol << '\n';
        if (!r.pass()) code = kFail;
      }
      std::cout << "log: " << log.string() << '\n';
    } else if (*rep) {
      const Report r = summarize(log_path);
      write_text(std::cout, r);
      if (!csv_path.empty()) {
        Sink sink(csv_path);
        write_csv(*sink, r);
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return code;
}
