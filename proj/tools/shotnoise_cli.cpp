// shotnoise CLI: tables and plot-ready data files for the stationary
// densities, their tails, Monte-Carlo histograms, and cross-checks.
// Every subcommand writes one data file plus a JSON run manifest that
// references it (the wall-time field is the only nondeterministic output).

#include "CLI11.hpp"
#include "json.hpp"

#include "shotnoise/closedforms.hpp"
#include "shotnoise/grid.hpp"
#include "shotnoise/hyperint.hpp"
#include "shotnoise/inversion.hpp"
#include "shotnoise/montecarlo.hpp"
#include "shotnoise/saddle.hpp"
#include "shotnoise/specfun.hpp"
#include "shotnoise/triggered.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace shotnoise;

constexpr const char* kVersion = "0.1.0";

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> v;
  std::string cell;
  std::istringstream in(csv);
  while (std::getline(in, cell, ',')) {
    if (!cell.empty()) v.push_back(std::stod(cell));
  }
  return v;
}

HypergeometricLaw resolve_law(const std::string& name, const std::string& as,
                              const std::string& bs) {
  if (!as.empty() || !bs.empty()) {
    HypergeometricLaw law{parse_list(as), parse_list(bs)};
    law.validate();
    return law;
  }
  if (name == "example") return example_law();
  if (name == "bernoulli") {
    HypergeometricLaw law;
    law.b = {0.5};
    return law;
  }
  if (name == "arcsine") {
    HypergeometricLaw law;
    law.b = {1.0};
    return law;
  }
  throw std::invalid_argument("law: unknown name '" + name +
                              "' (use example|bernoulli|arcsine or --a/--b)");
}

AmplitudeLaw resolve_amplitude(const std::string& name) {
  if (name == "example" || name == "arcsine-plus-bernoulli")
    return AmplitudeLaw::make(AmplitudeLaw::Tag::arcsine_plus_bernoulli);
  if (name == "arcsine") return AmplitudeLaw::make(AmplitudeLaw::Tag::arcsine);
  if (name == "bernoulli")
    return AmplitudeLaw::make(AmplitudeLaw::Tag::bernoulli);
  if (name == "normal") return AmplitudeLaw::make(AmplitudeLaw::Tag::normal);
  if (name == "laplace") return AmplitudeLaw::make_laplace(1.0);
  throw std::invalid_argument("mc law: unknown amplitude '" + name + "'");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << text;
}

struct ManifestWriter {
  std::string subcommand;
  json config;
  std::vector<std::string> outputs;
  json results;
  std::chrono::steady_clock::time_point t0 =
      std::chrono::steady_clock::now();

  void finish(const std::string& path) {
    json m;
    m["subcommand"] = subcommand;
    m["config"] = config;
    m["versions"] = {{"shotnoise", kVersion}, {"format", 1}};
    m["outputs"] = outputs;
    if (!results.is_null()) m["results"] = results;
    const char* threads = std::getenv("SHOTNOISE_THREADS");
    m["threads"] = threads ? std::atoi(threads) : 1;
    m["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    write_file(path, m.dump(2) + "\n");
  }
};

void emit_grid(const DensityGrid& g, const std::string& out,
               const std::string& format, ManifestWriter& mw) {
  write_file(out, format == "json" ? to_json(g) + "\n" : to_csv(g));
  mw.outputs.push_back(out);
}

int run(int argc, char** argv) {
  CLI::App app{"stationary shot-noise densities and diagnostics"};
  app.require_subcommand(1);

  // shared option storage
  std::string law_name = "example", a_list, b_list, grid_spec;
  std::string out_path, manifest_path, format = "csv";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--law", law_name, "law name (example|bernoulli|arcsine)");
    sub->add_option("--a", a_list, "numerator parameters, comma separated");
    sub->add_option("--b", b_list, "denominator parameters, comma separated");
    sub->add_option("--out", out_path, "data file path (default <subcommand>.csv)");
    sub->add_option("--manifest", manifest_path,
                    "manifest path (default <out>.manifest.json)");
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  // specfun-table
  auto* sp = app.add_subcommand("specfun-table",
                                "tabulate a special function over a grid");
  std::string fn = "cji";
  int order = 1;
  sp->add_option("--fn", fn, "cji|cjin|ci|si|cl2|ellipk|pfq")->required();
  sp->add_option("--order", order, "iteration order for cji (1..3)");
  sp->add_option("--grid", grid_spec, "start:stop:count")->required();
  add_common(sp);

  // density
  auto* de = app.add_subcommand("density",
                                "stationary density by Fourier inversion");
  double x1 = 10.0, x2 = 200.0, panel = 0.01;
  de->add_option("--grid", grid_spec, "start:stop:count")->required();
  de->add_option("--x1", x1, "split point of the inversion scheme");
  de->add_option("--x2", x2, "transform truncation");
  de->add_option("--panel-width", panel, "Gauss-Legendre panel width");
  add_common(de);

  // triggered
  auto* tr = app.add_subcommand("triggered",
                                "l = 2 triggered stationary density");
  int trig_n = 14;
  tr->add_option("--grid", grid_spec, "start:stop:count")->required();
  tr->add_option("--N", trig_n, "series truncation order");
  add_common(tr);

  // tail
  auto* ta = app.add_subcommand("tail", "saddle-point tail approximation");
  ta->add_option("--grid", grid_spec, "start:stop:count (x >= 3)")->required();
  add_common(ta);

  // closed-form
  auto* cf = app.add_subcommand("closed-form",
                                "closed-form first-iterate densities");
  std::string cf_name = "f0-simple";
  cf->add_option("--law", cf_name,
                 "f0-simple|g1|f0-triggered|waiting-time|three-uniforms")
      ->required();
  cf->add_option("--grid", grid_spec, "start:stop:count")->required();
  cf->add_option("--out", out_path, "data file path");
  cf->add_option("--manifest", manifest_path, "manifest path");
  cf->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // mc
  auto* mc = app.add_subcommand("mc", "Monte-Carlo histogram");
  long n_samples = 100000;
  int l_factors = 1, bins = 61;
  std::uint64_t seed = 0;
  double lo = -4.0, hi = 4.0, horizon = 0.0;
  std::string amp_name = "example";
  mc->add_option("--samples", n_samples, "number of chains");
  mc->add_option("--l", l_factors, "uniform factors per step");
  mc->add_option("--seed", seed, "rng seed")->required();
  mc->add_option("--bins", bins, "histogram bins");
  mc->add_option("--lo", lo, "histogram lower edge");
  mc->add_option("--hi", hi, "histogram upper edge");
  mc->add_option("--T", horizon,
                 "continuous-time horizon (0 = discrete recurrence)");
  mc->add_option("--amplitude", amp_name,
                 "example|arcsine|bernoulli|normal|laplace");
  mc->add_option("--out", out_path, "data file path");
  mc->add_option("--manifest", manifest_path, "manifest path");
  mc->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // compare
  auto* cp = app.add_subcommand(
      "compare", "Monte Carlo against the analytic stationary law");
  double threshold = 0.01;
  cp->add_option("--samples", n_samples, "number of chains");
  cp->add_option("--l", l_factors, "uniform factors per step (1 or 2)");
  cp->add_option("--seed", seed, "rng seed")->required();
  cp->add_option("--bins", bins, "histogram bins");
  cp->add_option("--lo", lo, "histogram lower edge");
  cp->add_option("--hi", hi, "histogram upper edge");
  cp->add_option("--threshold", threshold, "KS pass threshold");
  add_common(cp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors (incl. bad flags) exit 1
  }
  CLI::App* sub = app.get_subcommands().front();
  if (out_path.empty()) out_path = sub->get_name() + ".csv";

  ManifestWriter mw;
  mw.subcommand = sub->get_name();
  for (const auto* opt : sub->get_options()) {
    if (!opt->get_lnames().empty() && opt->count() > 0)
      mw.config[opt->get_lnames().front()] = opt->as<std::string>();
  }
  if (manifest_path.empty()) manifest_path = out_path + ".manifest.json";

  if (sub == sp) {
    auto xs = parse_grid_spec(grid_spec);
    DensityGrid g;
    g.x = xs;
    g.method = fn;
    g.f.reserve(xs.size());
    HypergeometricLaw law = resolve_law(law_name, a_list, b_list);
    for (double x : xs) {
      double v = 0.0;
      if (fn == "cji") {
        if (order < 1 || order > 3)
          throw std::invalid_argument("order: cji order must be 1..3");
        v = cji_family(order, x);
      } else if (fn == "cjin") {
        v = cjin(x);
      } else if (fn == "ci") {
        v = cosine_integral(x);
      } else if (fn == "si") {
        v = sine_integral(x);
      } else if (fn == "cl2") {
        v = clausen2(x);
      } else if (fn == "ellipk") {
        v = elliptic_k(x);
      } else if (fn == "pfq") {
        v = pfq(law, -x * x);
      } else {
        throw std::invalid_argument("fn: unknown function '" + fn + "'");
      }
      g.f.push_back(v);
    }
    emit_grid(g, out_path, format, mw);
  } else if (sub == de) {
    HypergeometricLaw law = resolve_law(law_name, a_list, b_list);
    Inverter inv(law, InversionConfig{x1, x2, panel});
    auto g = inv.density_grid(parse_grid_spec(grid_spec));
    emit_grid(g, out_path, format, mw);
    mw.results["integral"] = g.trapezoid();
    mw.results["normalization_constant"] = inv.normalization();
  } else if (sub == tr) {
    HypergeometricLaw law = resolve_law(law_name, a_list, b_list);
    auto model = make_triggered_model(law, trig_n);
    auto g = triggered_density_grid(model, parse_grid_spec(grid_spec));
    emit_grid(g, out_path, format, mw);
    json side;
    side["K"] = model.K;
    side["c"] = model.c;
    side["C1"] = model.C1;
    side["C2"] = model.C2;
    side["seams"] = {{"series_table", model.table_lo},
                     {"table_matched", model.table_hi},
                     {"match_window", {model.match_lo, model.match_hi}}};
    std::string side_path = out_path + ".model.json";
    write_file(side_path, side.dump(2) + "\n");
    mw.outputs.push_back(side_path);
    mw.results["integral"] = g.trapezoid();
  } else if (sub == ta) {
    HypergeometricLaw law = resolve_law(law_name, a_list, b_list);
    std::vector<SaddleResult> rows;
    for (double x : parse_grid_spec(grid_spec))
      rows.push_back(find_saddle(law, x));
    write_file(out_path, saddle_csv(rows));
    mw.outputs.push_back(out_path);
  } else if (sub == cf) {
    const SupportedDensity* d = nullptr;
    for (const auto& cand : supported_densities())
      if (cand.name == cf_name) d = &cand;
    if (!d)
      throw std::invalid_argument("law: unknown closed form '" + cf_name +
                                  "'");
    DensityGrid g;
    g.x = parse_grid_spec(grid_spec);
    g.method = "closed-form";
    for (double x : g.x) g.f.push_back(d->eval(x));
    emit_grid(g, out_path, format, mw);
  } else if (sub == mc) {
    SimulationConfig cfg;
    cfg.law = resolve_amplitude(amp_name);
    cfg.l = l_factors;
    cfg.n_samples = n_samples;
    cfg.seed = seed;
    cfg.validate();
    auto samples = horizon > 0.0 ? simulate_shot_noise(cfg, horizon)
                                 : simulate_recurrence(cfg);
    auto g = histogram(samples, bins, lo, hi);
    emit_grid(g, out_path, format, mw);
    mw.results["seed"] = seed;
    mw.results["mean"] = sample_moment(samples, 1);
    mw.results["second_moment"] = sample_moment(samples, 2);
  } else if (sub == cp) {
    HypergeometricLaw law = resolve_law(law_name, a_list, b_list);
    SimulationConfig cfg;
    cfg.law = AmplitudeLaw::make(AmplitudeLaw::Tag::arcsine_plus_bernoulli);
    cfg.l = l_factors;
    cfg.n_samples = n_samples;
    cfg.seed = seed;
    cfg.validate();
    if (l_factors != 1 && l_factors != 2)
      throw std::invalid_argument("l: compare supports l = 1 or 2");
    auto samples = simulate_recurrence(cfg);

    std::function<double(double)> cdf;
    if (l_factors == 1) {
      Inverter inv(law);
      auto table = std::make_shared<CdfTable>(inv, -10.0, 10.0, 2001);
      cdf = [table](double x) { return (*table)(x); };
    } else {
      auto model = make_triggered_model(law);
      auto table =
          std::make_shared<TriggeredCdfTable>(model, -8.0, 8.0, 1601);
      cdf = [table](double x) { return (*table)(x); };
    }
    double ks = ks_distance(samples, cdf);

    auto g = histogram(samples, bins, lo, hi);
    std::vector<double> analytic(g.x.size()), z(g.x.size());
    const std::vector<double>* se = nullptr;
    for (const auto& col : g.extra)
      if (col.name == "stderr") se = &col.values;
    double width = (hi - lo) / bins;
    for (size_t i = 0; i < g.x.size(); ++i) {
      double a = g.x[i] - 0.5 * width, b = g.x[i] + 0.5 * width;
      analytic[i] = (cdf(b) - cdf(a)) / width;
      double s = se && std::isfinite((*se)[i]) ? (*se)[i] : 0.0;
      z[i] = s > 0.0 ? (g.f[i] - analytic[i]) / s : 0.0;
    }
    g.extra.push_back({"analytic", analytic});
    g.extra.push_back({"z", z});
    emit_grid(g, out_path, format, mw);
    mw.results["seed"] = seed;
    mw.results["ks"] = ks;
    mw.results["threshold"] = threshold;
    mw.results["pass"] = ks < threshold;
    std::cout << "KS " << ks << (ks < threshold ? " pass" : " fail")
              << " (threshold " << threshold << ")\n";
  }

  mw.finish(manifest_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
