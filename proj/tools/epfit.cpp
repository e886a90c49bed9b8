// epfit: fit, compare, and sample the compounded lifetime families from the
// command line. Output is an aligned table on a terminal and JSON otherwise.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "epfamily/data.hpp"
#include "epfamily/families.hpp"
#include "epfamily/fit.hpp"
#include "epfamily/kaplan_meier.hpp"
#include "epfamily/montecarlo.hpp"
#include "epfamily/rng.hpp"
#include "epfamily/ztp.hpp"

using nlohmann::ordered_json;
using namespace epfamily;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool use_json(const std::string& format) {
  if (format == "json") return true;
  if (format == "table") return false;
  return isatty(fileno(stdout)) == 0;
}

CensoredSample read_data(const std::string& path, bool raw) {
  try {
    return raw ? load_raw(path) : load_csv(path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

double json_number(const ordered_json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

ordered_json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

struct FitReport {
  std::string model;
  std::vector<std::string> names;
  std::vector<double> estimates, se;
  std::vector<std::pair<double, double>> ci;
  double ci_level = 0.95;
  double loglik = 0, aic = 0, aicc = 0;
  bool converged = false;
  std::size_t n = 0, events = 0, censored = 0;

  ordered_json to_json() const {
    ordered_json j;
    j["model"] = model;
    ordered_json est, jse, jci;
    for (std::size_t i = 0; i < names.size(); ++i) {
      est[names[i]] = estimates[i];
      if (!se.empty()) {
        jse[names[i]] = se[i];
        jci[names[i]] = {ci[i].first, ci[i].second};
      }
    }
    j["estimates"] = est;
    j["se"] = jse.is_null() ? ordered_json::object() : jse;
    j["ci_level"] = ci_level;
    j["ci"] = jci.is_null() ? ordered_json::object() : jci;
    j["loglik"] = loglik;
    j["aic"] = aic;
    j["aicc"] = number_or_null(aicc);
    j["converged"] = converged;
    j["n"] = n;
    j["events"] = events;
    j["censored"] = censored;
    return j;
  }

  static FitReport from_json(const ordered_json& j) {
    FitReport r;
    r.model = j.at("model").get<std::string>();
    for (const auto& [key, val] : j.at("estimates").items()) {
      r.names.push_back(key);
      r.estimates.push_back(val.get<double>());
    }
    for (const std::string& name : r.names) {
      if (j.at("se").contains(name)) {
        r.se.push_back(j.at("se").at(name).get<double>());
        const auto& c = j.at("ci").at(name);
        r.ci.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
      }
    }
    r.ci_level = j.at("ci_level").get<double>();
    r.loglik = j.at("loglik").get<double>();
    r.aic = j.at("aic").get<double>();
    r.aicc = json_number(j.at("aicc"));
    r.converged = j.at("converged").get<bool>();
    r.n = j.at("n").get<std::size_t>();
    r.events = j.at("events").get<std::size_t>();
    r.censored = j.at("censored").get<std::size_t>();
    return r;
  }
};

FitReport make_report(const std::string& dist, const FitResult& fr,
                      const CensoredSample& data, double level) {
  FitReport r;
  r.model = dist;
  for (const ParamSpec& p : family(dist).params()) r.names.push_back(p.name);
  r.estimates = fr.estimates;
  r.se = fr.se;
  r.ci = fr.ci;
  r.ci_level = level;
  r.loglik = fr.loglik;
  r.aic = fr.aic;
  r.aicc = fr.aicc;
  r.converged = fr.converged;
  r.n = data.size();
  r.events = data.n_events();
  r.censored = data.n_censored();
  return r;
}

std::string format_report_table(const FitReport& r) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "model: %s   n=%zu  events=%zu  censored=%zu\n",
                r.model.c_str(), r.n, r.events, r.censored);
  out << line;
  std::snprintf(line, sizeof line, "%-8s %14s %14s %28s\n", "param", "estimate", "se",
                (std::to_string((int)std::lround(r.ci_level * 100)) + "% CI").c_str());
  out << line;
  for (std::size_t i = 0; i < r.names.size(); ++i) {
    if (!r.se.empty())
      std::snprintf(line, sizeof line, "%-8s %14.6g %14.6g     (%.6g, %.6g)\n",
                    r.names[i].c_str(), r.estimates[i], r.se[i], r.ci[i].first,
                    r.ci[i].second);
    else
      std::snprintf(line, sizeof line, "%-8s %14.6g %14s %28s\n", r.names[i].c_str(),
                    r.estimates[i], "-", "-");
    out << line;
  }
  std::snprintf(line, sizeof line, "loglik: %.7g   AIC: %.7g   AICc: %.7g\n", r.loglik,
                r.aic, r.aicc);
  out << line;
  out << "converged: " << (r.converged ? "yes" : "no");
  if (r.se.empty()) out << "   (information matrix not positive definite; no CIs)";
  out << "\n";
  return out.str();
}

int cmd_fit(const std::string& dist, const std::string& path, bool raw, double level,
            int starts, const std::string& format) {
  CensoredSample data = read_data(path, raw);
  FitConfig cfg;
  cfg.ci_level = level;
  cfg.starts = starts;
  FitResult fr;
  try {
    fr = fit_mle(family(dist), data, cfg);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  FitReport rep = make_report(dist, fr, data, level);
  std::string out = use_json(format) ? rep.to_json().dump(2) + "\n" : format_report_table(rep);
  std::fputs(out.c_str(), stdout);
  return fr.converged ? 0 : 2;
}

int cmd_compare(const std::string& dists, const std::string& path, bool raw,
                const std::string& format) {
  std::vector<std::string> ids;
  {
    std::string s = dists;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream ss(s);
    std::string tok;
    while (ss >> tok) ids.push_back(tok);
  }
  if (ids.size() < 2) throw InputError("compare: need at least two model ids");
  for (const std::string& id : ids) family(id);  // validate before any fitting

  CensoredSample data = read_data(path, raw);

  struct Row {
    std::string id;
    bool ok = false, converged = false;
    std::size_t k = 0;
    double loglik = 0, aic = 0, aicc = 0;
    std::string error;
  };
  std::vector<Row> rows;
  for (const std::string& id : ids) {
    Row row;
    row.id = id;
    row.k = family(id).params().size();
    try {
      FitResult fr = fit_mle(family(id), data, {});
      row.ok = true;
      row.converged = fr.converged;
      row.loglik = fr.loglik;
      row.aic = fr.aic;
      row.aicc = fr.aicc;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(row);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    double x = a.ok ? a.aic : std::numeric_limits<double>::infinity();
    double y = b.ok ? b.aic : std::numeric_limits<double>::infinity();
    return x < y;
  });
  // the minimum marker goes to the best converged fit: an unconverged AIC is
  // not a comparable value, it only shows where the optimizer stopped
  const Row* minimum = nullptr;
  for (const Row& r : rows)
    if (r.ok && r.converged && (!minimum || r.aic < minimum->aic)) minimum = &r;

  std::ostringstream out;
  if (use_json(format)) {
    ordered_json j = ordered_json::array();
    for (const Row& r : rows) {
      ordered_json e;
      e["model"] = r.id;
      e["k"] = r.k;
      if (r.ok) {
        e["loglik"] = r.loglik;
        e["aic"] = r.aic;
        e["aicc"] = number_or_null(r.aicc);
        e["converged"] = r.converged;
        e["minimum"] = &r == minimum;
      } else {
        e["error"] = r.error;
      }
      j.push_back(e);
    }
    out << j.dump(2) << "\n";
  } else {
    char line[256];
    std::snprintf(line, sizeof line, "%-8s %3s %12s %12s %12s\n", "model", "k", "loglik",
                  "AIC", "AICc");
    out << line;
    for (const Row& r : rows) {
      if (r.ok) {
        std::snprintf(line, sizeof line, "%-8s %3zu %12.6g %12.6g %12.6g %s%s\n",
                      r.id.c_str(), r.k, r.loglik, r.aic, r.aicc,
                      &r == minimum ? "*" : "", r.converged ? "" : " (non-converged)");
      } else {
        std::snprintf(line, sizeof line, "%-8s %3zu fit failed: %s\n", r.id.c_str(), r.k,
                      r.error.c_str());
      }
      out << line;
    }
  }
  std::fputs(out.str().c_str(), stdout);
  return 0;
}

int cmd_km(const std::string& path, bool raw, const std::string& overlay,
           const std::string& format) {
  CensoredSample data = read_data(path, raw);
  if (data.records.empty()) throw InputError(path + ": no records");
  KMCurve km(data);

  DistributionPtr model;
  if (!overlay.empty()) {
    FitResult fr;
    try {
      fr = fit_mle(family(overlay), data, {});
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
    if (!fr.converged) std::fprintf(stderr, "warning: overlay fit did not converge\n");
    model = family(overlay).build(fr.estimates);
  }

  std::ostringstream out;
  if (use_json(format)) {
    ordered_json j = ordered_json::array();
    for (const KMStep& s : km.steps()) {
      ordered_json e;
      e["time"] = s.time;
      e["survival"] = s.survival;
      e["at_risk"] = s.at_risk;
      e["events"] = s.events;
      if (model) e[overlay + "_survival"] = model->survival(s.time);
      j.push_back(e);
    }
    out << j.dump(2) << "\n";
  } else {
    out << "time,survival";
    if (model) out << "," << overlay << "_survival";
    out << "\n";
    char line[128];
    for (const KMStep& s : km.steps()) {
      std::snprintf(line, sizeof line, "%.10g,%.10g", s.time, s.survival);
      out << line;
      if (model) {
        std::snprintf(line, sizeof line, ",%.10g", model->survival(s.time));
        out << line;
      }
      out << "\n";
    }
  }
  std::fputs(out.str().c_str(), stdout);
  return 0;
}

int cmd_simulate(const std::string& path, std::uint64_t seed, bool seed_set,
                 const std::string& format) {
  SimScenario sc;
  try {
    sc = load_scenario(path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  if (seed_set) sc.seed = seed;
  SimSummary s = run_scenario(sc);

  std::ostringstream out;
  if (use_json(format)) {
    ordered_json j;
    j["model"] = sc.model;
    j["n"] = sc.n;
    j["replications"] = s.replications;
    j["used"] = s.n_used;
    j["dropped"] = s.n_dropped;
    j["unreliable"] = s.unreliable;
    j["censor_bound"] = s.censor_bound;
    j["realized_censoring"] = s.realized_censoring;
    ordered_json rowsj = ordered_json::array();
    for (std::size_t p = 0; p < s.param_names.size(); ++p) {
      ordered_json e;
      e["param"] = s.param_names[p];
      e["true"] = s.true_params[p];
      e["bias"] = s.bias[p];
      e["mse"] = s.mse[p];
      e["cp"] = s.coverage[p];
      rowsj.push_back(e);
    }
    j["params"] = rowsj;
    out << j.dump(2) << "\n";
  } else {
    char line[256];
    std::snprintf(line, sizeof line,
                  "model=%s n=%zu replications=%zu used=%zu dropped=%zu%s\n",
                  sc.model.c_str(), sc.n, s.replications, s.n_used, s.n_dropped,
                  s.unreliable ? " UNRELIABLE" : "");
    out << line;
    std::snprintf(line, sizeof line, "censor bound=%.6g realized censoring=%.4f\n",
                  s.censor_bound, s.realized_censoring);
    out << line;
    std::snprintf(line, sizeof line, "%-8s %10s %12s %12s %8s\n", "param", "true", "bias",
                  "mse", "cp");
    out << line;
    for (std::size_t p = 0; p < s.param_names.size(); ++p) {
      std::snprintf(line, sizeof line, "%-8s %10.6g %+12.6g %12.6g %8.4f\n",
                    s.param_names[p].c_str(), s.true_params[p], s.bias[p], s.mse[p],
                    s.coverage[p]);
      out << line;
    }
  }
  std::fputs(out.str().c_str(), stdout);
  return 0;
}

DistributionPtr build_checked(const std::string& dist, const std::vector<double>& params) {
  try {
    return family(dist).build(params);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

int cmd_quantile(const std::string& dist, double p, const std::vector<double>& params,
                 const std::string& format) {
  DistributionPtr m = build_checked(dist, params);
  double q;
  try {
    q = m->quantile(p);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  if (use_json(format)) {
    ordered_json j;
    j["model"] = dist;
    j["p"] = p;
    j["quantile"] = q;
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("%.10g\n", q);
  }
  return 0;
}

int cmd_sample(const std::string& dist, std::size_t n, std::uint64_t seed,
               const std::vector<double>& params, const std::string& format) {
  DistributionPtr m = build_checked(dist, params);
  std::vector<double> xs;
  try {
    xs = sample_ep(*m, n, seed);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  if (use_json(format)) {
    ordered_json j;
    j["model"] = dist;
    j["seed"] = seed;
    j["values"] = xs;
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::ostringstream out;
    char line[64];
    for (double x : xs) {
      std::snprintf(line, sizeof line, "%.10g\n", x);
      out << line;
    }
    std::fputs(out.str().c_str(), stdout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lifetime distribution fitting for compounded families"};
  app.require_subcommand(1);

  std::string dist, data_path, format, overlay, dists = "eep,ewp,ge2p,egevp";
  std::string scenario_path;
  bool raw = false;
  double level = 0.95, p = 0.5;
  int starts = 8;
  std::uint64_t seed = 0;
  std::size_t nsamples = 1;
  std::vector<double> params;

  auto add_data_flags = [&](CLI::App* cmd) {
    cmd->add_option("--data", data_path, "input file")->required();
    cmd->add_flag("--raw", raw, "whitespace tokens, trailing + marks censoring");
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "table or json (default: table on a terminal)")
        ->check(CLI::IsMember({"table", "json"}));
  };

  CLI::App* fit = app.add_subcommand("fit", "maximum likelihood fit");
  fit->add_option("--dist", dist, "model id: eep, ewp, ge2p, egevp")->required();
  add_data_flags(fit);
  fit->add_option("--level", level, "CI level, default 0.95")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12));
  fit->add_option("--starts", starts, "multi-start count, 1..8")->check(CLI::Range(1, 8));
  add_format(fit);

  CLI::App* compare = app.add_subcommand("compare", "AIC/AICc model comparison");
  compare->add_option("--dist", dists, "comma-separated model ids (default all four)");
  add_data_flags(compare);
  add_format(compare);

  CLI::App* km = app.add_subcommand("km", "Kaplan-Meier curve export");
  add_data_flags(km);
  km->add_option("--overlay", overlay, "model id whose fitted survival is co-emitted");
  add_format(km);

  CLI::App* sim = app.add_subcommand("simulate", "run a simulation scenario file");
  sim->add_option("scenario", scenario_path, "scenario file")->required();
  CLI::Option* sim_seed = sim->add_option("--seed", seed, "override the scenario seed");
  add_format(sim);

  CLI::App* quant = app.add_subcommand("quantile", "evaluate the quantile function");
  quant->add_option("--dist", dist, "model id")->required();
  quant->add_option("p", p, "probability in (0,1)")->required();
  quant->add_option("params", params, "model parameters, lambda first")
      ->required()
      ->expected(-1);
  add_format(quant);

  CLI::App* sample = app.add_subcommand("sample", "draw random variates");
  sample->add_option("--dist", dist, "model id")->required();
  sample->add_option("n", nsamples, "sample count")->required()->check(CLI::PositiveNumber);
  sample->add_option("params", params, "model parameters, lambda first")
      ->required()
      ->expected(-1);
  sample->add_option("--seed", seed, "RNG seed")->required();
  add_format(sample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }

  try {
    if (*fit) return cmd_fit(dist, data_path, raw, level, starts, format);
    if (*compare) return cmd_compare(dists, data_path, raw, format);
    if (*km) return cmd_km(data_path, raw, overlay, format);
    if (*sim) return cmd_simulate(scenario_path, seed, sim_seed->count() > 0, format);
    if (*quant) return cmd_quantile(dist, p, params, format);
    if (*sample) return cmd_sample(dist, nsamples, seed, params, format);
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
