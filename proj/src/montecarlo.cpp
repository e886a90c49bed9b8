#include "epfamily/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "epfamily/data.hpp"
#include "epfamily/families.hpp"
#include "epfamily/rng.hpp"

namespace epfamily {

namespace {

constexpr std::uint64_t kPilotStream = std::numeric_limits<std::uint64_t>::max();

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::runtime_error("scenario: bad number '" + s + "' for " + key);
  }
}

std::uint64_t parse_u64(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::runtime_error("scenario: bad integer '" + s + "' for " + key);
  }
}

std::size_t thread_count(std::size_t jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t t = hw ? hw : 1;
  if (const char* env = std::getenv("EPFAMILY_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 1) t = v;
  }
  return std::max<std::size_t>(1, std::min(t, jobs));
}

struct RepOut {
  std::vector<double> err;
  std::vector<unsigned char> cover;
  std::size_t censored = 0;
  bool used = false;
};

}  // namespace

double calibrate_censoring(const Distribution& model, double target,
                           std::uint64_t seed, std::size_t pilot) {
  if (!(target > 0.0 && target < 1.0))
    throw std::invalid_argument("calibrate_censoring: target must be in (0, 1)");
  if (pilot == 0) throw std::invalid_argument("calibrate_censoring: empty pilot");

  Rng rng = Rng::stream(seed, kPilotStream);
  std::vector<double> t(pilot);
  for (double& v : t) v = model.quantile(rng.uniform());

  // expected censored share under C ~ U(0, c): E[min(T / c, 1)]
  auto frac = [&](double c) {
    double s = 0.0;
    for (double v : t) s += v >= c ? 1.0 : v / c;
    return s / static_cast<double>(pilot);
  };

  double hi = *std::max_element(t.begin(), t.end());
  if (!(hi > 0.0) || !std::isfinite(hi))
    throw std::runtime_error("calibrate_censoring: degenerate pilot sample");
  double lo = hi;
  while (frac(hi) > target) hi *= 2.0;
  while (frac(lo) < target && lo > 1e-300) lo *= 0.5;
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    if (frac(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

SimScenario parse_scenario(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("scenario: expected key = value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::runtime_error("scenario: empty key or value in '" + line + "'");
    if (!kv.emplace(key, val).second)
      throw std::runtime_error("scenario: duplicate key '" + key + "'");
  }

  for (const char* req : {"model", "params", "n", "censoring", "replications", "seed"})
    if (!kv.count(req)) throw std::runtime_error(std::string("scenario: missing key '") + req + "'");

  SimScenario sc;
  sc.model = kv["model"];
  const ModelFamily& fam = family(sc.model);  // throws on unknown id

  {
    std::string p = kv["params"];
    std::replace(p.begin(), p.end(), ',', ' ');
    std::istringstream ps(p);
    std::string tok;
    while (ps >> tok) sc.true_params.push_back(parse_double(tok, "params"));
  }
  if (sc.true_params.size() != fam.params().size())
    throw std::runtime_error("scenario: " + sc.model + " takes " +
                             std::to_string(fam.params().size()) + " params, got " +
                             std::to_string(sc.true_params.size()));

  sc.n = static_cast<std::size_t>(parse_u64(kv["n"], "n"));
  sc.replications = static_cast<std::size_t>(parse_u64(kv["replications"], "replications"));
  sc.seed = parse_u64(kv["seed"], "seed");
  sc.censor_fraction = parse_double(kv["censoring"], "censoring");
  if (sc.n < 1) throw std::runtime_error("scenario: n must be >= 1");
  if (sc.replications < 1) throw std::runtime_error("scenario: replications must be >= 1");
  if (!(sc.censor_fraction >= 0.0 && sc.censor_fraction < 1.0))
    throw std::runtime_error("scenario: censoring must be in [0, 1)");

  if (kv.count("starts")) {
    std::uint64_t s = parse_u64(kv["starts"], "starts");
    if (s < 1 || s > 8) throw std::runtime_error("scenario: starts must be in 1..8");
    sc.fit_config.starts = static_cast<int>(s);
  }
  if (kv.count("tolerance")) {
    sc.fit_config.tolerance = parse_double(kv["tolerance"], "tolerance");
    if (!(sc.fit_config.tolerance > 0.0))
      throw std::runtime_error("scenario: tolerance must be > 0");
  }
  if (kv.count("max_iterations")) {
    sc.fit_config.max_iterations = static_cast<int>(parse_u64(kv["max_iterations"], "max_iterations"));
    if (sc.fit_config.max_iterations < 1)
      throw std::runtime_error("scenario: max_iterations must be >= 1");
  }
  if (kv.count("fit")) {
    const std::string& f = kv["fit"];
    if (f == "none")
      sc.fit_none = true;
    else if (f != "mle")
      throw std::runtime_error("scenario: fit must be 'mle' or 'none'");
  }
  return sc;
}

SimScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_scenario(ss.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

SimSummary run_scenario(const SimScenario& sc) {
  const ModelFamily& fam = family(sc.model);
  DistributionPtr model = fam.build(sc.true_params);
  const std::size_t k = fam.params().size();
  const std::size_t reps = sc.replications;

  double bound = 0.0;
  if (sc.censor_fraction > 0.0)
    bound = calibrate_censoring(*model, sc.censor_fraction, sc.seed);

  std::vector<RepOut> out(reps);
  auto run_rep = [&](std::size_t j) {
    Rng rng = Rng::stream(sc.seed, j);
    CensoredSample data;
    data.records.reserve(sc.n);
    std::size_t censored = 0;
    for (std::size_t i = 0; i < sc.n; ++i) {
      double t = model->quantile(rng.uniform());
      bool event = true;
      if (bound > 0.0) {
        double c = bound * rng.uniform();
        if (c < t) {
          t = c;
          event = false;
        }
      }
      censored += event ? 0u : 1u;
      data.records.push_back({t, event});
    }

    RepOut r;
    r.censored = censored;
    r.err.assign(k, 0.0);
    r.cover.assign(k, 1);
    if (sc.fit_none) {
      r.used = true;
    } else {
      try {
        FitResult fr = fit_mle(fam, data, sc.fit_config);
        if (fr.converged && fr.identifiable) {
          r.used = true;
          for (std::size_t p = 0; p < k; ++p) {
            r.err[p] = fr.estimates[p] - sc.true_params[p];
            r.cover[p] = fr.ci[p].first <= sc.true_params[p] &&
                                 sc.true_params[p] <= fr.ci[p].second
                             ? 1
                             : 0;
          }
        }
      } catch (const std::exception&) {
        // dropped, counted below
      }
    }
    out[j] = std::move(r);
  };

  const std::size_t nthreads = thread_count(reps);
  if (nthreads == 1) {
    for (std::size_t j = 0; j < reps; ++j) run_rep(j);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t tid = 0; tid < nthreads; ++tid)
      pool.emplace_back([&, tid] {
        for (std::size_t j = tid; j < reps; j += nthreads) run_rep(j);
      });
    for (std::thread& th : pool) th.join();
  }

  // reduce in replication order so the result does not depend on thread count
  SimSummary s;
  s.param_names.reserve(k);
  for (const ParamSpec& p : fam.params()) s.param_names.push_back(p.name);
  s.true_params = sc.true_params;
  s.bias.assign(k, 0.0);
  s.mse.assign(k, 0.0);
  s.coverage.assign(k, 0.0);
  s.replications = reps;
  s.censor_bound = bound;

  std::size_t censored_total = 0;
  for (std::size_t j = 0; j < reps; ++j) {
    censored_total += out[j].censored;
    if (!out[j].used) continue;
    ++s.n_used;
    for (std::size_t p = 0; p < k; ++p) {
      s.bias[p] += out[j].err[p];
      s.mse[p] += out[j].err[p] * out[j].err[p];
      s.coverage[p] += out[j].cover[p];
    }
  }
  s.n_dropped = reps - s.n_used;
  s.realized_censoring =
      static_cast<double>(censored_total) / (static_cast<double>(reps) * static_cast<double>(sc.n));
  if (s.n_used > 0) {
    for (std::size_t p = 0; p < k; ++p) {
      s.bias[p] /= static_cast<double>(s.n_used);
      s.mse[p] /= static_cast<double>(s.n_used);
      s.coverage[p] /= static_cast<double>(s.n_used);
    }
  }
  s.unreliable = s.n_dropped * 5 > reps;
  return s;
}

}  // namespace epfamily
