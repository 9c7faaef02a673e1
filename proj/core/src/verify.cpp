#include "mrpower/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mrpower/generators.hpp"
#include "mrpower/powers.hpp"
#include "mrpower/resources.hpp"

namespace mrpower {

namespace {

struct TrialOutcome {
  double value = 0.0;
  double violation = 0.0;
  std::string failure;  ///< empty when the trial passed its discrete checks
};

struct TrialContext {
  SeededRng rng;
  std::size_t trial;
  std::size_t dim;
  double tolerance;
};

using TrialFn = std::function<TrialOutcome(TrialContext&)>;

struct SuiteSpec {
  double tolerance;
  std::string note;
  TrialFn trial;
};

double excess(double v) { return std::max(0.0, v); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

void flag(TrialOutcome& out, const std::string& detail) {
  if (!out.failure.empty()) out.failure += "; ";
  out.failure += detail;
}

QuantumChannel random_any_channel(std::size_t d, SeededRng& rng) {
  const auto kind = rng.uniform() < 0.5 ? ChannelKind::General : ChannelKind::Unital;
  return random_channel(d, rng.uniform_int(1, d * d), kind, rng);
}

QuantumChannel random_dio_any(std::size_t d, SeededRng& rng) {
  switch (rng.uniform_int(0, 2)) {
    case 0: return random_dio(d, false, rng);
    case 1: return random_dio(d, true, rng);
    default: return random_unital_dio_mixture(d, rng);
  }
}

QuantumChannel random_unital_dio_any(std::size_t d, SeededRng& rng) {
  return rng.uniform() < 0.5 ? random_dio(d, true, rng) : random_unital_dio_mixture(d, rng);
}

// --- D_m properties ---------------------------------------------------------

TrialOutcome dm_properties_trial(TrialContext& ctx) {
  const std::size_t d = ctx.dim;
  SeededRng& rng = ctx.rng;
  TrialOutcome out;
  const std::size_t n = rng.uniform_int(2, 3);
  const Povm m = random_povm(d, n, false, rng);
  const Povm nn = random_povm(d, n, false, rng);
  const double base = measurement_relative_entropy(m, nn);
  out.value = base;

  // (1) nonnegativity and faithfulness
  const double self = measurement_relative_entropy(m, m);
  out.violation = std::max({out.violation, excess(-base), std::abs(self)});
  if (base <= ctx.tolerance) flag(out, "faithfulness: D_m(M||N) = " + fmt(base) + " for M != N");

  // (2) data processing under a unital channel (pullback)
  const QuantumChannel unital = random_channel(d, rng.uniform_int(1, d * d), ChannelKind::Unital, rng);
  const double processed =
      measurement_relative_entropy(pullback_povm(unital, m), pullback_povm(unital, nn));
  out.violation = std::max(out.violation, excess(processed - base));

  // (3) unitary invariance
  const QuantumChannel u = unitary_channel(haar_unitary(d, rng));
  const double rotated = measurement_relative_entropy(pullback_povm(u, m), pullback_povm(u, nn));
  out.violation = std::max(out.violation, std::abs(rotated - base));

  // (4) classical post-processing
  const StochasticMatrix s = random_stochastic(rng.uniform_int(1, 3), n, rng);
  const double coarse =
      measurement_relative_entropy(classical_postprocess(m, s), classical_postprocess(nn, s));
  out.violation = std::max(out.violation, excess(coarse - base));

  // (5) tensor additivity
  const std::size_t db = rng.uniform_int(2, 3);
  const std::size_t nb = rng.uniform_int(2, 3);
  const Povm mb = random_povm(db, nb, false, rng);
  const Povm lb = random_povm(db, nb, false, rng);
  const double joint = measurement_relative_entropy(tensor_povm(m, mb), tensor_povm(nn, lb));
  const double split = base + measurement_relative_entropy(mb, lb);
  out.violation = std::max(out.violation, std::abs(joint - split));

  // (6) joint convexity
  const Povm k = random_povm(d, n, false, rng);
  const Povm l = random_povm(d, n, false, rng);
  const double p = rng.uniform();
  const double mixed = measurement_relative_entropy(mix_povm(p, m, k), mix_povm(p, nn, l));
  const double bound = p * base + (1.0 - p) * measurement_relative_entropy(k, l);
  out.violation = std::max(out.violation, excess(mixed - bound));
  return out;
}

// --- C_m faithfulness ---------------------------------------------------------

TrialOutcome cm_faithfulness_trial(TrialContext& ctx) {
  TrialOutcome out;
  const std::size_t n = ctx.rng.uniform_int(2, 4);
  const Povm inc = random_povm(ctx.dim, n, true, ctx.rng);
  const double c_inc = measurement_coherence(inc);
  out.violation = std::abs(c_inc);
  if (!is_incoherent_measurement(inc, 1e-8)) flag(out, "incoherent draw classified coherent");

  const Povm coh = random_povm(ctx.dim, n, false, ctx.rng);
  const double c_coh = measurement_coherence(coh);
  out.value = c_coh;
  out.violation = std::max(out.violation, excess(-c_coh));
  if (is_incoherent_measurement(coh, 1e-8)) flag(out, "coherent draw classified incoherent");
  if (c_coh <= ctx.tolerance) flag(out, "C_m = " + fmt(c_coh) + " for a coherent POVM");
  return out;
}

// --- C_m closed form vs grid oracle ----------------------------------------------

constexpr std::size_t kOracleGridSteps = 1000;

TrialOutcome cm_oracle_trial(TrialContext& ctx) {
  TrialOutcome out;
  const Povm m = random_povm(2, 2, false, ctx.rng);
  const double closed = measurement_coherence(m);
  const double oracle = measurement_coherence_bruteforce(m, kOracleGridSteps);
  out.value = closed;
  out.violation = std::abs(closed - oracle);
  // The grid minimum can only overestimate the true minimum.
  if (oracle < closed - 1e-9) flag(out, "grid minimum " + fmt(oracle) + " below closed form " + fmt(closed));
  return out;
}

// --- incoherent-measurement structure ------------------------------------------

TrialOutcome incoherent_structure_trial(TrialContext& ctx) {
  TrialOutcome out;
  const std::size_t n = ctx.rng.uniform_int(2, 6);
  const Povm m = random_povm(ctx.dim, n, true, ctx.rng);
  const IncoherentDecomposition dec = decompose_incoherent(m);
  double col_err = 0.0;
  for (std::size_t i = 0; i < dec.post.inputs(); ++i) {
    col_err = std::max(col_err,
                       std::abs(dec.post.entries().col(static_cast<Eigen::Index>(i)).sum() - 1.0));
  }
  out.value = dec.residual;
  out.violation = std::max(dec.residual, col_err);
  return out;
}

// --- C monotone axioms --------------------------------------------------------------

TrialOutcome power_monotone_trial(TrialContext& ctx) {
  const std::size_t d = ctx.dim;
  SeededRng& rng = ctx.rng;
  TrialOutcome out;

  const QuantumChannel e = random_any_channel(d, rng);
  const double c = measurement_cohering_power(e);
  out.value = c;
  out.violation = excess(-c);

  // monotonicity under DIO post- and unital DIO pre-processing
  const QuantumChannel k = random_dio_any(d, rng);
  const QuantumChannel l = random_unital_dio_any(d, rng);
  const double c_sandwich = measurement_cohering_power(compose(k, compose(e, l)));
  out.violation = std::max({out.violation, excess(c_sandwich - c), excess(-c_sandwich)});

  // faithfulness: DIO => C = 0
  const QuantumChannel free = random_dio_any(d, rng);
  const double c_free = measurement_cohering_power(free);
  out.violation = std::max(out.violation, std::abs(c_free));
  if (!classify_channel(free).dio) flag(out, "sampled DIO channel fails the DIO test");

  // faithfulness: C = 0 => DIO, checked on a Haar unitary (never DIO generically)
  const QuantumChannel u = unitary_channel(haar_unitary(d, rng));
  const bool u_dio = classify_channel(u).dio;
  const double c_u = measurement_cohering_power(u);
  if (u_dio != (c_u <= ctx.tolerance)) {
    flag(out, std::string("faithfulness mismatch: dio = ") + (u_dio ? "true" : "false") +
                  ", C = " + fmt(c_u));
  }

  // incoherent-basis permutations on both sides leave C unchanged
  const QuantumChannel p1 = unitary_channel(random_permutation(d, rng));
  const QuantumChannel p2 = unitary_channel(random_permutation(d, rng));
  const double c_perm = measurement_cohering_power(compose(p1, compose(e, p2)));
  if (std::abs(c_perm - c) > 1e-10) flag(out, "permutation invariance off by " + fmt(c_perm - c));
  return out;
}

TrialOutcome power_convexity_trial(TrialContext& ctx) {
  const std::size_t d = ctx.dim;
  TrialOutcome out;
  const QuantumChannel e = random_any_channel(d, ctx.rng);
  const QuantumChannel g = random_any_channel(d, ctx.rng);
  const double p = ctx.rng.uniform();
  const double c_mix = measurement_cohering_power(mix({{p, e}, {1.0 - p, g}}));
  const double bound = p * measurement_cohering_power(e) + (1.0 - p) * measurement_cohering_power(g);
  out.value = c_mix;
  out.violation = excess(c_mix - bound);
  return out;
}

// --- conversion equality ------------------------------------------------------------

TrialOutcome conversion_equality_trial(TrialContext& ctx) {
  const std::size_t d = ctx.dim;
  TrialOutcome out;
  // Even trials: Haar unitary channels. Odd trials: random channels of Kraus rank >= 2.
  const QuantumChannel e =
      ctx.trial % 2 == 0 ? unitary_channel(haar_unitary(d, ctx.rng))
                     : random_channel(d, ctx.rng.uniform_int(2, d * d), ChannelKind::General, ctx.rng);
  const ConversionCertificate cert = conversion_ent_lower_bound(e);
  out.value = cert.cohering_power;
  out.violation = cert.gap;
  return out;
}

// --- composite bound proxy ----------------------------------------------------------

TrialOutcome composite_bound_trial(TrialContext& ctx) {
  const std::size_t d = ctx.dim;
  const std::size_t dd = d * d;
  SeededRng& rng = ctx.rng;
  TrialOutcome out;

  const QuantumChannel e = random_any_channel(d, rng);
  QuantumChannel k = identity_channel(dd);
  switch (rng.uniform_int(0, 3)) {
    case 0: break;
    case 1: k = random_dio(dd, false, rng); break;
    case 2: k = random_dio(dd, true, rng); break;
    default: k = random_unital_dio_mixture(dd, rng); break;
  }
  QuantumChannel l = identity_channel(dd);
  switch (rng.uniform_int(0, 3)) {
    case 0: break;
    case 1: l = unitary_channel(cnot_matrix(d).adjoint()); break;
    case 2: l = random_dio(dd, true, rng); break;
    default: l = random_unital_dio_mixture(dd, rng); break;
  }
  const double proxy = composite_ent_lower_bound(e, k, l);
  const double c = measurement_cohering_power(e);
  out.value = proxy;
  out.violation = excess(proxy - c);
  return out;
}

// --- state/measurement duality for unital channels -----------------------------------

TrialOutcome duality_trial(TrialContext& ctx) {
  const std::size_t d = ctx.dim;
  TrialOutcome out;
  const QuantumChannel e = random_channel(d, ctx.rng.uniform_int(1, d * d), ChannelKind::Unital, ctx.rng);
  const DualityResult r = duality_check(e, ctx.tolerance);
  out.value = r.c_adj;
  const double lower = r.c_g / static_cast<double>(d);
  out.violation = std::max(excess(lower - r.c_adj), excess(r.c_adj - r.c_g));
  const double identity_err = std::abs(r.c_adj - r.c_r_average);
  if (identity_err > 1e-10) flag(out, "C(E^dag) vs averaged C_R differ by " + fmt(identity_err));
  return out;
}

// --- measurement channels ------------------------------------------------------------

TrialOutcome measurement_channel_trial(TrialContext& ctx) {
  TrialOutcome out;
  const std::size_t n = ctx.rng.uniform_int(2, ctx.dim);
  const Povm m = random_povm(ctx.dim, n, false, ctx.rng);
  const double cm = measurement_coherence(m);
  const double c = measurement_cohering_power(square_measurement_channel(m));
  out.value = cm;
  out.violation = std::abs(c - cm);
  return out;
}

const std::map<std::string_view, SuiteSpec>& registry() {
  static const std::map<std::string_view, SuiteSpec> suites = [] {
    std::map<std::string_view, SuiteSpec> s;
    s.emplace("dm_properties",
              SuiteSpec{1e-8, "six D_m properties on random POVMs", dm_properties_trial});
    s.emplace("cm_faithfulness",
              SuiteSpec{1e-8, "C_m vanishes exactly on incoherent POVMs", cm_faithfulness_trial});
    s.emplace("cm_oracle", SuiteSpec{5e-3, "closed form vs 1000x1000 grid oracle, qubit 2-outcome",
                                     cm_oracle_trial});
    s.emplace("structure_lemma",
              SuiteSpec{1e-10, "incoherent POVM = basis measurement + post-processing",
                        incoherent_structure_trial});
    s.emplace("power_monotone",
              SuiteSpec{1e-8,
                        "nonnegativity, faithfulness, DIO/unital-DIO monotonicity; unital DIO "
                        "drawn from a provably valid subfamily",
                        power_monotone_trial});
    s.emplace("power_convexity", SuiteSpec{1e-8, "convexity of C under channel mixing",
                                           power_convexity_trial});
    s.emplace("conversion_equality",
              SuiteSpec{1e-9, "C(E) = averaged E_R lower bound of the CNOT conversion channel",
                        conversion_equality_trial});
    s.emplace("thm3_proxy",
              SuiteSpec{1e-8,
                        "one-sided: E_R lower-bound proxy <= C(E); K, L from DIO subfamilies",
                        composite_bound_trial});
    s.emplace("duality", SuiteSpec{1e-8, "C_g/d <= C(E^dag) <= C_g for unital E", duality_trial});
    s.emplace("thm7_reduction",
              SuiteSpec{1e-9, "C(measurement channel) = C_m(POVM), outcomes <= dim",
                        measurement_channel_trial});
    return s;
  }();
  return suites;
}

template <typename Fn>
std::vector<TrialOutcome> parallel_trials(std::size_t trials, std::size_t threads, Fn&& fn) {
  std::vector<TrialOutcome> results(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
      try {
        results[t] = fn(t);
      } catch (const std::exception& e) {
        results[t].violation = std::numeric_limits<double>::infinity();
        results[t].failure = std::string("exception: ") + e.what();
      }
    }
  };
  const std::size_t n = std::min(threads, trials);
  if (n <= 1) {
    worker();
    return results;
  }
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return results;
}

nlohmann::ordered_json report_json(const VerificationReport& r) {
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& f : r.failures) failures.push_back({{"trial", f.trial}, {"detail", f.detail}});
  return nlohmann::ordered_json{
      {"suite", r.suite},
      {"dim", r.dim},
      {"trials", r.trials},
      {"master_seed", r.master_seed},
      {"tolerance", r.tolerance},
      {"max_violation", r.max_violation},
      {"failures", failures},
      {"passed", r.passed},
      {"wall_time_ms", r.wall_time_ms},
      {"note", r.note},
      {"values", r.values},
      {"violations", r.violations},
  };
}

}  // namespace

const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names = {
      "dm_properties",   "cm_faithfulness",     "cm_oracle",  "structure_lemma",
      "power_monotone",  "power_convexity",     "conversion_equality",
      "thm3_proxy",      "duality",             "thm7_reduction"};
  return names;
}

bool is_suite(std::string_view name) { return registry().count(name) != 0; }

double suite_tolerance(std::string_view name) {
  const auto it = registry().find(name);
  if (it == registry().end()) {
    throw Error(ErrorKind::PreconditionViolation, "unknown suite " + std::string(name));
  }
  return it->second.tolerance;
}

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MRPOWER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

VerificationReport run_suite(std::string_view name, const SuiteConfig& config) {
  const auto it = registry().find(name);
  if (it == registry().end()) {
    throw Error(ErrorKind::PreconditionViolation, "unknown suite " + std::string(name));
  }
  if (config.dim < 2) throw Error(ErrorKind::PreconditionViolation, "suites need dim >= 2");
  if (config.trials == 0) throw Error(ErrorKind::PreconditionViolation, "trials must be positive");
  if (name == "cm_oracle" && config.dim != 2) {
    throw Error(ErrorKind::UnsupportedScale, "cm_oracle runs at dim 2 only");
  }
  if (name == "conversion_equality" && config.dim > kDefaultConversionCap) {
    throw Error(ErrorKind::UnsupportedScale, "conversion_equality is capped at dim " +
                                                 std::to_string(kDefaultConversionCap));
  }
  const SuiteSpec& spec = it->second;
  const double tolerance = config.tolerance.value_or(spec.tolerance);
  const SeededRng master(config.seed);

  const auto start = std::chrono::steady_clock::now();
  const auto results = parallel_trials(config.trials, resolve_threads(config.threads), [&](std::size_t t) {
    TrialContext ctx{master.derive(t), t, config.dim, tolerance};
    return spec.trial(ctx);
  });
  const auto stop = std::chrono::steady_clock::now();

  VerificationReport r;
  r.suite = std::string(name);
  r.dim = config.dim;
  r.trials = config.trials;
  r.master_seed = config.seed;
  r.tolerance = tolerance;
  r.note = spec.note;
  r.values.reserve(results.size());
  r.violations.reserve(results.size());
  for (std::size_t t = 0; t < results.size(); ++t) {
    const TrialOutcome& o = results[t];
    const double v = std::isnan(o.violation) ? std::numeric_limits<double>::infinity() : o.violation;
    r.values.push_back(o.value);
    r.violations.push_back(v);
    r.max_violation = std::max(r.max_violation, v);
    if (!o.failure.empty()) r.failures.push_back({t, o.failure});
    else if (std::isnan(o.violation)) r.failures.push_back({t, "violation is NaN"});
  }
  r.passed = r.max_violation <= r.tolerance && r.failures.empty();
  r.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  return r;
}

std::string report_to_json(const VerificationReport& report) {
  return report_json(report).dump(2);
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump(2);
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "suite,dim,trial,value,violation,failed\n";
  char buf[64];
  for (const auto& r : reports) {
    std::vector<bool> failed(r.trials, false);
    for (const auto& f : r.failures) failed[f.trial] = true;
    for (std::size_t t = 0; t < r.values.size(); ++t) {
      os << r.suite << ',' << r.dim << ',' << t << ',';
      std::snprintf(buf, sizeof buf, "%.17g", r.values[t]);
      os << buf << ',';
      std::snprintf(buf, sizeof buf, "%.17g", r.violations[t]);
      os << buf << ',' << (failed[t] ? 1 : 0) << '\n';
    }
  }
  return os.str();
}

std::string report_summary_line(const VerificationReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-20s dim=%zu trials=%zu max_violation=%.3e tol=%.1e failures=%zu %s",
                r.suite.c_str(), r.dim, r.trials, r.max_violation, r.tolerance, r.failures.size(),
                r.passed ? "PASS" : "FAIL");
  return buf;
}

}  // namespace mrpower
