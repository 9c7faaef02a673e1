// Acceptance run: prints one PASS/FAIL line per criterion, exits non-zero if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "mrpower/mrpower.hpp"
#include "oracles.hpp"

using namespace mrpower;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.ok) {
    o.ok = false;
    o.detail = what;
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

int failures = 0;

void criterion(int id, const std::string& title, double time_limit_s,
               const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit_s > 0.0 && secs >= time_limit_s) {
    require(o, false, "runtime " + fmt(secs) + " s over the " + fmt(time_limit_s) + " s limit");
  }
  if (!o.ok) ++failures;
  std::printf("[%s] %2d %-44s %7.2fs  %s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
              o.detail.c_str());
  std::fflush(stdout);
}

Outcome from_suite(std::string_view suite, std::size_t dim, std::size_t trials, double tolerance) {
  SuiteConfig cfg;
  cfg.dim = dim;
  cfg.trials = trials;
  cfg.seed = 42;
  cfg.tolerance = tolerance;
  const auto r = run_suite(suite, cfg);
  Outcome o;
  require(o, r.passed,
          std::string(suite) + " d=" + std::to_string(dim) + ": max_violation " +
              fmt(r.max_violation) + ", failures " + std::to_string(r.failures.size()) +
              (r.failures.empty() ? "" : " (" + r.failures.front().detail + ")"));
  if (o.ok) {
    o.detail = std::string(suite) + " d=" + std::to_string(dim) + " max " + fmt(r.max_violation) + "; ";
  }
  return o;
}

void merge(Outcome& into, const Outcome& o) {
  if (!o.ok) require(into, false, o.detail);
  else into.detail += o.detail;
}

std::string strip_wall_time(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream kept;
  for (std::string line; std::getline(in, line);) {
    if (line.find("\"wall_time_ms\"") == std::string::npos) kept << line << '\n';
  }
  return kept.str();
}

}  // namespace

int main() {
  const auto examples = paper_examples();

  criterion(1, "example channel values", 1.0, [&] {
    Outcome o;
    const auto& g = examples.at("g");
    const auto& prep = examples.at("prep");
    const double cg = measurement_cohering_power(g), cgg = state_cohering_power(g);
    const double cp = measurement_cohering_power(prep), cgp = state_cohering_power(prep);
    require(o, std::abs(cg - 1.0) <= 1e-9, "C(G) = " + fmt(cg));
    require(o, std::abs(cgg) <= 1e-9, "C_g(G) = " + fmt(cgg));
    require(o, std::abs(cp) <= 1e-9, "C(prep) = " + fmt(cp));
    require(o, std::abs(cgp - 1.0) <= 1e-9, "C_g(prep) = " + fmt(cgp));
    if (o.ok) o.detail = "C(G)=1 C_g(G)=0 C(prep)=0 C_g(prep)=1";
    return o;
  });

  criterion(2, "conversion certificate gap", 30.0, [&] {
    Outcome o;
    SeededRng rng(2024);
    double worst = 0.0;
    for (std::size_t d : {2u, 3u}) {
      for (int t = 0; t < 200; ++t) {
        const auto u = unitary_channel(haar_unitary(d, rng));
        const auto e = random_channel(d, rng.uniform_int(2, d * d), ChannelKind::General, rng);
        for (const auto* ch : {&u, &e}) {
          const auto cert = conversion_ent_lower_bound(*ch);
          worst = std::max(worst, cert.gap);
          require(o, cert.gap <= 1e-9, "gap " + fmt(cert.gap) + " at d=" + std::to_string(d));
        }
      }
    }
    if (o.ok) o.detail = "800 channels, max gap " + fmt(worst);
    return o;
  });

  criterion(3, "incoherent POVM structure", 0.0, [&] {
    Outcome o;
    SeededRng rng(3);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const std::size_t d = rng.uniform_int(1, 4);
      const std::size_t n = rng.uniform_int(2, 6);
      const auto m = random_povm(d, n, true, rng);
      const auto dec = decompose_incoherent(m);
      // rebuild M_x = sum_i p(x|i)|i><i| directly
      for (std::size_t x = 0; x < n; ++x) {
        Matrix rebuilt = Matrix::Zero(d, d);
        for (std::size_t i = 0; i < d; ++i) rebuilt(i, i) = dec.post(x, i);
        worst = std::max(worst, max_abs_diff(rebuilt, m[x].matrix()));
      }
      const auto& p = dec.post.entries();
      for (Eigen::Index i = 0; i < p.cols(); ++i) {
        require(o, std::abs(p.col(i).sum() - 1.0) <= 1e-10, "column sum off");
      }
      require(o, p.minCoeff() >= -1e-10, "negative probability " + fmt(p.minCoeff()));
    }
    require(o, worst <= 1e-10, "reconstruction error " + fmt(worst));
    if (o.ok) o.detail = "200 POVMs, max error " + fmt(worst);
    return o;
  });

  criterion(4, "closed form vs grid oracle (qubit)", 60.0, [&] {
    Outcome o;
    SeededRng rng(4);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const auto m = random_povm(2, 2, false, rng);
      const double diff =
          std::abs(measurement_coherence(m) - measurement_coherence_bruteforce(m, 1000));
      worst = std::max(worst, diff);
    }
    require(o, worst <= 5e-3, "max difference " + fmt(worst));
    if (o.ok) o.detail = "50 POVMs, max difference " + fmt(worst);
    return o;
  });

  criterion(5, "adjoint duality sandwich and identity", 0.0, [&] {
    Outcome o;
    SeededRng rng(5);
    double worst_identity = 0.0;
    for (std::size_t d : {2u, 3u}) {
      for (int t = 0; t < 200; ++t) {
        const auto e = random_channel(d, rng.uniform_int(1, d * d), ChannelKind::Unital, rng);
        const auto r = duality_check(e);
        const double dd = static_cast<double>(d);
        require(o, r.c_g / dd - 1e-8 <= r.c_adj && r.c_adj <= r.c_g + 1e-8,
                "sandwich broken: c_g " + fmt(r.c_g) + ", c_adj " + fmt(r.c_adj));
        // right-hand side from the channel outputs with the oracle entropy
        double avg = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
          const auto out = apply(e, HermitianOperator::basis_projector(d, i)).matrix();
          avg += oracle::entropy(oracle::dephase(out)) - oracle::entropy(out);
        }
        worst_identity = std::max(worst_identity, std::abs(r.c_adj - avg / dd));
      }
    }
    require(o, worst_identity <= 1e-10, "identity off by " + fmt(worst_identity));
    if (o.ok) o.detail = "400 channels, identity max " + fmt(worst_identity);
    return o;
  });

  criterion(6, "monotone axioms of C", 0.0, [&] {
    Outcome o;
    SeededRng rng(6);
    // faithfulness in both directions against the DIO membership test
    for (int t = 0; t < 50; ++t) {
      const std::size_t d = 2 + t % 2;
      const auto free = random_dio(d, t % 4 == 0, rng);
      const auto other = random_channel(d, rng.uniform_int(1, d * d), ChannelKind::General, rng);
      for (const auto* ch : {&free, &other}) {
        const bool dio = classify_channel(*ch).dio;
        const double c = measurement_cohering_power(*ch);
        require(o, dio == (c <= 1e-8),
                "faithfulness mismatch: dio " + std::string(dio ? "true" : "false") + ", C " + fmt(c));
      }
    }
    if (o.ok) o.detail = "faithfulness on 100 channels; ";
    merge(o, from_suite("power_monotone", 2, 100, 1e-8));
    merge(o, from_suite("power_convexity", 2, 20, 1e-8));
    return o;
  });

  criterion(7, "measurement relative entropy properties", 0.0, [&] {
    Outcome o;
    merge(o, from_suite("dm_properties", 2, 100, 1e-8));
    merge(o, from_suite("dm_properties", 3, 100, 1e-8));
    return o;
  });

  criterion(8, "composite entanglement bound proxy", 0.0, [&] {
    Outcome o;
    merge(o, from_suite("thm3_proxy", 2, 100, 1e-8));
    return o;
  });

  criterion(9, "measurement channel power equals C_m", 0.0, [&] {
    Outcome o;
    SeededRng rng(9);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const std::size_t d = rng.uniform_int(2, 4);
      const std::size_t n = rng.uniform_int(2, d);
      const auto m = random_povm(d, n, false, rng);
      std::vector<oracle::Matrix> elements;
      for (const auto& x : m.elements()) elements.push_back(x.matrix());
      const double diff = std::abs(measurement_cohering_power(square_measurement_channel(m)) -
                                   oracle::measurement_coherence(elements));
      worst = std::max(worst, diff);
    }
    require(o, worst <= 1e-9, "max difference " + fmt(worst));
    if (o.ok) o.detail = "100 POVMs, max difference " + fmt(worst);
    return o;
  });

  criterion(10, "deterministic verify reports", 0.0, [&] {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / "mrpower_acceptance";
    std::filesystem::create_directories(dir);
    const std::string a = (dir / "run_a.json").string();
    const std::string b = (dir / "run_b.json").string();
    std::ostringstream sink;
    const int ca = cli::run({"verify", "--suite", "all", "--seed", "42", "--out", a}, sink, sink);
    const int cb = cli::run({"verify", "--suite", "all", "--seed", "42", "--out", b}, sink, sink);
    require(o, ca == 0 && cb == 0, "verify exit codes " + std::to_string(ca) + ", " + std::to_string(cb));
    const std::string ra = strip_wall_time(a);
    require(o, !ra.empty(), "empty report");
    require(o, ra == strip_wall_time(b), "reports differ");
    std::filesystem::remove_all(dir);
    if (o.ok) o.detail = "two runs identical (" + std::to_string(ra.size()) + " bytes)";
    return o;
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
