// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <random>
#include <string>

#include "lochardy/dyadic.hpp"
#include "lochardy/generators.hpp"
#include "lochardy/maximal.hpp"
#include "lochardy/norms.hpp"
#include "lochardy/sampling.hpp"
#include "lochardy/verify.hpp"
#include "lp_oracles.hpp"

using namespace lochardy;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// The 100 spaces shared by the covering and cube criteria: a third each of
// random-geometric, cycle and path instances, every other one reweighted.
std::vector<Space> hundred_spaces() {
  std::vector<Space> out;
  for (std::size_t i = 0; i < 100; ++i) {
    const std::size_t n = 5 + (i * 37) % 96;
    Space s = i % 3 == 0 ? random_geometric_space(n, 1000 + i) : i % 3 == 1 ? cycle_space(n) : path_space(n);
    if (i % 2) s = with_random_masses(s, 2000 + i);
    out.push_back(std::move(s));
  }
  return out;
}

struct Tally {
  std::size_t rows = 0, exact = 0, violations = 0;
  std::string first_violation;
  void add(const Report& rep) {
    for (const auto& r : rep.rows) {
      ++rows;
      if (r.kind != RowKind::exact) continue;
      ++exact;
      if (!r.holds) {
        if (violations++ == 0) {
          first_violation = r.check + " " + r.instance + " trial " + std::to_string(r.trial) + ": " + r.item;
        }
      }
    }
  }
  std::string summary() const {
    return fmt("%zu exact rows, %zu violations%s", exact, violations,
               violations ? (" (first: " + first_violation + ")").c_str() : "");
  }
};

Report run(std::vector<std::string> checks, const std::string& family, std::vector<std::size_t> sizes,
           std::size_t trials, std::uint64_t seed, bool masses = false) {
  ExperimentConfig c;
  c.checks = std::move(checks);
  c.family = family;
  c.sizes = std::move(sizes);
  c.trials = trials;
  c.seed = seed;
  c.random_masses = masses;
  return run_checks(c);
}

const std::vector<std::string> kFamilies{"cycle", "path", "random-geometric", "grid"};

// ---------------------------------------------------------------------------

Outcome covering_bounds() {
  std::size_t rows = 0, bad = 0;
  for (const Space& s : hundred_spaces()) {
    for (double c : {0.5, 1.0}) {
      const Net net = build_net(s, c / 2.0);
      const CoveringReport cov = covering_multiplicity(s, net, c);
      ++rows;
      bad += static_cast<double>(cov.max_mult) <= cov.bound ? 0 : 1;
      for (double b : {1.5 * c, 3.0 * c, 5.0 * c}) {
        const BallCountReport bc = covering_ball_count(s, net, c, b);
        ++rows;
        bad += static_cast<double>(bc.max_count) <= bc.bound ? 0 : 1;
      }
    }
  }
  return {bad == 0, fmt("100 spaces, %zu comparisons, %zu violations", rows, bad)};
}

Outcome cube_axioms() {
  std::mt19937_64 rng(42);
  std::size_t axiom_bad = 0, pairs = 0, pair_bad = 0;
  for (const Space& s : hundred_spaces()) {
    const CubeSystem sys = build_cubes(s, 0.5);
    axiom_bad += verify_cube_axioms(s, sys).all_hold() ? 0 : 1;
    std::vector<CubeRef> all;
    for (int k = sys.k_min(); k <= sys.k_max(); ++k) {
      for (std::size_t i = 0; i < sys.level(k).size(); ++i) all.push_back({k, i});
    }
    for (int j = 0; j < 10; ++j) {
      const CubeRef q = all[rng() % all.size()];
      const Cube& cube = sys.cube(q);
      const Index c = cube.members[rng() % cube.members.size()];
      const double r = std::uniform_real_distribution<double>(0.0, 2.0 * sys.a1() * sys.scale(q.level))(rng);
      const CubeBallReport rep = cube_ball_bounds(s, sys, q, ball(s, c, r));
      ++pairs;
      pair_bad += rep.holds && leq_tol(rep.rhs, rep.lhs) ? 0 : 1;
    }
  }
  return {axiom_bad == 0 && pair_bad == 0,
          fmt("axioms failed on %zu/100 spaces; cube-ball %zu/%zu pairs violated", axiom_bad, pair_bad, pairs)};
}

Outcome decomposition_exactness() {
  // scale-equiv and ion-equiv each draw four objects per trial.
  Tally t;
  std::size_t trials = 0;
  for (std::size_t i = 0; i < kFamilies.size(); ++i) {
    const std::size_t per = 250 / kFamilies.size() + (i < 250 % kFamilies.size() ? 1 : 0);
    t.add(run({"scale-equiv", "ion-equiv"}, kFamilies[i], {8, 24}, (per + 1) / 2, 300 + i, i % 2 == 1));
    trials += 2 * ((per + 1) / 2);
  }
  return {t.violations == 0 && trials * 4 >= 1000,
          fmt("%zu atoms split and rescaled, %zu ions; %s", trials * 4, trials * 4, t.summary().c_str())};
}

Outcome maximal_inequalities() {
  Tally t;
  ExperimentConfig c;
  c.checks = {"n-bound", "sandwich", "abs-bmo", "cube-hl"};
  c.q_values = {1.0, 2.0};
  c.trials = 125;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < kFamilies.size(); ++i) {
    c.family = kFamilies[i];
    c.sizes = {8, 25};
    c.seed = 400 + i;
    c.random_masses = i % 2 == 0;
    t.add(run_checks(c));
    pairs += c.sizes.size() * c.trials;
  }
  return {t.violations == 0, fmt("%zu (space, f) pairs per inequality; %s", pairs, t.summary().c_str())};
}

Outcome good_lambda() {
  std::size_t instances = 0, rows = 0, nontrivial = 0, bad = 0;
  double a_max = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < kFamilies.size(); ++i) {
    const Report rep = run({"good-lambda"}, kFamilies[i], {30}, i < 2 ? 13 : 12, 500 + i, i % 2 == 1);
    std::map<std::pair<std::size_t, std::string>, double> a_of;
    for (const auto& r : rep.rows) {
      const auto cut = r.item.find(" A");
      if (cut != std::string::npos && cut + 2 == r.item.size()) {
        a_of[{r.trial, r.item.substr(0, cut)}] = r.lhs;
        finite = finite && std::isfinite(r.lhs);
        a_max = std::max(a_max, r.lhs);
      }
    }
    std::set<std::size_t> trials;
    for (const auto& r : rep.rows) {
      trials.insert(r.trial);
      const auto cut = r.item.find(" lambda=");
      if (cut == std::string::npos) continue;
      const double a = a_of.at({r.trial, r.item.substr(0, cut)});
      ++rows;
      nontrivial += r.lhs > 0.0 ? 1 : 0;
      // rhs = A (gamma / beta) mu(E_lambda) with the recorded A
      bad += r.lhs <= r.rhs * (1 + 1e-12) + 1e-15 && std::isfinite(a) ? 0 : 1;
    }
    instances += trials.size();
  }
  return {finite && bad == 0 && instances >= 50,
          fmt("%zu instances, %zu lambda rows (%zu with nonempty good set), max A = %.4g, %zu failures", instances,
              rows, nontrivial, a_max, bad)};
}

Outcome n_theorem() {
  std::map<double, std::vector<double>> cs;
  for (std::uint64_t seed : {11, 22, 33, 44, 55}) {
    ExperimentConfig c;
    c.checks = {"n-theorem"};
    c.family = "cycle";
    c.sizes = {30};
    c.trials = 1;
    c.functions_per_trial = 500;
    c.seed = seed;
    for (const auto& r : run_checks(c).rows) {
      const double p = std::stod(r.item.substr(2, r.item.find(' ') - 2));
      if (r.item.ends_with(" f=0")) cs[p].push_back(r.constant);
    }
  }
  bool ok = cs.size() == 3;
  std::string detail;
  for (const auto& [p, v] : cs) {
    const double lo = *std::min_element(v.begin(), v.end()), hi = *std::max_element(v.begin(), v.end());
    double mean = 0.0;
    for (double x : v) mean += x / static_cast<double>(v.size());
    const bool stable = std::isfinite(hi) && hi <= 1.1 * mean && lo >= 0.9 * mean;
    ok = ok && stable && v.size() == 5;
    detail += fmt("p=%g C in [%.4f, %.4f]%s; ", p, lo, hi, stable ? "" : " UNSTABLE");
  }
  return {ok, detail + "cycle-30, 500 functions, 5 seeds"};
}

Outcome duality() {
  // Exact hull comparison on n <= 4.
  std::vector<Space> tiny{path_space(2), path_space(3), cycle_space(3), cycle_space(4), path_space(4),
                          grid_space(4)};
  for (std::uint64_t s = 0; s < 6; ++s) tiny.push_back(with_random_masses(random_geometric_space(3 + s % 2, s), s));
  std::mt19937_64 rng(77);
  double hull_err = 0.0;
  std::size_t hull_cases = 0;
  for (const Space& s : tiny) {
    for (int k = 0; k < 15; ++k) {
      const FnOnSpace f = sample_function(s, fn_family(k), rng);
      const double oracle = oracle::hull_gauge(s, std::vector<double>(f.values().begin(), f.values().end()), 1.0);
      hull_err = std::max(hull_err, std::isnan(oracle) ? kInf : std::fabs(h1_norm_dual(s, f) - oracle));
      ++hull_cases;
    }
  }

  // Sandwich and dual feasibility on n <= 50.
  std::size_t sandwich_bad = 0, pairs = 0, pair_bad = 0;
  double worst_pair = 0.0;
  for (std::size_t i = 0; i < 500; ++i) {
    const std::size_t n = 5 + (i * 13) % 46;
    Space s = generate_space(kFamilies[i % 4], n, 600 + i);
    if (i % 3 == 0) s = with_random_masses(s, 700 + i);
    const FnOnSpace f = sample_function(s, fn_family(i), rng);
    const H1Report rep = duality_sandwich(s, f);
    sandwich_bad += rep.sandwich_ok && leq_tol(rep.dual_value, 4.0 * rep.primal_upper) ? 0 : 1;
    FnOnSpace g = rep.gauge.g;
    g *= 1.0 / std::max(1.0, rep.gauge.max_pairing);
    for (int k = 0; k < 20; ++k) {
      const Atom a = sample_atom(s, s.scale_unit(), kInf, k % 2 ? AtomKind::global : AtomKind::standard, rng);
      double v = 0.0;
      for (Index x = 0; x < s.size(); ++x) v += a.values[x] * g[x] * s.mass(x);
      ++pairs;
      worst_pair = std::max(worst_pair, std::fabs(v));
      pair_bad += std::fabs(v) <= 1.0 + 1e-9 ? 0 : 1;
    }
  }
  return {hull_err <= 1e-6 && sandwich_bad == 0 && pair_bad == 0,
          fmt("hull gauge max error %.2e over %zu cases; L<=4U violated on %zu/500; %zu pairs, max |<a,g>| = "
              "%.12f",
              hull_err, hull_cases, sandwich_bad, pairs, worst_pair)};
}

Outcome operator_on_atoms() {
  ExperimentConfig c;
  c.checks = {"operator-atoms"};
  c.atoms_per_trial = 1000;
  Tally t;
  double a_max = 0.0;
  bool finite = true;
  std::size_t fs = 0;
  for (std::size_t i = 0; i < kFamilies.size(); ++i) {
    c.family = kFamilies[i];
    c.sizes = {20};
    c.trials = 25;
    c.seed = 800 + i;
    c.random_masses = i % 2 == 1;
    const Report rep = run_checks(c);
    t.add(rep);
    for (const auto& r : rep.rows) {
      if (r.item == "A<=|T|") {
        finite = finite && std::isfinite(r.lhs);
        a_max = std::max(a_max, r.lhs);
      } else {
        ++fs;
      }
    }
  }
  return {finite && fs == 100 && t.violations == 0,
          fmt("%zu functions, max A = %.4g; %s", fs, a_max, t.summary().c_str())};
}

Outcome determinism() {
  ExperimentConfig c;
  c.checks = check_names();
  c.family = "random-geometric";
  c.sizes = {7, 15};
  c.trials = 3;
  c.random_masses = true;
  c.functions_per_trial = 8;
  c.atoms_per_trial = 100;
  c.threads = 1;
  const std::string a = report_csv(run_checks(c));
  c.threads = 3;
  const std::string b = report_csv(run_checks(c));
  c.threads = 0;
  const std::string d = report_csv(run_checks(c));
  return {a == b && b == d, fmt("all checks, three runs with 1, 3 and all threads: %zu bytes each, %s", a.size(),
                                a == b && b == d ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"covering bounds", covering_bounds},
      {"cube axioms and cube-ball bounds", cube_axioms},
      {"decomposition exactness", decomposition_exactness},
      {"maximal-operator inequalities", maximal_inequalities},
      {"good-lambda", good_lambda},
      {"Lp controlled by N", n_theorem},
      {"duality and LP", duality},
      {"operator on atoms", operator_on_atoms},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.pass = o.pass && secs < 60.0;
    failures += o.pass ? 0 : 1;
    std::printf("criterion %zu %s: %s (%.1fs) %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
