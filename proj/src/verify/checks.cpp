#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "checks.hpp"
#include "lochardy/dyadic.hpp"
#include "lochardy/generators.hpp"
#include "lochardy/maximal.hpp"
#include "lochardy/norms.hpp"
#include "lochardy/sampling.hpp"
#include "lochardy/space_io.hpp"

namespace lochardy {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string p_name(double p) { return std::isinf(p) ? "inf" : fmt(p); }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

double l1_on(const Space& s, const FnOnSpace& f, const PointSet& on) { return lp_norm_on(s, f, 1.0, on); }

double pow_norm_on(const Space& s, const CubeFunction& cf, double p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < cf.points.size(); ++i) acc += std::pow(std::fabs(cf.values[i]), p) * s.mass(cf.points[i]);
  return acc;
}

// Ball-averaging operator at unit scale.
FnOnSpace average_operator(const Space& s, const FnOnSpace& f) {
  FnOnSpace out(s.size());
  for (Index x = 0; x < s.size(); ++x) {
    const Ball b = ball(s, x, s.scale_unit());
    double acc = 0.0;
    for (Index y : b.members) acc += f[y] * s.mass(y);
    out[x] = acc / b.measure;
  }
  return out;
}

double average_operator_norm(const Space& s) {
  std::vector<double> col(s.size(), 0.0);
  for (Index x = 0; x < s.size(); ++x) {
    const Ball b = ball(s, x, s.scale_unit());
    for (Index y : b.members) col[y] += s.mass(x) / b.measure;
  }
  return *std::max_element(col.begin(), col.end());
}

std::vector<CubeRef> cubes_where(const CubeSystem& sys, const std::function<bool(const Cube&, int)>& keep) {
  std::vector<CubeRef> out;
  for (int k = sys.k_min(); k <= sys.k_max(); ++k) {
    const auto& lv = sys.level(k);
    for (std::size_t i = 0; i < lv.size(); ++i) {
      if (keep(lv[i], k)) out.push_back({k, i});
    }
  }
  return out;
}

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

// ---------------------------------------------------------------- checks

void check_covering(TrialContext& t) {
  const Space& s = t.space;
  for (double cf : {0.5, 1.0}) {
    const double c = cf * s.scale_unit();
    const Net net = build_net(s, c / 2.0);
    const CoveringReport cov = covering_multiplicity(s, net, c);
    t.exact("point multiplicity c=" + fmt(c), static_cast<double>(cov.max_mult), cov.bound, cov.bound);
    for (double bf : {1.5, 3.0}) {
      const BallCountReport bc = covering_ball_count(s, net, c, bf * c);
      t.exact("ball count c=" + fmt(c) + " b=" + fmt(bf * c), static_cast<double>(bc.max_count), bc.bound, bc.bound);
    }
  }
}

void check_cube_axioms(TrialContext& t) {
  const CubeSystem& sys = t.cubes();
  for (const AxiomRow& r : verify_cube_axioms(t.space, sys).rows) {
    t.exact(r.axiom + (r.witness.empty() ? "" : " at " + r.witness), r.holds ? 0.0 : 1.0, 0.0);
  }
}

void check_cube_ball(TrialContext& t) {
  const CubeSystem& sys = t.cubes();
  const auto all = cubes_where(sys, [](const Cube&, int) { return true; });
  for (int i = 0; i < 10; ++i) {
    const CubeRef q = pick(all, t.rng);
    const Cube& cube = sys.cube(q);
    const Index c = pick(cube.members, t.rng);
    const double r = std::uniform_real_distribution<double>(0.0, 2.0 * sys.a1() * sys.scale(q.level))(t.rng);
    const CubeBallReport rep = cube_ball_bounds(t.space, sys, q, ball(t.space, c, r));
    std::ostringstream item;
    item << "k=" << q.level << " Q=" << q.index << " c=" << c << " r=" << fmt(r)
         << (rep.equality_branch ? " mu(Q)<=mu(B cap Q)" : " mu(B)/D<=mu(B cap Q)");
    t.exact(item.str(), rep.rhs, rep.lhs, rep.constant);
  }
}

void check_whitney(TrialContext& t) {
  const CubeSystem& sys = t.cubes();
  const auto big = cubes_where(sys, [](const Cube& c, int) { return c.members.size() >= 2; });
  if (big.empty()) return t.skip("no cube with two points");
  const CubeRef q = pick(big, t.rng);
  const Cube& cube = sys.cube(q);
  PointSet e;
  for (Index x : cube.members) {
    if (t.rng() % 2) e.push_back(x);
  }
  if (e.empty()) e.push_back(cube.members.front());
  if (e.size() == cube.members.size()) e.pop_back();
  const WhitneyCover cover = whitney_cover(t.space, cube, e);
  const WhitneyCheck chk = verify_whitney(t.space, cube, cover);
  const std::string tag = "k=" + std::to_string(q.level) + " Q=" + std::to_string(q.index) + " ";
  t.exact(tag + "union equals E", chk.union_ok ? 0.0 : 1.0, 0.0);
  t.exact(tag + "3B meets Q minus E", chk.touches_complement ? 0.0 : 1.0, 0.0);
  t.recorded(tag + "multiplicity", static_cast<double>(chk.multiplicity), static_cast<double>(cover.balls.size()),
             static_cast<double>(chk.multiplicity));
}

void check_good_lambda(TrialContext& t) {
  const CubeSystem& sys = t.cubes();
  const auto big = cubes_where(sys, [](const Cube& c, int) { return c.members.size() >= 2; });
  if (big.empty()) return t.skip("no cube with two points");
  const CubeRef q = pick(big, t.rng);
  const FnOnSpace f = t.function(t.trial);
  const double beta = 3.0 * cube_doubling_bound(t.space, sys, 2.0, q.level);
  for (double gamma : {0.05, 0.1}) {
    const LevelSets ls = good_lambda_sets(t.space, sys, q, f, beta, gamma);
    const std::string tag = "k=" + std::to_string(q.level) + " Q=" + std::to_string(q.index) + " gamma=" + fmt(gamma);
    t.recorded(tag + " A", ls.a, std::isfinite(ls.a) ? ls.a : 0.0, ls.a);
    for (const GoodLambdaRow& r : ls.rows) {
      t.recorded(tag + " lambda=" + fmt(r.lambda), r.g_measure, ls.a * gamma / beta * r.e_lambda, ls.a);
    }
  }
}

void check_lp_l1_cube(TrialContext& t) {
  const CubeSystem& sys = t.cubes();
  const auto big = cubes_where(sys, [](const Cube& c, int) { return c.members.size() >= 2; });
  if (big.empty()) return t.skip("no cube with two points");
  const CubeRef q = pick(big, t.rng);
  const Cube& cube = sys.cube(q);
  std::vector<FnOnSpace> fam;
  for (std::size_t i = 0; i < t.cfg.functions_per_trial; ++i) fam.push_back(t.function(i));
  for (double p : t.cfg.p_values) {
    std::vector<std::pair<double, double>> sides;
    double c = 0.0;
    for (const FnOnSpace& f : fam) {
      const double lhs = std::pow(lp_norm_on(t.space, f, p, cube.members), p);
      const double rhs = pow_norm_on(t.space, cube_sharp(t.space, cube, f), p) +
                         std::pow(cube.measure, 1.0 - p) * std::pow(l1_on(t.space, f, cube.members), p);
      sides.emplace_back(lhs, rhs);
      if (rhs > 0.0) c = std::max(c, lhs / rhs);
    }
    for (std::size_t i = 0; i < sides.size(); ++i) {
      t.recorded("k=" + std::to_string(q.level) + " p=" + fmt(p) + " f=" + std::to_string(i), sides[i].first,
                 c * sides[i].second, c);
    }
  }
}

void check_n0_cube(TrialContext& t) {
  const CubeSystem& sys = t.cubes();
  const double unit = t.space.scale_unit();
  const auto small = cubes_where(sys, [&](const Cube& c, int) {
    return cube_radii(t.space, c).diameter <= unit + kTol;
  });
  if (small.empty()) return t.skip("no cube of diameter <= unit");
  const CubeRef q = pick(small, t.rng);
  const Cube& cube = sys.cube(q);
  const double sc = sys.scale(q.level);
  const double d = doubling_constant(t.space, (1.0 + sys.a1() * sc) / (sys.a0() * sc), sys.a0() * sc).value;
  for (std::size_t i = 0; i < t.cfg.functions_per_trial; ++i) {
    const FnOnSpace f = t.function(i);
    const FnOnSpace nf = n0(t.space, f);
    t.exact("k=" + std::to_string(q.level) + " Q=" + std::to_string(q.index) + " f=" + std::to_string(i),
            l1_on(t.space, f, cube.members), d * l1_on(t.space, nf, cube.members), d);
  }
}

void check_cube_sharp(TrialContext& t) {
  const CubeSystem& sys = t.cubes();
  const auto big = cubes_where(sys, [](const Cube& c, int) { return c.members.size() >= 2; });
  if (big.empty()) return t.skip("no cube with two points");
  const CubeRef q = pick(big, t.rng);
  const Cube& cube = sys.cube(q);
  // Balls meeting Q around a member sit inside the member's ball of radius diam Q.
  const double b = std::max(t.space.scale_unit(), cube_radii(t.space, cube).diameter);
  struct Worst {
    double cube_value = 0.0, sharp = 0.0;
  };
  std::vector<Worst> worst;
  double c = 0.0;
  for (std::size_t i = 0; i < t.cfg.functions_per_trial; ++i) {
    const FnOnSpace f = t.function(i);
    const CubeFunction fq = cube_sharp(t.space, cube, f);
    const FnOnSpace fs = sharp_maximal(t.space, f, b, 1.0);
    Worst w;
    double ratio = -1.0;
    for (std::size_t j = 0; j < fq.points.size(); ++j) {
      const double s = fs[fq.points[j]];
      const double r = s > 0.0 ? fq.values[j] / s : (fq.values[j] > kTol ? kInf : 0.0);
      if (r > ratio) {
        ratio = r;
        w = {fq.values[j], s};
      }
    }
    c = std::max(c, ratio);
    worst.push_back(w);
  }
  for (std::size_t i = 0; i < worst.size(); ++i) {
    t.recorded("k=" + std::to_string(q.level) + " b=" + fmt(b) + " f=" + std::to_string(i), worst[i].cube_value,
               c * worst[i].sharp, c);
  }
}

void check_n_theorem(TrialContext& t) {
  std::vector<FnOnSpace> fam;
  for (std::size_t i = 0; i < t.cfg.functions_per_trial; ++i) fam.push_back(t.function(i));
  std::vector<FnOnSpace> nf;
  for (const FnOnSpace& f : fam) nf.push_back(n_operator(t.space, f));
  for (double p : t.cfg.p_values) {
    double c = 0.0;
    std::vector<std::pair<double, double>> sides;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const double a = lp_norm(t.space, fam[i], p), b = lp_norm(t.space, nf[i], p);
      sides.emplace_back(a, b);
      if (b > 0.0) c = std::max(c, a / b);
    }
    for (std::size_t i = 0; i < sides.size(); ++i) {
      t.recorded("p=" + fmt(p) + " f=" + std::to_string(i), sides[i].first, c * sides[i].second, c);
    }
  }
}

void check_sandwich(TrialContext& t) {
  const FnOnSpace f = t.function(t.trial);
  const double unit = t.space.scale_unit();
  for (double q : t.cfg.q_values) {
    const FnOnSpace ss = s_sharp(t.space, f, q, unit);
    const FnOnSpace sh = sharp_maximal(t.space, f, unit, q);
    for (Index x = 0; x < t.space.size(); ++x) {
      // Row reads f^# <= 2 f^s; the lower half f^s <= f^# also gates `holds`.
      t.exact("q=" + fmt(q) + " x=" + std::to_string(x), sh[x], 2.0 * ss[x], 2.0,
              leq_tol(ss[x], sh[x], t.cfg.tolerance));
    }
  }
}

void check_abs_bmo(TrialContext& t) {
  const FnOnSpace f = t.function(t.trial);
  const double unit = t.space.scale_unit();
  for (double q : t.cfg.q_values) {
    const FnOnSpace a = n_operator_q(t.space, f.abs(), unit, q);
    const FnOnSpace b = n_operator_q(t.space, f, unit, q);
    for (Index x = 0; x < t.space.size(); ++x) {
      t.exact("q=" + fmt(q) + " x=" + std::to_string(x), a[x], 2.0 * b[x], 2.0);
    }
    t.exact("q=" + fmt(q) + " norm", bmo_norm(t.space, f.abs(), q, unit).norm,
            2.0 * bmo_norm(t.space, f, q, unit).norm, 2.0);
  }
}

void check_n_bound(TrialContext& t) {
  const FnOnSpace f = t.function(t.trial);
  const FnOnSpace nf = n_operator(t.space, f);
  const FnOnSpace mf = hl_maximal_local(t.space, f);
  for (Index x = 0; x < t.space.size(); ++x) t.exact("x=" + std::to_string(x), nf[x], 3.0 * mf[x], 3.0);
}

void check_cube_hl(TrialContext& t) {
  const CubeSystem& sys = t.cubes();
  const auto big = cubes_where(sys, [](const Cube& c, int) { return c.members.size() >= 2; });
  if (big.empty()) return t.skip("no cube with two points");
  const CubeRef q = pick(big, t.rng);
  const Cube& cube = sys.cube(q);
  const double c2k = cube_doubling_bound(t.space, sys, 2.0, q.level);
  const FnOnSpace f = t.function(t.trial);
  const CubeFunction m = cube_maximal(t.space, cube, f);
  const CubeFunction mc = cube_maximal_centred(t.space, cube, f);
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    t.exact("k=" + std::to_string(q.level) + " x=" + std::to_string(m.points[i]), m.values[i], c2k * mc.values[i],
            c2k);
  }
}

void check_duality(TrialContext& t) {
  const Space& s = t.space;
  const FnOnSpace f = t.function(t.trial);
  const H1Report rep = duality_sandwich(s, f);
  t.exact("L<=4U", rep.dual_value, 4.0 * rep.primal_upper, 4.0);
  t.exact("L<=U", rep.dual_value, rep.primal_upper, 1.0);
  t.recorded("dual bound<=L", rep.dual_lower, rep.dual_value, rep.ratio());

  FnOnSpace g = rep.gauge.g;
  g *= 1.0 / std::max(1.0, rep.gauge.max_pairing);
  for (int k = 0; k < 20; ++k) {
    const Atom a = sample_atom(s, s.scale_unit(), kInf, k % 2 ? AtomKind::standard : AtomKind::global, t.rng);
    double pair = 0.0;
    for (Index x = 0; x < s.size(); ++x) pair += a.values[x] * g[x] * s.mass(x);
    t.exact("pairing<=1 atom=" + std::to_string(k), std::fabs(pair), 1.0, 1.0);
  }

  const FnOnSpace h = sample_function(s, FnFamily::normal, t.rng);
  std::vector<double> ps{kInf};
  for (double p : t.cfg.p_values) {
    if (p > 1.0 && !std::isinf(p)) ps.push_back(p);
  }
  for (double p : ps) {
    const DualityCheck d = duality_constants(s, h, p);
    t.exact("p=" + p_name(p) + " rho<=4bmo", d.rho, 4.0 * d.bmo, 4.0);
    t.exact("p=" + p_name(p) + " bmo<=3rho", d.bmo, 3.0 * d.rho, 3.0);
  }
}

void check_ion_equiv(TrialContext& t) {
  const Space& s = t.space;
  const double unit = s.scale_unit();
  const double ps[] = {kInf, 2.0, 1.5, 4.0};
  const double alphas[] = {0.5, 1.0, 2.0};
  for (int k = 0; k < 4; ++k) {
    const double p = ps[k];
    const double alpha = alphas[t.rng() % 3];
    const Ion ion = sample_ion(s, unit, p, alpha, t.rng);
    const std::string tag = "ion=" + std::to_string(k) + " p=" + p_name(p) + " alpha=" + fmt(alpha);
    if (!validate_ion(s, ion).holds()) {
      t.skip(tag + " sampler produced no valid ion");
      continue;
    }
    const IonDecomposition dec = ion_to_atoms(s, ion, unit);
    t.exact(tag + " reconstruction", dec.decomposition.max_error(), 1e-9);
    std::size_t invalid = 0;
    for (const Term& term : dec.decomposition.terms) invalid += validate_atom(s, term.atom).holds() ? 0 : 1;
    t.exact(tag + " invalid pieces", static_cast<double>(invalid), 0.0);
    double worst = 0.0;
    for (const auto& [lam, bound] : dec.piece_checks) worst = std::max(worst, lam - bound);
    t.exact(tag + " piece bounds", worst, 0.0);
    const double sum = dec.decomposition.coefficient_sum();
    t.exact(tag + " coefficient sum", sum, dec.constant, dec.constant);
    if (std::isinf(p)) t.exact(tag + " gauge<=sum", h1_norm_dual(s, ion.values), sum, 1.0);
  }
}

void check_scale_equiv(TrialContext& t) {
  const Space& s = t.space;
  const double c = s.scale_unit(), b = 2.0 * s.scale_unit();
  const double ps[] = {kInf, 2.0, 1.5, 4.0};
  for (int k = 0; k < 4; ++k) {
    const double p = ps[k];
    const std::string tag = "atom=" + std::to_string(k) + " p=" + p_name(p);
    const Atom big = sample_atom(s, b, p, k % 2 ? AtomKind::standard : AtomKind::global, t.rng);
    const EconomicalResult eco = economical_decompose(s, big, c);
    t.exact(tag + " split reconstruction", eco.decomposition.max_error(), 1e-9);
    t.exact(tag + " split pieces invalid", eco.decomposition.atoms_valid(s) ? 0.0 : 1.0, 0.0);
    t.exact(tag + " split sum<=hoelder", eco.decomposition.coefficient_sum(), eco.hoelder_bound, eco.hoelder_bound);
    t.exact(tag + " hoelder<=instance", eco.hoelder_bound, eco.instance_bound, eco.instance_bound);
    t.recorded(tag + " sum vs doubling form", eco.decomposition.coefficient_sum(), eco.doubling_form,
               eco.doubling_form);

    const Atom small = sample_atom(s, c, p, k % 2 ? AtomKind::global : AtomKind::standard, t.rng);
    const RescaleResult rs = rescale_atom(s, small, b);
    FnOnSpace back = rs.atom.values;
    back *= rs.coefficient;
    double err = 0.0;
    for (Index x = 0; x < s.size(); ++x) err = std::max(err, std::fabs(back[x] - small.values[x]));
    t.exact(tag + " rescale reconstruction", err, 1e-9);
    t.exact(tag + " rescaled atom invalid", validate_atom(s, rs.atom).holds() ? 0.0 : 1.0, 0.0);
    t.exact(tag + " rescale coefficient", rs.coefficient, rs.bound, rs.bound);
  }
  const FnOnSpace f = t.function(t.trial);
  for (double q : t.cfg.q_values) {
    const double half = 0.5 * c;
    const double d = std::pow(doubling_constant(s, c / half, half).value, 1.0 / q);
    t.exact("bmo q=" + fmt(q) + " scale " + fmt(half) + " vs " + fmt(c), bmo_norm(s, f, q, half).norm,
            d * bmo_norm(s, f, q, c).norm, d);
  }
}

void check_operator_atoms(TrialContext& t) {
  const Space& s = t.space;
  const double unit = s.scale_unit();
  auto t_l1 = [&](const FnOnSpace& v) { return lp_norm(s, average_operator(s, v), 1.0); };
  double a_sup = 0.0;
  for (std::size_t k = 0; k < t.cfg.atoms_per_trial; ++k) {
    const Atom a = sample_atom(s, unit, kInf, k % 2 ? AtomKind::standard : AtomKind::global, t.rng);
    a_sup = std::max(a_sup, t_l1(a.values));
  }
  const double op = average_operator_norm(s);
  t.exact("A<=|T|", a_sup, op, op);
  if (a_sup <= 0.0) return;
  const FnOnSpace f = t.function(t.trial);
  const Decomposition dec = greedy_atomic_decomposition(s, f, kInf);
  double c = 1.0;
  for (const Term& term : dec.terms) c = std::max(c, t_l1(term.atom.values) / a_sup);
  const double u = dec.coefficient_sum();
  t.exact("|Tf|<=3CAU", t_l1(f), 3.0 * c * a_sup * u, c);
}

using CheckFn = void (*)(TrialContext&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r{
      {"covering", check_covering},         {"cube-axioms", check_cube_axioms},
      {"cube-ball", check_cube_ball},       {"whitney", check_whitney},
      {"good-lambda", check_good_lambda},   {"lp-l1-cube", check_lp_l1_cube},
      {"n0-cube", check_n0_cube},           {"cube-sharp", check_cube_sharp},
      {"n-theorem", check_n_theorem},       {"sandwich", check_sandwich},
      {"abs-bmo", check_abs_bmo},           {"duality", check_duality},
      {"ion-equiv", check_ion_equiv},       {"scale-equiv", check_scale_equiv},
      {"operator-atoms", check_operator_atoms}, {"n-bound", check_n_bound},
      {"cube-hl", check_cube_hl},
  };
  return r;
}

CheckFn find_check(const std::string& name) {
  for (const auto& [n, fn] : registry()) {
    if (n == name) return fn;
  }
  throw Error("unknown check '" + name + "'");
}

}  // namespace

// ---------------------------------------------------------------- context

TrialContext::TrialContext(const ExperimentConfig& c, const Space& s, std::string chk, std::string inst,
                           std::size_t tr)
    : cfg(c), space(s), check(std::move(chk)), instance(std::move(inst)), trial(tr) {
  const std::uint64_t base = mix_seed(cfg.seed, fnv1a(check));
  rng.seed(mix_seed(base, mix_seed(fnv1a(instance), trial)));
  fn_seed_ = mix_seed(cfg.seed ^ 0x5bd1e995ULL, mix_seed(fnv1a(instance), trial));
}

FnOnSpace TrialContext::function(std::size_t i) const {
  std::mt19937_64 r(mix_seed(fn_seed_, i));
  return sample_function(space, fn_family(i), r);
}

const CubeSystem& TrialContext::cubes() {
  if (!cubes_) cubes_ = std::make_unique<CubeSystem>(build_cubes(space, 0.5));
  return *cubes_;
}

void TrialContext::push(std::string item, double lhs, double rhs, double constant, RowKind kind, bool extra) {
  ReportRow r;
  r.check = check;
  r.instance = instance;
  r.trial = trial;
  r.item = std::move(item);
  r.lhs = lhs;
  r.rhs = rhs;
  r.constant = constant;
  r.kind = kind;
  r.holds = extra && leq_tol(lhs, rhs, cfg.tolerance);
  rows.push_back(std::move(r));
}

void TrialContext::exact(std::string item, double lhs, double rhs, double constant, bool extra) {
  push(std::move(item), lhs, rhs, constant, RowKind::exact, extra);
}

void TrialContext::recorded(std::string item, double lhs, double rhs, double constant) {
  push(std::move(item), lhs, rhs, constant, RowKind::recorded, true);
}

// ---------------------------------------------------------------- driver

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, fn] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

bool is_check_name(const std::string& name) {
  const auto& v = check_names();
  return std::find(v.begin(), v.end(), name) != v.end();
}

std::size_t Report::violations() const {
  return static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(), [](const ReportRow& r) { return r.kind == RowKind::exact && !r.holds; }));
}

Space experiment_space(const ExperimentConfig& cfg, std::size_t n, std::size_t trial) {
  Space s = cfg.family == "file" ? load_space_file(cfg.space_file)
                                 : generate_space(cfg.family, n, mix_seed(cfg.seed, mix_seed(n, trial)));
  if (cfg.random_masses) s = with_random_masses(s, mix_seed(cfg.seed ^ 0xa5a5a5a5ULL, mix_seed(n, trial)));
  return s;
}

std::string instance_name(const ExperimentConfig& cfg, std::size_t n) {
  if (cfg.family == "file") {
    const auto slash = cfg.space_file.find_last_of('/');
    return "file:" + (slash == std::string::npos ? cfg.space_file : cfg.space_file.substr(slash + 1));
  }
  return cfg.family + "-" + std::to_string(n) + (cfg.random_masses ? "-w" : "");
}

Report run_checks(const ExperimentConfig& cfg) {
  if (cfg.checks.empty()) throw Error("no checks selected");
  for (const auto& c : cfg.checks) find_check(c);
  if (cfg.family != "file" && cfg.sizes.empty()) throw Error("no sizes selected");
  for (std::size_t n : cfg.sizes) {
    if (n == 0) throw Error("space size must be at least 1");
  }

  struct Task {
    std::string check;
    std::size_t n;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  const std::vector<std::size_t> sizes = cfg.family == "file" ? std::vector<std::size_t>{0} : cfg.sizes;
  for (const auto& c : cfg.checks) {
    for (std::size_t n : sizes) {
      for (std::size_t tr = 0; tr < cfg.trials; ++tr) tasks.push_back({c, n, tr});
    }
  }
  if (cfg.family == "file") load_space_file(cfg.space_file);  // surface read errors before spawning workers

  std::vector<std::vector<ReportRow>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& task = tasks[i];
      const auto t0 = std::chrono::steady_clock::now();
      const Space space = experiment_space(cfg, task.n, task.trial);
      TrialContext ctx(cfg, space, task.check, instance_name(cfg, task.n), task.trial);
      try {
        find_check(task.check)(ctx);
      } catch (const std::exception& e) {
        ctx.exact(std::string("error: ") + e.what(), 1.0, 0.0);
      }
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      for (auto& r : ctx.rows) r.runtime_ms = ms;
      slots[i] = std::move(ctx.rows);
    }
  };
  std::size_t nthreads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min(nthreads, std::max<std::size_t>(1, tasks.size()));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Report rep;
  rep.config = cfg;
  for (auto& s : slots) {
    for (auto& r : s) rep.rows.push_back(std::move(r));
  }
  std::stable_sort(rep.rows.begin(), rep.rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.check, a.instance, a.trial) < std::tie(b.check, b.instance, b.trial);
  });
  return rep;
}

}  // namespace lochardy
