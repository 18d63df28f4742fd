#include <algorithm>

#include "lochardy/maximal.hpp"
#include "pairing.hpp"

namespace lochardy::detail {

namespace {

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : t_(n + 1, 0.0) {
    while (top_ * 2 <= n) top_ *= 2;
  }
  void add(std::size_t i, double v) {
    for (++i; i < t_.size(); i += i & (~i + 1)) t_[i] += v;
  }
  double prefix(std::size_t k) const {  // sum over [0, k)
    double s = 0.0;
    for (; k > 0; k -= k & (~k + 1)) s += t_[k];
    return s;
  }
  // Smallest k with prefix(k + 1) >= target.
  std::size_t first_reaching(double target) const {
    std::size_t pos = 0;
    double rem = target;
    for (std::size_t step = top_; step > 0; step /= 2) {
      if (pos + step < t_.size() && t_[pos + step] < rem) {
        pos += step;
        rem -= t_[pos];
      }
    }
    return std::min(pos, t_.size() - 2);
  }

 private:
  std::vector<double> t_;
  std::size_t top_ = 1;
};

double conj(double p) { return conjugate_exponent(p); }

// Standard inf-atom attaining (1/mu(B)) sum |g - c| mu on the first len
// points of the order of c: +-1/mu(B) off the median, balanced on ties.
Atom median_atom(const Space& space, const FnOnSpace& g, Index c, const BallPrefix& bp, double med, double unit) {
  const auto ord = space.order(c);
  Ball b = ball(space, c, bp.radius);
  double above = 0.0, below = 0.0, tie = 0.0;
  for (std::size_t k = 0; k < bp.len; ++k) {
    const Index x = ord[k];
    if (g[x] > med) above += space.mass(x);
    else if (g[x] < med) below += space.mass(x);
    else tie += space.mass(x);
  }
  FnOnSpace a(space.size());
  const double h = 1.0 / b.measure;
  for (std::size_t k = 0; k < bp.len; ++k) {
    const Index x = ord[k];
    if (g[x] > med) a[x] = h;
    else if (g[x] < med) a[x] = -h;
    else a[x] = tie > 0.0 ? -h * (above - below) / tie : 0.0;
  }
  return Atom{std::move(a), std::move(b), kInf, unit, AtomKind::standard};
}

Atom power_atom(const Space& space, const FnOnSpace& g, Ball b, double c, double p, double unit, AtomKind kind) {
  const double q = conj(p);
  FnOnSpace a(space.size());
  for (Index x : b.members) {
    const double d = g[x] - c;
    a[x] = (d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0)) * std::pow(std::fabs(d), q - 1.0);
  }
  if (kind == AtomKind::standard) {
    double mean = 0.0;
    for (Index x : b.members) mean += a[x] * space.mass(x);
    mean /= b.measure;
    for (Index x : b.members) a[x] -= mean;
  }
  const double norm = lp_norm(space, a, p);
  if (norm > 0.0) a *= std::pow(b.measure, -inv_conjugate(p)) / norm;
  return Atom{std::move(a), std::move(b), p, unit, kind};
}

void standard_inf(const Space& space, const FnOnSpace& g, double unit, double threshold, std::vector<Candidate>& out,
                  Candidate& best) {
  const std::size_t n = space.size();
  std::vector<double> vals(g.values().begin(), g.values().end());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::vector<std::size_t> rank(n);
  for (Index x = 0; x < n; ++x) {
    rank[x] = static_cast<std::size_t>(std::lower_bound(vals.begin(), vals.end(), g[x]) - vals.begin());
  }
  const std::size_t K = vals.size();
  for (Index c = 0; c < n; ++c) {
    Fenwick fw(K), fs(K);
    std::vector<double> wr(K, 0.0);
    const auto ord = space.order(c);
    const auto pm = space.prefix_mass(c);
    double W = 0.0, S = 0.0;
    std::size_t k = 0;
    double cbest = -1.0, cmed = 0.0;
    const BallPrefix* cbp = nullptr;
    for (const BallPrefix& bp : space.balls(c)) {
      if (bp.radius > unit + kTol) break;
      for (; k < bp.len; ++k) {
        const Index x = ord[k];
        const double w = space.mass(x);
        fw.add(rank[x], w);
        fs.add(rank[x], w * g[x]);
        wr[rank[x]] += w;
        W += w;
        S += w * g[x];
      }
      if (bp.len < 2) continue;
      const std::size_t r = fw.first_reaching(0.5 * W);
      const double med = vals[r];
      const double wb = fw.prefix(r), sb = fs.prefix(r);
      const double wt = wr[r];
      const double wa = W - wb - wt;
      const double sa = S - sb - wt * med;
      const double dev = std::max(0.0, (med * wb - sb) + (sa - med * wa));
      const double value = dev / pm[bp.len];
      if (value > cbest) {
        cbest = value;
        cmed = med;
        cbp = &bp;
      }
    }
    if (cbp == nullptr) continue;
    if (cbest > threshold || cbest > best.value) {
      Candidate cand{cbest, median_atom(space, g, c, *cbp, cmed, unit)};
      if (cbest > best.value) best = cand;
      if (cbest > threshold) out.push_back(std::move(cand));
    }
  }
}

void standard_finite(const Space& space, const FnOnSpace& g, double p, double unit, double threshold,
                     std::vector<Candidate>& out, Candidate& best) {
  const double q = conj(p);
  for (Index c = 0; c < space.size(); ++c) {
    const auto ord = space.order(c);
    const auto w = space.sorted_mass(c);
    const auto pm = space.prefix_mass(c);
    std::vector<double> v;
    for (Index x : ord) v.push_back(g[x]);
    double cbest = -1.0, cconst = 0.0;
    const BallPrefix* cbp = nullptr;
    for (const BallPrefix& bp : space.balls(c)) {
      if (bp.radius > unit + kTol) break;
      if (bp.len < 2) continue;
      const BestConstant bc = best_constant({v.data(), bp.len}, w.first(bp.len), q);
      const double value = std::pow(bc.value / pm[bp.len], 1.0 / q);
      if (value > cbest) {
        cbest = value;
        cconst = bc.c;
        cbp = &bp;
      }
    }
    if (cbp == nullptr) continue;
    if (cbest > threshold || cbest > best.value) {
      Candidate cand{cbest, power_atom(space, g, ball(space, c, cbp->radius), cconst, p, unit, AtomKind::standard)};
      if (cbest > best.value) best = cand;
      if (cbest > threshold) out.push_back(std::move(cand));
    }
  }
}

void global_atoms(const Space& space, const FnOnSpace& g, double p, double unit, double threshold,
                  std::vector<Candidate>& out, Candidate& best) {
  const double q = conj(p);
  for (Index x = 0; x < space.size(); ++x) {
    Ball b = ball(space, x, unit);
    double s = 0.0;
    for (Index y : b.members) s += space.mass(y) * (q == 1.0 ? std::fabs(g[y]) : std::pow(std::fabs(g[y]), q));
    const double value = q == 1.0 ? s / b.measure : std::pow(s / b.measure, 1.0 / q);
    if (!(value > threshold || value > best.value)) continue;
    Candidate cand;
    cand.value = value;
    if (std::isinf(p)) {
      FnOnSpace a(space.size());
      for (Index y : b.members) a[y] = (g[y] > 0.0 ? 1.0 : (g[y] < 0.0 ? -1.0 : 0.0)) / b.measure;
      cand.atom = Atom{std::move(a), std::move(b), p, unit, AtomKind::global};
    } else {
      cand.atom = power_atom(space, g, std::move(b), 0.0, p, unit, AtomKind::global);
    }
    if (value > best.value) best = cand;
    if (value > threshold) out.push_back(std::move(cand));
  }
}

}  // namespace

Candidate pairing_candidates(const Space& space, const FnOnSpace& g, double p, double threshold,
                             std::vector<Candidate>* out) {
  if (g.size() != space.size()) throw Error("atom pairing: size mismatch");
  if (!(p > 1.0)) throw Error("atom pairing: p must lie in (1, inf]");
  const double unit = space.scale_unit();
  std::vector<Candidate> local;
  std::vector<Candidate>& sink = out != nullptr ? *out : local;
  Candidate best;
  best.value = -1.0;
  if (std::isinf(p)) {
    standard_inf(space, g, unit, threshold, sink, best);
  } else {
    standard_finite(space, g, p, unit, threshold, sink, best);
  }
  global_atoms(space, g, p, unit, threshold, sink, best);
  best.value = std::max(best.value, 0.0);
  return best;
}

}  // namespace lochardy::detail
