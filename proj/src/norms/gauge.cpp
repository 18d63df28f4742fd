#include <algorithm>
#include <deque>
#include <random>
#include <sstream>

#include "lochardy/norms.hpp"
#include "pairing.hpp"

namespace lochardy {

namespace {

constexpr double kPriceTol = 1e-9;
constexpr std::size_t kRefactorEvery = 64;
constexpr std::size_t kStallLimit = 50;
constexpr double kLift = 1e-7;

struct Column {
  std::vector<double> v;  // a(x) mu(x)
  Atom atom;
  std::size_t serial = 0;
};

// Revised simplex on min sum y s.t. sum y_j v_j = f mu, y >= 0, with a dense
// basis inverse. All costs are one, so the duals are the column sums of the
// inverse.
class Master {
 public:
  Master(const Space& space, const FnOnSpace& f, double p) : space_(space), n_(space.size()), rhs_(n_) {
    for (Index x = 0; x < n_; ++x) rhs_[x] = f[x] * space.mass(x);
    true_rhs_ = rhs_;
    binv_.assign(n_ * n_, 0.0);
    xb_.assign(n_, 0.0);
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    for (Index x = 0; x < n_; ++x) {
      Ball b = ball(space, x, space.scale_unit());
      const double t = (f[x] < 0.0 ? -1.0 : 1.0) * std::pow(b.measure, -inv_conjugate(p)) *
                       std::pow(space.mass(x), -inv_p);
      FnOnSpace a(n_);
      a[x] = t;
      basis_.push_back(make_column(Atom{std::move(a), std::move(b), p, space.scale_unit(), AtomKind::global}));
      binv_[x * n_ + x] = 1.0 / basis_[x].v[x];
      xb_[x] = rhs_[x] * binv_[x * n_ + x];
    }
    // Zero values of f make the starting basis degenerate; lift every basic
    // variable by a small seeded amount until restore_rhs().
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> u(1.0, 2.0);
    double scale = 0.0;
    for (double v : xb_) scale = std::max(scale, std::fabs(v));
    for (Index x = 0; x < n_; ++x) {
      const double lift = kLift * scale * u(rng);
      xb_[x] += lift;
      rhs_[x] += lift * basis_[x].v[x];
    }
  }

  // Back to f mu. Basic variables that went negative switch to the negated
  // atom, so the basis stays primal feasible.
  // Returns the total re-signed mass.
  double restore_rhs() {
    rhs_ = true_rhs_;
    refactor();
    double negative = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (xb_[i] >= 0.0) continue;
      negative -= xb_[i];
      xb_[i] = -xb_[i];
      basis_[i].atom.values *= -1.0;
      for (double& v : basis_[i].v) v = -v;
      for (Index x = 0; x < n_; ++x) binv_[i * n_ + x] = -binv_[i * n_ + x];
    }
    return negative;
  }

  Column make_column(Atom atom) {
    Column c;
    c.v.resize(n_);
    for (Index x = 0; x < n_; ++x) c.v[x] = atom.values[x] * space_.mass(x);
    c.atom = std::move(atom);
    c.serial = next_serial_++;
    return c;
  }

  std::vector<double> duals() const {
    std::vector<double> pi(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      const double* row = &binv_[i * n_];
      for (Index x = 0; x < n_; ++x) pi[x] += row[x];
    }
    return pi;
  }

  static double reduced_cost(const Column& c, const std::vector<double>& pi) {
    double s = 0.0;
    for (std::size_t x = 0; x < pi.size(); ++x) s += c.v[x] * pi[x];
    return 1.0 - s;
  }

  void pivot(Column col, bool bland) {
    std::vector<double> w(n_, 0.0);
    double wmax = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double* row = &binv_[i * n_];
      double s = 0.0;
      for (Index x = 0; x < n_; ++x) s += row[x] * col.v[x];
      w[i] = s;
      wmax = std::max(wmax, std::fabs(s));
    }
    const double eps = 1e-9 * wmax;
    std::ptrdiff_t r = -1;
    double best = kInf;
    for (std::size_t i = 0; i < n_; ++i) {
      if (w[i] <= eps) continue;
      const double ratio = std::max(0.0, xb_[i]) / w[i];
      const double slack = 1e-12 * (1.0 + best);
      if (r < 0 || ratio < best - slack) {
        r = static_cast<std::ptrdiff_t>(i);
        best = ratio;
      } else if (ratio <= best + slack) {
        const auto rc = static_cast<std::size_t>(r);
        if (bland ? basis_[i].serial < basis_[rc].serial : w[i] > w[rc]) r = static_cast<std::ptrdiff_t>(i);
      }
    }
    if (r < 0) throw Error("h1 gauge: entering column has no blocking row");
    const auto rr = static_cast<std::size_t>(r);
    degenerate_ = best <= 1e-13;
    const double inv = 1.0 / w[rr];
    double* prow = &binv_[rr * n_];
    for (Index x = 0; x < n_; ++x) prow[x] *= inv;
    xb_[rr] *= inv;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == rr || w[i] == 0.0) continue;
      double* row = &binv_[i * n_];
      for (Index x = 0; x < n_; ++x) row[x] -= w[i] * prow[x];
      xb_[i] -= w[i] * xb_[rr];
    }
    basis_[rr] = std::move(col);
    if (++since_refactor_ >= kRefactorEvery) refactor();
  }

  void refactor() {
    since_refactor_ = 0;
    // Gauss-Jordan with partial pivoting on [B | I].
    std::vector<double> a(n_ * n_), inv(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (Index x = 0; x < n_; ++x) a[x * n_ + i] = basis_[i].v[x];
      inv[i * n_ + i] = 1.0;
    }
    for (std::size_t col = 0; col < n_; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < n_; ++r) {
        if (std::fabs(a[r * n_ + col]) > std::fabs(a[piv * n_ + col])) piv = r;
      }
      if (std::fabs(a[piv * n_ + col]) < 1e-300) throw Error("h1 gauge: singular basis during refactorisation");
      if (piv != col) {
        for (std::size_t j = 0; j < n_; ++j) {
          std::swap(a[piv * n_ + j], a[col * n_ + j]);
          std::swap(inv[piv * n_ + j], inv[col * n_ + j]);
        }
      }
      const double d = 1.0 / a[col * n_ + col];
      for (std::size_t j = 0; j < n_; ++j) {
        a[col * n_ + j] *= d;
        inv[col * n_ + j] *= d;
      }
      for (std::size_t r = 0; r < n_; ++r) {
        if (r == col) continue;
        const double m = a[r * n_ + col];
        if (m == 0.0) continue;
        for (std::size_t j = 0; j < n_; ++j) {
          a[r * n_ + j] -= m * a[col * n_ + j];
          inv[r * n_ + j] -= m * inv[col * n_ + j];
        }
      }
    }
    binv_ = std::move(inv);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (Index x = 0; x < n_; ++x) s += binv_[i * n_ + x] * rhs_[x];
      xb_[i] = s;
    }
  }

  bool last_degenerate() const { return degenerate_; }
  const std::vector<Column>& basis() const { return basis_; }
  const std::vector<double>& xb() const { return xb_; }
  std::size_t next_serial() const { return next_serial_; }

 private:
  const Space& space_;
  std::size_t n_;
  std::vector<double> rhs_;
  std::vector<double> true_rhs_;
  std::vector<double> binv_;  // row i: row of B^{-1} for basis slot i
  std::vector<double> xb_;
  std::vector<Column> basis_;
  std::size_t next_serial_ = 0;
  std::size_t since_refactor_ = 0;
  bool degenerate_ = false;
};

}  // namespace

GaugeResult h1_gauge(const Space& space, const FnOnSpace& f, double p) {
  if (f.size() != space.size()) throw Error("h1_gauge: size mismatch");
  if (!(p > 1.0)) throw Error("h1_gauge: p must lie in (1, inf]");
  const std::size_t n = space.size();
  GaugeResult res;
  res.p = p;
  res.g = FnOnSpace(n);
  res.decomposition.target = f;
  if (f.is_zero()) {
    res.converged = true;
    return res;
  }

  Master master(space, f, p);
  std::vector<double> pi = master.duals();

  // Column generation until no atom prices out or `limit` pivots.
  // Column generation until no atom prices out or `limit` pivots. Recent
  // columns stay in a bounded pool that is repriced before the next oracle
  // call; pool order is serial order, which Bland's rule uses.
  std::deque<Column> pool;
  const std::size_t pool_cap = 8 * n + 64;
  auto optimise = [&](std::size_t limit) {
    std::size_t stall = 0, made_here = 0;
    bool bland = false;
    while (true) {
      std::vector<detail::Candidate> cands;
      const detail::Candidate best =
          detail::pairing_candidates(space, FnOnSpace(pi), p, 1.0 + kPriceTol, &cands);
      res.max_pairing = best.value;
      if (best.value <= 1.0 + kPriceTol) return true;
      if (made_here > limit) return false;
      ++res.rounds;
      for (auto& c : cands) pool.push_back(master.make_column(std::move(c.atom)));
      while (pool.size() > pool_cap) pool.pop_front();
      std::size_t made = 0;
      while (made_here <= limit) {
        std::ptrdiff_t q = -1;
        double most = -kPriceTol;
        for (std::size_t j = 0; j < pool.size(); ++j) {
          const double rc = Master::reduced_cost(pool[j], pi);
          if (rc < most) {
            q = static_cast<std::ptrdiff_t>(j);
            if (bland) break;
            most = rc;
          }
        }
        if (q < 0) break;
        master.pivot(pool[static_cast<std::size_t>(q)], bland);
        ++made;
        ++made_here;
        ++res.pivots;
        if (master.last_degenerate()) {
          if (++stall > kStallLimit) bland = true;
        } else {
          stall = 0;
        }
        pi = master.duals();
      }
      if (made == 0) return false;  // the best candidate no longer prices out: numerical floor
    }
  };

  const std::size_t max_pivots = 2000 * n + 10000;
  if (!optimise(max_pivots)) {
    std::ostringstream os;
    os << "h1 gauge: LP numerical failure after " << res.pivots << " pivots (n = " << n
       << ", max pairing = " << res.max_pairing << ")";
    throw Error(os.str());
  }
  // The perturbed optimum is dual feasible for any right-hand side: its duals
  // certify a lower bound and the true f mu, with negative parts re-signed,
  // gives a decomposition. Try to close the gap; keep this pair otherwise.
  const std::vector<double> pi_lifted = pi;
  const double pairing_lifted = res.max_pairing;
  double negative = master.restore_rhs();
  Master fallback = master;
  bool exact = negative == 0.0;
  if (!exact) {
    pi = master.duals();
    exact = optimise(20 * n + 200);
  }
  const Master& fin = exact ? master : fallback;
  if (!exact) {
    pi = pi_lifted;
    res.max_pairing = pairing_lifted;
  }
  res.converged = true;

  const auto& xb = fin.xb();
  for (std::size_t i = 0; i < n; ++i) {
    const double y = std::max(0.0, xb[i]);
    res.value += y;
    if (y > 0.0) res.decomposition.terms.push_back(Term{y, fin.basis()[i].atom});
  }
  res.g = FnOnSpace(pi);
  double pairing = 0.0;
  for (Index x = 0; x < n; ++x) pairing += f[x] * space.mass(x) * pi[x];
  res.lower = pairing / std::max(1.0, res.max_pairing);
  return res;
}

double h1_norm_dual(const Space& space, const FnOnSpace& f) { return h1_gauge(space, f, kInf).value; }

}  // namespace lochardy
