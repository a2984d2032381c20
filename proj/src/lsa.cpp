#include "lsa/lsa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lsa/error.hpp"
#include "lsa/parallel.hpp"

namespace lsa {

LatticeApproximation lattice_approximation(const DirichletPolynomial& f, const SDA& sda,
                                           Precision precision) {
  const std::size_t n = f.size();
  if (sda.k.size() + 1 != n) throw DomainError("SDA has the wrong number of components");
  if (sda.q < 1) throw DomainError("SDA denominator must be positive");
  const auto ratios = f.weight_ratios();
  if (!validate_sda_ratios(ratios, sda, precision)) {
    throw DomainError("SDA does not approximate the weight ratios");
  }
  std::vector<RealExpr> exponents{RealExpr::rational(1)};
  for (const auto& k : sda.k) {
    Rational e(k, sda.q);
    e.canonicalize();
    exponents.push_back(RealExpr::rational(e));
  }
  DirichletPolynomial f_q(f.base_ratio(), std::move(exponents), f.multiplicities());
  LatticeForm form = to_sparse_poly(f_q, precision);
  Real period = oscillatory_period(f.base_ratio(), sda.q, precision);
  return {std::move(f_q), sda, std::move(form.generator), std::move(form.g), std::move(period)};
}

StabilityRegion stability_radius(const DirichletPolynomial& f, const SDA& sda, const Real& epsilon,
                                 Precision precision) {
  if (!(epsilon.sign() > 0) || !epsilon.is_finite()) throw ValidationError("epsilon must be positive");
  const Real C = lsa_constant(f, precision);
  const Real p = oscillatory_period(f.base_ratio(), sda.q, precision);
  const Real eps(epsilon, precision);
  return {eps, eps * C * Real(sda.Q, precision) * p};
}

StableRoots stable_roots(const LatticeApproximation& approx, const StabilityRegion& region,
                         const RootSet& zroots) {
  if (!region.radius.is_finite()) throw DomainError("the region of stability is unbounded");
  const RootSet all = roots_to_dimensions(zroots, approx.generator, region.radius);
  RootSet inside{{}, Plane::S};
  for (const auto& r : all.roots) {
    if (region.contains(r.value)) inside.roots.push_back(r);
  }
  return {std::move(inside), region.radius / approx.period};
}

StableRoots stable_roots(const LatticeApproximation& approx, const StabilityRegion& region,
                         Precision precision) {
  return stable_roots(approx, region, solve_sparse(approx.g, default_tolerance(precision), precision));
}

namespace {

double radical_inverse(unsigned long i, unsigned base) {
  double result = 0, f = 1.0 / base;
  while (i > 0) {
    result += f * static_cast<double>(i % base);
    i /= base;
    f /= base;
  }
  return result;
}

bool before(const Complex& a, const Complex& b) {
  if (a.im() != b.im()) return a.im() < b.im();
  return a.re() < b.re();
}

Real relative_gap(const Real& tol, const Complex& s) {
  return sqrt(tol) * max(Real(1L, tol.precision()), abs(s));
}

}  // namespace

Real stability_deviation(const DirichletPolynomial& f, const LatticeApproximation& approx,
                         const StabilityRegion& region, std::size_t samples, Precision precision) {
  if (!region.radius.is_finite()) throw DomainError("the region of stability is unbounded");
  const DimensionBounds b = dimension_bounds(f, 128);
  const double lo = b.D_ell.to_double(), hi = b.D.to_double();
  const double R = region.radius.to_double();
  const DirichletNumerics nf(f, precision), nq(approx.f_q, precision);
  Real worst(0L, precision);
  std::size_t taken = 0;
  for (unsigned long i = 1; taken < samples; ++i) {
    if (i > 50 * samples + 1000) throw DomainError("the region of stability misses the root strip");
    // Halton points in the rectangle [D_ell, D] x [-R, R], kept inside the disk.
    const double x = lo + (hi - lo) * radical_inverse(i, 2);
    const double y = R * (2 * radical_inverse(i, 3) - 1);
    const Complex s(x, y, precision);
    if (!region.contains(s)) continue;
    ++taken;
    worst = max(worst, abs(nq.evaluate(s) - nf.evaluate(s)));
  }
  return worst;
}

std::size_t RefinementReport::converged() const {
  return static_cast<std::size_t>(std::count_if(seeds.begin(), seeds.end(), [](const SeedResult& s) {
    return s.outcome == SeedOutcome::Converged;
  }));
}

RefinementReport refine_roots(const DirichletPolynomial& f, const RootSet& seeds,
                              const RefineOptions& options) {
  if (seeds.roots.empty()) throw ValidationError("refine_roots needs at least one seed");
  if (seeds.plane != Plane::S) throw ValidationError("seeds must be s-plane roots");
  const Precision prec = options.precision;
  const Real tol = options.tolerance ? Real(*options.tolerance, prec) : default_tolerance(prec);
  if (tol.sign() <= 0) throw ValidationError("tolerance must be positive");
  const Real critical = tol * 10L;

  RefinementReport report;
  report.seeds.resize(seeds.roots.size());
  std::vector<std::size_t> unique;
  for (std::size_t i = 0; i < seeds.roots.size(); ++i) {
    report.seeds[i].seed = i;
    const Complex& s = seeds.roots[i].value;
    for (const std::size_t u : unique) {
      if (abs(s - seeds.roots[u].value) <= relative_gap(tol, s)) {
        report.seeds[i].outcome = SeedOutcome::Duplicate;
        report.merges.emplace_back(i, u);
        break;
      }
    }
    if (report.seeds[i].outcome != SeedOutcome::Duplicate) unique.push_back(i);
  }

  const DirichletNumerics numerics(f, prec);
  struct Iterate {
    Complex value;
    Real residual;
  };
  std::vector<std::optional<Iterate>> result(unique.size());
  parallel_for(unique.size(), [&](std::size_t u) {
    SeedResult& out = report.seeds[unique[u]];
    const Complex& seed = seeds.roots[unique[u]].value;
    Complex w(Real(seed.re(), prec), Real(seed.im(), prec));
    for (unsigned it = 0;; ++it) {
      const auto [v, d] = numerics.evaluate_with_derivative(w);
      if (abs(d) < critical) {
        out.outcome = SeedOutcome::FailedCriticalPoint;
        out.iterations = it;
        return;
      }
      const Complex step = v / d;
      const Real size = abs(step);
      if (abs(v) <= tol && size < tol) {
        out.outcome = SeedOutcome::Converged;
        out.iterations = it;
        result[u] = Iterate{w, abs(v)};
        return;
      }
      if (it == options.max_iterations) {
        out.outcome = SeedOutcome::FailedStagnant;
        out.iterations = it;
        return;
      }
      w -= step;
    }
  });

  // Merge converged roots that landed on the same point; the lowest seed wins.
  std::vector<std::size_t> kept;
  std::vector<std::size_t> owner(unique.size());
  for (std::size_t u = 0; u < unique.size(); ++u) {
    if (!result[u]) continue;
    owner[u] = u;
    for (const std::size_t k : kept) {
      if (abs(result[u]->value - result[k]->value) <= relative_gap(tol, result[k]->value)) {
        owner[u] = k;
        report.merges.emplace_back(unique[u], unique[k]);
        break;
      }
    }
    if (owner[u] == u) kept.push_back(u);
  }
  for (const std::size_t k : kept) {
    report.roots.push_back({result[k]->value, result[k]->residual, unique[k], report.seeds[unique[k]].iterations});
  }
  std::sort(report.roots.begin(), report.roots.end(),
            [](const RefinedRoot& a, const RefinedRoot& b) { return before(a.value, b.value); });
  std::vector<std::size_t> position(seeds.roots.size());
  for (std::size_t r = 0; r < report.roots.size(); ++r) position[report.roots[r].seed] = r;
  for (std::size_t u = 0; u < unique.size(); ++u) {
    if (result[u]) report.seeds[unique[u]].root = position[unique[owner[u]]];
  }
  for (const auto& [seed, into] : report.merges) {
    if (report.seeds[seed].outcome == SeedOutcome::Duplicate) report.seeds[seed].root = report.seeds[into].root;
  }
  return report;
}

std::vector<std::pair<Real, Real>> PatternComparison::deviation_series(const RootSet& true_roots) const {
  std::vector<std::pair<Real, Real>> series;
  for (const auto& p : pairs) series.emplace_back(true_roots.roots[p.true_index].value.im(), p.distance);
  return series;
}

Real PatternComparison::mean_distance() const {
  if (pairs.empty()) return Real(0L, 64);
  Real sum(0L, pairs.front().distance.precision());
  for (const auto& p : pairs) sum += p.distance;
  return sum / static_cast<long>(pairs.size());
}

PatternComparison compare_patterns(const RootSet& true_roots, const RootSet& approx_roots,
                                   const Real& match_radius) {
  if (true_roots.plane != Plane::S || approx_roots.plane != Plane::S) {
    throw ValidationError("compare_patterns expects s-plane roots");
  }
  // Candidate pairs, found via a window on the imaginary parts.
  std::vector<std::size_t> by_im(approx_roots.roots.size());
  std::iota(by_im.begin(), by_im.end(), 0);
  std::vector<double> im(approx_roots.roots.size());
  for (std::size_t j = 0; j < im.size(); ++j) im[j] = approx_roots.roots[j].value.im().to_double();
  std::sort(by_im.begin(), by_im.end(), [&](std::size_t a, std::size_t b) { return im[a] < im[b]; });
  const double reach = match_radius.to_double() * (1 + 1e-9) + 1e-300;
  std::vector<PatternComparison::Pair> candidates;
  for (std::size_t i = 0; i < true_roots.roots.size(); ++i) {
    const Complex& t = true_roots.roots[i].value;
    const double ti = t.im().to_double();
    auto it = std::lower_bound(by_im.begin(), by_im.end(), ti - reach,
                               [&](std::size_t j, double v) { return im[j] < v; });
    for (; it != by_im.end() && im[*it] <= ti + reach; ++it) {
      Real d = abs(t - approx_roots.roots[*it].value);
      if (d <= match_radius) candidates.push_back({i, *it, std::move(d)});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.distance < b.distance; });
  PatternComparison out;
  std::vector<char> used_true(true_roots.roots.size(), 0), used_approx(approx_roots.roots.size(), 0);
  for (auto& c : candidates) {
    if (used_true[c.true_index] || used_approx[c.approx_index]) continue;
    used_true[c.true_index] = used_approx[c.approx_index] = 1;
    out.pairs.push_back(std::move(c));
  }
  std::sort(out.pairs.begin(), out.pairs.end(), [&](const auto& a, const auto& b) {
    return before(true_roots.roots[a.true_index].value, true_roots.roots[b.true_index].value);
  });
  for (std::size_t i = 0; i < used_true.size(); ++i) {
    if (!used_true[i]) out.unmatched_true.push_back(i);
  }
  for (std::size_t j = 0; j < used_approx.size(); ++j) {
    if (!used_approx[j]) out.unmatched_approx.push_back(j);
  }
  return out;
}

}  // namespace lsa
