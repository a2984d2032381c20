#include "lsa/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numeric>
#include <optional>

#include "lsa/error.hpp"
#include "lsa/parallel.hpp"

namespace lsa {

SparsePoly::SparsePoly(std::vector<SparseTerm> terms) : terms_(std::move(terms)) {
  if (terms_.size() < 2) throw ValidationError("sparse polynomial needs a constant term and degree >= 1");
  if (terms_.front().exponent != 0) throw ValidationError("sparse polynomial has no constant term");
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (k > 0 && terms_[k].exponent <= terms_[k - 1].exponent) {
      throw ValidationError("sparse polynomial exponents must be strictly increasing");
    }
    const auto r = is_rational(terms_[k].coefficient);
    if (r.rational && *r.value == 0) throw ValidationError("sparse polynomial has a zero coefficient");
  }
}

std::vector<Real> SparsePoly::coefficients(Precision prec) const {
  std::vector<Real> c;
  c.reserve(terms_.size());
  for (const auto& t : terms_) c.push_back(eval_expr(t.coefficient, prec));
  return c;
}

SparseValue evaluate_sparse(const SparsePoly& g, const std::vector<Real>& c, const Complex& z) {
  const Precision prec = z.precision();
  const Real zero(0L, prec);
  Complex power(Real(1L, prec), zero);
  Complex value(zero, zero), zd(zero, zero);
  Real scale(0L, prec);
  const Real zmod = abs(z);
  Real zmod_power(1L, prec);
  unsigned long previous = 0;
  const auto& terms = g.terms();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const unsigned long gap = terms[k].exponent - previous;
    if (gap > 0) {
      power *= pow(z, gap);
      zmod_power = abs(power);
    }
    previous = terms[k].exponent;
    const Complex term = c[k] * power;
    value += term;
    zd += term * Real(static_cast<long>(terms[k].exponent), prec);
    scale += abs(c[k]) * zmod_power;
  }
  Complex derivative(prec);
  if (zmod.is_zero()) {
    if (terms.size() > 1 && terms[1].exponent == 1) derivative = Complex(Real(c[1], prec), zero);
  } else {
    derivative = zd / z;
  }
  return {value, derivative, scale};
}

LatticeForm to_sparse_poly(const DirichletPolynomial& f, Precision prec) {
  const Classification cl = classify(f);
  if (!cl.lattice) throw DomainError("nonlattice polynomial has no sparse polynomial form");
  std::vector<SparseTerm> terms{{0, RealExpr::rational(1)}};
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!cl.k[j].fits_ulong_p() || cl.k[j] <= 0) throw DomainError("lattice exponent out of range");
    terms.push_back({cl.k[j].get_ui(), -f.multiplicities()[j]});
  }
  return {SparsePoly(std::move(terms)), lattice_generator(f, cl.q, prec), cl.q};
}

std::size_t RootSet::count_with_multiplicity() const {
  std::size_t n = 0;
  for (const auto& r : roots) n += r.multiplicity;
  return n;
}

Real default_tolerance(Precision prec) { return exp2i(-static_cast<long>(prec / 2), prec); }

namespace {

using cdouble = std::complex<double>;

// Double precision Aberth-Ehrlich stage. Terms are evaluated through their
// logarithms so that large exponents neither overflow nor underflow.
class DoubleStage {
 public:
  explicit DoubleStage(const SparsePoly& g) {
    const auto c = g.coefficients(64);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double mag = std::log(std::abs(c[k].to_double()));
      terms_.push_back({static_cast<double>(g.terms()[k].exponent),
                        cdouble(mag, c[k].sign() < 0 ? M_PI : 0.0)});
    }
  }

  // Newton correction g(z) / g'(z).
  std::optional<cdouble> newton_ratio(cdouble z) const {
    if (z == 0.0) return std::nullopt;
    const cdouble lz = std::log(z);
    double top = -INFINITY;
    std::vector<cdouble> t(terms_.size());
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      t[k] = terms_[k].logc + terms_[k].e * lz;
      top = std::max(top, t[k].real());
    }
    cdouble p = 0, zp = 0;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      const cdouble v = std::exp(t[k] - top);
      p += v;
      zp += terms_[k].e * v;
    }
    if (zp == 0.0) return std::nullopt;
    return z * p / zp;
  }

  // Points on the circles given by the upper convex hull of (e_k, log|c_k|).
  std::vector<cdouble> initial_points() const {
    std::vector<std::pair<double, double>> hull;
    for (const auto& t : terms_) {
      const std::pair<double, double> p{t.e, t.logc.real()};
      while (hull.size() >= 2) {
        const auto& o = hull[hull.size() - 2];
        const auto& a = hull.back();
        const double cross = (a.first - o.first) * (p.second - o.second) -
                             (a.second - o.second) * (p.first - o.first);
        if (cross < 0) break;
        hull.pop_back();
      }
      hull.push_back(p);
    }
    const double golden_angle = M_PI * (3 - std::sqrt(5.0));
    std::vector<cdouble> z;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
      const double count = hull[h + 1].first - hull[h].first;
      const double radius = std::exp((hull[h].second - hull[h + 1].second) / count);
      const double offset = 0.4 + golden_angle * static_cast<double>(h);
      const auto n = static_cast<std::size_t>(count);
      for (std::size_t j = 0; j < n; ++j) {
        z.push_back(std::polar(radius, offset + 2 * M_PI * static_cast<double>(j) / count));
      }
    }
    return z;
  }

  std::vector<cdouble> solve(unsigned max_sweeps) const {
    std::vector<cdouble> z = initial_points();
    const std::size_t n = z.size();
    std::vector<char> done(n, 0);
    for (unsigned sweep = 0; sweep < max_sweeps; ++sweep) {
      bool active = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        const auto ratio = newton_ratio(z[i]);
        if (!ratio) {
          done[i] = 1;
          continue;
        }
        cdouble s = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          const cdouble d = z[i] - z[j];
          s += std::conj(d) / std::norm(d);
        }
        const cdouble w = *ratio / (1.0 - *ratio * s);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
          done[i] = 1;
          continue;
        }
        z[i] -= w;
        if (std::abs(w) <= 1e-14 * std::abs(z[i])) {
          done[i] = 1;
        } else {
          active = true;
        }
      }
      if (!active) break;
    }
    return z;
  }

 private:
  struct Term {
    double e;
    cdouble logc;
  };
  std::vector<Term> terms_;
};

class Refiner {
 public:
  Refiner(const SparsePoly& g, const Real& tolerance, Precision precision)
      : g_(g), tol_(tolerance), precision_(precision) {
    for (Precision p = precision; p <= 8 * precision; p *= 2) coefficients_[p] = g.coefficients(p);
  }

  struct Outcome {
    Complex z;
    SparseValue value;
    bool certified = false;
  };

  bool certified(const SparseValue& v) const { return abs(v.value) <= tol_ * v.scale; }

  // Newton from z0 with precision doubling on failure. When `others` is given,
  // the iteration is deflated by those roots.
  Outcome refine(const Complex& z0, const std::vector<Complex>* others = nullptr) const {
    Complex z = z0;
    for (Precision wp = precision_; wp <= 8 * precision_; wp *= 2) {
      z = Complex(Real(z.re(), wp), Real(z.im(), wp));
      const auto& c = coefficients_.at(wp);
      const Real step_floor = exp2i(-static_cast<long>(wp) + 6, wp);
      Real previous = Real::infinity(wp);
      for (Precision it = 0; it < 4 * wp + 50; ++it) {
        const SparseValue v = evaluate_sparse(g_, c, z);
        if (v.value.re().is_zero() && v.value.im().is_zero()) break;
        Complex step(wp);
        if (others) {
          Complex s = v.derivative / v.value;
          for (const auto& o : *others) s -= Complex(Real(1L, wp), Real(0L, wp)) / (z - o);
          if (s.re().is_zero() && s.im().is_zero()) break;
          step = Complex(Real(1L, wp), Real(0L, wp)) / s;
        } else {
          if (v.derivative.re().is_zero() && v.derivative.im().is_zero()) break;
          step = v.value / v.derivative;
        }
        if (!step.re().is_finite() || !step.im().is_finite()) break;
        const Real size = abs(step);
        z -= step;
        if (size <= step_floor * abs(z)) break;
        if (it > 3 && size >= previous) break;
        previous = size;
      }
      const SparseValue v = evaluate_sparse(g_, c, z);
      if (certified(v)) return {z, v, true};
    }
    return {z, evaluate_sparse(g_, coefficients_.at(precision_), z), false};
  }

  SparseValue evaluate(const Complex& z) const {
    return evaluate_sparse(g_, coefficients_.at(precision_), Complex(Real(z.re(), precision_), Real(z.im(), precision_)));
  }

 private:
  const SparsePoly& g_;
  Real tol_;
  Precision precision_;
  std::map<Precision, std::vector<Real>> coefficients_;
};

Complex at_precision(const Complex& z, Precision p) {
  return Complex(Real(z.re(), p), Real(z.im(), p));
}

bool before(const Complex& a, const Complex& b) {
  if (a.im() != b.im()) return a.im() < b.im();
  return a.re() < b.re();
}

}  // namespace

RootSet solve_sparse(const SparsePoly& g, const Real& tolerance, Precision precision) {
  if (tolerance.sign() <= 0) throw ValidationError("tolerance must be positive");
  const unsigned long degree = g.degree();
  const DoubleStage stage(g);
  const std::vector<cdouble> seeds = stage.solve(degree < 64 ? 2000 : 500);
  const Refiner refiner(g, tolerance, precision);
  const Real merge_radius = sqrt(Real(tolerance, precision));

  std::vector<Refiner::Outcome> found(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    const Complex z0(seeds[i].real(), seeds[i].imag(), precision);
    Refiner::Outcome out = refiner.refine(z0);
    // Real coefficients: a root this close to the axis is tried on the axis.
    if (out.certified && abs(out.z.im()) <= merge_radius * abs(out.z)) {
      Refiner::Outcome axis = refiner.refine(Complex(out.z.re(), Real(0L, precision)));
      if (axis.certified) out = std::move(axis);
    }
    found[i] = std::move(out);
  });

  std::vector<std::size_t> failed;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (!found[i].certified) failed.push_back(i);
  }
  if (!failed.empty()) throw NumericFailure("sparse solver did not certify every root", failed);

  // Group roots closer than the merge radius (relative to max(1, |z|)).
  auto close = [&](const Complex& a, const Complex& b) {
    return abs(a - b) <= merge_radius * max(Real(1L, precision), abs(a));
  };
  std::vector<std::size_t> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  const double window = std::max(std::ldexp(1.0, -static_cast<int>(precision / 4)), 1e-9);
  std::vector<std::size_t> parent(found.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root_of = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = root_of(parent[i]);
  };
  std::vector<double> re(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) re[i] = found[i].z.re().to_double();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return re[a] < re[b]; });
  for (std::size_t a = 0; a < order.size(); ++a) {
    const std::size_t i = order[a];
    const double reach = window * std::max(1.0, std::abs(re[i]) + std::abs(found[i].z.im().to_double()));
    for (std::size_t b = a + 1; b < order.size() && re[order[b]] - re[i] <= reach; ++b) {
      const std::size_t j = order[b];
      if (close(found[i].z, found[j].z)) parent[root_of(j)] = root_of(i);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < found.size(); ++i) clusters[root_of(i)].push_back(i);

  // A cluster is a multiple root only if g' vanishes there too; otherwise
  // several seeds converged to one simple root and the extras are re-seeded
  // with deflation by every other root.
  const Real critical = merge_radius * Real(static_cast<long>(degree), precision);
  std::vector<Root> roots;
  std::vector<std::size_t> reseed;
  for (const auto& [rep, members] : clusters) {
    const auto& v = found[rep].value;
    const bool multiple = abs(found[rep].z * v.derivative) <= critical * v.scale;
    if (members.size() == 1 || multiple) {
      roots.push_back({at_precision(found[rep].z, precision), abs(v.value),
                       static_cast<unsigned>(members.size())});
    } else {
      roots.push_back({at_precision(found[rep].z, precision), abs(v.value), 1});
      reseed.insert(reseed.end(), members.begin() + 1, members.end());
    }
  }
  for (const std::size_t i : reseed) {
    std::vector<Complex> others;
    for (const auto& r : roots) {
      for (unsigned m = 0; m < r.multiplicity; ++m) others.push_back(r.value);
    }
    const Complex z0(seeds[i].real() * (1 + 1e-9), seeds[i].imag() + 1e-9, precision);
    const auto out = refiner.refine(z0, &others);
    bool distinct = out.certified;
    for (const auto& r : roots) distinct = distinct && !close(out.z, r.value);
    if (!distinct) throw NumericFailure("sparse solver lost a root to a neighbour", {i});
    roots.push_back({at_precision(out.z, precision), abs(out.value.value), 1});
  }

  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return before(a.value, b.value); });
  RootSet set{std::move(roots), Plane::Z};
  if (set.count_with_multiplicity() != degree) {
    throw NumericFailure("sparse solver found " + std::to_string(set.count_with_multiplicity()) +
                         " roots for degree " + std::to_string(degree));
  }
  return set;
}

RootSet roots_to_dimensions(const RootSet& zroots, const Real& generator, const Real& strip_height) {
  if (zroots.plane != Plane::Z) throw ValidationError("expected z-plane roots");
  if (generator.sign() <= 0 || generator >= 1L) throw ValidationError("generator must lie in (0, 1)");
  if (strip_height.sign() <= 0) throw ValidationError("strip height must be positive");
  const Precision prec = generator.precision();
  const Real L = -log(generator);
  const Real period = Real::pi(prec) * 2L / L;
  RootSet out{{}, Plane::S};
  for (const auto& r : zroots.roots) {
    if (r.value.re().is_zero() && r.value.im().is_zero()) throw DomainError("z = 0 has no dimension");
    const Real re = -log(abs(r.value)) / L;
    const Real im = -arg(r.value) / L;
    const Integer lo = (-(strip_height + im) / period).floor() + 1;
    const Integer hi = ((strip_height - im) / period).floor();
    for (Integer n = lo - 1; n <= hi; ++n) {
      const Real shifted = im + period * Real(n, prec);
      if (shifted < -strip_height || !(shifted < strip_height)) continue;
      out.roots.push_back({Complex(re, shifted), r.residual, r.multiplicity});
    }
  }
  std::sort(out.roots.begin(), out.roots.end(),
            [](const Root& a, const Root& b) { return before(a.value, b.value); });
  return out;
}

Real oscillatory_period(const RealExpr& r1, const Integer& q, Precision prec) {
  if (q <= 0) throw ValidationError("q must be positive");
  const Real r = eval_expr(r1, prec + 32);
  if (r.sign() <= 0 || r >= 1L) throw ValidationError("r_1 must lie in (0, 1)");
  return Real(Real::pi(prec + 32) * 2L * Real(q, prec + 32) / -log(r), prec);
}

}  // namespace lsa
