#pragma once

// Lattice string approximation: the lattice polynomial f_q built from an SDA,
// its region of stability, stable roots, and Newton refinement of the true
// roots seeded from them.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "lsa/dioph.hpp"
#include "lsa/dirichlet.hpp"
#include "lsa/roots.hpp"

namespace lsa {

struct LatticeApproximation {
  /// 1 - m_1 r_1^s - sum_j m_j r_1^{k_j s / q}.
  DirichletPolynomial f_q;
  SDA sda;
  /// Generator and sparse form of f_q in lowest terms (q divided by gcd(q, k)).
  Real generator;
  SparsePoly g;
  /// 2 pi q / log(1/r_1) with the q of the SDA.
  Real period;
};

/// Throws DomainError unless the SDA approximates the weight ratios of f.
LatticeApproximation lattice_approximation(const DirichletPolynomial& f, const SDA& sda,
                                           Precision precision = kDefaultPrecision);

struct StabilityRegion {
  Real epsilon;
  /// epsilon C Q p_q; the region is the open disk of this radius at 0.
  Real radius;

  bool contains(const Complex& s) const { return abs(s) < radius; }
  /// Region inclusion, the "more stable" order.
  bool contains(const StabilityRegion& other) const { return radius >= other.radius; }
};

StabilityRegion stability_radius(const DirichletPolynomial& f, const SDA& sda, const Real& epsilon,
                                 Precision precision = kDefaultPrecision);

struct StableRoots {
  RootSet roots;  // s-plane, |omega| < radius
  /// radius / p_q.
  Real periods;
};

/// Roots of f_q inside the region, using a precomputed z-plane solve of approx.g.
StableRoots stable_roots(const LatticeApproximation& approx, const StabilityRegion& region,
                         const RootSet& zroots);
/// Same, solving approx.g at `precision` with the default tolerance.
StableRoots stable_roots(const LatticeApproximation& approx, const StabilityRegion& region,
                         Precision precision);

/// max |f_q(s) - f(s)| over `samples` quasi-random points of the region that
/// lie in the strip D_ell <= Re s <= D of f.
Real stability_deviation(const DirichletPolynomial& f, const LatticeApproximation& approx,
                         const StabilityRegion& region, std::size_t samples = 1000,
                         Precision precision = kDefaultPrecision);

enum class SeedOutcome { Converged, Duplicate, FailedCriticalPoint, FailedStagnant };

struct SeedResult {
  std::size_t seed = 0;
  SeedOutcome outcome = SeedOutcome::FailedStagnant;
  unsigned iterations = 0;
  /// Index into RefinementReport::roots for converged and duplicate seeds.
  std::optional<std::size_t> root;
};

struct RefinedRoot {
  Complex value;
  Real residual;
  std::size_t seed = 0;
  unsigned iterations = 0;
};

struct RefinementReport {
  std::vector<RefinedRoot> roots;  // sorted by (Im, Re)
  std::vector<SeedResult> seeds;   // one per seed, in seed order
  /// (seed, seed it was merged into), before or after iteration.
  std::vector<std::pair<std::size_t, std::size_t>> merges;

  std::size_t converged() const;
};

struct RefineOptions {
  /// Defaults to 2^{-precision/2}.
  std::optional<Real> tolerance;
  unsigned max_iterations = 100;
  Precision precision = kDefaultPrecision;
};

/// Complex Newton iteration from every seed.
RefinementReport refine_roots(const DirichletPolynomial& f, const RootSet& seeds,
                              const RefineOptions& options = {});

struct PatternComparison {
  struct Pair {
    std::size_t true_index;
    std::size_t approx_index;
    Real distance;
  };
  std::vector<Pair> pairs;  // sorted by Im of the true root
  std::vector<std::size_t> unmatched_true;
  std::vector<std::size_t> unmatched_approx;

  /// (Im of the true root, pair distance) along the pairs.
  std::vector<std::pair<Real, Real>> deviation_series(const RootSet& true_roots) const;
  Real mean_distance() const;
};

/// Greedy nearest-neighbour pairing of two s-plane root sets.
PatternComparison compare_patterns(const RootSet& true_roots, const RootSet& approx_roots,
                                   const Real& match_radius);

}  // namespace lsa
