#include "lsa/lll.hpp"

#include "lsa/error.hpp"

namespace lsa {

namespace {

Integer nearest(const Rational& q) {
  // floor(q + 1/2)
  const Rational shifted = q + Rational(1, 2);
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return r;
}

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

void check_rectangular(const RationalMatrix& m) {
  if (m.empty()) throw ValidationError("empty basis");
  for (const auto& row : m) {
    if (row.size() != m.front().size()) throw ValidationError("basis rows differ in length");
  }
}

class GramLll {
 public:
  GramLll(RationalMatrix gram, const Rational& alpha) : g_(std::move(gram)), alpha_(alpha) {
    n_ = g_.size();
    t_.assign(n_, std::vector<Integer>(n_, 0));
    for (std::size_t i = 0; i < n_; ++i) t_[i][i] = 1;
    mu_.assign(n_, RationalVector(n_, 0));
    b_.assign(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Rational s = g_[i][j];
        for (std::size_t l = 0; l < j; ++l) s -= mu_[j][l] * mu_[i][l] * b_[l];
        mu_[i][j] = s / b_[j];
      }
      Rational s = g_[i][i];
      for (std::size_t j = 0; j < i; ++j) s -= mu_[i][j] * mu_[i][j] * b_[j];
      if (s <= 0) throw ValidationError("basis rows are linearly dependent");
      b_[i] = s;
    }
  }

  void run() {
    std::size_t k = 1;
    while (k < n_) {
      reduce(k, k - 1);
      const Rational& m = mu_[k][k - 1];
      if (b_[k] < (alpha_ - m * m) * b_[k - 1]) {
        swap(k);
        k = std::max<std::size_t>(1, k - 1);
      } else {
        for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
        ++k;
      }
    }
  }

  RationalMatrix& gram() { return g_; }
  IntegerMatrix& transform() { return t_; }

 private:
  // x_k <- x_k - r x_l with r the integer nearest mu[k][l] (only when |mu| > 1/2).
  void reduce(std::size_t k, std::size_t l) {
    if (abs_q(mu_[k][l]) <= Rational(1, 2)) return;
    const Integer r = nearest(mu_[k][l]);
    const Rational rq(r);
    for (std::size_t j = 0; j < n_; ++j) t_[k][j] -= r * t_[l][j];
    const Rational gkl = g_[k][l];
    g_[k][k] += rq * rq * g_[l][l] - 2 * rq * gkl;
    for (std::size_t j = 0; j < n_; ++j) {
      if (j == k) continue;
      g_[k][j] -= rq * g_[l][j];
      g_[j][k] = g_[k][j];
    }
    mu_[k][l] -= rq;
    for (std::size_t j = 0; j < l; ++j) mu_[k][j] -= rq * mu_[l][j];
  }

  void swap(std::size_t k) {
    std::swap(t_[k], t_[k - 1]);
    std::swap(g_[k], g_[k - 1]);
    for (auto& row : g_) std::swap(row[k], row[k - 1]);
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu_[k][j], mu_[k - 1][j]);
    const Rational m = mu_[k][k - 1];
    const Rational big_b = b_[k] + m * m * b_[k - 1];
    mu_[k][k - 1] = m * b_[k - 1] / big_b;
    b_[k] = b_[k - 1] * b_[k] / big_b;
    b_[k - 1] = big_b;
    for (std::size_t i = k + 1; i < n_; ++i) {
      const Rational t = mu_[i][k];
      mu_[i][k] = mu_[i][k - 1] - m * t;
      mu_[i][k - 1] = t + mu_[k][k - 1] * mu_[i][k];
    }
  }

  RationalMatrix g_;
  Rational alpha_;
  std::size_t n_ = 0;
  IntegerMatrix t_;
  RationalMatrix mu_;
  RationalVector b_;
};

}  // namespace

ReductionParams::ReductionParams(const Rational& a) : alpha(a) {
  if (!(a > Rational(1, 4) && a < 1)) throw ValidationError("LLL parameter alpha must lie in (1/4, 1)");
}

RationalMatrix gram_matrix(const Basis& basis) {
  check_rectangular(basis);
  const std::size_t n = basis.size();
  RationalMatrix g(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) g[i][j] = g[j][i] = dot(basis[i], basis[j]);
  }
  return g;
}

GramSchmidtData gram_schmidt(const Basis& basis) {
  check_rectangular(basis);
  const std::size_t n = basis.size();
  GramSchmidtData out;
  out.mu.assign(n, RationalVector(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector v = basis[j];
    for (std::size_t k = 0; k < j; ++k) {
      const Rational m = dot(basis[j], out.ortho[k]) / out.norms[k];
      out.mu[j][k] = m;
      for (std::size_t c = 0; c < v.size(); ++c) v[c] -= m * out.ortho[k][c];
    }
    const Rational norm = dot(v, v);
    if (norm == 0) throw ValidationError("basis rows are linearly dependent");
    out.ortho.push_back(std::move(v));
    out.norms.push_back(norm);
  }
  return out;
}

GramReduction lll_reduce_gram(const RationalMatrix& gram, const ReductionParams& params) {
  check_rectangular(gram);
  if (gram.size() != gram.front().size()) throw ValidationError("Gram matrix must be square");
  GramLll lll(gram, params.alpha);
  lll.run();
  return {std::move(lll.gram()), std::move(lll.transform())};
}

Reduction lll_reduce(const Basis& basis, const ReductionParams& params) {
  GramReduction g = lll_reduce_gram(gram_matrix(basis), params);
  const std::size_t n = basis.size(), m = basis.front().size();
  Basis out(n, RationalVector(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (g.transform[i][j] == 0) continue;
      const Rational t(g.transform[i][j]);
      for (std::size_t c = 0; c < m; ++c) out[i][c] += t * basis[j][c];
    }
  }
  return {std::move(out), std::move(g.transform)};
}

Rational lattice_determinant(const Basis& basis) {
  check_rectangular(basis);
  if (basis.size() != basis.front().size()) throw ValidationError("determinant needs a square basis");
  const Rational d = determinant(basis);
  if (d == 0) throw ValidationError("basis rows are linearly dependent");
  return d < 0 ? Rational(-d) : d;
}

}  // namespace lsa
