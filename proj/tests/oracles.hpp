#pragma once

// Brute-force reference computations. They use plain mpq_class arithmetic and
// closed-form descriptions of the test objects, never the library kernels.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

using Q = mpq_class;

inline Q q(long p, long r = 1) {
  Q v(p, r);
  v.canonicalize();
  return v;
}

// Eventually periodic scalar sequence: prefix then block repeated.
struct Periodic {
  std::vector<Q> prefix;
  std::vector<Q> block;
  Q at(std::size_t k) const { return k < prefix.size() ? prefix[k] : block[(k - prefix.size()) % block.size()]; }
};

using Entry = std::function<Q(std::size_t, std::size_t)>;

// Row n of a lower-triangular scalar matrix applied to x, summed over k <= n.
inline Q apply_lower(const Entry& a, const std::function<Q(std::size_t)>& x, std::size_t n) {
  Q s = 0;
  for (std::size_t k = 0; k <= n; ++k) s += a(n, k) * x(k);
  return s;
}

inline Q row_sum(const Entry& a, std::size_t n, std::size_t columns) {
  Q s = 0;
  for (std::size_t k = 0; k < columns; ++k) s += a(n, k);
  return s;
}

inline Q row_abs_sum(const Entry& a, std::size_t n, std::size_t columns) {
  Q s = 0;
  for (std::size_t k = 0; k < columns; ++k) s += abs(a(n, k));
  return s;
}

inline Q cesaro_entry(std::size_t n, std::size_t k) { return k <= n ? q(1, static_cast<long>(n + 1)) : q(0); }

// Binomial (Euler, p = 1/2) entry C(n,k)/2^n.
inline Q euler_entry(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  mpz_class p = 1;
  p <<= n;
  Q v(c, p);
  v.canonicalize();
  return v;
}

// (1/(n+1)) sum_{h<=n} x(sigma(nu+h))
inline Q sigma_mean(const Periodic& x, const std::function<std::size_t(std::size_t)>& sigma, std::size_t nu,
                    std::size_t n) {
  Q s = 0;
  for (std::size_t h = 0; h <= n; ++h) s += x.at(sigma(nu + h));
  return s / Q(static_cast<long>(n + 1));
}

// Limit of sigma means for a purely periodic x and sigma(n) = a n + b.
// h -> x(a(nu+h)+b) is periodic with period p, so the Cesaro limit is its
// average over one period. Returns one value per nu in [0, p).
inline std::vector<Q> affine_sigma_limits(const std::vector<Q>& block, std::size_t a, std::size_t b) {
  std::size_t p = block.size();
  std::vector<Q> out;
  for (std::size_t nu = 0; nu < p; ++nu) {
    Q s = 0;
    for (std::size_t h = 0; h < p; ++h) s += block[(a * (nu + h) + b) % p];
    out.push_back(s / Q(static_cast<long>(p)));
  }
  return out;
}

// Operator norm of an m x d block on l1: max over the extreme points +-e_j
// of the unit ball, i.e. the largest column absolute sum.
inline Q l1_operator_norm(const std::vector<std::vector<Q>>& a) {
  Q best = 0;
  std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t j = 0; j < cols; ++j) {
    Q c = 0;
    for (const auto& row : a) c += abs(row[j]);
    best = std::max(best, c);
  }
  return best;
}

// limsup of a sequence that is eventually periodic from index `from` with
// period p: max over one period far out.
inline Q eventual_max(const std::function<Q(std::size_t)>& y, std::size_t from, std::size_t p) {
  Q best = y(from);
  for (std::size_t n = from; n < from + p; ++n) best = std::max(best, y(n));
  return best;
}

inline Q eventual_min(const std::function<Q(std::size_t)>& y, std::size_t from, std::size_t p) {
  Q best = y(from);
  for (std::size_t n = from; n < from + p; ++n) best = std::min(best, y(n));
  return best;
}

// All words over [0, arity) of length exactly len.
inline std::vector<std::vector<std::size_t>> words(std::size_t arity, std::size_t len) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& w : out)
      for (std::size_t s = 0; s < arity; ++s) {
        auto v = w;
        v.push_back(s);
        next.push_back(v);
      }
    out = std::move(next);
  }
  return out;
}

// Selection nu(n) for an eventually periodic word pair.
inline std::size_t select(const std::vector<std::size_t>& prefix, const std::vector<std::size_t>& period,
                          std::size_t n) {
  return n < prefix.size() ? prefix[n] : period[(n - prefix.size()) % period.size()];
}

}  // namespace oracle
