#include "summa/matrix.hpp"

#include <algorithm>

#include "summa/errors.hpp"

namespace summa {

RowTail RowTail::finite(std::size_t lo, std::size_t hi) {
  RowTail t;
  t.kind = Kind::Finite;
  t.lo = lo;
  t.hi = hi;
  return t;
}

OperatorMatrix::OperatorMatrix(std::string label, std::size_t d, std::size_t m, EntryFn entry, TailModel tail,
                               std::optional<Scalar> norm_bound, RowFn sparse_row) {
  if (d == 0 || m == 0) throw DimensionMismatch("matrix '" + label + "' needs d, m >= 1");
  if (auto* g = std::get_if<GeometricBound>(&tail)) {
    if (!certainly_le(Scalar(0), g->ratio) || !certainly_lt(g->ratio, Scalar(1)))
      throw InvalidTailModel("matrix '" + label + "': geometric ratio must lie in [0, 1)");
  }
  impl_ = std::make_shared<const Impl>(Impl{std::move(label), d, m, std::move(entry), std::move(tail),
                                            std::move(norm_bound), std::move(sparse_row)});
}

OperatorEntry OperatorMatrix::entry(std::size_t n, std::size_t k) const {
  OperatorEntry e = impl_->entry(n, k);
  if (e.rows() != impl_->m || e.cols() != impl_->d)
    throw DimensionMismatch("matrix '" + impl_->label + "' generated an entry of the wrong shape");
  return e;
}

RowTail OperatorMatrix::row_tail(std::size_t n) const {
  return std::visit(
      [n](const auto& t) -> RowTail {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, FiniteSupport>) {
          auto s = t.support(n);
          return s ? RowTail::finite(s->first, s->second) : RowTail::none();
        } else if constexpr (std::is_same_v<T, Banded>) {
          return RowTail::finite(n >= t.lower ? n - t.lower : 0, n + t.upper);
        } else if constexpr (std::is_same_v<T, GeometricBound>) {
          RowTail r;
          r.kind = RowTail::Kind::Geometric;
          r.coeff = t.coeff(n);
          r.ratio = t.ratio;
          return r;
        } else if constexpr (std::is_same_v<T, ConstantTail>) {
          RowTail r;
          r.kind = RowTail::Kind::ConstantFrom;
          r.from = t.from(n);
          return r;
        } else if constexpr (std::is_same_v<T, PerRowTail>) {
          return t.row(n);
        } else {
          return RowTail{};
        }
      },
      impl_->tail);
}

RowTail::Kind OperatorMatrix::tail_kind() const {
  return std::visit(
      [](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, FiniteSupport> || std::is_same_v<T, Banded>) return RowTail::Kind::Finite;
        else if constexpr (std::is_same_v<T, GeometricBound>) return RowTail::Kind::Geometric;
        else if constexpr (std::is_same_v<T, ConstantTail>) return RowTail::Kind::ConstantFrom;
        else if constexpr (std::is_same_v<T, PerRowTail>) return t.uniform_kind;
        else return RowTail::Kind::Uncertified;
      },
      impl_->tail);
}

SparseRow OperatorMatrix::finite_row(std::size_t n) const {
  RowTail t = row_tail(n);
  if (t.kind != RowTail::Kind::Finite)
    throw PreconditionError("row " + std::to_string(n) + " of '" + label() + "' is not finitely supported");
  if (t.empty) return {};
  if (impl_->sparse_row) return impl_->sparse_row(n);
  SparseRow row;
  for (std::size_t k = t.lo; k <= t.hi; ++k) {
    OperatorEntry e = entry(n, k);
    if (!e.is_zero()) row.emplace_back(k, std::move(e));
  }
  return row;
}

SparseRow OperatorMatrix::row_prefix(std::size_t n, std::size_t limit) const {
  RowTail t = row_tail(n);
  if (t.kind == RowTail::Kind::Finite) {
    SparseRow row = finite_row(n);
    row.erase(std::remove_if(row.begin(), row.end(), [limit](const auto& p) { return p.first >= limit; }),
              row.end());
    return row;
  }
  SparseRow row;
  for (std::size_t k = 0; k < limit; ++k) {
    OperatorEntry e = entry(n, k);
    if (!e.is_zero()) row.emplace_back(k, std::move(e));
  }
  return row;
}

OperatorMatrix OperatorMatrix::relabeled(std::string label) const {
  OperatorMatrix copy = *this;
  auto impl = std::make_shared<Impl>(*impl_);
  impl->label = std::move(label);
  copy.impl_ = std::move(impl);
  return copy;
}

MatrixFamily::MatrixFamily(std::vector<OperatorMatrix> members) : members_(std::move(members)) {
  if (members_.empty()) throw SchemaError("a matrix family needs at least one member");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].d() != members_[0].d() || members_[i].m() != members_[0].m())
      throw DimensionMismatch("family members differ in dimensions");
    for (std::size_t j = 0; j < i; ++j)
      if (members_[i].label() == members_[j].label())
        throw SchemaError("family member label '" + members_[i].label() + "' repeats");
  }
}

std::optional<Scalar> MatrixFamily::norm_bound() const {
  std::optional<Scalar> b;
  for (const auto& a : members_) {
    if (!a.norm_bound()) return std::nullopt;
    b = b ? max(*b, *a.norm_bound()) : *a.norm_bound();
  }
  return b;
}

namespace matrices {

namespace {

Scalar power(Scalar base, std::size_t e) {
  Scalar r(1);
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

FiniteSupport support_fn(std::function<std::optional<std::pair<std::size_t, std::size_t>>(std::size_t)> f) {
  return FiniteSupport{std::move(f)};
}

auto lower_triangle = [](std::size_t n) { return std::optional(std::pair<std::size_t, std::size_t>(0, n)); };
auto diagonal = [](std::size_t n) { return std::optional(std::pair<std::size_t, std::size_t>(n, n)); };

Scalar inverse(std::size_t n) { return Scalar(Rational(1, static_cast<unsigned long>(n))); }

}  // namespace

OperatorMatrix cesaro(std::size_t d, std::string label) {
  auto entry = [d](std::size_t n, std::size_t k) {
    return k <= n ? OperatorEntry::identity(d, inverse(n + 1)) : OperatorEntry(d, d);
  };
  auto row = [d](std::size_t n) {
    OperatorEntry e = OperatorEntry::identity(d, inverse(n + 1));
    SparseRow r;
    r.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) r.emplace_back(k, e);
    return r;
  };
  return OperatorMatrix(std::move(label), d, d, entry, support_fn(lower_triangle), Scalar(1), row);
}

OperatorMatrix identity(std::size_t d, std::string label) {
  auto entry = [d](std::size_t n, std::size_t k) {
    return k == n ? OperatorEntry::identity(d) : OperatorEntry(d, d);
  };
  auto row = [d](std::size_t n) { return SparseRow{{n, OperatorEntry::identity(d)}}; };
  return OperatorMatrix(std::move(label), d, d, entry, support_fn(diagonal), Scalar(1), row);
}

OperatorMatrix zero(std::size_t d, std::size_t m, std::string label) {
  auto entry = [d, m](std::size_t, std::size_t) { return OperatorEntry(m, d); };
  auto none = [](std::size_t) { return std::optional<std::pair<std::size_t, std::size_t>>(); };
  return OperatorMatrix(std::move(label), d, m, entry, support_fn(none), Scalar(0),
                        [](std::size_t) { return SparseRow{}; });
}

OperatorMatrix euler(std::string label) {
  auto entry = [](std::size_t n, std::size_t k) {
    if (k > n) return OperatorEntry(1, 1);
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), n, k);
    mpz_class p = mpz_class(1) << n;
    Rational q(c, p);
    q.canonicalize();
    return OperatorEntry::scalar(Scalar(q));
  };
  auto row = [](std::size_t n) {
    SparseRow r;
    mpz_class p = mpz_class(1) << n, c = 1;
    for (std::size_t k = 0; k <= n; ++k) {
      Rational q(c, p);
      q.canonicalize();
      r.emplace_back(k, OperatorEntry::scalar(Scalar(q)));
      c = c * (n - k) / (k + 1);
    }
    return r;
  };
  return OperatorMatrix(std::move(label), 1, 1, entry, support_fn(lower_triangle), Scalar(1), row);
}

OperatorMatrix signed_cesaro(std::string label) {
  auto entry = [](std::size_t n, std::size_t k) {
    if (k > n) return OperatorEntry(1, 1);
    Scalar v = inverse(n + 1);
    return OperatorEntry::scalar(k % 2 ? -v : v);
  };
  return OperatorMatrix(std::move(label), 1, 1, entry, support_fn(lower_triangle), Scalar(1));
}

OperatorMatrix lower_ones(std::string label) {
  auto entry = [](std::size_t n, std::size_t k) { return OperatorEntry::scalar(Scalar(k <= n ? 1 : 0)); };
  return OperatorMatrix(std::move(label), 1, 1, entry, support_fn(lower_triangle), std::nullopt);
}

OperatorMatrix all_ones(std::string label) {
  auto entry = [](std::size_t, std::size_t) { return OperatorEntry::scalar(Scalar(1)); };
  return OperatorMatrix(std::move(label), 1, 1, entry, ConstantTail{[](std::size_t) { return std::size_t{0}; }},
                        std::nullopt);
}

OperatorMatrix column(std::size_t k0, std::string label) {
  auto entry = [k0](std::size_t, std::size_t k) { return OperatorEntry::scalar(Scalar(k == k0 ? 1 : 0)); };
  auto support = [k0](std::size_t) { return std::optional(std::pair<std::size_t, std::size_t>(k0, k0)); };
  return OperatorMatrix(std::move(label), 1, 1, entry, support_fn(support), Scalar(1));
}

OperatorMatrix diagonal_decay(std::string label) {
  auto entry = [](std::size_t n, std::size_t k) {
    return OperatorEntry::scalar(k == n ? inverse(n + 1) : Scalar(0));
  };
  return OperatorMatrix(std::move(label), 1, 1, entry, support_fn(diagonal), Scalar(1));
}

OperatorMatrix alternating_diagonal(std::string label) {
  auto entry = [](std::size_t n, std::size_t k) {
    return OperatorEntry::scalar(Scalar(k == n ? (n % 2 ? -1 : 1) : 0));
  };
  return OperatorMatrix(std::move(label), 1, 1, entry, support_fn(diagonal), Scalar(1));
}

OperatorMatrix unit_mass(std::size_t step, std::size_t offset, std::string label) {
  auto entry = [step, offset](std::size_t n, std::size_t k) {
    return OperatorEntry::scalar(Scalar(k == step * n + offset ? 1 : 0));
  };
  auto support = [step, offset](std::size_t n) {
    std::size_t c = step * n + offset;
    return std::optional(std::pair<std::size_t, std::size_t>(c, c));
  };
  return OperatorMatrix(std::move(label), 1, 1, entry, support_fn(support), Scalar(1));
}

OperatorMatrix geometric(const Scalar& scale, const Scalar& ratio, std::string label) {
  if (!certainly_le(Scalar(0), ratio) || !certainly_lt(ratio, Scalar(1)))
    throw InvalidTailModel("matrix '" + label + "': geometric ratio must lie in [0, 1)");
  auto entry = [scale, ratio](std::size_t, std::size_t k) { return OperatorEntry::scalar(scale * power(ratio, k)); };
  Scalar c = abs(scale);
  GeometricBound tail{[c](std::size_t) { return c; }, ratio};
  return OperatorMatrix(std::move(label), 1, 1, entry, tail, c / (Scalar(1) - ratio));
}

OperatorMatrix scaled(const OperatorMatrix& a, const Scalar& factor, std::string label) {
  auto entry = [a, factor](std::size_t n, std::size_t k) { return factor * a.entry(n, k); };
  TailModel tail = a.tail();
  if (auto* g = std::get_if<GeometricBound>(&tail)) {
    Scalar f = abs(factor);
    tail = GeometricBound{[coeff = g->coeff, f](std::size_t n) { return f * coeff(n); }, g->ratio};
  }
  std::optional<Scalar> bound;
  if (a.norm_bound()) bound = abs(factor) * *a.norm_bound();
  OperatorMatrix::RowFn row;
  if (a.has_sparse_rows()) {
    row = [a, factor](std::size_t n) {
      SparseRow r = a.finite_row(n);
      for (auto& [k, e] : r) e *= factor;
      return r;
    };
  }
  return OperatorMatrix(std::move(label), a.d(), a.m(), entry, tail, bound, row);
}

OperatorMatrix delayed(const OperatorMatrix& a, std::size_t delay, std::string label) {
  auto entry = [a, delay](std::size_t n, std::size_t k) {
    return n < delay ? OperatorEntry(a.m(), a.d()) : a.entry(n, k);
  };
  PerRowTail tail{[a, delay](std::size_t n) { return n < delay ? RowTail::none() : a.row_tail(n); },
                  a.tail_kind()};
  OperatorMatrix::RowFn row;
  if (a.has_sparse_rows())
    row = [a, delay](std::size_t n) { return n < delay ? SparseRow{} : a.finite_row(n); };
  return OperatorMatrix(std::move(label), a.d(), a.m(), entry, tail, a.norm_bound(), row);
}

OperatorMatrix uncertified(const OperatorMatrix& a, std::string label) {
  auto entry = [a](std::size_t n, std::size_t k) { return a.entry(n, k); };
  return OperatorMatrix(std::move(label), a.d(), a.m(), entry, Uncertified{}, std::nullopt);
}

OperatorMatrix banded(std::string label, std::size_t d, std::size_t m, std::size_t lower, std::size_t upper,
                      std::size_t period, const std::map<BandKey, OperatorEntry>& entries) {
  if (period == 0) throw SchemaError("matrix '" + label + "': band period must be at least 1");
  std::vector<Scalar> residue_norm(period, Scalar(0));
  for (const auto& [key, e] : entries) {
    if (key.residue >= period)
      throw SchemaError("matrix '" + label + "': residue " + std::to_string(key.residue) + " >= period");
    if (key.offset < -static_cast<long>(lower) || key.offset > static_cast<long>(upper))
      throw InvalidTailModel("matrix '" + label + "': entry at offset " + std::to_string(key.offset) +
                             " lies outside the declared band [-" + std::to_string(lower) + ", " +
                             std::to_string(upper) + "]");
    if (e.rows() != m || e.cols() != d) throw DimensionMismatch("matrix '" + label + "': band entry shape");
    residue_norm[key.residue] += entry_norm(e);
  }
  Scalar bound(0);
  for (const auto& v : residue_norm) bound = max(bound, v);
  auto table = std::make_shared<const std::map<BandKey, OperatorEntry>>(entries);
  auto entry = [table, period, d, m](std::size_t n, std::size_t k) {
    long off = static_cast<long>(k) - static_cast<long>(n);
    auto it = table->find(BandKey{n % period, off});
    return it == table->end() ? OperatorEntry(m, d) : it->second;
  };
  auto row = [table, period](std::size_t n) {
    SparseRow r;
    for (const auto& [key, e] : *table) {
      if (key.residue != n % period) continue;
      long k = static_cast<long>(n) + key.offset;
      if (k >= 0 && !e.is_zero()) r.emplace_back(static_cast<std::size_t>(k), e);
    }
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
  };
  return OperatorMatrix(std::move(label), d, m, entry, Banded{lower, upper}, bound, row);
}

OperatorMatrix dense_prefix(std::string label, std::size_t d, std::size_t m,
                            const std::vector<std::vector<OperatorEntry>>& block,
                            const std::optional<OperatorMatrix>& base) {
  std::size_t cols = block.empty() ? 0 : block[0].size();
  for (const auto& row : block) {
    if (row.size() != cols) throw SchemaError("matrix '" + label + "': dense block rows differ in length");
    for (const auto& e : row)
      if (e.rows() != m || e.cols() != d) throw DimensionMismatch("matrix '" + label + "': dense entry shape");
  }
  if (base) {
    if (base->d() != d || base->m() != m) throw DimensionMismatch("matrix '" + label + "': base dimensions");
    if (base->tail_kind() != RowTail::Kind::Finite)
      throw InvalidTailModel("matrix '" + label + "': dense-prefix base must be finitely supported");
  }
  auto data = std::make_shared<const std::vector<std::vector<OperatorEntry>>>(block);
  std::size_t rows = block.size();
  auto entry = [data, rows, cols, base, d, m](std::size_t n, std::size_t k) {
    if (n < rows && k < cols) return (*data)[n][k];
    return base ? base->entry(n, k) : OperatorEntry(m, d);
  };
  auto support = [data, rows, cols, base](std::size_t n) -> std::optional<std::pair<std::size_t, std::size_t>> {
    std::optional<std::pair<std::size_t, std::size_t>> s;
    auto merge = [&s](std::size_t lo, std::size_t hi) {
      s = s ? std::pair(std::min(s->first, lo), std::max(s->second, hi)) : std::pair(lo, hi);
    };
    if (n < rows)
      for (std::size_t k = 0; k < cols; ++k)
        if (!(*data)[n][k].is_zero()) merge(k, k);
    if (base) {
      RowTail t = base->row_tail(n);
      if (!t.empty) {
        std::size_t lo = n < rows ? std::max(t.lo, cols) : t.lo;
        if (lo <= t.hi) merge(lo, t.hi);
      }
    }
    return s;
  };
  std::optional<Scalar> bound;
  if (!base || base->norm_bound()) {
    Scalar base_bound = base ? *base->norm_bound() : Scalar(0);
    Scalar b = base_bound;
    for (const auto& row : block) {
      Scalar s = base_bound;
      for (const auto& e : row) s += entry_norm(e);
      b = max(b, s);
    }
    bound = b;
  }
  return OperatorMatrix(std::move(label), d, m, entry, support_fn(support), bound);
}

}  // namespace matrices

}  // namespace summa
