#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "summa/entry.hpp"

namespace summa {

/// What is certified about row n beyond the entries actually generated.
struct RowTail {
  enum class Kind { Finite, Geometric, ConstantFrom, Uncertified };
  Kind kind = Kind::Uncertified;
  // Finite: A_{n,k} = 0 unless lo <= k <= hi (no nonzero entries when empty).
  bool empty = false;
  std::size_t lo = 0;
  std::size_t hi = 0;
  // Geometric: ||A_{n,k}|| <= coeff * ratio^k.
  Scalar coeff;
  Scalar ratio;
  // ConstantFrom: A_{n,k} = A_{n,from} for every k >= from.
  std::size_t from = 0;

  static RowTail finite(std::size_t lo, std::size_t hi);
  static RowTail none() {
    RowTail t;
    t.kind = Kind::Finite;
    t.empty = true;
    return t;
  }
};

struct FiniteSupport {
  // nonzero entries of row n lie in [lo, hi]; nullopt for a zero row
  std::function<std::optional<std::pair<std::size_t, std::size_t>>(std::size_t)> support;
};
struct Banded {
  std::size_t lower = 0;  // entries allowed for n - lower <= k <= n + upper
  std::size_t upper = 0;
};
struct GeometricBound {
  std::function<Scalar(std::size_t)> coeff;
  Scalar ratio;
};
struct ConstantTail {
  std::function<std::size_t(std::size_t)> from;
};
struct PerRowTail {
  std::function<RowTail(std::size_t)> row;
  RowTail::Kind uniform_kind = RowTail::Kind::Uncertified;  // shared by every row, if any
};
struct Uncertified {};

using TailModel = std::variant<FiniteSupport, Banded, GeometricBound, ConstantTail, PerRowTail, Uncertified>;

using SparseRow = std::vector<std::pair<std::size_t, OperatorEntry>>;

/// Infinite matrix of m x d blocks given by a pure generator (n, k) -> A_{n,k}.
/// Copies share the generator.
class OperatorMatrix {
 public:
  using EntryFn = std::function<OperatorEntry(std::size_t, std::size_t)>;
  using RowFn = std::function<SparseRow(std::size_t)>;

  OperatorMatrix(std::string label, std::size_t d, std::size_t m, EntryFn entry, TailModel tail,
                 std::optional<Scalar> norm_bound = std::nullopt, RowFn sparse_row = {});

  const std::string& label() const { return impl_->label; }
  std::size_t d() const { return impl_->d; }
  std::size_t m() const { return impl_->m; }
  const TailModel& tail() const { return impl_->tail; }
  // certified sup_n sum_k ||A_{n,k}||
  const std::optional<Scalar>& norm_bound() const { return impl_->norm_bound; }

  OperatorEntry entry(std::size_t n, std::size_t k) const;
  RowTail row_tail(std::size_t n) const;
  // Uniform kind of the declared tail model.
  RowTail::Kind tail_kind() const;
  bool has_sparse_rows() const { return static_cast<bool>(impl_->sparse_row); }

  // Nonzero entries of a finite row, ascending in k.
  SparseRow finite_row(std::size_t n) const;
  // Entries k < limit of row n, ascending, zeros skipped.
  SparseRow row_prefix(std::size_t n, std::size_t limit) const;

  OperatorMatrix relabeled(std::string label) const;

 private:
  struct Impl {
    std::string label;
    std::size_t d, m;
    EntryFn entry;
    TailModel tail;
    std::optional<Scalar> norm_bound;
    RowFn sparse_row;
  };
  std::shared_ptr<const Impl> impl_;
};

class MatrixFamily {
 public:
  MatrixFamily() = default;
  explicit MatrixFamily(std::vector<OperatorMatrix> members);

  std::size_t size() const { return members_.size(); }
  std::size_t d() const { return members_.front().d(); }
  std::size_t m() const { return members_.front().m(); }
  const OperatorMatrix& operator[](std::size_t nu) const { return members_[nu]; }
  const std::vector<OperatorMatrix>& members() const { return members_; }
  // max of member bounds when every member is certified
  std::optional<Scalar> norm_bound() const;

 private:
  std::vector<OperatorMatrix> members_;
};

namespace matrices {

OperatorMatrix cesaro(std::size_t d = 1, std::string label = "cesaro");
OperatorMatrix identity(std::size_t d = 1, std::string label = "identity");
OperatorMatrix zero(std::size_t d = 1, std::size_t m = 1, std::string label = "zero");
OperatorMatrix euler(std::string label = "euler");
OperatorMatrix signed_cesaro(std::string label = "signed-cesaro");
OperatorMatrix lower_ones(std::string label = "lower-ones");
OperatorMatrix all_ones(std::string label = "ones");
OperatorMatrix column(std::size_t k0, std::string label = "column");
OperatorMatrix diagonal_decay(std::string label = "diagonal-decay");
OperatorMatrix alternating_diagonal(std::string label = "alternating-diagonal");
OperatorMatrix unit_mass(std::size_t step, std::size_t offset, std::string label);
OperatorMatrix geometric(const Scalar& scale, const Scalar& ratio, std::string label = "geometric");
OperatorMatrix scaled(const OperatorMatrix& a, const Scalar& factor, std::string label);
OperatorMatrix delayed(const OperatorMatrix& a, std::size_t delay, std::string label);
OperatorMatrix uncertified(const OperatorMatrix& a, std::string label);

struct BandKey {
  std::size_t residue;
  long offset;
  auto operator<=>(const BandKey&) const = default;
};
// Entry A_{n, n+offset} = entries[(n mod period, offset)], zero elsewhere.
OperatorMatrix banded(std::string label, std::size_t d, std::size_t m, std::size_t lower, std::size_t upper,
                      std::size_t period, const std::map<BandKey, OperatorEntry>& entries);
// Explicit block for n < block.size(), k < block[n].size(); base (or zero) elsewhere.
OperatorMatrix dense_prefix(std::string label, std::size_t d, std::size_t m,
                            const std::vector<std::vector<OperatorEntry>>& block,
                            const std::optional<OperatorMatrix>& base);

}  // namespace matrices

}  // namespace summa
