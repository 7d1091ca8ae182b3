#include "summa/sequence.hpp"

#include <numeric>

#include "summa/errors.hpp"

namespace summa {

namespace {

void check_dims(const std::vector<Vector>& vs, std::size_t dim, const std::string& label) {
  for (const auto& v : vs)
    if (v.size() != dim) throw DimensionMismatch("sequence '" + label + "' has terms of mixed dimension");
}

std::vector<Vector> wrap(const std::vector<Scalar>& xs) {
  std::vector<Vector> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(Vector{x});
  return out;
}

}  // namespace

VectorSequence VectorSequence::eventually_constant(std::string label, std::vector<Vector> prefix,
                                                   Vector value) {
  VectorSequence s;
  s.label_ = std::move(label);
  s.dim_ = value.size();
  if (s.dim_ == 0) throw DimensionMismatch("sequence dimension must be at least 1");
  check_dims(prefix, s.dim_, s.label_);
  s.prefix_ = std::move(prefix);
  s.tail_ = EventuallyConstantTail{std::move(value), s.prefix_.size()};
  return s;
}

VectorSequence VectorSequence::periodic(std::string label, std::vector<Vector> block,
                                        std::vector<Vector> prefix) {
  if (block.empty()) throw SchemaError("periodic sequence needs a nonempty block");
  VectorSequence s;
  s.label_ = std::move(label);
  s.dim_ = block[0].size();
  if (s.dim_ == 0) throw DimensionMismatch("sequence dimension must be at least 1");
  check_dims(block, s.dim_, s.label_);
  check_dims(prefix, s.dim_, s.label_);
  s.prefix_ = std::move(prefix);
  s.tail_ = PeriodicTail{std::move(block), s.prefix_.size()};
  return s;
}

VectorSequence VectorSequence::formula(std::string label, std::size_t dim, Generator term,
                                       std::optional<Scalar> bound) {
  if (dim == 0) throw DimensionMismatch("sequence dimension must be at least 1");
  VectorSequence s;
  s.label_ = std::move(label);
  s.dim_ = dim;
  s.tail_ = FormulaTail{std::move(bound)};
  s.generator_ = std::make_shared<const Generator>(std::move(term));
  return s;
}

VectorSequence VectorSequence::scalar_periodic(std::string label, const std::vector<Scalar>& block,
                                               const std::vector<Scalar>& prefix) {
  return periodic(std::move(label), wrap(block), wrap(prefix));
}

VectorSequence VectorSequence::scalar_constant(std::string label, const Scalar& value,
                                               const std::vector<Scalar>& prefix) {
  return eventually_constant(std::move(label), wrap(prefix), Vector{value});
}

std::vector<Vector> VectorSequence::block() const {
  if (auto* c = std::get_if<EventuallyConstantTail>(&tail_)) return {c->value};
  if (auto* p = std::get_if<PeriodicTail>(&tail_)) return p->block;
  throw PreconditionError("sequence '" + label_ + "' has no periodic block");
}

Vector VectorSequence::term(std::size_t k) const {
  if (k < prefix_.size()) return prefix_[k];
  if (auto* c = std::get_if<EventuallyConstantTail>(&tail_)) return c->value;
  if (auto* p = std::get_if<PeriodicTail>(&tail_))
    return p->block[(k - prefix_.size()) % p->block.size()];
  Vector v = (*generator_)(k);
  if (v.size() != dim_) throw DimensionMismatch("sequence '" + label_ + "' generated a term of wrong dimension");
  return v;
}

std::optional<Scalar> VectorSequence::bound() const {
  if (auto* f = std::get_if<FormulaTail>(&tail_)) return f->bound;
  Scalar b(0);
  for (const auto& v : prefix_) b = max(b, norm1(v));
  for (const auto& v : block()) b = max(b, norm1(v));
  return b;
}

VectorSequence VectorSequence::relabeled(std::string label) const {
  VectorSequence s = *this;
  s.label_ = std::move(label);
  return s;
}

VectorSequence VectorSequence::combine(const Scalar& alpha, const VectorSequence& x, const Scalar& beta,
                                       const VectorSequence& y, std::string label) {
  if (x.dim() != y.dim()) throw DimensionMismatch("combined sequences differ in dimension");
  auto mix = [alpha, beta](const Vector& a, const Vector& b) { return add(scale(alpha, a), scale(beta, b)); };
  if (x.decidable() && y.decidable()) {
    std::size_t start = std::max(x.tail_start(), y.tail_start());
    std::size_t period = std::lcm(x.block().size(), y.block().size());
    std::vector<Vector> prefix, block;
    for (std::size_t k = 0; k < start; ++k) prefix.push_back(mix(x.term(k), y.term(k)));
    for (std::size_t k = start; k < start + period; ++k) block.push_back(mix(x.term(k), y.term(k)));
    return periodic(std::move(label), std::move(block), std::move(prefix));
  }
  std::optional<Scalar> bound;
  if (x.bound() && y.bound()) bound = abs(alpha) * *x.bound() + abs(beta) * *y.bound();
  return formula(std::move(label), x.dim(), [x, y, mix](std::size_t k) { return mix(x.term(k), y.term(k)); },
                 bound);
}

std::size_t pair_index(std::size_t i, std::size_t j) { return (std::size_t{1} << i) * (2 * j + 1) - 1; }

std::pair<std::size_t, std::size_t> unpair_index(std::size_t n) {
  std::size_t m = n + 1, i = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++i;
  }
  return {i, (m - 1) / 2};
}

VectorSequence from_double_sequence(std::string label, std::size_t dim,
                                    std::function<Vector(std::size_t, std::size_t)> term,
                                    std::optional<Scalar> bound) {
  return VectorSequence::formula(
      std::move(label), dim,
      [term = std::move(term)](std::size_t n) {
        auto [i, j] = unpair_index(n);
        return term(i, j);
      },
      std::move(bound));
}

}  // namespace summa
