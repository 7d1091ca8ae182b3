#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "summa/entry.hpp"

namespace summa {

struct EventuallyConstantTail {
  Vector value;
  std::size_t from = 0;
};

struct PeriodicTail {
  std::vector<Vector> block;
  std::size_t from = 0;
};

struct FormulaTail {
  std::optional<Scalar> bound;  // sup_k ||x_k|| when known
};

using SequenceTail = std::variant<EventuallyConstantTail, PeriodicTail, FormulaTail>;

/// A sequence in R^d. Decidable tails (eventually constant or eventually
/// periodic) are stored as data; formula sequences carry a generator.
class VectorSequence {
 public:
  using Generator = std::function<Vector(std::size_t)>;

  static VectorSequence eventually_constant(std::string label, std::vector<Vector> prefix, Vector value);
  static VectorSequence periodic(std::string label, std::vector<Vector> block,
                                 std::vector<Vector> prefix = {});
  static VectorSequence formula(std::string label, std::size_t dim, Generator term,
                                std::optional<Scalar> bound);

  // Scalar conveniences.
  static VectorSequence scalar_periodic(std::string label, const std::vector<Scalar>& block,
                                        const std::vector<Scalar>& prefix = {});
  static VectorSequence scalar_constant(std::string label, const Scalar& value,
                                        const std::vector<Scalar>& prefix = {});

  // alpha*x + beta*y; decidable when both inputs are.
  static VectorSequence combine(const Scalar& alpha, const VectorSequence& x, const Scalar& beta,
                                const VectorSequence& y, std::string label);

  const std::string& label() const { return label_; }
  std::size_t dim() const { return dim_; }
  const SequenceTail& tail() const { return tail_; }
  bool decidable() const { return !std::holds_alternative<FormulaTail>(tail_); }
  std::optional<Scalar> bound() const;

  Vector term(std::size_t k) const;
  Vector operator[](std::size_t k) const { return term(k); }

  // Decidable tails only: prefix terms and the repeating block.
  const std::vector<Vector>& prefix() const { return prefix_; }
  std::vector<Vector> block() const;
  std::size_t tail_start() const { return prefix_.size(); }

  VectorSequence relabeled(std::string label) const;

 private:
  std::string label_;
  std::size_t dim_ = 1;
  std::vector<Vector> prefix_;
  SequenceTail tail_;
  std::shared_ptr<const Generator> generator_;
};

// Dyadic pairing n = 2^i (2j+1) - 1, a bijection omega x omega -> omega.
std::size_t pair_index(std::size_t i, std::size_t j);
std::pair<std::size_t, std::size_t> unpair_index(std::size_t n);

// Views a double sequence x_{i,j} as a single sequence through the pairing.
VectorSequence from_double_sequence(std::string label, std::size_t dim,
                                    std::function<Vector(std::size_t, std::size_t)> term,
                                    std::optional<Scalar> bound);

}  // namespace summa
