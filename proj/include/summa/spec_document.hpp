#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "summa/horizon.hpp"
#include "summa/ideal.hpp"
#include "summa/matrix.hpp"
#include "summa/selection.hpp"
#include "summa/sequence.hpp"
#include "summa/set_descriptor.hpp"
#include "summa/sigma.hpp"

namespace summa {

using Json = nlohmann::ordered_json;

/// Horizon fields a task may set; unset fields fall back to flags, then defaults.
struct HorizonOverrides {
  std::optional<std::size_t> N;
  std::optional<Scalar> eps;
  std::optional<std::size_t> tmax;
  std::optional<std::size_t> min_window;
  std::optional<std::size_t> nu_max;

  HorizonParams resolve(const HorizonOverrides& flags) const;  // flags win over task fields
};

struct TaskSpec {
  std::string id;
  std::string kind;
  std::optional<MatrixFamily> family;
  std::optional<VectorSequence> sequence;
  std::optional<IdealSpec> ideal_i;  // "idealI", or "ideal" for single-ideal tasks
  std::optional<IdealSpec> ideal_j;
  std::optional<SigmaMap> sigma;
  std::optional<OperatorEntry> target;
  std::vector<SetDescriptor> test_sets;
  EnumParams enumeration;
  HorizonOverrides horizon;
  std::size_t samples = 200;  // group-norm-sandwich
  std::size_t show_rows = 8;  // transform
  Json source;                // the task object as written
};

struct SpecDocument {
  ArithMode mode = ArithMode::Exact;
  std::map<std::string, OperatorMatrix> matrices;
  std::map<std::string, VectorSequence> sequences;
  std::map<std::string, IdealSpec> ideals;
  std::map<std::string, SigmaMap> sigmas;
  std::vector<TaskSpec> tasks;
  Json definitions;  // normalized document, used for serialization
};

const std::vector<std::string>& task_kinds();

// Throws SchemaError, DimensionMismatch, UnknownLabel, InvalidTailModel or ModeError.
SpecDocument parse_spec_document(std::string_view text, ArithMode mode);
std::string serialize_spec_document(const SpecDocument& doc);
// Same labels, kinds and dimensions, equal sampled entries and terms, equal tasks.
bool structurally_equal(const SpecDocument& a, const SpecDocument& b, std::size_t samples = 16);

// JSON helpers shared with the report writer.
Json scalar_json(const Scalar& s);
Json vector_json(const Vector& v);
Json set_json(const SetDescriptor& s);
SetDescriptor parse_set(const Json& j);

}  // namespace summa
