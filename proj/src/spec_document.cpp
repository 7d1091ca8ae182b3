#include "summa/spec_document.hpp"

#include <algorithm>
#include <set>

#include "summa/errors.hpp"

namespace summa {

const std::vector<std::string>& task_kinds() {
  static const std::vector<std::string> kinds = {
      "check-regular",        "check-core-inclusion", "check-maps-zero", "check-uniform-core",
      "uniform-limit",        "theorem-equivalence",  "uniform-limsup",  "check-almost-regular",
      "sigma-limit",          "ideal-limit",          "core",            "transform",
      "group-norm-sandwich"};
  return kinds;
}

// ---- JSON helpers ---------------------------------------------------------------

Json scalar_json(const Scalar& s) { return s.str(); }

Json vector_json(const Vector& v) {
  if (v.size() == 1) return scalar_json(v[0]);
  Json a = Json::array();
  for (const auto& s : v) a.push_back(scalar_json(s));
  return a;
}

Json set_json(const SetDescriptor& s) {
  Json j = Json::object();
  Json p = Json::array();
  for (auto [step, first] : s.progressions()) p.push_back(Json::array({step, first}));
  j["progressions"] = p;
  j["include"] = s.included();
  return j;
}

namespace {

std::string where(const std::string& ctx, const std::string& key) { return ctx + "." + key; }

const Json& need(const Json& obj, const std::string& key, const std::string& ctx) {
  if (!obj.is_object()) throw SchemaError(ctx + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where(ctx, key) + " is required");
  return *it;
}

const Json* maybe(const Json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::size_t as_index(const Json& v, const std::string& ctx) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw SchemaError(ctx + " must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::size_t index_or(const Json& obj, const std::string& key, std::size_t fallback, const std::string& ctx) {
  const Json* v = maybe(obj, key);
  return v ? as_index(*v, where(ctx, key)) : fallback;
}

std::string as_string(const Json& v, const std::string& ctx) {
  if (!v.is_string()) throw SchemaError(ctx + " must be a string");
  return v.get<std::string>();
}

std::vector<std::size_t> index_list(const Json& v, const std::string& ctx) {
  if (!v.is_array()) throw SchemaError(ctx + " must be an array of indices");
  std::vector<std::size_t> out;
  for (const auto& e : v) out.push_back(as_index(e, ctx));
  return out;
}

Scalar as_scalar(const Json& v, ArithMode mode, const std::string& ctx) {
  if (v.is_string()) return Scalar::parse(v.get<std::string>(), mode);
  if (v.is_number_integer()) return Scalar(v.get<long>()).in_mode(mode);
  throw SchemaError(ctx + " must be a rational string such as \"1/2\"");
}

Vector as_vector(const Json& v, std::size_t dim, ArithMode mode, const std::string& ctx) {
  if (!v.is_array()) {
    if (dim != 1) throw DimensionMismatch(ctx + " must have " + std::to_string(dim) + " components");
    return {as_scalar(v, mode, ctx)};
  }
  if (v.size() != dim)
    throw DimensionMismatch(ctx + " has " + std::to_string(v.size()) + " components, expected " +
                            std::to_string(dim));
  Vector out;
  for (const auto& e : v) out.push_back(as_scalar(e, mode, ctx));
  return out;
}

std::vector<Vector> as_vectors(const Json& v, std::size_t dim, ArithMode mode, const std::string& ctx) {
  if (!v.is_array()) throw SchemaError(ctx + " must be an array");
  std::vector<Vector> out;
  for (const auto& e : v) out.push_back(as_vector(e, dim, mode, ctx));
  return out;
}

OperatorEntry as_entry(const Json& v, std::size_t m, std::size_t d, ArithMode mode, const std::string& ctx) {
  if (!v.is_array()) {
    if (m != 1 || d != 1) throw DimensionMismatch(ctx + " must be an m x d array");
    return OperatorEntry::scalar(as_scalar(v, mode, ctx));
  }
  if (v.size() != m) throw DimensionMismatch(ctx + " must have " + std::to_string(m) + " rows");
  std::vector<Scalar> data;
  for (const auto& row : v) {
    if (!row.is_array() || row.size() != d)
      throw DimensionMismatch(ctx + " rows must have " + std::to_string(d) + " entries");
    for (const auto& e : row) data.push_back(as_scalar(e, mode, ctx));
  }
  return OperatorEntry(m, d, std::move(data));
}

}  // namespace

SetDescriptor parse_set(const Json& j) {
  if (j.is_array()) return SetDescriptor::finite(index_list(j, "set"));
  if (!j.is_object()) throw SchemaError("a set descriptor is an array of indices or an object");
  std::vector<std::pair<std::size_t, std::size_t>> progs;
  if (const Json* p = maybe(j, "progressions")) {
    if (!p->is_array()) throw SchemaError("set.progressions must be an array of [step, offset] pairs");
    for (const auto& pair : *p) {
      if (!pair.is_array() || pair.size() != 2) throw SchemaError("set.progressions entries are [step, offset]");
      std::size_t a = as_index(pair[0], "set.progressions step"), b = as_index(pair[1], "set.progressions offset");
      if (a == 0) throw SchemaError("set.progressions step must be positive");
      progs.emplace_back(a, b);
    }
  }
  std::vector<std::size_t> include, exclude;
  if (const Json* p = maybe(j, "include")) include = index_list(*p, "set.include");
  if (const Json* p = maybe(j, "exclude")) exclude = index_list(*p, "set.exclude");
  for (const auto& [key, _] : j.items())
    if (key != "progressions" && key != "include" && key != "exclude")
      throw SchemaError("unknown set descriptor field '" + key + "'");
  return SetDescriptor::from_parts(progs, include, exclude);
}

// ---- definitions -----------------------------------------------------------------

namespace {

struct Parser {
  ArithMode mode;
  SpecDocument& doc;

  template <class Map>
  const typename Map::mapped_type& lookup(const Map& map, const Json& label, const char* what,
                                          const std::string& ctx) const {
    std::string key = as_string(label, ctx);
    auto it = map.find(key);
    if (it == map.end()) throw UnknownLabel(std::string("unknown ") + what + " '" + key + "' in " + ctx);
    return it->second;
  }

  const OperatorMatrix& matrix(const Json& label, const std::string& ctx) const {
    return lookup(doc.matrices, label, "matrix", ctx);
  }

  MatrixFamily family(const Json& v, const std::string& ctx) const {
    std::vector<OperatorMatrix> members;
    if (v.is_string()) {
      members.push_back(matrix(v, ctx));
    } else if (v.is_array() && !v.empty()) {
      for (const auto& l : v) members.push_back(matrix(l, ctx));
    } else {
      throw SchemaError(ctx + " must be a nonempty array of matrix labels");
    }
    return MatrixFamily(std::move(members));
  }

  static void require_square_scalar(std::size_t d, std::size_t m, const std::string& ctx) {
    if (d != 1 || m != 1) throw DimensionMismatch(ctx + " is only defined for d = m = 1");
  }

  OperatorMatrix parse_matrix(const Json& j, const std::string& ctx) const {
    std::string label = as_string(need(j, "label", ctx), where(ctx, "label"));
    std::string kind = as_string(need(j, "kind", ctx), where(ctx, "kind"));
    std::size_t d = index_or(j, "d", 1, ctx);
    std::size_t m = index_or(j, "m", d, ctx);
    if (d == 0 || m == 0) throw SchemaError(ctx + ": d and m must be positive");
    auto square = [&]() {
      if (d != m) throw DimensionMismatch(ctx + ": kind '" + kind + "' needs d = m");
    };
    auto sigma = [&]() -> const SigmaMap& { return lookup(doc.sigmas, need(j, "sigma", ctx), "sigma", ctx); };
    auto check_dims = [&](const OperatorMatrix& a) {
      if (a.d() != d || a.m() != m)
        throw DimensionMismatch(ctx + ": declared " + std::to_string(m) + "x" + std::to_string(d) +
                                " but the definition gives " + std::to_string(a.m()) + "x" + std::to_string(a.d()));
      return a;
    };

    if (kind == "cesaro") return square(), matrices::cesaro(d, label);
    if (kind == "identity") return square(), matrices::identity(d, label);
    if (kind == "zero") return matrices::zero(d, m, label);
    if (kind == "euler") return require_square_scalar(d, m, ctx), matrices::euler(label);
    if (kind == "signed-cesaro") return require_square_scalar(d, m, ctx), matrices::signed_cesaro(label);
    if (kind == "lower-ones") return require_square_scalar(d, m, ctx), matrices::lower_ones(label);
    if (kind == "all-ones") return require_square_scalar(d, m, ctx), matrices::all_ones(label);
    if (kind == "diagonal-decay") return require_square_scalar(d, m, ctx), matrices::diagonal_decay(label);
    if (kind == "alternating-diagonal")
      return require_square_scalar(d, m, ctx), matrices::alternating_diagonal(label);
    if (kind == "column")
      return require_square_scalar(d, m, ctx), matrices::column(as_index(need(j, "column", ctx), ctx), label);
    if (kind == "unit-mass") {
      require_square_scalar(d, m, ctx);
      return matrices::unit_mass(as_index(need(j, "step", ctx), ctx), index_or(j, "offset", 0, ctx), label);
    }
    if (kind == "geometric") {
      require_square_scalar(d, m, ctx);
      return matrices::geometric(as_scalar(need(j, "scale", ctx), mode, where(ctx, "scale")),
                                 as_scalar(need(j, "ratio", ctx), mode, where(ctx, "ratio")), label);
    }
    if (kind == "scaled")
      return check_dims(matrices::scaled(matrix(need(j, "source", ctx), ctx),
                                         as_scalar(need(j, "factor", ctx), mode, where(ctx, "factor")), label));
    if (kind == "delayed")
      return check_dims(
          matrices::delayed(matrix(need(j, "source", ctx), ctx), as_index(need(j, "delay", ctx), ctx), label));
    if (kind == "uncertified") return check_dims(matrices::uncertified(matrix(need(j, "source", ctx), ctx), label));
    if (kind == "rowselect") {
      MatrixFamily fam = family(need(j, "family", ctx), where(ctx, "family"));
      const Json& s = need(j, "selection", ctx);
      std::vector<std::size_t> prefix;
      if (const Json* p = maybe(s, "prefix")) prefix = index_list(*p, where(ctx, "selection.prefix"));
      SelectionSeq sel = maybe(s, "period")
                             ? SelectionSeq::eventually_periodic(
                                   fam.size(), prefix, index_list(*maybe(s, "period"), where(ctx, "selection.period")))
                             : SelectionSeq::explicit_prefix(fam.size(), prefix,
                                                              as_index(need(s, "default", ctx), ctx));
      return check_dims(select_matrix(fam, sel).relabeled(label));
    }
    if (kind == "banded") {
      const Json& band = need(j, "band", ctx);
      std::size_t lower = index_or(band, "lower", 0, ctx), upper = index_or(band, "upper", 0, ctx);
      std::size_t period = index_or(band, "period", 1, ctx);
      if (period == 0) throw SchemaError(ctx + ".band.period must be positive");
      std::map<matrices::BandKey, OperatorEntry> entries;
      const Json& e = need(j, "entries", ctx);
      auto add = [&](std::size_t r, long off, const Json& value) {
        if (r >= period) throw SchemaError(ctx + ": residue " + std::to_string(r) + " is not below the period");
        entries[{r, off}] = as_entry(value, m, d, mode, where(ctx, "entries"));
      };
      if (e.is_array()) {
        for (const auto& item : e) {
          const Json& off = need(item, "offset", ctx);
          if (!off.is_number_integer()) throw SchemaError(ctx + ".entries offset must be an integer");
          add(index_or(item, "residue", 0, ctx), off.get<long>(), need(item, "value", ctx));
        }
      } else if (e.is_object()) {
        for (const auto& [key, value] : e.items()) {
          auto comma = key.find(',');
          if (comma == std::string::npos) throw SchemaError(ctx + ".entries keys are \"residue,offset\"");
          try {
            add(std::stoul(key.substr(0, comma)), std::stol(key.substr(comma + 1)), value);
          } catch (const std::logic_error&) {
            throw SchemaError(ctx + ".entries key '" + key + "' is not \"residue,offset\"");
          }
        }
      } else {
        throw SchemaError(ctx + ".entries must be an array or an object");
      }
      return matrices::banded(label, d, m, lower, upper, period, entries);
    }
    if (kind == "dense-prefix") {
      const Json& block = need(j, "block", ctx);
      if (!block.is_array()) throw SchemaError(ctx + ".block must be an array of rows");
      std::vector<std::vector<OperatorEntry>> rows;
      for (const auto& row : block) {
        if (!row.is_array()) throw SchemaError(ctx + ".block rows must be arrays");
        std::vector<OperatorEntry> r;
        for (const auto& e : row) r.push_back(as_entry(e, m, d, mode, where(ctx, "block")));
        rows.push_back(std::move(r));
      }
      std::optional<OperatorMatrix> base;
      if (const Json* b = maybe(j, "base")) base = check_dims(matrix(*b, where(ctx, "base")));
      return matrices::dense_prefix(label, d, m, rows, base);
    }
    if (kind == "sigma") {
      square();
      return sigma_matrix(sigma(), index_or(j, "nu", 0, ctx), d).relabeled(label);
    }
    if (kind == "sigma-compose")
      return check_dims(
          compose_sigma(matrix(need(j, "source", ctx), ctx), sigma(), index_or(j, "nu", 0, ctx)).relabeled(label));
    throw SchemaError(ctx + ": unknown matrix kind '" + kind + "'");
  }

  VectorSequence parse_sequence(const Json& j, const std::string& ctx) const {
    std::string label = as_string(need(j, "label", ctx), where(ctx, "label"));
    std::string kind = as_string(need(j, "kind", ctx), where(ctx, "kind"));
    std::size_t d = index_or(j, "d", 1, ctx);
    if (d == 0) throw SchemaError(ctx + ": d must be positive");
    std::vector<Vector> prefix;
    if (const Json* p = maybe(j, "prefix")) prefix = as_vectors(*p, d, mode, where(ctx, "prefix"));
    if (kind == "periodic") {
      auto block = as_vectors(need(j, "block", ctx), d, mode, where(ctx, "block"));
      if (block.empty()) throw SchemaError(ctx + ".block must be nonempty");
      return VectorSequence::periodic(label, block, prefix);
    }
    if (kind == "eventually-constant")
      return VectorSequence::eventually_constant(label, prefix, as_vector(need(j, "value", ctx), d, mode, ctx));
    if (kind == "indicator") {
      if (d != 1) throw DimensionMismatch(ctx + ": indicator sequences are scalar");
      SetDescriptor s = parse_set(need(j, "set", ctx));
      std::vector<Scalar> pre, block;
      for (std::size_t k = 0; k < s.threshold(); ++k) pre.push_back(Scalar(s.contains(k) ? 1 : 0));
      for (std::size_t r = 0; r < s.period(); ++r) block.push_back(Scalar(s.contains(s.threshold() + r) ? 1 : 0));
      return VectorSequence::scalar_periodic(label, block, pre);
    }
    if (kind == "harmonic") {
      if (d != 1) throw DimensionMismatch(ctx + ": harmonic sequences are scalar");
      Scalar c = maybe(j, "scale") ? as_scalar(j["scale"], mode, where(ctx, "scale")) : Scalar(1).in_mode(mode);
      return VectorSequence::formula(
          label, 1, [c](std::size_t k) { return Vector{c / Scalar(static_cast<long>(k + 1))}; }, abs(c));
    }
    if (kind == "linear") {
      if (d != 1) throw DimensionMismatch(ctx + ": linear sequences are scalar");
      return VectorSequence::formula(
          label, 1, [](std::size_t k) { return Vector{Scalar(static_cast<long>(k))}; }, std::nullopt);
    }
    throw SchemaError(ctx + ": unknown sequence kind '" + kind + "'");
  }

  IdealSpec parse_ideal(const Json& j, const std::string& ctx) const {
    std::string label = as_string(need(j, "label", ctx), where(ctx, "label"));
    std::string kind = as_string(need(j, "kind", ctx), where(ctx, "kind"));
    if (kind == "fin") return IdealSpec::fin(label);
    if (kind == "density-zero") return IdealSpec::density_zero(label);
    if (kind == "dyadic") return IdealSpec::dyadic(label);
    if (kind == "generated") return IdealSpec::generated_by(label, parse_set(need(j, "generator", ctx)));
    if (kind == "countably-generated") {
      const Json& base = need(j, "dualBase", ctx);
      if (base.is_string()) {
        std::string g = base.get<std::string>();
        if (g == "tails") return IdealSpec::fin(label);
        if (g == "dyadic") return IdealSpec::dyadic(label);
        throw SchemaError(ctx + ".dualBase: unknown generator '" + g + "'");
      }
      if (!base.is_array() || base.empty()) throw SchemaError(ctx + ".dualBase must be a nonempty array of sets");
      std::vector<SetDescriptor> sets;
      for (const auto& s : base) sets.push_back(parse_set(s));
      return IdealSpec::from_dual_sets(label, sets);
    }
    throw SchemaError(ctx + ": unknown ideal kind '" + kind + "'");
  }

  SigmaMap parse_sigma(const Json& j, const std::string& ctx) const {
    std::string label = as_string(need(j, "label", ctx), where(ctx, "label"));
    std::string kind = as_string(need(j, "kind", ctx), where(ctx, "kind"));
    if (kind == "shift") return SigmaMap::shift(label);
    if (kind == "affine")
      return SigmaMap::affine(as_index(need(j, "a", ctx), ctx), as_index(need(j, "b", ctx), ctx), label);
    if (kind == "blocks") return SigmaMap::blocks(index_list(need(j, "perm", ctx), where(ctx, "perm")), label);
    throw SchemaError(ctx + ": unknown sigma kind '" + kind + "'");
  }

  HorizonOverrides parse_horizon(const Json& j, const std::string& ctx) const {
    if (!j.is_object()) throw SchemaError(ctx + " must be an object");
    HorizonOverrides h;
    for (const auto& [key, v] : j.items()) {
      if (key == "N") h.N = as_index(v, where(ctx, key));
      else if (key == "eps") h.eps = as_scalar(v, ArithMode::Exact, where(ctx, key));
      else if (key == "tmax") h.tmax = as_index(v, where(ctx, key));
      else if (key == "minWindow") h.min_window = as_index(v, where(ctx, key));
      else if (key == "nuMax") h.nu_max = as_index(v, where(ctx, key));
      else throw SchemaError(ctx + ": unknown horizon field '" + key + "'");
    }
    h.resolve({}).validate();
    return h;
  }

  TaskSpec parse_task(const Json& j, std::size_t index) const {
    std::string ctx = "tasks[" + std::to_string(index) + "]";
    TaskSpec t;
    t.source = j;
    t.kind = as_string(need(j, "task", ctx), where(ctx, "task"));
    const auto& kinds = task_kinds();
    if (std::find(kinds.begin(), kinds.end(), t.kind) == kinds.end())
      throw SchemaError(ctx + ": unknown task '" + t.kind + "'");
    t.id = maybe(j, "id") ? as_string(j["id"], where(ctx, "id")) : "task-" + std::to_string(index);
    static const std::set<std::string> known = {"id",     "task",     "family",  "matrix",   "sequence",
                                                "ideal",  "idealI",   "idealJ",  "sigma",    "target",
                                                "testSets", "enum",   "horizon", "samples",  "rows"};
    for (const auto& [key, _] : j.items())
      if (!known.count(key)) throw SchemaError(ctx + ": unknown task field '" + key + "'");

    if (const Json* v = maybe(j, "family")) t.family = family(*v, where(ctx, "family"));
    if (const Json* v = maybe(j, "matrix")) {
      if (t.family) throw SchemaError(ctx + ": give either 'family' or 'matrix'");
      t.family = MatrixFamily({matrix(*v, where(ctx, "matrix"))});
    }
    if (const Json* v = maybe(j, "sequence")) t.sequence = lookup(doc.sequences, *v, "sequence", ctx);
    if (const Json* v = maybe(j, "idealI")) t.ideal_i = lookup(doc.ideals, *v, "ideal", ctx);
    if (const Json* v = maybe(j, "ideal")) {
      if (t.ideal_i) throw SchemaError(ctx + ": give either 'ideal' or 'idealI'");
      t.ideal_i = lookup(doc.ideals, *v, "ideal", ctx);
    }
    if (const Json* v = maybe(j, "idealJ")) t.ideal_j = lookup(doc.ideals, *v, "ideal", ctx);
    if (const Json* v = maybe(j, "sigma")) t.sigma = lookup(doc.sigmas, *v, "sigma", ctx);
    if (const Json* v = maybe(j, "testSets")) {
      if (!v->is_array()) throw SchemaError(ctx + ".testSets must be an array");
      for (const auto& s : *v) t.test_sets.push_back(parse_set(s));
    }
    if (const Json* v = maybe(j, "enum")) {
      t.enumeration.prefix = index_or(*v, "prefix", t.enumeration.prefix, ctx);
      t.enumeration.period = index_or(*v, "period", t.enumeration.period, ctx);
      t.enumeration.budget = index_or(*v, "budget", t.enumeration.budget, ctx);
      if (t.enumeration.period == 0) throw SchemaError(ctx + ".enum.period must be at least 1");
    }
    if (const Json* v = maybe(j, "horizon")) t.horizon = parse_horizon(*v, where(ctx, "horizon"));
    t.samples = index_or(j, "samples", t.samples, ctx);
    t.show_rows = index_or(j, "rows", t.show_rows, ctx);

    auto require = [&](bool ok, const char* field) {
      if (!ok) throw SchemaError(ctx + ": task '" + t.kind + "' needs '" + field + "'");
    };
    const std::string& k = t.kind;
    bool needs_family = k != "sigma-limit" && k != "ideal-limit" && k != "core" && k != "group-norm-sandwich";
    bool needs_sequence = k == "uniform-limit" || k == "theorem-equivalence" || k == "uniform-limsup" ||
                          k == "sigma-limit" || k == "ideal-limit" || k == "core" || k == "transform";
    bool needs_i = k == "check-regular" || k == "check-core-inclusion" || k == "check-uniform-core" ||
                   k == "check-almost-regular" || (needs_sequence && k != "transform");
    bool needs_j = k == "check-regular" || k == "check-maps-zero" || k == "check-almost-regular";
    bool single = k == "check-core-inclusion" || k == "check-almost-regular" || k == "transform";
    if (needs_family) require(t.family.has_value(), "family");
    if (needs_sequence) require(t.sequence.has_value(), "sequence");
    if (needs_i) require(t.ideal_i.has_value(), k == "check-regular" ? "idealI" : "ideal");
    if (needs_j) require(t.ideal_j.has_value(), "idealJ");
    if (k == "check-almost-regular" || k == "sigma-limit") require(t.sigma.has_value(), "sigma");
    if (single && t.family && t.family->size() != 1)
      throw SchemaError(ctx + ": task '" + k + "' takes a single matrix");
    if (t.family && t.sequence && t.sequence->dim() != t.family->d())
      throw DimensionMismatch(ctx + ": sequence '" + t.sequence->label() + "' has dimension " +
                              std::to_string(t.sequence->dim()) + " but the matrices expect " +
                              std::to_string(t.family->d()));
    if (k == "check-regular" || k == "check-almost-regular") {
      std::size_t m = t.family->m(), d = t.family->d();
      if (const Json* v = maybe(j, "target")) {
        t.target = as_entry(*v, m, d, mode, where(ctx, "target"));
      } else {
        if (m != d) throw SchemaError(ctx + ": 'target' is required when m != d");
        t.target = OperatorEntry::identity(d, Scalar(1).in_mode(mode));
      }
    }
    return t;
  }
};

const Json& section(const Json& root, const char* key) {
  static const Json empty = Json::array();
  auto it = root.find(key);
  if (it == root.end()) return empty;
  if (!it->is_array()) throw SchemaError(std::string("top-level '") + key + "' must be an array");
  return *it;
}

template <class Map, class Value>
void insert_unique(Map& map, const std::string& label, Value v, const char* what) {
  if (!map.emplace(label, std::move(v)).second) throw SchemaError(std::string(what) + " label '" + label + "' repeats");
}

}  // namespace

HorizonParams HorizonOverrides::resolve(const HorizonOverrides& flags) const {
  HorizonParams h;
  if (auto v = flags.N ? flags.N : N) h.N = *v;
  if (auto v = flags.eps ? flags.eps : eps) h.eps = *v;
  h.tmax = flags.tmax ? flags.tmax : tmax;
  h.min_window = flags.min_window ? flags.min_window : min_window;
  if (auto v = flags.nu_max ? flags.nu_max : nu_max) h.nu_max = *v;
  return h;
}

SpecDocument parse_spec_document(std::string_view text, ArithMode mode) {
  SpecDocument doc;
  doc.mode = mode;
  try {
    Json root = Json::parse(text);
    if (!root.is_object()) throw SchemaError("a spec document must be a JSON object");
    static const std::set<std::string> top = {"schemaVersion", "description", "matrices", "sequences",
                                              "ideals",        "sigmas",      "tasks"};
    for (const auto& [key, _] : root.items())
      if (!top.count(key)) throw SchemaError("unknown top-level key '" + key + "'");
    Parser p{mode, doc};

    const char* order[] = {"ideals", "sigmas", "sequences", "matrices", "tasks"};
    doc.definitions = Json::object();
    for (const char* key : {"matrices", "sequences", "ideals", "sigmas", "tasks"})
      doc.definitions[key] = section(root, key);
    for (const char* key : order) {
      const Json& items = section(root, key);
      std::string name = key;
      for (std::size_t i = 0; i < items.size(); ++i) {
        std::string ctx = name + "[" + std::to_string(i) + "]";
        const Json& j = items[i];
        if (name == "ideals") {
          IdealSpec v = p.parse_ideal(j, ctx);
          insert_unique(doc.ideals, v.label(), v, "ideal");
        } else if (name == "sigmas") {
          SigmaMap v = p.parse_sigma(j, ctx);
          insert_unique(doc.sigmas, v.label(), v, "sigma");
        } else if (name == "sequences") {
          VectorSequence v = p.parse_sequence(j, ctx);
          insert_unique(doc.sequences, v.label(), v, "sequence");
        } else if (name == "matrices") {
          OperatorMatrix v = p.parse_matrix(j, ctx);
          insert_unique(doc.matrices, v.label(), v, "matrix");
        } else {
          TaskSpec t = p.parse_task(j, i);
          for (const auto& other : doc.tasks)
            if (other.id == t.id) throw SchemaError("task id '" + t.id + "' repeats");
          doc.tasks.push_back(std::move(t));
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  return doc;
}

std::string serialize_spec_document(const SpecDocument& doc) { return doc.definitions.dump(2) + "\n"; }

bool structurally_equal(const SpecDocument& a, const SpecDocument& b, std::size_t samples) {
  auto same_keys = [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return false;
    for (auto i = x.begin(), j = y.begin(); i != x.end(); ++i, ++j)
      if (i->first != j->first) return false;
    return true;
  };
  if (a.mode != b.mode) return false;
  if (!same_keys(a.matrices, b.matrices) || !same_keys(a.sequences, b.sequences) || !same_keys(a.ideals, b.ideals) ||
      !same_keys(a.sigmas, b.sigmas) || a.tasks.size() != b.tasks.size())
    return false;
  for (const auto& [label, x] : a.matrices) {
    const OperatorMatrix& y = b.matrices.at(label);
    if (x.d() != y.d() || x.m() != y.m() || x.tail_kind() != y.tail_kind() || x.norm_bound() != y.norm_bound())
      return false;
    for (std::size_t n = 0; n < samples; ++n)
      for (std::size_t k = 0; k < samples; ++k)
        if (!(x.entry(n, k) == y.entry(n, k))) return false;
  }
  for (const auto& [label, x] : a.sequences) {
    const VectorSequence& y = b.sequences.at(label);
    if (x.dim() != y.dim() || x.decidable() != y.decidable() || x.bound() != y.bound()) return false;
    for (std::size_t k = 0; k < samples; ++k)
      if (x.term(k) != y.term(k)) return false;
  }
  for (const auto& [label, x] : a.ideals) {
    const IdealSpec& y = b.ideals.at(label);
    if (x.kind() != y.kind() || x.generator() != y.generator()) return false;
    if (x.has_dual_base())
      for (std::size_t t = 0; t < std::min<std::size_t>(samples, 20); ++t)
        if (!(x.dual_set(t) == y.dual_set(t))) return false;
  }
  for (const auto& [label, x] : a.sigmas) {
    const SigmaMap& y = b.sigmas.at(label);
    for (std::size_t n = 0; n < samples; ++n)
      if (x(n) != y(n)) return false;
  }
  for (std::size_t i = 0; i < a.tasks.size(); ++i)
    if (a.tasks[i].id != b.tasks[i].id || a.tasks[i].source != b.tasks[i].source) return false;
  return true;
}

}  // namespace summa
