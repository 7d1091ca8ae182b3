#include "summa/report.hpp"

#include <algorithm>
#include <sstream>

#include "summa/corpus.hpp"
#include "summa/selection.hpp"
#include "summa/sigma.hpp"
#include "summa/transform.hpp"

namespace summa {

namespace {

Json horizon_json(const HorizonParams& h) {
  Json j = Json::object();
  j["N"] = h.N;
  j["eps"] = scalar_json(h.eps);
  j["tmax"] = h.depth_limit();
  j["minWindow"] = h.window_floor();
  j["nuMax"] = h.nu_max;
  return j;
}

Json verdict_json(Verdict v) { return to_string(v); }

Json optional_vector(const std::optional<Vector>& v) { return v ? vector_json(*v) : Json(nullptr); }

Json selection_json(const SelectionSeq& s, std::size_t rows) {
  Json j = Json::object();
  switch (s.kind()) {
    case SelectionSeq::Kind::EventuallyPeriodic:
      j["kind"] = "eventually-periodic";
      j["prefix"] = s.prefix();
      j["period"] = s.period();
      break;
    case SelectionSeq::Kind::Explicit:
      j["kind"] = "explicit";
      j["prefix"] = s.prefix();
      j["default"] = s.default_nu();
      break;
    case SelectionSeq::Kind::Adversarial:
      j["kind"] = "adversarial";
      j["basis"] = s.basis();
      j["firstRows"] = s.first(std::min(rows, s.prefix().size()));
      break;
    case SelectionSeq::Kind::Split:
      j["kind"] = "split";
      j["ideal"] = s.basis();
      j["members"] = s.period();
      j["firstRows"] = s.first(rows);
      break;
  }
  j["text"] = s.str();
  return j;
}

bool any_failure(const std::vector<ConditionReport>& rs) {
  return std::any_of(rs.begin(), rs.end(), [](const ConditionReport& r) { return r.verdict == Verdict::FailsWithWitness; });
}

void record_conditions(TaskResult& out, std::vector<ConditionReport> rs) {
  out.any_fails = out.any_fails || any_failure(rs);
  Json arr = Json::array();
  for (const auto& r : rs) arr.push_back(condition_json(r));
  if (!out.body.contains("conditions")) out.body["conditions"] = Json::array();
  for (auto& c : arr) out.body["conditions"].push_back(std::move(c));
  for (auto& r : rs) out.conditions.push_back(std::move(r));
}

void run_body(const TaskSpec& t, const HorizonParams& h, const RunOptions& options, Exec exec, TaskResult& out) {
  const std::string& k = t.kind;
  if (k == "check-regular") {
    record_conditions(out, check_regular_family(*t.family, *t.ideal_i, *t.ideal_j, TargetOperator{*t.target}, h,
                                                t.test_sets, exec));
    out.replay_family = t.family;
  } else if (k == "check-maps-zero") {
    record_conditions(out, check_maps_to_zero(*t.family, *t.ideal_j, h, exec));
    out.replay_family = t.family;
  } else if (k == "check-core-inclusion") {
    record_conditions(out, check_core_inclusion((*t.family)[0], *t.ideal_i, h, t.test_sets, exec));
    out.replay_family = t.family;
  } else if (k == "check-uniform-core") {
    record_conditions(out, check_uniform_core_inclusion(*t.family, *t.ideal_i, h, t.test_sets, exec));
    out.replay_family = t.family;
  } else if (k == "check-almost-regular") {
    AlmostRegularReport rep = check_almost_regular((*t.family)[0], *t.sigma, *t.ideal_i, *t.ideal_j,
                                                   TargetOperator{*t.target}, h, t.test_sets, exec);
    record_conditions(out, rep.k_route);
    record_conditions(out, rep.family_route);
    out.body["routesAgree"] = rep.routes_agree;
    std::vector<OperatorMatrix> members;
    for (std::size_t nu = 0; nu < h.nu_max; ++nu) members.push_back(compose_sigma((*t.family)[0], *t.sigma, nu));
    out.replay_family = MatrixFamily(std::move(members));
  } else if (k == "uniform-limit") {
    UniformLimit ul = uniform_limit(*t.family, *t.sequence, *t.ideal_i, h, exec);
    out.any_fails = ul.verdict == Verdict::FailsWithWitness;
    out.body["verdict"] = verdict_json(ul.verdict);
    out.body["eta"] = optional_vector(ul.eta);
    out.body["exact"] = ul.exact;
    out.body["radius"] = scalar_json(ul.radius);
    if (ul.t) out.body["depth"] = *ul.t;
    if (ul.witness_nu) {
      Json w = Json::object();
      w["members"] = Json::array({0, *ul.witness_nu});
      if (ul.witness_n) w["n"] = *ul.witness_n;
      out.body["witness"] = w;
    }
    if (!ul.note.empty()) out.body["note"] = ul.note;
  } else if (k == "theorem-equivalence") {
    EquivalenceReport r = test_theorem_equivalence(*t.family, *t.sequence, *t.ideal_i, h, t.enumeration, exec);
    out.any_fails = r.item_i == Verdict::FailsWithWitness || r.item_ii == Verdict::FailsWithWitness ||
                    r.item_iii == Verdict::FailsWithWitness;
    Json items = Json::object();
    items["i"] = verdict_json(r.item_i);
    items["ii"] = verdict_json(r.item_ii);
    items["iii"] = verdict_json(r.item_iii);
    out.body["items"] = items;
    out.body["eta1"] = optional_vector(r.eta1);
    out.body["eta2"] = optional_vector(r.eta2);
    if (r.witness) {
      out.body["witnessItem"] = r.witness_item;
      out.body["witnessSelection"] = selection_json(*r.witness, 16);
    }
    out.body["selectionsTested"] = r.selections_tested;
    out.body["counterexample"] = r.counterexample;
    if (!r.note.empty()) out.body["note"] = r.note;
  } else if (k == "uniform-limsup") {
    UniformLimsupReport r = verify_uniform_limsup_identity(*t.family, *t.sequence, *t.ideal_i, h, t.enumeration, exec);
    out.any_fails = r.verdict == Verdict::FailsWithWitness;
    out.body["verdict"] = verdict_json(r.verdict);
    out.body["lhs"] = scalar_json(r.lhs);
    out.body["rhsLowerBound"] = scalar_json(r.rhs_lower_bound);
    out.body["adversarialRhs"] = scalar_json(r.adversarial_rhs);
    out.body["selectionsTested"] = r.selections_tested;
    if (r.adversarial) out.body["adversarialSelection"] = selection_json(*r.adversarial, 16);
    if (r.worst) out.body["bestEnumerated"] = selection_json(*r.worst, 16);
  } else if (k == "sigma-limit") {
    SigmaLimit r = sigma_limit(*t.sequence, *t.sigma, *t.ideal_i, h, exec);
    out.any_fails = r.verdict == Verdict::FailsWithWitness;
    out.body["verdict"] = verdict_json(r.verdict);
    out.body["eta"] = optional_vector(r.eta);
    out.body["exact"] = r.exact;
    out.body["allNu"] = r.all_nu;
    out.body["route"] = r.route;
    SigmaMap::SampledCheck c = t.sigma->sampled_check(h.N);
    out.body["sigmaCheck"] = Json{{"injective", c.injective}, {"aperiodic", c.aperiodic}, {"samples", c.samples}};
  } else if (k == "ideal-limit") {
    try {
      IdealLimit l = ideal_lim(*t.sequence, *t.ideal_i, h);
      out.any_fails = !l.eta;
      out.body["verdict"] = l.eta ? "Holds" : "FailsWithWitness";
      out.body["eta"] = optional_vector(l.eta);
      out.body["exact"] = l.exact;
      if (l.t) out.body["depth"] = *l.t;
      if (l.separating)
        out.body["separating"] = Json::array({vector_json(l.separating->first), vector_json(l.separating->second)});
    } catch (const HorizonTooSmall& e) {
      out.body["verdict"] = "UnknownAtHorizon";
      out.body["note"] = e.what();
    }
  } else if (k == "core") {
    auto [lo, hi] = core(*t.sequence, *t.ideal_i, h);
    out.body["liminf"] = scalar_json(lo);
    out.body["limsup"] = scalar_json(hi);
  } else if (k == "transform") {
    const OperatorMatrix& a = (*t.family)[0];
    out.body["inDomain"] = to_string(in_domain(a, *t.sequence, h));
    MatrixNorm norm = matrix_norm(a, h.N, h.truncation_tol(), exec);
    Json nj = Json::object();
    nj["verdict"] = to_string(norm.verdict);
    nj["sup"] = norm.sup ? scalar_json(*norm.sup) : Json(nullptr);
    nj["argmax"] = norm.argmax;
    out.body["norm"] = nj;
    auto rows = transform(a, *t.sequence, std::min(h.N, t.show_rows), h.truncation_tol(), exec);
    Json rj = Json::array();
    for (const auto& r : rows)
      rj.push_back(Json{{"n", r.n}, {"value", vector_json(r.value)}, {"truncError", scalar_json(r.trunc_error)}});
    out.body["rows"] = rj;
  } else if (k == "group-norm-sandwich") {
    corpus::SandwichSummary s = corpus::group_norm_sandwich(t.samples, options.seed);
    out.any_fails = !s.passed();
    out.body["verdict"] = s.passed() ? "Holds" : "FailsWithWitness";
    out.body["samples"] = s.samples;
    out.body["sandwichOk"] = s.sandwich_ok;
    out.body["additiveOk"] = s.additive_ok;
    out.body["seed"] = options.seed;
  }
}

}  // namespace

Json condition_json(const ConditionReport& r) {
  Json j = Json::object();
  j["condition"] = r.condition;
  j["verdict"] = verdict_json(r.verdict);
  j["margin"] = scalar_json(r.margin);
  j["tolerance"] = scalar_json(r.tolerance);
  if (r.depth) j["depth"] = *r.depth;
  j["scope"] = r.scope;
  if (r.witness) {
    const Witness& w = *r.witness;
    Json wj = Json::object();
    wj["quantity"] = w.quantity;
    wj["n"] = w.n;
    wj["nu"] = w.nu;
    if (w.set) wj["set"] = set_json(*w.set);
    if (w.ij) wj["ij"] = Json::array({w.ij->first, w.ij->second});
    wj["value"] = scalar_json(w.value);
    j["witness"] = wj;
  }
  return j;
}

TaskResult run_task(const TaskSpec& task, const RunOptions& options) {
  TaskResult out;
  out.id = task.id;
  out.kind = task.kind;
  out.body = Json::object();
  try {
    out.horizon = task.horizon.resolve(options.flags);
    out.horizon.validate();
    run_body(task, out.horizon, options, options.exec, out);
  } catch (const Error& e) {
    out.ok = false;
    out.error = e.kind();
    out.message = e.what();
  } catch (const std::exception& e) {
    out.ok = false;
    out.message = e.what();
  }
  return out;
}

std::vector<TaskResult> run_document(const SpecDocument& doc, const RunOptions& options) {
  std::vector<TaskResult> results(doc.tasks.size());
  for_each_index(doc.tasks.size(), options.exec,
                 [&](std::size_t i) { results[i] = run_task(doc.tasks[i], options); });
  return results;
}

ReportFormat parse_format(const std::string& text) {
  if (text == "text") return ReportFormat::Text;
  if (text == "json" || text == "machine") return ReportFormat::Json;
  throw SchemaError("unknown report format '" + text + "' (expected text or json)");
}

namespace {

Json result_json(const TaskResult& r) {
  Json j = Json::object();
  j["id"] = r.id;
  j["task"] = r.kind;
  j["status"] = r.ok ? "ok" : "error";
  j["horizon"] = horizon_json(r.horizon);
  if (!r.ok) {
    j["errorKind"] = r.error ? to_string(*r.error) : "Internal";
    j["message"] = r.message;
    return j;
  }
  for (const auto& [key, value] : r.body.items()) j[key] = value;
  return j;
}

std::string leading_letters(const std::string& label) {
  std::size_t i = 0;
  while (i < label.size() && std::isalpha(static_cast<unsigned char>(label[i]))) ++i;
  return label.substr(0, i);
}

void text_conditions(std::ostringstream& os, const std::vector<ConditionReport>& rs) {
  // one summary line per run of labels sharing a letter prefix
  for (std::size_t i = 0; i < rs.size();) {
    std::size_t j = i + 1;
    while (j < rs.size() && leading_letters(rs[j].condition) == leading_letters(rs[i].condition)) ++j;
    bool same = std::all_of(rs.begin() + i, rs.begin() + j, [&](const ConditionReport& r) { return r.verdict == rs[i].verdict; });
    os << "  " << rs[i].condition;
    if (j - i > 1) os << "–" << rs[j - 1].condition;
    os << ": " << (same ? to_string(rs[i].verdict) : "mixed") << "\n";
    i = j;
  }
  for (const auto& r : rs) {
    os << "    " << r.condition;
    for (std::size_t pad = r.condition.size(); pad < 5; ++pad) os << ' ';
    os << to_string(r.verdict) << "  margin " << r.margin.str();
    if (r.witness) {
      const Witness& w = *r.witness;
      os << "  witness " << w.quantity << " n=" << w.n << " nu=" << w.nu;
      if (w.ij) os << " ij=(" << w.ij->first << "," << w.ij->second << ")";
      if (w.set) os << " E=" << w.set->str();
      os << " value " << w.value.str();
    }
    os << "\n";
  }
}

std::string plain(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

std::string emit_report(const std::vector<TaskResult>& results, ArithMode mode, ReportFormat format) {
  if (format == ReportFormat::Json) {
    Json doc = Json::object();
    doc["schemaVersion"] = kSchemaVersion;
    doc["mode"] = to_string(mode);
    Json arr = Json::array();
    for (const auto& r : results) arr.push_back(result_json(r));
    doc["results"] = arr;
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "summa report, mode " << to_string(mode) << ", " << results.size() << " task(s)\n";
  for (const auto& r : results) {
    os << "[" << r.id << "] " << r.kind << "  N=" << r.horizon.N << " eps=" << r.horizon.eps.str() << "\n";
    if (!r.ok) {
      os << "  error " << (r.error ? to_string(*r.error) : "Internal") << ": " << r.message << "\n";
      continue;
    }
    if (!r.conditions.empty()) text_conditions(os, r.conditions);
    for (const auto& [key, value] : r.body.items()) {
      if (key == "conditions") continue;
      if (key == "items") {
        for (const auto& [item, v] : value.items()) os << "  (" << item << ") " << plain(v) << "\n";
        continue;
      }
      os << "  " << key << ": " << plain(value) << "\n";
    }
  }
  return os.str();
}

int exit_code(const std::vector<TaskResult>& results, bool strict) {
  int code = 0;
  for (const auto& r : results) {
    if (r.ok) {
      if (strict && r.any_fails) code = std::max(code, 1);
      continue;
    }
    bool schema = r.error && is_schema_kind(*r.error);
    code = schema ? 2 : std::max(code == 2 ? 2 : code, 3);
  }
  return code;
}

ReplayOutcome replay(const SpecDocument& doc, const std::vector<TaskResult>& results, const std::string& target) {
  ReplayOutcome out;
  auto slash = target.rfind('/');
  if (slash == std::string::npos) throw SchemaError("--replay-witness expects <taskId>/<condition>");
  std::string id = target.substr(0, slash), label = target.substr(slash + 1);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const TaskResult& r = results[i];
    if (r.id != id) continue;
    if (!r.ok) {
      out.message = "task '" + id + "' did not run: " + r.message;
      return out;
    }
    for (const auto& c : r.conditions) {
      if (c.condition != label || !c.witness) continue;
      out.found = true;
      out.witness = *c.witness;
      const TaskSpec& task = doc.tasks[i];
      MatrixFamily fam = *r.replay_family;
      if (task.kind == "check-almost-regular" && label == "K1") fam = *task.family;
      std::optional<TargetOperator> t;
      if (task.target) t = TargetOperator{*task.target};
      out.replayed = replay_witness(fam, *c.witness, t, r.horizon.truncation_tol());
      Truth same = equal(out.replayed, c.witness->value);
      out.reproduced = out.replayed.is_exact() && c.witness->value.is_exact() ? out.replayed == c.witness->value
                                                                             : same != Truth::False;
      out.message = id + "/" + label + ": " + c.witness->quantity + " at n=" + std::to_string(c.witness->n) +
                    " nu=" + std::to_string(c.witness->nu) + " recomputes to " + out.replayed.str() + " (reported " +
                    c.witness->value.str() + ")" + (out.reproduced ? ", reproduced" : ", NOT reproduced");
      return out;
    }
    out.message = "task '" + id + "' has no witness for condition '" + label + "'";
    return out;
  }
  out.message = "no task with id '" + id + "'";
  return out;
}

}  // namespace summa
