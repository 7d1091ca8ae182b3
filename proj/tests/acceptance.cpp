// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <omp.h>

#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "summa/corpus.hpp"
#include "summa/regularity.hpp"
#include "summa/report.hpp"
#include "summa/selection.hpp"
#include "summa/sigma.hpp"
#include "summa/transform.hpp"

using namespace summa;

namespace {

HorizonParams horizon(std::size_t N) {
  HorizonParams h;
  h.N = N;
  return h;
}

const TargetOperator kUnit{OperatorEntry::scalar(Scalar(1))};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail.str("");
    pass = false;
    detail << why << "; ";
  }
};

Outcome sigma_reproduction() {
  Outcome o;
  SigmaLimit l = sigma_limit(corpus::alternating(), SigmaMap::shift(), IdealSpec::fin(), horizon(256));
  if (l.verdict != Verdict::Holds || !l.eta || !l.exact || !(*l.eta)[0].is_exact() ||
      (*l.eta)[0] != Scalar::ratio(1, 2))
    o.fail("sigma limit is " + (l.eta ? (*l.eta)[0].str() : std::string("undefined")));
  else
    o.detail << "sigma-lim = " << (*l.eta)[0].str() << " (exact, route " << l.route << ")";
  return o;
}

Outcome silverman_toeplitz() {
  Outcome o;
  IdealSpec fin = IdealSpec::fin();
  HorizonParams h = horizon(256);
  auto run = [&](const OperatorMatrix& a, std::vector<SetDescriptor> sets) {
    return check_regular_singleton(a, fin, fin, kUnit, h, sets, Exec::Parallel);
  };
  int verdicts = 0;
  for (const auto& a : {matrices::cesaro(), matrices::identity(), matrices::euler()}) {
    if (all_hold(run(a, {})))
      ++verdicts;
    else
      o.fail(a.label() + " not accepted");
  }
  struct Reject {
    OperatorMatrix a;
    std::vector<SetDescriptor> sets;
    std::string condition;
  };
  std::vector<Reject> rejects = {
      {matrices::scaled(matrices::identity(), Scalar(2), "row-sum-2"), {}, "M3"},
      {matrices::column(0, "delta-k0"), {SetDescriptor::finite({0})}, "M4"},
      {matrices::lower_ones(), {}, "M1"},
  };
  for (const auto& r : rejects) {
    auto rs = run(r.a, r.sets);
    const ConditionReport& c = find_condition(rs, r.condition);
    if (c.verdict != Verdict::FailsWithWitness || !c.witness) {
      o.fail(r.a.label() + " not rejected on " + r.condition);
      continue;
    }
    Scalar again = replay_witness(MatrixFamily({r.a}), *c.witness, kUnit, h.truncation_tol());
    if (again != c.witness->value) {
      o.fail(r.a.label() + " witness does not replay");
      continue;
    }
    ++verdicts;
  }
  if (o.pass) o.detail << verdicts << "/6 fixed verdicts, rejection witnesses replay exactly";
  return o;
}

Outcome equivalence_harness() {
  Outcome o;
  // even/odd rows on 1,0,1,0,...
  HorizonParams h = horizon(256);
  auto r = test_theorem_equivalence(corpus::even_odd_family(), corpus::alternating(), IdealSpec::fin(), h, EnumParams{},
                                    Exec::Parallel);
  bool alt_witness = r.witness && r.witness->prefix().empty() && r.witness->period() == std::vector<std::size_t>{0, 1};
  if (r.item_i != Verdict::FailsWithWitness) o.fail("even/odd: (i) not refuted");
  if (!alt_witness) o.fail("even/odd: witness is not the alternating selection");
  if (alt_witness) {
    OperatorMatrix b = select_matrix(corpus::even_odd_family(), *r.witness);
    auto rows = as_sampled(transform(b, corpus::alternating(), h.N, h.truncation_tol(), Exec::Parallel), 1);
    if (ideal_lim(rows, IdealSpec::fin(), h).eta) o.fail("even/odd: witness transform converges");
  }

  // {Cesaro} on convergent input: every selection gives the ordinary limit
  MatrixFamily cesaro({matrices::cesaro()});
  std::size_t convergent = 0;
  for (const auto& c : corpus::convergent_sequences()) {
    auto e = test_theorem_equivalence(cesaro, c.x, IdealSpec::fin(), h, EnumParams{}, Exec::Parallel);
    bool same = e.item_i == Verdict::Holds && e.item_ii == Verdict::Holds && e.item_iii == Verdict::Holds && e.eta1 &&
                e.eta2 && (*e.eta1)[0] == c.limit && (*e.eta2)[0] == c.limit;
    if (same)
      ++convergent;
    else
      o.fail("cesaro on " + c.x.label() + " disagrees");
  }

  // (i) <=> (iii) over the corpus at two horizons
  std::size_t cases = 0, counterexamples = 0;
  for (std::size_t N : {64u, 256u}) {
    for (const auto& c : corpus::equivalence_cases()) {
      auto e = test_theorem_equivalence(c.family, c.x, c.ideal, horizon(N), EnumParams{}, Exec::Parallel);
      ++cases;
      if (e.counterexample) {
        ++counterexamples;
        o.fail(c.name + " at N=" + std::to_string(N) + " is a counterexample");
      }
    }
  }
  if (o.pass)
    o.detail << "alternating witness " << r.witness->str() << "; cesaro agrees on " << convergent
             << " convergent inputs; " << counterexamples << " counterexamples in " << cases / 2
             << " cases x N in {64, 256}";
  return o;
}

Outcome uniform_limsup() {
  Outcome o;
  HorizonParams h = horizon(256);
  std::vector<VectorSequence> xs;
  for (const auto& x : corpus::bounded_sequences())
    if (x.label() == "alternating" || x.label() == "period-3" || x.label() == "damped-signs") xs.push_back(x);
  std::size_t families = 0, runs = 0, selections = 0;
  for (const auto& nf : corpus::scalar_families()) {
    if (nf.family.size() > 3) continue;
    bool ok = true;
    for (const auto& x : xs) {
      auto rep = verify_uniform_limsup_identity(nf.family, x, IdealSpec::fin(), h, EnumParams{2, 3, 4096},
                                                Exec::Parallel);
      ++runs;
      selections += rep.selections_tested;
      if (!(rep.adversarial_rhs.is_exact() && rep.lhs.is_exact() && rep.adversarial_rhs == rep.lhs)) {
        ok = false;
        o.fail(nf.name + "/" + x.label() + ": lhs " + rep.lhs.str() + " vs adversarial " + rep.adversarial_rhs.str());
      }
      if (!certainly_le(rep.rhs_lower_bound, rep.lhs)) {
        ok = false;
        o.fail(nf.name + "/" + x.label() + ": rhs lower bound " + rep.rhs_lower_bound.str() + " above lhs");
      }
    }
    if (ok) ++families;
  }
  if (families < 10) o.fail("only " + std::to_string(families) + " families verified");
  if (o.pass)
    o.detail << families << " families, " << runs << " runs, " << selections
             << " enumerated selections (P<=2, Q<=3); lhs = adversarial rhs exactly";
  return o;
}

Outcome core_inclusion() {
  Outcome o;
  HorizonParams h = horizon(256);
  Scalar slack = Scalar::ratio(1, static_cast<long>(h.N));
  std::size_t passing = 0, checks = 0;
  for (const IdealSpec& ideal : {IdealSpec::fin(), IdealSpec::density_zero()}) {
    for (const auto& a : corpus::scalar_matrices()) {
      if (!a.norm_bound()) continue;
      if (!all_hold(check_core_inclusion(a, ideal, h, {}, Exec::Parallel))) continue;
      ++passing;
      for (const auto& x : corpus::bounded_sequences()) {
        auto ax = as_sampled(transform(a, x, h.N, h.truncation_tol(), Exec::Parallel), 1);
        Scalar lhs = ideal_limsup(ax, ideal, h);
        Scalar rhs = ideal_limsup(x, ideal, h);
        ++checks;
        if (!certainly_le(lhs, rhs + slack))
          o.fail(a.label() + "/" + x.label() + "/" + ideal.label() + ": " + lhs.str() + " > " + rhs.str());
      }
    }
  }
  auto s = check_core_inclusion(matrices::signed_cesaro(), IdealSpec::fin(), h, {}, Exec::Parallel);
  const ConditionReport& c2 = find_condition(s, "C2");
  if (c2.verdict != Verdict::FailsWithWitness || !c2.witness) o.fail("signed cesaro not rejected on C2");
  if (o.pass)
    o.detail << passing << " matrix/ideal pairs pass C1-C3, " << checks << " limsup checks within 1/N; signed cesaro C2 witness at n="
             << c2.witness->n;
  return o;
}

Outcome almost_regular() {
  Outcome o;
  HorizonParams h = horizon(64);
  h.nu_max = 8;
  IdealSpec fin = IdealSpec::fin();
  std::size_t compared = 0;
  for (const auto& sigma : {SigmaMap::shift(), SigmaMap::affine(2, 1, "affine-2n+1")}) {
    for (const auto& a : corpus::scalar_matrices()) {
      AlmostRegularReport r = check_almost_regular(a, sigma, fin, fin, kUnit, h, {}, Exec::Parallel);
      ++compared;
      if (!r.routes_agree) {
        std::ostringstream why;
        why << a.label() << " with " << sigma.label() << ":";
        for (const auto& k : r.k_route) why << " " << k.condition << "=" << to_string(k.verdict);
        for (const auto& f : r.family_route) why << " " << f.condition << "=" << to_string(f.verdict);
        o.fail(why.str());
      }
    }
  }
  if (o.pass) o.detail << compared << " matrix/sigma pairs, K-route equals family route on nu < 8";
  return o;
}

Outcome sandwich() {
  Outcome o;
  auto s = corpus::group_norm_sandwich(200, 20240601);
  if (!s.passed())
    o.fail("sandwich " + std::to_string(s.sandwich_ok) + "/200, additivity " + std::to_string(s.additive_ok) + "/200");
  else
    o.detail << s.samples << " random entries: sandwich and additivity exact";
  return o;
}

const char* kSuite = R"({
  "schemaVersion": "1",
  "ideals": [
    {"label": "fin", "kind": "fin"},
    {"label": "dz", "kind": "density-zero"},
    {"label": "evens", "kind": "generated", "generator": {"progressions": [[2, 0]]}},
    {"label": "dyadic", "kind": "dyadic"}
  ],
  "sigmas": [{"label": "shift", "kind": "shift"}, {"label": "odd", "kind": "affine", "a": 2, "b": 1}],
  "sequences": [
    {"label": "alt", "kind": "periodic", "block": ["1", "0"]},
    {"label": "p3", "kind": "periodic", "block": ["1", "2", "3"], "prefix": ["5"]},
    {"label": "h", "kind": "harmonic"}
  ],
  "matrices": [
    {"label": "C", "kind": "cesaro"},
    {"label": "I", "kind": "identity"},
    {"label": "E", "kind": "euler"},
    {"label": "two", "kind": "scaled", "source": "I", "factor": 2},
    {"label": "even", "kind": "unit-mass", "step": 2, "offset": 0},
    {"label": "odd-rows", "kind": "unit-mass", "step": 2, "offset": 1},
    {"label": "S", "kind": "signed-cesaro"},
    {"label": "Z", "kind": "zero"}
  ],
  "tasks": [
    {"id": "regular", "task": "check-regular", "family": ["C", "E", "two"], "idealI": "fin", "idealJ": "evens"},
    {"id": "maps-zero", "task": "check-maps-zero", "family": ["Z", "C"], "idealJ": "fin"},
    {"id": "core-inclusion", "task": "check-core-inclusion", "matrix": "S", "ideal": "fin"},
    {"id": "uniform-core", "task": "check-uniform-core", "family": ["C", "I"], "ideal": "dz"},
    {"id": "uniform-limit", "task": "uniform-limit", "family": ["C", "E"], "sequence": "h", "ideal": "fin"},
    {"id": "equivalence", "task": "theorem-equivalence", "family": ["even", "odd-rows"], "sequence": "alt", "ideal": "fin"},
    {"id": "limsup", "task": "uniform-limsup", "family": ["C", "I", "even"], "sequence": "p3", "ideal": "fin",
     "enum": {"prefix": 2, "period": 3}},
    {"id": "almost-regular", "task": "check-almost-regular", "matrix": "C", "sigma": "odd", "idealI": "fin",
     "idealJ": "fin", "horizon": {"N": 48}},
    {"id": "sigma", "task": "sigma-limit", "sequence": "alt", "sigma": "shift", "ideal": "fin"},
    {"id": "ideal-limit", "task": "ideal-limit", "sequence": "alt", "ideal": "evens"},
    {"id": "core", "task": "core", "sequence": "p3", "ideal": "dyadic"},
    {"id": "transform", "task": "transform", "matrix": "E", "sequence": "p3"},
    {"id": "sandwich", "task": "group-norm-sandwich", "samples": 50}
  ]
})";

Outcome determinism() {
  Outcome o;
  SpecDocument doc = parse_spec_document(kSuite, ArithMode::Exact);
  RunOptions options;
  options.seed = 7;
  options.exec = Exec::Parallel;
  int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  std::string first = emit_report(run_document(doc, options), ArithMode::Exact, ReportFormat::Json);
  omp_set_num_threads(4);
  std::string second = emit_report(run_document(doc, options), ArithMode::Exact, ReportFormat::Json);
  omp_set_num_threads(saved);
  auto results = run_document(doc, options);
  for (const auto& r : results)
    if (!r.ok) o.fail("task " + r.id + " errored: " + r.message);
  if (first != second) o.fail("reports differ between 1 and 4 threads");
  if (o.pass) o.detail << doc.tasks.size() << " tasks, " << first.size() << " bytes, identical at 1 and 4 threads";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {"sigma-limit reproduction", sigma_reproduction},
      {"Silverman-Toeplitz battery", silverman_toeplitz},
      {"equivalence harness", equivalence_harness},
      {"uniform-limsup identity", uniform_limsup},
      {"core-inclusion semantics", core_inclusion},
      {"almost-regularity cross-validation", almost_regular},
      {"group-norm sandwich", sandwich},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("threw: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].name << ": " << o.detail.str()
              << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " acceptance criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
