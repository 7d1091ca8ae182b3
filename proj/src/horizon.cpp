#include "summa/horizon.hpp"

#include <algorithm>

#include "summa/errors.hpp"
#include "summa/parallel.hpp"

namespace summa {

namespace {
Exec g_default_exec = Exec::Parallel;
}

Exec default_exec() { return g_default_exec; }
void set_default_exec(Exec exec) { g_default_exec = exec; }

std::size_t HorizonParams::window_floor() const {
  return min_window.value_or(std::max<std::size_t>(1, N / 16));
}

void HorizonParams::validate() const {
  if (N < 1) throw SchemaError("horizon N must be at least 1");
  if (!certainly_lt(Scalar(0), eps)) throw SchemaError("horizon eps must be positive");
  if (nu_max < 1) throw SchemaError("horizon nuMax must be at least 1");
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::FailsWithWitness: return "FailsWithWitness";
    case Verdict::UnknownAtHorizon: return "UnknownAtHorizon";
  }
  return "UnknownAtHorizon";
}

Verdict parse_verdict(const std::string& text) {
  if (text == "Holds") return Verdict::Holds;
  if (text == "FailsWithWitness") return Verdict::FailsWithWitness;
  if (text == "UnknownAtHorizon") return Verdict::UnknownAtHorizon;
  throw SchemaError("unknown verdict '" + text + "'");
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Yes: return "Yes";
    case Membership::No: return "No";
    case Membership::Unknown: return "Unknown";
  }
  return "Unknown";
}

}  // namespace summa
