#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "summa/errors.hpp"
#include "summa/parallel.hpp"
#include "summa/regularity.hpp"
#include "summa/spec_document.hpp"

namespace summa {

inline constexpr const char* kSchemaVersion = "1";

struct RunOptions {
  HorizonOverrides flags;
  std::uint64_t seed = 0;
  Exec exec = Exec::Parallel;  // tasks run concurrently; output order is fixed
};

struct TaskResult {
  std::string id;
  std::string kind;
  HorizonParams horizon;
  bool ok = true;
  std::optional<ErrorKind> error;
  std::string message;
  bool any_fails = false;
  std::vector<ConditionReport> conditions;  // checker tasks; replayable witnesses
  std::optional<MatrixFamily> replay_family;
  Json body;  // task-specific machine output
};

TaskResult run_task(const TaskSpec& task, const RunOptions& options);
std::vector<TaskResult> run_document(const SpecDocument& doc, const RunOptions& options);

enum class ReportFormat { Text, Json };
ReportFormat parse_format(const std::string& text);

// Timing is left out so identical inputs give identical documents.
std::string emit_report(const std::vector<TaskResult>& results, ArithMode mode, ReportFormat format);

// 0 when every task ran, 2 on schema-class errors, 3 on runtime errors,
// 1 under strict when some verdict is FailsWithWitness.
int exit_code(const std::vector<TaskResult>& results, bool strict);

struct ReplayOutcome {
  bool found = false;
  bool reproduced = false;
  Witness witness;
  Scalar replayed;
  std::string message;
};

// target is "<taskId>/<condition>"
ReplayOutcome replay(const SpecDocument& doc, const std::vector<TaskResult>& results, const std::string& target);

Json condition_json(const ConditionReport& r);

}  // namespace summa
