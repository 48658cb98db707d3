#pragma once

#include <string>

#include "lvdyn/error.hpp"
#include "lvdyn/report.hpp"

namespace lvdyn {

/// An Error tagged with the pipeline stage that raised it.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.kind(), "[" + stage + "] " + cause.what()), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// load -> fit (or inject published parameters) -> transforms -> classify ->
/// equilibria -> stability -> phase geometry -> MAPE -> Sobol -> export.
/// On failure a partial report marked incomplete is written (when an output
/// directory is configured) and a StageError is thrown.
Report run_pipeline(const AnalysisConfig& cfg);

}  // namespace lvdyn
