#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "persist/persistency.hpp"

namespace persist {

/// Self-contained JSON record of one prune run; `verify` needs only this and the model.
nlohmann::json prune_report(const GraphicalModel& model, const PersistencyResult& result, const std::string& instance,
                            std::optional<double> wall_seconds = std::nullopt);

struct ReportClaim {
  int num_nodes = 0;
  PartialLabeling labeling;  // x* on A*
};

/// Reads A* and x* back from a prune report. Throws ParseError on malformed input.
ReportClaim claim_from_report(const nlohmann::json& report);

struct BenchRow {
  std::string instance;
  SolverKind solver = SolverKind::Trws;
  BoundaryMode mode = BoundaryMode::Original;
  int size = 0;
  double percentage = 0.0;
  int iterations = 0;
  std::optional<double> seconds;
};

std::string bench_csv_header(bool timing);
std::string bench_csv_row(const BenchRow& row);

}  // namespace persist
