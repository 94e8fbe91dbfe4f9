#include "persist/report.hpp"

#include <cstdio>

#include "persist/metrics.hpp"

namespace persist {

nlohmann::json prune_report(const GraphicalModel& model, const PersistencyResult& result, const std::string& instance,
                            std::optional<double> wall_seconds) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& r : result.trace) {
    trace.push_back({{"active_nodes", r.active_nodes},
                     {"disagreeing", r.disagreeing},
                     {"fractional_pruned", r.fractional_pruned},
                     {"solver_iterations", r.solver_iterations},
                     {"augmented_energy", r.augmented_energy},
                     {"ties_possible", r.ties_possible}});
  }
  nlohmann::json report = {{"instance", instance},
                           {"num_nodes", model.num_nodes()},
                           {"solver", to_string(result.solver)},
                           {"mode", to_string(result.mode)},
                           {"certificate", to_string(result.certificate)},
                           {"initial_size", result.initial_size},
                           {"size", result.A_star.size()},
                           {"A_star", result.A_star},
                           {"x_star", result.x_star.labels},
                           {"percentage", persistency_percentage(model, result.A_star)},
                           {"iterations", result.iterations()},
                           {"trace", trace}};
  if (wall_seconds) report["wall_time_seconds"] = *wall_seconds;
  return report;
}

ReportClaim claim_from_report(const nlohmann::json& report) {
  try {
    ReportClaim claim;
    claim.num_nodes = report.at("num_nodes").get<int>();
    claim.labeling.domain = report.at("A_star").get<NodeSet>();
    claim.labeling.labels = report.at("x_star").get<std::vector<Label>>();
    if (claim.labeling.domain.size() != claim.labeling.labels.size()) {
      throw ParseError("report: A_star and x_star differ in length");
    }
    return claim;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

std::string bench_csv_header(bool timing) {
  return timing ? "instance,solver,mode,size,percentage,iterations,time_seconds"
                : "instance,solver,mode,size,percentage,iterations";
}

std::string bench_csv_row(const BenchRow& row) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", row.percentage);
  std::string line = row.instance + "," + to_string(row.solver) + "," + to_string(row.mode) + "," +
                     std::to_string(row.size) + "," + buffer + "," + std::to_string(row.iterations);
  if (row.seconds) {
    std::snprintf(buffer, sizeof buffer, "%.6f", *row.seconds);
    line += std::string(",") + buffer;
  }
  return line;
}

}  // namespace persist
