#pragma once

#include <string>
#include <string_view>

#include "persist/model.hpp"

namespace persist {

/// How table entries of a UAI file are read.
enum class UaiValues {
  Cost,        // taken verbatim as energies
  Probability  // converted with -log; zero maps to kZeroProbabilityCost
};

inline constexpr double kZeroProbabilityCost = 1e6;

/// Parses a MARKOV model. Errors carry the offending line or factor index.
GraphicalModel parse_uai(std::string_view text, UaiValues values = UaiValues::Cost);

GraphicalModel read_uai_file(const std::string& path, UaiValues values = UaiValues::Cost);

/// Serialises with 17 significant digits, so parsing the output restores
/// every table entry exactly.
std::string write_uai(const GraphicalModel& model);

}  // namespace persist
