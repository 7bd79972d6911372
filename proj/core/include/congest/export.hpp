#pragma once

#include <string>

#include "congest/cycles.hpp"
#include "congest/mssp.hpp"

namespace congest {

/// Result writers. All output is deterministic: fixed key order, canonical
/// weight formatting (integer weights print as integers, infinity as null in
/// JSON and "inf" in CSV).

std::string cycle_result_json(const CycleResult& r, bool integer_mode);
std::string cycle_result_csv(const CycleResult& r);

std::string mssp_json(const MsspResult& r, bool integer_mode);
/// Header row of node ids, one row per source.
std::string mssp_csv(const MsspResult& r);

}  // namespace congest
