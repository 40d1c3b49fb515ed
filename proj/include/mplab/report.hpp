#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mplab/config.hpp"
#include "mplab/errors.hpp"

namespace mplab {

extern const char* const kVersion;

struct RunOutcome {
  nlohmann::json report;
  std::vector<std::vector<std::string>> table;  // header row first
  int exit_code = 0;                            // 0 pass, 1 comparison failure, 2 config, 3 numeric
};

// units and sign conventions, embedded in every report
nlohmann::json conventions();

const std::vector<std::string>& subcommands();

// Runs one subcommand. Module errors are caught and recorded in report["error"]
// with whatever results were complete at that point.
RunOutcome run_experiment(const std::string& subcommand, const ExperimentConfig& c, unsigned seed);

// exit code for an error code: 2 for input problems, 3 for numeric failures
int exit_code_for(ErrorCode code);

std::string to_csv(const std::vector<std::vector<std::string>>& rows);
std::string format_number(double v);

}  // namespace mplab
