#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "config.hpp"
#include "dgbo/experiments.hpp"

namespace dgbo::cli {

struct CommandOutput {
    std::vector<CriterionResult> criteria;
    nlohmann::json report = nlohmann::json::object();
};

struct FlagSpec {
    std::string flag;  // e.g. "--n"
    std::string key;   // dotted config key
    enum Kind { Int, Real, Bool, Text, RealList, TextList } kind;
    std::string help;
};

struct Command {
    std::string name;
    std::string help;
    nlohmann::json defaults;  // merged under the config file
    std::vector<FlagSpec> flags;
    std::function<CommandOutput(const ExperimentConfig&, const std::string& dir)> run;
};

const std::vector<FlagSpec>& common_flags();
const std::vector<Command>& command_table();
const Command& find_command(const std::string& name);

// defaults <- file <- overrides
nlohmann::json merge_config(const Command& cmd, const nlohmann::json& file_doc, const nlohmann::json& overrides);

// Runs one command into its output directory, writes the manifest and returns the exit code
// (0 iff every criterion passed, 1 on a failed criterion, 2 on a configuration or runtime error).
int execute(const Command& cmd, const nlohmann::json& doc, bool quiet = false);

}  // namespace dgbo::cli
