#pragma once

#include <string>

#include "lomega/serialize.hpp"

namespace lomega {

// Configuration errors exit with code 2 and name the offending field.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunResult {
    int exit_code = 0;  // 0 complete/pass, 1 certificate fail, 2 config error
    json report;
    std::string trace_csv;  // nonempty when the command produced a trace
};

// Executes one experiment described by a single JSON document. The report
// embeds the artifact version and the fully resolved config; identical
// config + seed produce byte-identical reports.
RunResult run_experiment(const json& config);

// "id" or "id:key=val,key=val" -> modulus (with "zero" and "declared" handled
// by the caller)
Modulus parse_modulus_spec(const std::string& spec);
MapParams map_params_from_json(const json& j);

extern const char* kArtifactVersion;

}  // namespace lomega
