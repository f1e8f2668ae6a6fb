#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pfchi/gf.hpp"

namespace pfchi::cli {

enum class OutputMode { Text, Json, Csv };

// Knobs shared by every subcommand. The enumeration bound can also be set
// through the PFCHI_BOUND environment variable; an explicit --bound wins.
// Every command is deterministic given a fixed config.
struct RunConfig {
    int64_t enumeration_bound = gf::kDefaultEnumBound;
    OutputMode output = OutputMode::Text;
    uint64_t seed = 1;
};

// Entry point behind the pfchi binary, factored out so tests can drive it.
// args excludes the program name. Exit codes: 0 success, 1 parse error,
// 2 evaluation error, 3 resource bound exceeded, 4 verification failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pfchi::cli
