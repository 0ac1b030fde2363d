#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace wcoj::cli {

/// Process exit codes, fixed for scripting.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;       ///< anything unexpected
inline constexpr int bad_input = 2;     ///< unparsable spec, CSV or flags
inline constexpr int incompatible = 3;  ///< cyclic constraints, bad order, infeasible cover, violated constraint
inline constexpr int empty = 4;         ///< the answer set is provably empty
inline constexpr int budget = 5;        ///< --max-work spent
}

struct JoinOptions
{
    std::filesystem::path spec;
    std::optional<std::string> order;   ///< comma-separated variable names
    bool no_binarise = false;
    std::optional<std::filesystem::path> stats_out;
    std::optional<std::filesystem::path> output;
};

struct SampleOptions
{
    std::filesystem::path spec;
    std::size_t count = 1;
    std::optional<std::uint64_t> seed;  ///< falls back to $SEED, then 0
    std::string estimator = "agm";
    std::optional<std::uint64_t> max_work; ///< maximum number of walks
    std::optional<std::string> order;
    std::optional<std::filesystem::path> stats_out;
    std::optional<std::filesystem::path> output;
};

/* Each command writes results to `out` (unless redirected to a file) and
 * diagnostics to `err`, and returns the process exit code. */

int cmd_join(const JoinOptions &opts, std::ostream &out, std::ostream &err);
int cmd_sample(const SampleOptions &opts, std::ostream &out, std::ostream &err);
int cmd_cover(const std::filesystem::path &spec, std::ostream &out, std::ostream &err);
int cmd_validate(const std::filesystem::path &spec, std::ostream &out, std::ostream &err);
/// Brute-force answers in query order, for debugging.
int cmd_oracle(const std::filesystem::path &spec, std::ostream &out, std::ostream &err);

}
