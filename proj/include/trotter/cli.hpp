#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trotter/error_op.hpp"
#include "trotter/hamiltonian.hpp"
#include "trotter/ordering.hpp"

namespace trotter::cli {

inline constexpr std::string_view kVersion = "0.1.0";

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kInputError = 2,       // parse/file/flag problems
    kRefused = 3,          // enumeration cap or dense-threshold refusal
    kNoConvergence = 4,    // iterative eigensolver gave up
};

/// Flags common to the simulation-style subcommands.
struct RunOptions {
    std::string format = "csv";            // csv | json
    std::uint64_t seed = 1;
    std::optional<double> time;            // nullopt = "auto" (evolution-time rule)
    std::optional<double> reference_energy;  // overrides the auto-time reference
    int steps = 1;
    int trotter_order = 2;
    NormKind norm = NormKind::coeff_one_norm;
    int threads = 0;                       // 0 = hardware default (capped at 8)
    bool active_only = false;              // factor and keep the active part
};

/// Resolve "fixture:<name>" or a filesystem path.
QubitHamiltonian load_input(const std::string& input);

/// Resolved evolution time: explicit value, or the evolution-time rule on
/// the reference energy (defaulting to the computed ground energy).
double resolve_time(const QubitHamiltonian& h, const RunOptions& run);

struct OrderCommand {
    std::string input;
    std::string strategy = "magnitude";
    std::string output_path;  // empty = stdout, no sidecar
    RunOptions run;
};
int cmd_order(const OrderCommand& cmd, std::ostream& out, std::ostream& err);

struct EnumerateCommand {
    std::string input;
    std::size_t cap = kDefaultEnumerationCap;
    int bins = 250;
    std::vector<double> thresholds = {1.5936e-3, 5e-3};
    std::string rows_path;        // empty = stdout (csv format only)
    std::string summary_path;     // empty = stdout when --format json
    std::string checkpoint_path;  // empty = no checkpointing
    RunOptions run;
};
int cmd_enumerate(const EnumerateCommand& cmd, std::ostream& out, std::ostream& err);

struct CompareCommand {
    std::string input;
    std::vector<std::string> strategies;
    bool with_norms = false;
    RunOptions run;
};
int cmd_compare(const CompareCommand& cmd, std::ostream& out, std::ostream& err);

struct SampleCommand {
    std::string input;
    std::uint64_t count = 100;
    int bins = 250;
    std::string rows_path;
    std::string summary_path;
    RunOptions run;
};
int cmd_sample(const SampleCommand& cmd, std::ostream& out, std::ostream& err);

struct ColorStatsCommand {
    std::vector<std::string> inputs;
    RunOptions run;
};
int cmd_color_stats(const ColorStatsCommand& cmd, std::ostream& out, std::ostream& err);

struct ErrorOpCommand {
    std::string input;
    std::string strategy = "as_given";
    bool spectral = false;  // include the spectral norm when tractable
    RunOptions run;
};
int cmd_error_op(const ErrorOpCommand& cmd, std::ostream& out, std::ostream& err);

struct SimulateCommand {
    std::string input;
    std::string strategy = "as_given";
    RunOptions run;
};
int cmd_simulate(const SimulateCommand& cmd, std::ostream& out, std::ostream& err);

struct FixturesCommand {
    std::string dump;  // empty = list
    RunOptions run;
};
int cmd_fixtures(const FixturesCommand& cmd, std::ostream& out, std::ostream& err);

/// Full argv interface used by the binary; returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace trotter::cli
