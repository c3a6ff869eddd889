#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quasifit/ingest.hpp"
#include "quasifit/pipeline.hpp"

namespace quasifit::cli {

inline constexpr long kDefaultDays = 500;

struct CliConfig {
    std::string input;
    std::vector<std::string> columns;
    std::optional<std::string> country;
    std::optional<std::string> begin;
    std::optional<std::string> end;
    std::optional<long> days;  ///< kDefaultDays when no window bound fixes it
    std::optional<std::string> presets_path;
    FitOptions options;
    std::optional<std::string> json_out;
    std::optional<std::string> svg_out;

    // basis
    std::size_t basis_samples = 101;
    std::optional<double> basis_omega;
    std::optional<std::string> basis_out;  ///< standard output when unset
};

/// Resolves the analysis window from the preset, explicit bounds and --days.
/// first_raw is the first date in the input; used when nothing else anchors
/// the window.
WindowSpec resolve_window(const CliConfig& config, Date first_raw);

int run_fit(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_compare(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_basis(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to one of the run_* commands.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace quasifit::cli
