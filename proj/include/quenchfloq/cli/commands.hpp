#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "quenchfloq/cli/config.hpp"
#include "quenchfloq/cli/csv.hpp"

namespace quenchfloq::cli {

inline constexpr const char* kStaticHeader = "xi,n,parity,excitation_energy_hbar_omega";
inline constexpr const char* kFloquetHeader =
    "t0_over_T,n,parity,quasienergy_diff_hbar_omega,mean_energy_diff_hbar_omega,geometric_phase_rad";
inline constexpr const char* kCorrelatorHeader = "t0_over_T,n,quasienergy_diff_hbar_omega,re_correlator_hbar_sq";
inline constexpr const char* kDeviationHeader = "T_over_Tc,d_quasi_restricted,d_quasi_extended,d_mean";

/// Everything a command produces. Nothing touches the file system until the
/// caller hands `files` to write_outputs.
struct CommandResult {
    std::vector<OutputFile> files;
    std::string report;                 // human-readable summary for stdout
    std::vector<std::string> warnings;  // for stderr
};

/// Runs body(0..count-1) on up to `threads` workers pulling indices from a
/// shared counter. If any call throws, the exception from the lowest failing
/// index is rethrown after all workers finish.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

/// Uniform fractions k / (points - 1), exact at both ends.
std::vector<double> unit_grid(int points);

/// Slice file name for a fixed t0/T, e.g. correlator_slice_0.4.csv.
std::string slice_file_name(double t0_over_period);

CommandResult cmd_static(const SweepConfig& config);
CommandResult cmd_floquet(const SweepConfig& config);
CommandResult cmd_correlator(const SweepConfig& config);
CommandResult cmd_deviation(const SweepConfig& config);
CommandResult cmd_info(const SweepConfig& config);

}  // namespace quenchfloq::cli
