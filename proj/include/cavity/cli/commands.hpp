#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cavity/cli/run_config.hpp"

namespace cavity::cli {

std::string cmd_pnd(const RunConfig& cfg);
std::string cmd_wigner(const RunConfig& cfg);
std::string cmd_qscan(const RunConfig& cfg);
std::string cmd_squeeze(const RunConfig& cfg);

struct InvariantCheck {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyResult {
    std::vector<InvariantCheck> checks;
    // Paper-vs-exact gaps; reported, never failed.
    double rho_max_difference = 0.0;      // max |rho_eq5 - rho_exact|
    double pnd_max_difference = 0.0;      // max |c_n(0)|^2 - <n|rho_exact|n>|
    Complex exact_coherence_01;           // <0|rho_exact|1>
    Complex paper_coherence_01;           // <0|rho_eq5|1>
    double printed_eom_max_deviation = 0.0;

    std::string report;  // human-readable text
    std::string csv;     // discrepancy matrix

    bool passed() const;
    /// Name of the first failed check, empty when all pass.
    std::string first_failure() const;
};

VerifyResult cmd_verify(const RunConfig& cfg);

/// Runs the configured command, writes its CSV to cfg.output_path (stdout
/// when empty or "-"), and returns the process exit status:
/// 0 success, 1 invariant failure, 3 I/O error.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full entry point: parses argv, returns the exit status (2 on bad arguments).
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cavity::cli
