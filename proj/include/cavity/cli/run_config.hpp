#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavity/model.hpp"
#include "cavity/wigner.hpp"

namespace cavity::cli {

inline constexpr const char* kToolName = "cavityfield";
inline constexpr const char* kToolVersion = "0.1.0";

enum class Command { Pnd, Wigner, Qscan, Squeeze, Verify };
enum class OutputMode { Paper, Exact, Both };

struct Sweep {
    enum class Variable { Alpha, T, N };
    Variable variable = Variable::Alpha;
    double start = 0.0;
    double stop = 0.0;
    int steps = 2;

    /// Evenly spaced points, endpoints included.
    std::vector<double> points() const;
};

struct RunConfig {
    Command command = Command::Pnd;
    SystemParams params;         // t is already gt / g
    double gt = 1.0;
    bool n_max_override = false;
    std::vector<int> manifolds;  // --n
    std::optional<Sweep> sweep;
    std::optional<GridWindow> grid;
    OutputMode mode = OutputMode::Both;
    std::string output_path;     // empty or "-" means stdout
    bool force = false;
    std::vector<std::string> defaults_filled;

    bool wants_paper() const { return mode != OutputMode::Exact; }
    bool wants_exact() const { return mode != OutputMode::Paper; }
};

class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string command_name(Command command);
std::string mode_name(OutputMode mode);
std::string variable_name(Sweep::Variable variable);

Complex parse_alpha(const std::string& text);
Sweep parse_sweep(const std::string& text);
GridWindow parse_window(const std::string& text);
std::vector<int> parse_list(const std::string& text);

/// Raw flag values as typed on the command line; unset flags stay empty.
struct RawFlags {
    std::string command;
    std::optional<std::string> alpha;
    std::optional<double> g;
    std::optional<double> delta;
    std::optional<double> gt;
    std::optional<std::string> n;
    std::optional<int> n_max;
    std::optional<std::string> sweep;
    std::optional<std::string> window;
    std::optional<std::string> mode;
    std::string out;
    bool force = false;
};

/// Applies per-command defaults and validates. Throws ArgumentError.
RunConfig resolve(const RawFlags& flags);

}  // namespace cavity::cli
