#include "cavity/cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <string_view>

#include "cavity/cli/csv_writer.hpp"
#include "cavity/errors.hpp"

namespace cavity::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t begin = 0;
    while (true) {
        const std::size_t end = text.find(sep, begin);
        parts.push_back(text.substr(begin, end - begin));
        if (end == std::string::npos) {
            break;
        }
        begin = end + 1;
    }
    return parts;
}

double parse_real(const std::string& text, std::string_view what) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, value);
    if (text.empty() || res.ec != std::errc{} || res.ptr != last || !std::isfinite(value)) {
        throw ArgumentError("invalid number '" + text + "' in " + std::string(what));
    }
    return value;
}

int parse_int(const std::string& text, std::string_view what) {
    int value = 0;
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(text.data(), last, value);
    if (text.empty() || res.ec != std::errc{} || res.ptr != last) {
        throw ArgumentError("invalid integer '" + text + "' in " + std::string(what));
    }
    return value;
}

}  // namespace

std::vector<double> Sweep::points() const {
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        out[i] = i == steps - 1 ? stop : start + (stop - start) * i / (steps - 1);
    }
    return out;
}

std::string command_name(Command command) {
    switch (command) {
    case Command::Pnd: return "pnd";
    case Command::Wigner: return "wigner";
    case Command::Qscan: return "qscan";
    case Command::Squeeze: return "squeeze";
    case Command::Verify: return "verify";
    }
    return "?";
}

std::string mode_name(OutputMode mode) {
    switch (mode) {
    case OutputMode::Paper: return "paper";
    case OutputMode::Exact: return "exact";
    case OutputMode::Both: return "both";
    }
    return "?";
}

std::string variable_name(Sweep::Variable variable) {
    switch (variable) {
    case Sweep::Variable::Alpha: return "alpha";
    case Sweep::Variable::T: return "t";
    case Sweep::Variable::N: return "n";
    }
    return "?";
}

Complex parse_alpha(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() == 1) {
        return {parse_real(parts[0], "--alpha"), 0.0};
    }
    if (parts.size() == 2) {
        return {parse_real(parts[0], "--alpha"), parse_real(parts[1], "--alpha")};
    }
    throw ArgumentError("--alpha expects R or R,I");
}

Sweep parse_sweep(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 4) {
        throw ArgumentError("--sweep expects VAR:START:STOP:STEPS");
    }
    Sweep s;
    if (parts[0] == "alpha") {
        s.variable = Sweep::Variable::Alpha;
    } else if (parts[0] == "t") {
        s.variable = Sweep::Variable::T;
    } else if (parts[0] == "n") {
        s.variable = Sweep::Variable::N;
    } else {
        throw ArgumentError("--sweep variable must be alpha, t or n");
    }
    s.start = parse_real(parts[1], "--sweep");
    s.stop = parse_real(parts[2], "--sweep");
    s.steps = parse_int(parts[3], "--sweep");
    if (s.steps < 2) {
        throw ArgumentError("--sweep needs at least 2 steps");
    }
    if (!(s.start < s.stop)) {
        throw ArgumentError("--sweep needs START < STOP");
    }
    return s;
}

GridWindow parse_window(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 5) {
        throw ArgumentError("--window expects RMIN:RMAX:IMIN:IMAX:RES");
    }
    GridWindow w;
    w.re_min = parse_real(parts[0], "--window");
    w.re_max = parse_real(parts[1], "--window");
    w.im_min = parse_real(parts[2], "--window");
    w.im_max = parse_real(parts[3], "--window");
    w.resolution = parse_int(parts[4], "--window");
    if (!(w.re_min < w.re_max) || !(w.im_min < w.im_max)) {
        throw ArgumentError("--window bounds must satisfy MIN < MAX");
    }
    if (w.resolution < 16) {
        throw ArgumentError("--window resolution must be at least 16");
    }
    return w;
}

std::vector<int> parse_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& part : split(text, ',')) {
        const int n = parse_int(part, "--n");
        if (n < 0) {
            throw ArgumentError("--n entries must be non-negative");
        }
        out.push_back(n);
    }
    return out;
}

RunConfig resolve(const RawFlags& flags) {
    RunConfig cfg;
    if (flags.command == "pnd") {
        cfg.command = Command::Pnd;
    } else if (flags.command == "wigner") {
        cfg.command = Command::Wigner;
    } else if (flags.command == "qscan") {
        cfg.command = Command::Qscan;
    } else if (flags.command == "squeeze") {
        cfg.command = Command::Squeeze;
    } else if (flags.command == "verify") {
        cfg.command = Command::Verify;
    } else {
        throw ArgumentError("unknown command '" + flags.command + "'");
    }
    const Command cmd = cfg.command;
    auto filled = [&](const std::string& note) { cfg.defaults_filled.push_back(note); };

    double g = 1.0;
    if (flags.g) {
        g = *flags.g;
    } else {
        filled("g=1");
    }
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw ArgumentError("--g must be positive (time is given as g*t)");
    }
    double delta = 0.0;
    if (flags.delta) {
        delta = *flags.delta;
    } else {
        filled("delta=0");
    }
    if (flags.gt) {
        cfg.gt = *flags.gt;
    } else {
        cfg.gt = 1.0;
        filled("gt=1");
    }
    if (!(cfg.gt >= 0.0) || !std::isfinite(cfg.gt)) {
        throw ArgumentError("--gt must be non-negative");
    }

    Complex alpha;
    if (flags.alpha) {
        alpha = parse_alpha(*flags.alpha);
    } else {
        double fallback = 1.0;
        if (cmd == Command::Pnd) {
            fallback = 0.5;
        } else if (cmd == Command::Wigner) {
            fallback = 0.02;
        }
        alpha = fallback;
        filled("alpha=" + format_shortest(fallback));
    }

    if (flags.mode) {
        if (*flags.mode == "paper") {
            cfg.mode = OutputMode::Paper;
        } else if (*flags.mode == "exact") {
            cfg.mode = OutputMode::Exact;
        } else if (*flags.mode == "both") {
            cfg.mode = OutputMode::Both;
        } else {
            throw ArgumentError("--mode must be paper, exact or both");
        }
    } else {
        filled("mode=both");
    }

    const bool takes_manifolds =
        cmd == Command::Wigner || cmd == Command::Qscan || cmd == Command::Squeeze;
    if (flags.n) {
        if (!takes_manifolds) {
            throw ArgumentError("--n is not used by " + flags.command);
        }
        cfg.manifolds = parse_list(*flags.n);
        if (cfg.manifolds.empty()) {
            throw ArgumentError("--n needs at least one entry");
        }
    } else if (cmd == Command::Wigner) {
        cfg.manifolds = {4, 7, 10};
        filled("n=4,7,10");
    } else if (takes_manifolds) {
        cfg.manifolds = {1, 2, 3};
        filled("n=1,2,3");
    }

    if (flags.sweep) {
        const Sweep s = parse_sweep(*flags.sweep);
        const bool scan = cmd == Command::Qscan || cmd == Command::Squeeze;
        if (scan && s.variable == Sweep::Variable::N) {
            throw ArgumentError("qscan/squeeze sweep alpha or t");
        }
        if (cmd == Command::Pnd && s.variable != Sweep::Variable::N) {
            throw ArgumentError("pnd only sweeps n");
        }
        if (cmd == Command::Wigner || cmd == Command::Verify) {
            throw ArgumentError(flags.command + " does not take --sweep");
        }
        if (s.variable != Sweep::Variable::Alpha && s.start < 0.0) {
            throw ArgumentError("--sweep start must be non-negative for t and n");
        }
        cfg.sweep = s;
    } else if (cmd == Command::Qscan || cmd == Command::Squeeze) {
        cfg.sweep = Sweep{Sweep::Variable::Alpha, 0.05, 3.0, 60};
        filled("sweep=alpha:0.05:3:60");
    }

    if (flags.window) {
        if (cmd != Command::Wigner) {
            throw ArgumentError("--window is only used by wigner");
        }
        cfg.grid = parse_window(*flags.window);
    } else if (cmd == Command::Wigner) {
        cfg.grid = GridWindow{};
        filled("window=-3.5:3.5:-3.5:3.5:141");
    }

    cfg.params = make_params(g, delta, alpha, cfg.gt / g);
    if (flags.n_max) {
        cfg.params.n_max = *flags.n_max;
        cfg.n_max_override = true;
    }
    try {
        validate(cfg.params);
    } catch (const std::exception& e) {
        throw ArgumentError(e.what());
    }
    for (int n : cfg.manifolds) {
        if (n > cfg.params.n_max) {
            throw ArgumentError("--n entry " + std::to_string(n) + " exceeds n_max");
        }
    }
    cfg.output_path = flags.out;
    cfg.force = flags.force;
    return cfg;
}

}  // namespace cavity::cli
