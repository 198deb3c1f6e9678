#include "cavity/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cavity/errors.hpp"

namespace cavity {

int auto_truncation(Complex alpha) {
    const double r = std::abs(alpha);
    const int n = static_cast<int>(std::ceil(r * r + 10.0 * r + 20.0));
    return std::max(n, 16);
}

double coherent_tail(Complex alpha, int from) {
    const double mean = std::norm(alpha);
    double tail = 0.0;
    for (int n = std::max(from, 0);; ++n) {
        const double p = std::norm(coherent_amplitude(n, alpha));
        tail += p;
        if (n > mean && (p == 0.0 || p < 1e-20 * tail)) {
            break;
        }
    }
    return tail;
}

SystemParams make_params(double g, double delta, Complex alpha, double t, double epsilon) {
    SystemParams p;
    p.g = g;
    p.delta = delta;
    p.epsilon = epsilon;
    p.alpha = alpha;
    p.t = t;
    p.n_max = auto_truncation(alpha);
    return p;
}

void validate(const SystemParams& params) {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(params.g) || !finite(params.delta) || !finite(params.epsilon) ||
        !finite(params.alpha.real()) || !finite(params.alpha.imag()) || !finite(params.t)) {
        throw InvalidParameters("system parameters must be finite");
    }
    if (params.g < 0.0 || params.epsilon < 0.0 || params.t < 0.0) {
        throw InvalidParameters("g, epsilon and t must be non-negative");
    }
    if (params.n_max < 1) {
        throw InvalidParameters("n_max must be at least 1");
    }
    if (params.g == 0.0 && params.delta == 0.0) {
        throw DegenerateParameters("g = 0 and delta = 0 make every Rabi frequency vanish");
    }
    const double tail = coherent_tail(params.alpha, params.n_max);
    if (tail >= 1e-12) {
        throw InvalidParameters("n_max = " + std::to_string(params.n_max) +
                                " leaves coherent tail weight " + std::to_string(tail) +
                                " (limit 1e-12)");
    }
}

double rabi_frequency(int n, const SystemParams& params) {
    if (n < 0) {
        throw std::out_of_range("rabi_frequency: n must be non-negative");
    }
    return std::sqrt(params.delta * params.delta + 4.0 * params.g * params.g * (n + 1));
}

Complex coherent_amplitude(int n, Complex alpha) {
    if (n < 0) {
        throw std::out_of_range("coherent_amplitude: n must be non-negative");
    }
    const double r = std::abs(alpha);
    if (r == 0.0) {
        return n == 0 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    }
    const double log_mag = -0.5 * r * r + n * std::log(r) - 0.5 * std::lgamma(n + 1.0);
    return std::polar(std::exp(log_mag), n * std::arg(alpha));
}

JointState::JointState(std::vector<Complex> ca, std::vector<Complex> cb, SystemParams params)
    : ca_(std::move(ca)), cb_(std::move(cb)), params_(params) {
    const auto expected = static_cast<std::size_t>(params_.n_max) + 1;
    if (ca_.size() != expected || cb_.size() != expected) {
        throw std::invalid_argument("JointState: amplitude arrays must have n_max + 1 entries");
    }
}

double JointState::norm() const {
    double total = 0.0;
    for (std::size_t n = 0; n < ca_.size(); ++n) {
        total += std::norm(ca_[n]) + std::norm(cb_[n]);
    }
    return total;
}

JointState evolve_closed_form(const SystemParams& params) {
    validate(params);
    const auto size = static_cast<std::size_t>(params.n_max) + 1;
    std::vector<Complex> ca(size);
    std::vector<Complex> cb(size);
    const Complex i{0.0, 1.0};
    const Complex frame = std::polar(1.0, 0.5 * params.delta * params.t);
    for (int n = 0; n <= params.n_max; ++n) {
        const Complex c0 = coherent_amplitude(n, params.alpha);
        if (params.t == 0.0) {
            ca[n] = c0;
            cb[n] = 0.0;
            continue;
        }
        const double omega = rabi_frequency(n, params);
        const double half = 0.5 * omega * params.t;
        const double s = std::sin(half);
        ca[n] = c0 * (std::cos(half) - i * (params.delta / omega) * s) * frame;
        cb[n] = -c0 * i * (2.0 * params.g * std::sqrt(n + 1.0) / omega) * s * frame;
    }
    return JointState(std::move(ca), std::move(cb), params);
}

double manifold_probability(const JointState& state, int n) {
    if (n < 0 || n > state.n_max()) {
        throw std::out_of_range("manifold_probability: n outside [0, n_max]");
    }
    return std::norm(state.ca()[n]) + std::norm(state.cb()[n]);
}

}  // namespace cavity
