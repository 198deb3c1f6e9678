#include "cavity/observables.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cavity/errors.hpp"

namespace cavity {

namespace {

constexpr double kTruncationGuard = 1e-8;
constexpr double kVacuumThreshold = 1e-15;

struct ManifoldWeights {
    double pa;  // |c_{a,n}|^2
    double pb;  // |c_{b,n+1}|^2
    Complex a_mean;
};

ManifoldWeights manifold_weights(const JointState& state, int n) {
    if (n < 0 || n > state.n_max()) {
        throw std::out_of_range("manifold index " + std::to_string(n) + " outside [0, n_max]");
    }
    const Complex ca = state.ca()[n];
    const Complex cb = state.cb()[n];
    return {std::norm(ca), std::norm(cb), std::sqrt(n + 1.0) * std::conj(ca) * cb};
}

Squeezing squeezing_from(double n_mean, Complex a, Complex a2) {
    const Complex adag = std::conj(a);
    const Complex adag2 = std::conj(a2);
    const Complex sx = 2.0 * n_mean + a2 + adag2 - a * a - adag * adag - 2.0 * a * adag;
    const Complex sp = 2.0 * n_mean - a2 - adag2 + a * a + adag * adag - 2.0 * a * adag;
    return {sx.real(), sp.real(), false};
}

}  // namespace

double photon_number_distribution(const DensityMatrix& rho, int n) {
    if (n < 0 || static_cast<std::size_t>(n) >= rho.dim()) {
        throw std::out_of_range("photon_number_distribution: n outside basis");
    }
    return rho(n, n).real();
}

FieldMoments field_moments(const DensityMatrix& rho) {
    FieldMoments m;
    const std::size_t dim = rho.dim();
    // Tr[rho a] = sum_n sqrt(n) rho[n][n-1]; Tr[rho a^2] = sum_n sqrt(n(n-1)) rho[n][n-2].
    for (std::size_t n = 0; n < dim; ++n) {
        const double nn = static_cast<double>(n);
        const double pop = rho(n, n).real();
        m.n_mean += nn * pop;
        m.n2_moment += nn * (nn - 1.0) * pop;
        if (n >= 1) {
            m.a_mean += std::sqrt(nn) * rho(n, n - 1);
        }
        if (n >= 2) {
            m.a2_mean += std::sqrt(nn * (nn - 1.0)) * rho(n, n - 2);
        }
    }
    m.adag_mean = std::conj(m.a_mean);
    m.truncation_warning = rho(dim - 1, dim - 1).real() > kTruncationGuard;
    return m;
}

double mandel_q(const DensityMatrix& rho) {
    const FieldMoments m = field_moments(rho);
    if (!(m.n_mean > kVacuumThreshold)) {
        throw VacuumField("mandel_q: <a^dag a> = " + std::to_string(m.n_mean) +
                          " is below the vacuum threshold");
    }
    return (m.n2_moment - m.n_mean * m.n_mean) / m.n_mean;
}

double mandel_q_paper(const JointState& state, int n) {
    const ManifoldWeights w = manifold_weights(state, n);
    const double nn = n;
    const double mean = nn * w.pa + (nn + 1.0) * w.pb;
    if (!(mean > kVacuumThreshold)) {
        throw ZeroDenominator("mandel_q_paper: vanishing denominator in manifold " +
                              std::to_string(n));
    }
    const double second = nn * (nn - 1.0) * w.pa + (nn + 1.0) * nn * w.pb;
    return second / mean - mean;
}

Squeezing squeezing_parameters(const DensityMatrix& rho) {
    const FieldMoments m = field_moments(rho);
    Squeezing s = squeezing_from(m.n_mean, m.a_mean, m.a2_mean);
    s.truncation_warning = m.truncation_warning;
    return s;
}

Squeezing squeezing_paper(const JointState& state, int n) {
    const ManifoldWeights w = manifold_weights(state, n);
    const double mean = n * w.pa + (n + 1.0) * w.pb;
    return squeezing_from(mean, w.a_mean, Complex{});
}

ObservableReport exact_report(const JointState& state, int n) {
    const DensityMatrix rho = reduced_density_matrix(state);
    const FieldMoments m = field_moments(rho);
    const Squeezing s = squeezing_parameters(rho);
    ObservableReport r{Mode::Exact, {}, state.params()};
    r.values["p(n)"] = photon_number_distribution(rho, n);
    r.values["mean_n"] = m.n_mean;
    r.values["n2_moment"] = m.n2_moment;
    r.values["a_mean"] = m.a_mean;
    r.values["a2_mean"] = m.a2_mean;
    if (m.n_mean > kVacuumThreshold) {
        r.values["Q"] = (m.n2_moment - m.n_mean * m.n_mean) / m.n_mean;
    }
    r.values["s_x"] = s.s_x;
    r.values["s_p"] = s.s_p;
    return r;
}

ObservableReport paper_report(const JointState& state, int n) {
    const ManifoldWeights w = manifold_weights(state, n);
    const double nn = n;
    const Squeezing s = squeezing_paper(state, n);
    ObservableReport r{Mode::Paper, {}, state.params()};
    r.values["p(n)"] = std::norm(coherent_amplitude(n, state.params().alpha));
    r.values["mean_n"] = nn * w.pa + (nn + 1.0) * w.pb;
    r.values["n2_moment"] = nn * (nn - 1.0) * w.pa + (nn + 1.0) * nn * w.pb;
    r.values["a_mean"] = w.a_mean;
    r.values["a2_mean"] = Complex{};
    try {
        r.values["Q"] = mandel_q_paper(state, n);
    } catch (const ZeroDenominator&) {
    }
    r.values["s_x"] = s.s_x;
    r.values["s_p"] = s.s_p;
    return r;
}

}  // namespace cavity
