#pragma once

// Driven two-level atom in a single-mode cavity: parameters and the
// closed-form amplitudes of the effective-Hamiltonian dynamics.
//
// The joint state lives in the manifolds {|a,n>, |b,n+1>}, n = 0..n_max.
// The atom enters excited and the field starts in a coherent state, so
// c_{a,n}(0) = c_n(0) and c_{b,n+1}(0) = 0.

#include <complex>
#include <cstddef>
#include <vector>

namespace cavity {

using Complex = std::complex<double>;

struct SystemParams {
    double g = 1.0;        // atom-cavity coupling
    double delta = 0.0;    // cavity detuning omega_a - omega
    double epsilon = 0.0;  // classical drive strength; documents the regime only
    Complex alpha{0.0, 0.0};
    double t = 1.0;
    int n_max = 16;
};

/// ceil(|alpha|^2 + 10|alpha| + 20), clamped to at least 16.
int auto_truncation(Complex alpha);

/// Poisson weight of the coherent state beyond index `from` (inclusive).
double coherent_tail(Complex alpha, int from);

/// Builds a parameter set with n_max chosen by auto_truncation().
SystemParams make_params(double g, double delta, Complex alpha, double t, double epsilon = 0.0);

/// Throws InvalidParameters for non-finite fields, negative g/epsilon/t, or an
/// n_max that leaves more than 1e-12 of coherent weight at or beyond n_max.
/// Throws DegenerateParameters when g == 0 and delta == 0.
void validate(const SystemParams& params);

/// Omega_n = sqrt(delta^2 + 4 g^2 (n+1)).
double rabi_frequency(int n, const SystemParams& params);

/// c_n(0) = exp(-|alpha|^2/2) alpha^n / sqrt(n!), evaluated in log space.
Complex coherent_amplitude(int n, Complex alpha);

class JointState {
public:
    JointState(std::vector<Complex> ca, std::vector<Complex> cb, SystemParams params);

    // ca()[n] is c_{a,n}; cb()[n] is c_{b,n+1}. Both have n_max + 1 entries.
    const std::vector<Complex>& ca() const { return ca_; }
    const std::vector<Complex>& cb() const { return cb_; }
    const SystemParams& params() const { return params_; }
    int n_max() const { return params_.n_max; }

    double norm() const;

private:
    std::vector<Complex> ca_;
    std::vector<Complex> cb_;
    SystemParams params_;
};

JointState evolve_closed_form(const SystemParams& params);

/// |c_{a,n}|^2 + |c_{b,n+1}|^2. Throws std::out_of_range outside [0, n_max].
double manifold_probability(const JointState& state, int n);

}  // namespace cavity
