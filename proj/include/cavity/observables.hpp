#pragma once

// Photon statistics and quadrature squeezing of the cavity field.
//
// Exact mode works on any DensityMatrix through ladder-operator matrix
// elements. Paper mode evaluates the single-manifold expectation values
// <a^dag a> = n|c_{a,n}|^2 + (n+1)|c_{b,n+1}|^2, <a> = sqrt(n+1) c_{a,n}^* c_{b,n+1},
// <a^2> = 0 directly from the amplitudes, with unnormalized manifold weights.
//
// Q < 0 is sub-Poissonian, Q > 0 super-Poissonian.

#include <map>
#include <string>
#include <variant>

#include "cavity/model.hpp"
#include "cavity/oracle.hpp"

namespace cavity {

/// <n|rho|n>. Throws std::out_of_range outside the basis.
double photon_number_distribution(const DensityMatrix& rho, int n);

struct FieldMoments {
    Complex a_mean;
    Complex adag_mean;
    double n_mean = 0.0;
    Complex a2_mean;
    double n2_moment = 0.0;  // <a^dag^2 a^2>
    // Population of the top basis state exceeds 1e-8.
    bool truncation_warning = false;
};

FieldMoments field_moments(const DensityMatrix& rho);

/// (<a^dag^2 a^2> - <a^dag a>^2) / <a^dag a>. Throws VacuumField when
/// <a^dag a> <= 1e-15.
double mandel_q(const DensityMatrix& rho);

/// The single-manifold expression with the unnormalized <a^dag a> subtracted.
/// Throws ZeroDenominator when n|c_{a,n}|^2 + (n+1)|c_{b,n+1}|^2 <= 1e-15.
double mandel_q_paper(const JointState& state, int n);

struct Squeezing {
    double s_x = 0.0;
    double s_p = 0.0;
    bool truncation_warning = false;
};

/// s_x = 4<(dx)^2> - 1, s_p = 4<(dp)^2> - 1 with x = (a + a^dag)/2, p = (a - a^dag)/2i.
Squeezing squeezing_parameters(const DensityMatrix& rho);

/// Same parameters from the single-manifold expectation values.
Squeezing squeezing_paper(const JointState& state, int n);

enum class Mode { Paper, Exact };

/// Named scalar results. Keys: "p(n)", "mean_n", "n2_moment", "a_mean",
/// "a2_mean", "Q", "s_x", "s_p".
struct ObservableReport {
    Mode mode = Mode::Exact;
    std::map<std::string, std::variant<double, Complex>> values;
    SystemParams params_echo;
};

/// Exact report from the reduced density matrix; "p(n)" is <n|rho|n>.
ObservableReport exact_report(const JointState& state, int n);

/// Paper report for manifold n; "p(n)" is |c_n(0)|^2. "Q" is omitted when
/// its denominator vanishes.
ObservableReport paper_report(const JointState& state, int n);

}  // namespace cavity
