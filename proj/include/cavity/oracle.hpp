#pragma once

// Independent numerical reference for the closed-form dynamics, and the
// field density matrices derived from a joint atom-field state.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cavity/model.hpp"

namespace cavity {

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t dim);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> data() const { return data_; }

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

    /// Largest absolute row sum.
    double norm_inf() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

struct Provenance {
    enum class Kind { ExactTrace, PaperEq5, SingleManifold, Custom };
    Kind kind = Kind::Custom;
    int manifold = -1;  // only meaningful for SingleManifold

    std::string label() const;
};

/// Field density matrix over |0>..|dim-1>. States built from a JointState
/// have dim = n_max + 2.
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix elements, Provenance provenance);

    std::size_t dim() const { return elements_.rows(); }
    const ComplexMatrix& elements() const { return elements_; }
    const Provenance& provenance() const { return provenance_; }
    const Complex& operator()(std::size_t m, std::size_t n) const { return elements_(m, n); }

    static DensityMatrix fock(std::size_t n, std::size_t dim);
    /// |alpha><alpha| truncated to dim levels (not renormalized).
    static DensityMatrix coherent(Complex alpha, std::size_t dim);
    /// Diagonal state with the given populations.
    static DensityMatrix diagonal(std::span<const double> weights);

private:
    ComplexMatrix elements_;
    Provenance provenance_;
};

enum class Generator {
    // The constant 2x2 generator i d/dt (c_a, c_b) = [[0, k], [k, -delta]] (c_a, c_b)
    // with k = g sqrt(n+1); its exact solution is evolve_closed_form().
    ClosedForm,
    // The interaction-picture equations of motion with coupling g sqrt(n+1)/2 and
    // phases exp(-/+ i delta t) kept in the right-hand side.
    PrintedEquationsOfMotion,
};

/// Largest step integrate_schrodinger() accepts: min(0.01 / Omega_{n_max}, 0.01).
double max_step(const SystemParams& params);

/// Step used by the verification suite: 1e-3 / max(1, Omega_{n_max}).
double reference_step(const SystemParams& params);

/// Classical fixed-step RK4 over each manifold block from 0 to params.t.
/// Throws StepSizeError if dt is not in (0, max_step(params)] and
/// NonConvergence if the final norm drifts from 1 by more than 1e-6.
JointState integrate_schrodinger(const SystemParams& params, double dt,
                                 Generator generator = Generator::ClosedForm);

/// rho[m][n] = c_{a,m} c_{a,n}^* + c_{b,m} c_{b,n}^*, with c_{b,0} = 0.
DensityMatrix reduced_density_matrix(const JointState& state);

/// Literal four-term single-sum expansion:
/// sum_n |c_{a,n}|^2 |n><n| + c_{a,n} c_{b,n+1}^* |n><n+1| + h.c. + |c_{b,n+1}|^2 |n+1><n+1|.
DensityMatrix paper_density_matrix(const JointState& state);

/// Normalized diagonal two-level field state of manifold n. Throws
/// EmptyManifold when the manifold weight underflows.
DensityMatrix manifold_density_matrix(const JointState& state, int n);

struct DensityDiagnostics {
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double min_diagonal = 0.0;
};

DensityDiagnostics validate_density(const DensityMatrix& rho);

}  // namespace cavity
