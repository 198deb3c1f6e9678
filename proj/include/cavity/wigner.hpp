#pragma once

// Wigner quasi-probability distribution of a field density matrix.
//
// wigner_series() sums (2/pi) sum_k (-1)^k <beta,k|rho|beta,k> over displaced
// Fock states using the associated-Laguerre overlap formula.
// wigner_parity_oracle() evaluates (2/pi) Tr[D(-beta) rho D(beta) Parity] with
// a numerically exponentiated displacement operator and shares no code with
// the series path.

#include <complex>
#include <vector>

#include "cavity/model.hpp"
#include "cavity/oracle.hpp"

namespace cavity {

/// Associated Laguerre polynomial L_m^{(k)}(x) by upward recurrence in m.
/// Negative order -m <= k < 0 goes through
/// L_m^{(-j)}(x) = (-x)^j (m-j)!/m! L_{m-j}^{(j)}(x).
/// Throws std::domain_error for x < 0, m < 0 or k < -m.
double laguerre_assoc(int m, int k, double x);

/// <beta,k|n> for the displaced Fock state |beta,k> = D(beta)|k>.
Complex displaced_fock_overlap(Complex beta, int k, int n);

/// Default series cutoff for a density matrix of the given size at |beta|.
int default_k_max(std::size_t dim, Complex beta);

/// Sums at least k_max terms, then stops after three consecutive terms below
/// 1e-14. Throws NonConvergence if that has not happened by k = 4 k_max,
/// std::invalid_argument when k_max < dim, and std::domain_error when the
/// imaginary residue exceeds 1e-10 (non-Hermitian input).
double wigner_series(const DensityMatrix& rho, Complex beta, int k_max);
double wigner_series(const DensityMatrix& rho, Complex beta);

/// exp(beta a^dag - beta^* a) on a dim-level truncated basis by scaling and
/// squaring of a Taylor series.
ComplexMatrix displacement_matrix(Complex beta, std::size_t dim);

/// Throws TruncationError when |beta|^2 > n_max / 4 with n_max = dim - 2.
double wigner_parity_oracle(const DensityMatrix& rho, Complex beta);

struct GridWindow {
    double re_min = -3.5;
    double re_max = 3.5;
    double im_min = -3.5;
    double im_max = 3.5;
    int resolution = 141;

    double re_at(int i) const;
    double im_at(int j) const;
    double cell_area() const;
};

struct WignerGrid {
    GridWindow window;
    // values[j * resolution + i] is W at (re_at(i), im_at(j)).
    std::vector<double> values;
    Provenance rho_provenance;

    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * window.resolution + i]; }
    double riemann_sum() const;
};

/// Evaluates wigner_series on every node. Throws std::invalid_argument for
/// resolution < 16 and rethrows node failures with the node coordinates.
WignerGrid wigner_grid(const DensityMatrix& rho, const GridWindow& window);

struct WignerMinimum {
    Complex beta_at_min;
    double w_min = 0.0;
};

/// Minimum node; ties go to the smaller (Re beta, Im beta).
WignerMinimum min_wigner(const WignerGrid& grid);

}  // namespace cavity
