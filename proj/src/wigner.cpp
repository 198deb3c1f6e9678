#include "cavity/wigner.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cavity/errors.hpp"

namespace cavity {

namespace {

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

// L_m^{(a)}(x) for a >= 0.
double laguerre_upward(int m, double a, double x) {
    double prev = 1.0;
    if (m == 0) {
        return prev;
    }
    double curr = 1.0 + a - x;
    for (int i = 1; i < m; ++i) {
        const double next = ((2.0 * i + 1.0 + a - x) * curr - (i + a) * prev) / (i + 1.0);
        prev = curr;
        curr = next;
    }
    return curr;
}

}  // namespace

double laguerre_assoc(int m, int k, double x) {
    if (x < 0.0) {
        throw std::domain_error("laguerre_assoc: x must be non-negative");
    }
    if (m < 0) {
        throw std::domain_error("laguerre_assoc: degree must be non-negative");
    }
    if (k >= 0) {
        return laguerre_upward(m, k, x);
    }
    const int j = -k;
    if (j > m) {
        throw std::domain_error("laguerre_assoc: order below -degree");
    }
    // (-x)^j (m-j)!/m! L_{m-j}^{(j)}(x)
    double scale = (j % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < j; ++i) {
        scale *= x / static_cast<double>(m - i);
    }
    return scale * laguerre_upward(m - j, j, x);
}

Complex displaced_fock_overlap(Complex beta, int k, int n) {
    if (k < 0 || n < 0) {
        throw std::out_of_range("displaced_fock_overlap: indices must be non-negative");
    }
    const double r = std::abs(beta);
    if (r == 0.0) {
        return k == n ? 1.0 : 0.0;
    }
    const double x = r * r;
    const int lo = std::min(k, n);
    const int j = std::abs(n - k);
    const double theta = std::arg(beta);
    const double log_mag =
        -0.5 * x + 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + j + 1.0)) + j * std::log(r);
    // n >= k: (beta^*)^{n-k} L_k^{(n-k)}.
    // n < k: the negative-order identity turns (beta^*)^{n-k} L_k^{(n-k)} into
    // (-beta)^{k-n} n!/k! L_n^{(k-n)}.
    double phase = n >= k ? -j * theta : j * theta;
    if (n < k && j % 2 == 1) {
        phase += std::numbers::pi;
    }
    return std::polar(std::exp(log_mag), phase) * laguerre_upward(lo, j, x);
}

int default_k_max(std::size_t dim, Complex beta) {
    const double r = std::abs(beta);
    return static_cast<int>(dim) + static_cast<int>(std::ceil(r * r + 6.0 * r));
}

double wigner_series(const DensityMatrix& rho, Complex beta) {
    return wigner_series(rho, beta, default_k_max(rho.dim(), beta));
}

double wigner_series(const DensityMatrix& rho, Complex beta, int k_max) {
    const std::size_t dim = rho.dim();
    if (k_max < static_cast<int>(dim)) {
        throw std::invalid_argument("wigner_series: k_max must cover the basis");
    }
    std::vector<std::size_t> support;
    for (std::size_t m = 0; m < dim; ++m) {
        for (std::size_t n = 0; n < dim; ++n) {
            if (rho(m, n) != Complex{} || rho(n, m) != Complex{}) {
                support.push_back(m);
                break;
            }
        }
    }

    std::vector<Complex> overlap(support.size());
    Complex total{};
    int quiet = 0;
    const int k_limit = 4 * k_max;
    for (int k = 0;; ++k) {
        if (k > k_limit) {
            throw NonConvergence("wigner_series: no convergence by k = " + std::to_string(k_limit));
        }
        for (std::size_t i = 0; i < support.size(); ++i) {
            overlap[i] = displaced_fock_overlap(beta, k, static_cast<int>(support[i]));
        }
        Complex term{};
        for (std::size_t i = 0; i < support.size(); ++i) {
            Complex row{};
            for (std::size_t l = 0; l < support.size(); ++l) {
                row += rho(support[i], support[l]) * std::conj(overlap[l]);
            }
            term += overlap[i] * row;
        }
        total += (k % 2 == 0) ? term : -term;
        quiet = std::abs(term) < 1e-14 ? quiet + 1 : 0;
        if (k + 1 >= k_max && quiet >= 3) {
            break;
        }
    }
    if (std::abs(total.imag()) > 1e-10) {
        throw std::domain_error("wigner_series: imaginary residue " +
                                std::to_string(total.imag()) + " exceeds 1e-10");
    }
    return kTwoOverPi * total.real();
}

ComplexMatrix displacement_matrix(Complex beta, std::size_t dim) {
    ComplexMatrix gen(dim, dim);
    for (std::size_t n = 0; n + 1 < dim; ++n) {
        const double s = std::sqrt(static_cast<double>(n + 1));
        gen(n + 1, n) = beta * s;             // beta a^dag
        gen(n, n + 1) = -std::conj(beta) * s;  // -beta^* a
    }
    const double norm = gen.norm_inf();
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    gen *= std::ldexp(1.0, -squarings);

    ComplexMatrix result = ComplexMatrix::identity(dim);
    ComplexMatrix term = ComplexMatrix::identity(dim);
    for (int k = 1; k < 60; ++k) {
        term = term * gen;
        term *= 1.0 / k;
        result += term;
        if (term.norm_inf() < 1e-18) {
            break;
        }
    }
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return result;
}

double wigner_parity_oracle(const DensityMatrix& rho, Complex beta) {
    const std::size_t dim = rho.dim();
    const double n_max = static_cast<double>(dim) - 2.0;
    if (std::norm(beta) > n_max / 4.0) {
        throw TruncationError("wigner_parity_oracle: |beta|^2 exceeds n_max/4");
    }
    // Work in a padded basis so edge effects of the truncated exponential stay
    // far from the rows that touch rho.
    const double r = std::abs(beta);
    const std::size_t padded = dim + 30 + static_cast<std::size_t>(std::ceil(r * r + 10.0 * r));
    const ComplexMatrix d = displacement_matrix(beta, padded);

    // (2/pi) sum_j (-1)^j [D^dag rho D]_{jj}
    Complex total{};
    for (std::size_t j = 0; j < padded; ++j) {
        Complex diag{};
        for (std::size_t m = 0; m < dim; ++m) {
            const Complex left = std::conj(d(m, j));
            if (left == Complex{}) {
                continue;
            }
            Complex inner{};
            for (std::size_t n = 0; n < dim; ++n) {
                inner += rho(m, n) * d(n, j);
            }
            diag += left * inner;
        }
        total += (j % 2 == 0) ? diag : -diag;
    }
    return kTwoOverPi * total.real();
}

double GridWindow::re_at(int i) const {
    return re_min + (re_max - re_min) * i / (resolution - 1);
}

double GridWindow::im_at(int j) const {
    return im_min + (im_max - im_min) * j / (resolution - 1);
}

double GridWindow::cell_area() const {
    const double cells = resolution - 1;
    return (re_max - re_min) / cells * (im_max - im_min) / cells;
}

double WignerGrid::riemann_sum() const {
    double sum = 0.0;
    for (double w : values) {
        sum += w;
    }
    return sum * window.cell_area();
}

WignerGrid wigner_grid(const DensityMatrix& rho, const GridWindow& window) {
    if (window.resolution < 16) {
        throw std::invalid_argument("wigner_grid: resolution must be at least 16");
    }
    if (!(window.re_min < window.re_max) || !(window.im_min < window.im_max)) {
        throw std::invalid_argument("wigner_grid: empty window");
    }
    WignerGrid grid{window, {}, rho.provenance()};
    const int res = window.resolution;
    grid.values.resize(static_cast<std::size_t>(res) * res);
    for (int j = 0; j < res; ++j) {
        for (int i = 0; i < res; ++i) {
            const Complex beta{window.re_at(i), window.im_at(j)};
            try {
                grid.values[static_cast<std::size_t>(j) * res + i] = wigner_series(rho, beta);
            } catch (const NonConvergence& e) {
                throw NonConvergence(std::string(e.what()) + " at beta = (" +
                                     std::to_string(beta.real()) + ", " +
                                     std::to_string(beta.imag()) + ")");
            }
        }
    }
    return grid;
}

WignerMinimum min_wigner(const WignerGrid& grid) {
    if (grid.values.empty()) {
        throw std::invalid_argument("min_wigner: empty grid");
    }
    const int res = grid.window.resolution;
    WignerMinimum best{{grid.window.re_at(0), grid.window.im_at(0)}, grid.at(0, 0)};
    for (int i = 0; i < res; ++i) {
        for (int j = 0; j < res; ++j) {
            if (grid.at(i, j) < best.w_min) {
                best = {{grid.window.re_at(i), grid.window.im_at(j)}, grid.at(i, j)};
            }
        }
    }
    return best;
}

}  // namespace cavity
