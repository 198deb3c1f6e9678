#include "cavity/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cavity/errors.hpp"

namespace cavity {

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("ComplexMatrix: shape mismatch in product");
    }
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex lhs = (*this)(r, k);
            if (lhs == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < rhs.cols_; ++c) {
                out(r, c) += lhs * rhs(k, c);
            }
        }
    }
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw std::invalid_argument("ComplexMatrix: shape mismatch in sum");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += rhs.data_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& x : data_) {
        x *= s;
    }
    return *this;
}

double ComplexMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) {
            row += std::abs((*this)(r, c));
        }
        best = std::max(best, row);
    }
    return best;
}

std::string Provenance::label() const {
    switch (kind) {
    case Kind::ExactTrace:
        return "exact-trace";
    case Kind::PaperEq5:
        return "paper-eq5";
    case Kind::SingleManifold:
        return "single-manifold(" + std::to_string(manifold) + ")";
    case Kind::Custom:
        break;
    }
    return "custom";
}

DensityMatrix::DensityMatrix(ComplexMatrix elements, Provenance provenance)
    : elements_(std::move(elements)), provenance_(provenance) {
    if (elements_.rows() != elements_.cols() || elements_.rows() == 0) {
        throw std::invalid_argument("DensityMatrix: elements must be a non-empty square matrix");
    }
}

DensityMatrix DensityMatrix::fock(std::size_t n, std::size_t dim) {
    if (n >= dim) {
        throw std::out_of_range("DensityMatrix::fock: n outside basis");
    }
    ComplexMatrix m(dim, dim);
    m(n, n) = 1.0;
    return DensityMatrix(std::move(m), {});
}

DensityMatrix DensityMatrix::coherent(Complex alpha, std::size_t dim) {
    std::vector<Complex> c(dim);
    for (std::size_t n = 0; n < dim; ++n) {
        c[n] = coherent_amplitude(static_cast<int>(n), alpha);
    }
    ComplexMatrix m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t s = 0; s < dim; ++s) {
            m(r, s) = c[r] * std::conj(c[s]);
        }
    }
    return DensityMatrix(std::move(m), {});
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> weights) {
    ComplexMatrix m(weights.size(), weights.size());
    for (std::size_t n = 0; n < weights.size(); ++n) {
        m(n, n) = weights[n];
    }
    return DensityMatrix(std::move(m), {});
}

double max_step(const SystemParams& params) {
    return std::min(0.01 / rabi_frequency(params.n_max, params), 0.01);
}

double reference_step(const SystemParams& params) {
    return 1e-3 / std::max(1.0, rabi_frequency(params.n_max, params));
}

namespace {

struct Pair {
    Complex a;
    Complex b;
};

Pair operator+(Pair x, Pair y) { return {x.a + y.a, x.b + y.b}; }
Pair operator*(double s, Pair x) { return {s * x.a, s * x.b}; }

template <class Rhs>
Pair rk4(Pair y, double h, std::size_t steps, Rhs&& rhs) {
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * h;
        const Pair k1 = rhs(t, y);
        const Pair k2 = rhs(t + 0.5 * h, y + (0.5 * h) * k1);
        const Pair k3 = rhs(t + 0.5 * h, y + (0.5 * h) * k2);
        const Pair k4 = rhs(t + h, y + h * k3);
        y = y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
    }
    return y;
}

}  // namespace

JointState integrate_schrodinger(const SystemParams& params, double dt, Generator generator) {
    validate(params);
    const double limit = max_step(params);
    if (!(dt > 0.0) || dt > limit) {
        throw StepSizeError("integrate_schrodinger: dt = " + std::to_string(dt) +
                            " outside (0, " + std::to_string(limit) + "]");
    }
    const auto size = static_cast<std::size_t>(params.n_max) + 1;
    std::vector<Complex> ca(size);
    std::vector<Complex> cb(size);
    const auto steps = static_cast<std::size_t>(std::ceil(params.t / dt));
    const double h = steps == 0 ? 0.0 : params.t / static_cast<double>(steps);
    const Complex i{0.0, 1.0};
    const double delta = params.delta;

    for (int n = 0; n <= params.n_max; ++n) {
        const Pair start{coherent_amplitude(n, params.alpha), 0.0};
        Pair end = start;
        if (generator == Generator::ClosedForm) {
            const double k = params.g * std::sqrt(n + 1.0);
            end = rk4(start, h, steps, [&](double, const Pair& y) {
                return Pair{-i * k * y.b, -i * (k * y.a - delta * y.b)};
            });
        } else {
            const double k = 0.5 * params.g * std::sqrt(n + 1.0);
            end = rk4(start, h, steps, [&](double t, const Pair& y) {
                const Complex phase = std::polar(1.0, delta * t);
                return Pair{-i * k * std::conj(phase) * y.b, -i * k * phase * y.a};
            });
        }
        ca[n] = end.a;
        cb[n] = end.b;
    }

    JointState state(std::move(ca), std::move(cb), params);
    const double drift = std::abs(state.norm() - 1.0);
    if (drift > 1e-6) {
        throw NonConvergence("integrate_schrodinger: norm drifted by " + std::to_string(drift));
    }
    return state;
}

DensityMatrix reduced_density_matrix(const JointState& state) {
    const auto dim = static_cast<std::size_t>(state.n_max()) + 2;
    // Field amplitudes conditioned on the atom: a[k] for |a,k>, b[k] for |b,k>.
    std::vector<Complex> a(dim);
    std::vector<Complex> b(dim);
    for (std::size_t n = 0; n + 1 < dim; ++n) {
        a[n] = state.ca()[n];
        b[n + 1] = state.cb()[n];
    }
    ComplexMatrix rho(dim, dim);
    for (std::size_t m = 0; m < dim; ++m) {
        for (std::size_t n = 0; n < dim; ++n) {
            rho(m, n) = a[m] * std::conj(a[n]) + b[m] * std::conj(b[n]);
        }
    }
    return DensityMatrix(std::move(rho), {Provenance::Kind::ExactTrace});
}

DensityMatrix paper_density_matrix(const JointState& state) {
    const auto dim = static_cast<std::size_t>(state.n_max()) + 2;
    ComplexMatrix rho(dim, dim);
    for (std::size_t n = 0; n + 1 < dim; ++n) {
        const Complex ca = state.ca()[n];
        const Complex cb = state.cb()[n];
        rho(n, n) += std::norm(ca);
        rho(n, n + 1) += ca * std::conj(cb);
        rho(n + 1, n) += std::conj(ca) * cb;
        rho(n + 1, n + 1) += std::norm(cb);
    }
    return DensityMatrix(std::move(rho), {Provenance::Kind::PaperEq5});
}

DensityMatrix manifold_density_matrix(const JointState& state, int n) {
    if (n < 0 || n > state.n_max()) {
        throw std::out_of_range("manifold_density_matrix: n outside [0, n_max]");
    }
    const auto idx = static_cast<std::size_t>(n);
    const double pa = std::norm(state.ca()[idx]);
    const double pb = std::norm(state.cb()[idx]);
    const double total = pa + pb;
    if (!(total >= std::numeric_limits<double>::min())) {
        throw EmptyManifold("manifold " + std::to_string(n) + " has no weight to normalize");
    }
    const auto dim = static_cast<std::size_t>(state.n_max()) + 2;
    ComplexMatrix rho(dim, dim);
    rho(idx, idx) = pa / total;
    rho(idx + 1, idx + 1) = pb / total;
    return DensityMatrix(std::move(rho), {Provenance::Kind::SingleManifold, n});
}

DensityDiagnostics validate_density(const DensityMatrix& rho) {
    DensityDiagnostics d;
    Complex trace{};
    d.min_diagonal = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < rho.dim(); ++m) {
        trace += rho(m, m);
        d.min_diagonal = std::min(d.min_diagonal, rho(m, m).real());
        for (std::size_t n = 0; n < rho.dim(); ++n) {
            d.hermiticity_error =
                std::max(d.hermiticity_error, std::abs(rho(m, n) - std::conj(rho(n, m))));
        }
    }
    d.trace_error = std::abs(trace - 1.0);
    return d;
}

}  // namespace cavity
