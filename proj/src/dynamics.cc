// Copyright 2026 The wghz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wghz/dynamics.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Sparse>

namespace wghz {

namespace {

using SparseC = Eigen::SparseMatrix<Complex>;

constexpr double kDegenerateThreshold = 1e-6;

void require_space(const HilbertSpace &expected, const HilbertSpace &got, const char *what) {
    if (!(expected == got)) {
        throw InvalidInput(std::string(what) + ": dimension mismatch (" + expected.describe() + " vs " +
                           got.describe() + ")");
    }
}

void require_collapse_space(const Operator &h, std::span<const CollapseChannel> collapse) {
    for (const auto &c : collapse) {
        require_space(h.space(), c.op.space(), "collapse operator");
        if (!(c.rate >= 0.0) || !std::isfinite(c.rate)) {
            throw InvalidInput("collapse channel '" + c.name + "' has an invalid rate");
        }
    }
}

double operator_norm(const CMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

// Pieces of the master-equation generator, prepared once per integration.
struct LindbladGenerator {
    CMatrix k;  // H − (i/2) Σ r C†C
    std::vector<SparseC> jumps;
    std::vector<SparseC> jumps_adj;
    // Mostly-filled jump operators are faster as dense products.
    std::vector<CMatrix> dense_jumps;
    std::vector<CMatrix> dense_jumps_adj;

    LindbladGenerator(const Operator &h, std::span<const CollapseChannel> collapse) : k(h.matrix()) {
        for (const auto &c : collapse) {
            if (c.rate == 0.0) {
                continue;
            }
            const CMatrix &op = c.op.matrix();
            k -= (0.5 * c.rate) * kI * (op.adjoint() * op);
            CMatrix scaled = std::sqrt(c.rate) * op;
            const auto nonzeros = (scaled.array() != Complex(0.0)).count();
            if (4 * nonzeros > scaled.size()) {
                dense_jumps.push_back(scaled);
                dense_jumps_adj.push_back(scaled.adjoint());
            } else {
                jumps.push_back(scaled.sparseView());
                jumps_adj.push_back(scaled.adjoint().sparseView());
            }
        }
    }

    CMatrix operator()(const CMatrix &rho) const {
        CMatrix out = -kI * (k * rho - rho * k.adjoint());
        for (std::size_t n = 0; n < jumps.size(); ++n) {
            out += jumps[n] * (rho * jumps_adj[n]);
        }
        for (std::size_t n = 0; n < dense_jumps.size(); ++n) {
            out.noalias() += dense_jumps[n] * (rho * dense_jumps_adj[n]);
        }
        return out;
    }
};

}  // namespace

EvolutionCoefficients ideal_coefficients(const SystemParams &params, double t, BetaConvention convention) {
    params.validate();
    const double lc = params.lambda_c;
    const double om = params.omega;
    const double s = lc * lc + om * om;
    if (s == 0.0) {
        return {1.0, 0.0};
    }
    const double theta = s * t / params.delta;
    const Complex phase = std::exp(kI * theta);
    Complex alpha = (lc * lc + om * om * phase) / s;
    Complex beta;
    if (convention == BetaConvention::kDerived) {
        beta = lc * om * (phase - 1.0) / s;
    } else {
        beta = Complex(-lc * om + om * om * std::cos(theta), lc * om * std::sin(theta)) / s;
    }
    return {alpha, beta};
}

EvolutionCoefficients decay_coefficients(const SystemParams &params, double t) {
    params.validate();
    const double scale = std::max(params.lambda_c, params.omega);
    if (std::abs(params.lambda_c - params.omega) > 1e-12 * scale) {
        throw InvalidInput(
            "decay_coefficients: closed form holds only for lambda_c == omega (got lambda_c=" +
            std::to_string(params.lambda_c) + ", omega=" + std::to_string(params.omega) + ")");
    }
    const DerivedRates r = derived_rates(params);
    const double kappa = params.kappa;
    const Complex phi = r.phi;
    const Complex x = 0.5 * phi * t;

    if (std::abs(phi * t) < kDegenerateThreshold) {
        // cosh x and sinh(x)/x to fourth order; the dropped terms are below 1e-30.
        const Complex x2 = x * x;
        const Complex cosh_x = 1.0 + x2 / 2.0 + x2 * x2 / 24.0;
        const Complex sinhc_x = 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
        const Complex envelope = std::exp(r.varphi * t);
        return {envelope * (cosh_x + 0.5 * kappa * t * sinhc_x), kI * r.eta * t * envelope * sinhc_x};
    }

    // [φ cosh x + κ sinh x] e^{φ̃t}/φ and iη(e^{φt} − 1)e^{t(φ̃ − φ/2)}/φ = 2iη e^{φ̃t} sinh x/φ.
    if (std::abs(x.real()) < 300.0) {
        // sinh keeps full relative accuracy near its zeros, unlike e^{x} − e^{−x}.
        const Complex envelope = std::exp(r.varphi * t);
        const Complex sh = std::sinh(x);
        return {envelope * (std::cosh(x) + kappa * sh / phi), 2.0 * kI * r.eta * envelope * sh / phi};
    }
    // Strongly overdamped: merge the exponentials so nothing overflows.
    const Complex up = std::exp(r.varphi * t + x);
    const Complex down = std::exp(r.varphi * t - x);
    Complex alpha = 0.5 * ((phi + kappa) * up + (phi - kappa) * down) / phi;
    Complex beta = kI * r.eta * (up - down) / phi;
    return {alpha, beta};
}

IntegratorConfig IntegratorConfig::for_rate(double max_rate, double fraction) {
    if (!(max_rate > 0.0) || !(fraction > 0.0)) {
        throw InvalidInput("IntegratorConfig::for_rate needs positive rate and fraction");
    }
    return IntegratorConfig{fraction / max_rate};
}

std::size_t IntegratorConfig::steps_for(double t) const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw InvalidInput("IntegratorConfig.dt must be positive");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InvalidInput("integration horizon must be finite and >= 0");
    }
    if (t == 0.0) {
        return 0;
    }
    return static_cast<std::size_t>(std::ceil(t / dt - 1e-9));
}

bool IntegratorConfig::step_too_coarse(double max_rate) const { return dt * max_rate > 0.05; }

double characteristic_rate(const SystemParams &params) {
    return std::max({params.delta, params.lambda_c * std::sqrt(static_cast<double>(params.n_max)),
                     params.omega, params.kappa, params.gamma_a});
}

double characteristic_rate(const Operator &h, std::span<const CollapseChannel> collapse) {
    double radius = 0.0;
    if (h.hermitian()) {
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
        radius = solver.eigenvalues().cwiseAbs().maxCoeff();
    } else {
        Eigen::ComplexEigenSolver<CMatrix> solver(h.matrix(), false);
        radius = solver.eigenvalues().cwiseAbs().maxCoeff();
    }
    double dissipative = 0.0;
    for (const auto &c : collapse) {
        double n = operator_norm(c.op.matrix());
        dissipative += c.rate * n * n;
    }
    return radius + dissipative;
}

StateVector schrodinger_evolve(const Operator &h, const StateVector &psi0, double t, const IntegratorConfig &cfg) {
    require_space(h.space(), psi0.space(), "schrodinger_evolve");
    const std::size_t steps = cfg.steps_for(t);
    CVector psi = psi0.amplitudes();
    if (steps == 0) {
        return psi0;
    }
    const double step = t / static_cast<double>(steps);
    const CMatrix gen = -kI * h.matrix();
    for (std::size_t n = 0; n < steps; ++n) {
        CVector k1 = gen * psi;
        CVector k2 = gen * (psi + 0.5 * step * k1);
        CVector k3 = gen * (psi + 0.5 * step * k2);
        CVector k4 = gen * (psi + step * k3);
        psi += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return StateVector(h.space(), std::move(psi));
}

DensityMatrix lindblad_evolve(const Operator &h, std::span<const CollapseChannel> collapse, const DensityMatrix &rho0,
                              double t, const IntegratorConfig &cfg, const LindbladObserver &observer) {
    require_space(h.space(), rho0.space(), "lindblad_evolve");
    require_collapse_space(h, collapse);
    rho0.validate();

    const std::size_t steps = cfg.steps_for(t);
    if (steps == 0) {
        return rho0;
    }
    const double step = t / static_cast<double>(steps);
    LindbladGenerator rhs(h, collapse);
    CMatrix rho = rho0.matrix();
    for (std::size_t n = 0; n < steps; ++n) {
        CMatrix k1 = rhs(rho);
        CMatrix k2 = rhs(rho + 0.5 * step * k1);
        CMatrix k3 = rhs(rho + 0.5 * step * k2);
        CMatrix k4 = rhs(rho + step * k3);
        rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (observer) {
            observer(n + 1, step * static_cast<double>(n + 1), rho);
        }
    }
    if (!rho.allFinite()) {
        throw std::runtime_error("lindblad_evolve: integration produced non-finite values");
    }
    return DensityMatrix(h.space(), std::move(rho));
}

CMatrix liouvillian(const Operator &h, std::span<const CollapseChannel> collapse) {
    require_collapse_space(h, collapse);
    const auto d = static_cast<Eigen::Index>(h.space().dim());
    const CMatrix id = CMatrix::Identity(d, d);
    LindbladGenerator gen(h, collapse);
    // vec(AXB) = (Bᵀ ⊗ A) vec(X) for column-major vec.
    CMatrix l = -kI * kron(id, gen.k) + kI * kron(gen.k.conjugate(), id);
    for (const auto &c : collapse) {
        if (c.rate == 0.0) {
            continue;
        }
        const CMatrix &op = c.op.matrix();
        l += c.rate * kron(op.conjugate(), op);
    }
    return l;
}

LindbladPropagator::LindbladPropagator(HilbertSpace space, CMatrix transfer, std::size_t steps)
    : space_(std::move(space)), transfer_(std::move(transfer)), steps_(steps) {
    auto d = static_cast<Eigen::Index>(space_.dim());
    if (transfer_.rows() != d * d || transfer_.cols() != d * d) {
        throw InvalidInput("LindbladPropagator: transfer matrix shape mismatch");
    }
}

CMatrix LindbladPropagator::apply(const CMatrix &rho0) const {
    auto d = static_cast<Eigen::Index>(space_.dim());
    if (rho0.rows() != d || rho0.cols() != d) {
        throw InvalidInput("LindbladPropagator::apply: dimension mismatch");
    }
    CVector v = Eigen::Map<const CVector>(rho0.data(), d * d);
    CVector out = transfer_ * v;
    return Eigen::Map<const CMatrix>(out.data(), d, d);
}

DensityMatrix LindbladPropagator::apply(const DensityMatrix &rho0) const {
    if (!(rho0.space() == space_)) {
        throw InvalidInput("LindbladPropagator::apply: space mismatch");
    }
    return DensityMatrix(space_, apply(rho0.matrix()));
}

LindbladPropagator lindblad_propagator(const Operator &h, std::span<const CollapseChannel> collapse, double t,
                                       const IntegratorConfig &cfg) {
    const std::size_t steps = cfg.steps_for(t);
    const auto n = static_cast<Eigen::Index>(h.space().dim() * h.space().dim());
    const CMatrix id = CMatrix::Identity(n, n);
    if (steps == 0) {
        return LindbladPropagator(h.space(), id, 0);
    }
    const double step = t / static_cast<double>(steps);
    const CMatrix a = step * liouvillian(h, collapse);

    // One RK4 step of a linear autonomous system is the quartic Taylor polynomial of hL.
    CMatrix one_step = id + a / 4.0;
    one_step = id + (a / 3.0) * one_step;
    one_step = id + (a / 2.0) * one_step;
    one_step = id + a * one_step;

    CMatrix result = id;
    CMatrix base = std::move(one_step);
    std::size_t remaining = steps;
    bool first = true;
    while (remaining > 0) {
        if (remaining & 1U) {
            if (first) {
                result = base;
                first = false;
            } else {
                result = (result * base).eval();
            }
        }
        remaining >>= 1U;
        if (remaining > 0) {
            base = (base * base).eval();
        }
    }
    if (!result.allFinite()) {
        throw std::runtime_error("lindblad_propagator: non-finite transfer matrix");
    }
    return LindbladPropagator(h.space(), std::move(result), steps);
}

DeviationReport compare_full_vs_effective(const SystemParams &params, std::span<const double> t_grid) {
    params.validate();
    const Operator h_full = full_hamiltonian(params);
    const Operator h_eff = effective_hamiltonian(params);
    const HilbertSpace eff_space = effective_space(params);
    const StateVector start_eff =
        StateVector::basis(eff_space, {index(AtomLevel::kGL), 0, 0});
    const StateVector start_full = embed_effective(start_eff, params);

    Eigen::SelfAdjointEigenSolver<CMatrix> full_eig(h_full.matrix());
    Eigen::SelfAdjointEigenSolver<CMatrix> eff_eig(h_eff.matrix());
    auto evolve = [](const Eigen::SelfAdjointEigenSolver<CMatrix> &eig, const CVector &v0, double t) {
        CVector c = eig.eigenvectors().adjoint() * v0;
        for (Eigen::Index k = 0; k < c.size(); ++k) {
            c(k) *= std::exp(-kI * eig.eigenvalues()(k) * t);
        }
        return CVector(eig.eigenvectors() * c);
    };

    DeviationReport report;
    report.samples.reserve(t_grid.size());
    for (double t : t_grid) {
        StateVector full_t(h_full.space(), evolve(full_eig, start_full.amplitudes(), t));
        StateVector eff_t(eff_space, evolve(eff_eig, start_eff.amplitudes(), t));
        StateVector restricted = project_effective(full_t, params);
        double d = trace_distance(DensityMatrix::pure(restricted), DensityMatrix::pure(eff_t));
        report.samples.push_back({t, d});
        report.max_distance = std::max(report.max_distance, d);
    }
    return report;
}

std::vector<double> raman_period_grid(const SystemParams &params, std::size_t count) {
    if (count < 2) {
        throw InvalidInput("raman_period_grid needs at least two samples");
    }
    const double period = params.raman_period();
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) {
        grid[k] = period * static_cast<double>(k) / static_cast<double>(count - 1);
    }
    return grid;
}

}  // namespace wghz
