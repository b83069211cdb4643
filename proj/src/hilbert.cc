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

#include "wghz/hilbert.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace wghz {

namespace {

std::atomic<double> g_tolerance_scale{1.0};

void require_same_space(const HilbertSpace &a, const HilbertSpace &b, const char *what) {
    if (!(a == b)) {
        throw InvalidInput(std::string(what) + ": space mismatch (" + a.describe() + " vs " +
                           b.describe() + ")");
    }
}

}  // namespace

Tolerances tolerances() {
    double s = g_tolerance_scale.load();
    return Tolerances{
        .operator_hermiticity = 1e-12 * s,
        .state_norm = 1e-10 * s,
        .density_hermiticity = 1e-10 * s,
        .density_trace = 1e-8 * s,
        .density_min_eigenvalue = 1e-8 * s,
    };
}

double tolerance_scale() { return g_tolerance_scale.load(); }

void set_tolerance_scale(double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw InvalidInput("tolerance scale must be positive and finite");
    }
    g_tolerance_scale.store(scale);
}

// --- HilbertSpace -----------------------------------------------------------

HilbertSpace::HilbertSpace(std::initializer_list<Subsystem> subsystems)
    : HilbertSpace(std::vector<Subsystem>(subsystems)) {}

HilbertSpace::HilbertSpace(std::vector<Subsystem> subsystems) : subsystems_(std::move(subsystems)) {
    std::set<std::string> seen;
    for (const auto &s : subsystems_) {
        if (s.dim == 0) {
            throw InvalidInput("subsystem '" + s.label + "' has zero dimension");
        }
        if (!seen.insert(s.label).second) {
            throw InvalidInput("duplicate subsystem label '" + s.label + "'");
        }
        dim_ *= s.dim;
    }
}

bool HilbertSpace::contains(std::string_view label) const {
    return std::any_of(subsystems_.begin(), subsystems_.end(),
                       [&](const Subsystem &s) { return s.label == label; });
}

std::size_t HilbertSpace::position(std::string_view label) const {
    for (std::size_t k = 0; k < subsystems_.size(); ++k) {
        if (subsystems_[k].label == label) {
            return k;
        }
    }
    throw InvalidInput("unknown subsystem label '" + std::string(label) + "' in " + describe());
}

std::size_t HilbertSpace::dim_of(std::string_view label) const {
    return subsystems_[position(label)].dim;
}

std::vector<std::string> HilbertSpace::labels() const {
    std::vector<std::string> out;
    out.reserve(subsystems_.size());
    for (const auto &s : subsystems_) {
        out.push_back(s.label);
    }
    return out;
}

std::size_t HilbertSpace::flat_index(std::span<const std::size_t> digits) const {
    if (digits.size() != subsystems_.size()) {
        throw InvalidInput("basis label has wrong number of digits for " + describe());
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) {
        if (digits[k] >= subsystems_[k].dim) {
            throw InvalidInput("digit out of range for subsystem '" + subsystems_[k].label + "'");
        }
        index = index * subsystems_[k].dim + digits[k];
    }
    return index;
}

std::vector<std::size_t> HilbertSpace::digits(std::size_t flat_index) const {
    if (flat_index >= dim_) {
        throw InvalidInput("flat index out of range");
    }
    std::vector<std::size_t> out(subsystems_.size());
    for (std::size_t k = subsystems_.size(); k-- > 0;) {
        out[k] = flat_index % subsystems_[k].dim;
        flat_index /= subsystems_[k].dim;
    }
    return out;
}

std::string HilbertSpace::describe() const {
    if (subsystems_.empty()) {
        return "scalar";
    }
    std::ostringstream os;
    for (std::size_t k = 0; k < subsystems_.size(); ++k) {
        if (k) {
            os << " x ";
        }
        os << subsystems_[k].label << "(" << subsystems_[k].dim << ")";
    }
    return os.str();
}

HilbertSpace concat(const HilbertSpace &a, const HilbertSpace &b) {
    std::vector<Subsystem> all = a.subsystems();
    for (const auto &s : b.subsystems()) {
        if (a.contains(s.label)) {
            throw InvalidInput("tensor: label collision on '" + s.label + "'");
        }
        all.push_back(s);
    }
    return HilbertSpace(std::move(all));
}

// --- StateVector ------------------------------------------------------------

StateVector::StateVector(HilbertSpace space, CVector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != space_.dim()) {
        throw InvalidInput("state vector length does not match " + space_.describe());
    }
}

StateVector StateVector::zero(HilbertSpace space) {
    auto d = static_cast<Eigen::Index>(space.dim());
    return StateVector(std::move(space), CVector::Zero(d));
}

StateVector StateVector::basis(HilbertSpace space, std::span<const std::size_t> digits) {
    std::size_t index = space.flat_index(digits);
    CVector v = CVector::Zero(static_cast<Eigen::Index>(space.dim()));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(space), std::move(v));
}

StateVector StateVector::basis(HilbertSpace space, std::initializer_list<std::size_t> digits) {
    return basis(std::move(space), std::span<const std::size_t>(digits.begin(), digits.size()));
}

Complex StateVector::amplitude(std::initializer_list<std::size_t> digits) const {
    return amplitudes_(static_cast<Eigen::Index>(
        space_.flat_index(std::span<const std::size_t>(digits.begin(), digits.size()))));
}

bool StateVector::is_normalized() const {
    return std::abs(norm() - 1.0) <= tolerances().state_norm;
}

StateVector StateVector::normalized() const {
    double n = norm();
    if (n == 0.0) {
        throw InvalidInput("cannot normalize the zero vector");
    }
    return StateVector(space_, amplitudes_ / n);
}

// --- DensityMatrix ----------------------------------------------------------

DensityMatrix::DensityMatrix(HilbertSpace space, CMatrix elements)
    : space_(std::move(space)), elements_(std::move(elements)) {
    auto d = static_cast<Eigen::Index>(space_.dim());
    if (elements_.rows() != d || elements_.cols() != d) {
        throw InvalidInput("density matrix shape does not match " + space_.describe());
    }
}

DensityMatrix DensityMatrix::pure(const StateVector &psi) {
    const CVector &v = psi.amplitudes();
    return DensityMatrix(psi.space(), v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(HilbertSpace space) {
    auto d = static_cast<Eigen::Index>(space.dim());
    return DensityMatrix(std::move(space), CMatrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::hermiticity_error() const {
    return (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    CMatrix herm = 0.5 * (elements_ + elements_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_valid() const {
    auto tol = tolerances();
    return hermiticity_error() <= tol.density_hermiticity &&
           std::abs(trace() - Complex(1.0)) <= tol.density_trace &&
           min_eigenvalue() >= -tol.density_min_eigenvalue;
}

void DensityMatrix::validate() const {
    auto tol = tolerances();
    if (hermiticity_error() > tol.density_hermiticity) {
        throw InvalidInput("density matrix is not Hermitian");
    }
    if (std::abs(trace() - Complex(1.0)) > tol.density_trace) {
        throw InvalidInput("density matrix trace is not 1");
    }
    if (min_eigenvalue() < -tol.density_min_eigenvalue) {
        throw InvalidInput("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::normalized() const {
    Complex tr = trace();
    if (std::abs(tr) == 0.0) {
        throw InvalidInput("cannot normalize a zero-trace matrix");
    }
    return DensityMatrix(space_, elements_ / tr.real());
}

// --- Operator ---------------------------------------------------------------

Operator::Operator(HilbertSpace space, CMatrix elements, bool hermitian)
    : space_(std::move(space)), elements_(std::move(elements)), hermitian_(hermitian) {
    auto d = static_cast<Eigen::Index>(space_.dim());
    if (elements_.rows() != d || elements_.cols() != d) {
        throw InvalidInput("operator shape does not match " + space_.describe());
    }
    if (hermitian_ && d > 0 &&
        (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff() > tolerances().operator_hermiticity) {
        throw InvalidInput("operator flagged Hermitian is not Hermitian");
    }
}

Operator Operator::identity(HilbertSpace space) {
    auto d = static_cast<Eigen::Index>(space.dim());
    return Operator(std::move(space), CMatrix::Identity(d, d), true);
}

Operator Operator::zero(HilbertSpace space) {
    auto d = static_cast<Eigen::Index>(space.dim());
    return Operator(std::move(space), CMatrix::Zero(d, d), true);
}

Operator Operator::adjoint() const { return Operator(space_, elements_.adjoint(), hermitian_); }

StateVector Operator::apply(const StateVector &psi) const {
    require_same_space(space_, psi.space(), "apply");
    return StateVector(space_, elements_ * psi.amplitudes());
}

DensityMatrix Operator::sandwich(const DensityMatrix &rho) const {
    require_same_space(space_, rho.space(), "sandwich");
    return DensityMatrix(space_, elements_ * rho.matrix() * elements_.adjoint());
}

Operator operator+(const Operator &a, const Operator &b) {
    require_same_space(a.space_, b.space_, "operator+");
    return Operator(a.space_, a.elements_ + b.elements_, a.hermitian_ && b.hermitian_);
}

Operator operator-(const Operator &a, const Operator &b) {
    require_same_space(a.space_, b.space_, "operator-");
    return Operator(a.space_, a.elements_ - b.elements_, a.hermitian_ && b.hermitian_);
}

Operator operator*(const Operator &a, const Operator &b) {
    require_same_space(a.space_, b.space_, "operator*");
    return Operator(a.space_, a.elements_ * b.elements_, false);
}

Operator operator*(Complex s, const Operator &a) {
    return Operator(a.space_, s * a.elements_, a.hermitian_ && s.imag() == 0.0);
}

Operator operator*(double s, const Operator &a) {
    return Operator(a.space_, s * a.elements_, a.hermitian_);
}

Operator local_operator(const HilbertSpace &space, std::string_view label, const CMatrix &local,
                        bool hermitian) {
    std::size_t pos = space.position(label);
    const auto &subs = space.subsystems();
    if (static_cast<std::size_t>(local.rows()) != subs[pos].dim ||
        static_cast<std::size_t>(local.cols()) != subs[pos].dim) {
        throw InvalidInput("local operator shape does not match subsystem '" + std::string(label) +
                           "'");
    }
    CMatrix full = CMatrix::Identity(1, 1);
    for (std::size_t k = 0; k < subs.size(); ++k) {
        auto d = static_cast<Eigen::Index>(subs[k].dim);
        full = kron(full, k == pos ? local : CMatrix::Identity(d, d));
    }
    return Operator(space, std::move(full), hermitian);
}

// --- Tensor products --------------------------------------------------------

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CVector kron(const CVector &a, const CVector &b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

Operator tensor(const Operator &a, const Operator &b) {
    return Operator(concat(a.space(), b.space()), kron(a.matrix(), b.matrix()),
                    a.hermitian() && b.hermitian());
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    return StateVector(concat(a.space(), b.space()), kron(a.amplitudes(), b.amplitudes()));
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix(concat(a.space(), b.space()), kron(a.matrix(), b.matrix()));
}

// --- Reductions and measures ------------------------------------------------

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::string> keep) {
    const HilbertSpace &space = rho.space();
    std::vector<bool> kept(space.num_subsystems(), false);
    for (const auto &label : keep) {
        kept[space.position(label)] = true;
    }
    std::vector<Subsystem> kept_subs;
    std::vector<Subsystem> traced_subs;
    for (std::size_t k = 0; k < space.num_subsystems(); ++k) {
        (kept[k] ? kept_subs : traced_subs).push_back(space.subsystems()[k]);
    }
    HilbertSpace kept_space(kept_subs);
    HilbertSpace traced_space(traced_subs);

    // Flat index in the full space for every (kept, traced) pair.
    std::vector<std::size_t> full_index(kept_space.dim() * traced_space.dim());
    for (std::size_t f = 0; f < space.dim(); ++f) {
        auto d = space.digits(f);
        std::vector<std::size_t> dk;
        std::vector<std::size_t> dt;
        for (std::size_t k = 0; k < d.size(); ++k) {
            (kept[k] ? dk : dt).push_back(d[k]);
        }
        full_index[kept_space.flat_index(dk) * traced_space.dim() + traced_space.flat_index(dt)] = f;
    }

    const CMatrix &m = rho.matrix();
    auto dk = static_cast<Eigen::Index>(kept_space.dim());
    std::size_t dt = traced_space.dim();
    CMatrix out = CMatrix::Zero(dk, dk);
    for (Eigen::Index r = 0; r < dk; ++r) {
        for (Eigen::Index c = 0; c < dk; ++c) {
            Complex acc = 0.0;
            for (std::size_t t = 0; t < dt; ++t) {
                acc += m(static_cast<Eigen::Index>(full_index[r * dt + t]),
                         static_cast<Eigen::Index>(full_index[c * dt + t]));
            }
            out(r, c) = acc;
        }
    }
    return DensityMatrix(std::move(kept_space), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<std::string> keep) {
    return partial_trace(rho, std::span<const std::string>(keep.begin(), keep.size()));
}

double fidelity(const DensityMatrix &rho, const StateVector &target) {
    require_same_space(rho.space(), target.space(), "fidelity");
    if (!target.is_normalized()) {
        throw InvalidInput("fidelity: target state is not normalized");
    }
    Complex f = target.amplitudes().dot(rho.matrix() * target.amplitudes());
    return std::clamp(f.real(), 0.0, 1.0);
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    require_same_space(a.space(), b.space(), "trace_distance");
    CMatrix diff = a.matrix() - b.matrix();
    CMatrix herm = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

Operator propagator(const Operator &h, double t) {
    const CMatrix &m = h.matrix();
    CMatrix u;
    if (h.hermitian()) {
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (m + m.adjoint()));
        const auto &vals = solver.eigenvalues();
        const CMatrix &vecs = solver.eigenvectors();
        CVector phases(vals.size());
        for (Eigen::Index k = 0; k < vals.size(); ++k) {
            phases(k) = std::exp(-kI * vals(k) * t);
        }
        u = vecs * phases.asDiagonal() * vecs.adjoint();
    } else {
        CMatrix generator = (-kI * t) * m;
        u = generator.exp();
    }
    if (!u.allFinite()) {
        throw std::overflow_error("propagator: non-finite matrix exponential");
    }
    return Operator(h.space(), std::move(u), false);
}

}  // namespace wghz
