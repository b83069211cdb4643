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

#ifndef WGHZ_HILBERT_H
#define WGHZ_HILBERT_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace wghz {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Raised for inputs that violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Numeric tolerances used by validity checks. All values scale with the
/// single global setting `set_tolerance_scale`.
struct Tolerances {
    double operator_hermiticity;
    double state_norm;
    double density_hermiticity;
    double density_trace;
    double density_min_eigenvalue;
};

Tolerances tolerances();
double tolerance_scale();
void set_tolerance_scale(double scale);

struct Subsystem {
    std::string label;
    std::size_t dim;

    bool operator==(const Subsystem &) const = default;
};

/// Ordered tensor product of labelled finite-dimensional factors.
///
/// Basis ordering is row-major over the subsystem list: the last subsystem
/// varies fastest. A space with no subsystems is the 1-dimensional scalar space.
class HilbertSpace {
  public:
    HilbertSpace() = default;
    HilbertSpace(std::initializer_list<Subsystem> subsystems);
    explicit HilbertSpace(std::vector<Subsystem> subsystems);

    const std::vector<Subsystem> &subsystems() const { return subsystems_; }
    std::size_t dim() const { return dim_; }
    std::size_t num_subsystems() const { return subsystems_.size(); }

    bool contains(std::string_view label) const;
    /// Position of `label` in the subsystem list; throws InvalidInput if absent.
    std::size_t position(std::string_view label) const;
    std::size_t dim_of(std::string_view label) const;
    std::vector<std::string> labels() const;

    std::size_t flat_index(std::span<const std::size_t> digits) const;
    std::vector<std::size_t> digits(std::size_t flat_index) const;

    std::string describe() const;

    bool operator==(const HilbertSpace &) const = default;

  private:
    std::vector<Subsystem> subsystems_;
    std::size_t dim_ = 1;
};

/// Concatenation a ⊗ b. Throws InvalidInput on a label collision.
HilbertSpace concat(const HilbertSpace &a, const HilbertSpace &b);

class StateVector {
  public:
    StateVector(HilbertSpace space, CVector amplitudes);

    static StateVector zero(HilbertSpace space);
    static StateVector basis(HilbertSpace space, std::span<const std::size_t> digits);
    static StateVector basis(HilbertSpace space, std::initializer_list<std::size_t> digits);

    const HilbertSpace &space() const { return space_; }
    const CVector &amplitudes() const { return amplitudes_; }
    Complex amplitude(std::initializer_list<std::size_t> digits) const;

    double norm() const { return amplitudes_.norm(); }
    bool is_normalized() const;
    StateVector normalized() const;

  private:
    HilbertSpace space_;
    CVector amplitudes_;
};

class DensityMatrix {
  public:
    DensityMatrix(HilbertSpace space, CMatrix elements);

    static DensityMatrix pure(const StateVector &psi);
    static DensityMatrix maximally_mixed(HilbertSpace space);

    const HilbertSpace &space() const { return space_; }
    const CMatrix &matrix() const { return elements_; }

    Complex trace() const { return elements_.trace(); }
    double hermiticity_error() const;
    double min_eigenvalue() const;
    /// Hermitian, unit trace and positive semidefinite within tolerances().
    bool is_valid() const;
    /// Throws InvalidInput naming the violated property.
    void validate() const;
    DensityMatrix normalized() const;

  private:
    HilbertSpace space_;
    CMatrix elements_;
};

class Operator {
  public:
    /// Throws InvalidInput if `hermitian` is set and the matrix is not
    /// Hermitian within tolerances().operator_hermiticity.
    Operator(HilbertSpace space, CMatrix elements, bool hermitian = false);

    static Operator identity(HilbertSpace space);
    static Operator zero(HilbertSpace space);

    const HilbertSpace &space() const { return space_; }
    const CMatrix &matrix() const { return elements_; }
    bool hermitian() const { return hermitian_; }

    Operator adjoint() const;
    StateVector apply(const StateVector &psi) const;
    /// A ρ A†.
    DensityMatrix sandwich(const DensityMatrix &rho) const;

    friend Operator operator+(const Operator &a, const Operator &b);
    friend Operator operator-(const Operator &a, const Operator &b);
    friend Operator operator*(const Operator &a, const Operator &b);
    friend Operator operator*(Complex s, const Operator &a);
    friend Operator operator*(double s, const Operator &a);

  private:
    HilbertSpace space_;
    CMatrix elements_;
    bool hermitian_;
};

/// Operator acting as `local` on subsystem `label` and identity elsewhere.
Operator local_operator(const HilbertSpace &space, std::string_view label, const CMatrix &local,
                        bool hermitian = false);

CMatrix kron(const CMatrix &a, const CMatrix &b);
CVector kron(const CVector &a, const CVector &b);

Operator tensor(const Operator &a, const Operator &b);
StateVector tensor(const StateVector &a, const StateVector &b);
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// Reduced matrix on the subsystems named in `keep` (kept in their original order).
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::string> keep);
DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<std::string> keep);

/// ⟨target|ρ|target⟩. Target must be normalized.
double fidelity(const DensityMatrix &rho, const StateVector &target);

/// ½‖a − b‖₁.
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

/// exp(−iHt). Hermitian operators use an eigendecomposition; general operators
/// use scaling and squaring. Throws std::overflow_error on a non-finite result.
Operator propagator(const Operator &h, double t);

}  // namespace wghz

#endif  // WGHZ_HILBERT_H
