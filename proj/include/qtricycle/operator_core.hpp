// Copyright 2026 The qtricycle Authors
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

// Dense operator algebra and Lindblad generators on labeled tensor-product
// spaces. Conventions:
//   * hbar = k_B = 1.
//   * Factor 0 is the slowest-varying index of the product basis.
//   * Density matrices are vectorized by column stacking, vec(rho)[i + j*d] = rho(i, j).
// A Superoperator may live on a restricted basis of matrix units |i><j| (a
// "sector"), which is how U(1)-symmetric generators are kept small.

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qtricycle/errors.hpp"

namespace qtricycle::core {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Factor {
    std::string label;
    int dim = 0;
};

class HilbertSpace {
public:
    HilbertSpace() = default;
    explicit HilbertSpace(std::vector<Factor> factors);

    static HilbertSpace single(const std::string& label, int dim);

    const std::vector<Factor>& factors() const { return factors_; }
    int total_dim() const { return total_dim_; }
    int factor_index(const std::string& label) const;  // throws DomainError if absent

    bool operator==(const HilbertSpace& other) const;
    bool operator!=(const HilbertSpace& other) const { return !(*this == other); }

private:
    std::vector<Factor> factors_;
    int total_dim_ = 0;
};

class Operator {
public:
    Operator() = default;
    Operator(HilbertSpace space, Matrix matrix);

    static Operator identity(const HilbertSpace& space);
    static Operator zero(const HilbertSpace& space);

    const HilbertSpace& space() const { return space_; }
    const Matrix& matrix() const { return matrix_; }
    int dim() const { return space_.total_dim(); }

    Operator adjoint() const;
    double hermiticity_defect() const;  // max |A - A^dagger|
    bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

    Operator operator+(const Operator& o) const;
    Operator operator-(const Operator& o) const;
    Operator operator*(const Operator& o) const;
    Operator operator*(cplx s) const;
    friend Operator operator*(cplx s, const Operator& a) { return a * s; }

private:
    void require_same_space(const Operator& o) const;

    HilbertSpace space_;
    Matrix matrix_;
};

Operator commutator(const Operator& a, const Operator& b);

// I (x) ... (x) op (x) ... (x) I with op placed on the factor named `label`.
Operator tensor_embed(const Operator& op, const HilbertSpace& space, const std::string& label);

// Truncated annihilation/creation pair on a single factor named `label`.
std::pair<Operator, Operator> ladder_pair(int truncation, const std::string& label = "mode");

// Two-level operators in the basis (|0>, |1>): sigma_z = diag(1, -1),
// sigma_plus = |1><0|, sigma_minus = |0><1|, excitation = |1><1|.
Operator pauli_z(const std::string& label = "qubit");
Operator sigma_plus(const std::string& label = "qubit");
Operator sigma_minus(const std::string& label = "qubit");
Operator excitation(const std::string& label = "qubit");

// Generalized dissipator rate * (A rho B^dagger - 1/2 {B^dagger A, rho}).
// With no partner (B = A) this is the standard GKS-L term with jump A.
// Partnered terms carry the off-diagonal Kossakowski entries.
struct LindbladTerm {
    Operator jump;
    double rate = 0.0;
    std::string channel;
    std::optional<Operator> partner;

    LindbladTerm(Operator jump, double rate, std::string channel);
    LindbladTerm(Operator jump, Operator partner, double rate, std::string channel);
};

// Ordered set of matrix units |i><j| spanning the space a Superoperator acts on.
class SectorBasis {
public:
    static SectorBasis full(int dim);
    // Keeps |i><j| with charge[i] == charge[j] + offset.
    static SectorBasis charge_block(const std::vector<int>& charge, int offset = 0);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(rows_.size()); }
    bool is_full() const { return size() == dim_ * dim_; }
    int row_of(int n) const { return rows_[n]; }
    int col_of(int n) const { return cols_[n]; }
    int index(int i, int j) const { return lookup_[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * dim_]; }

    Vector vectorize(const Matrix& rho) const;
    Matrix unvectorize(const Vector& v) const;

private:
    SectorBasis(int dim, std::vector<int> rows, std::vector<int> cols);

    int dim_ = 0;
    std::vector<int> rows_;
    std::vector<int> cols_;
    std::vector<int> lookup_;
};

// One bilinear piece coef * A rho B of a generator.
struct SandwichTerm {
    cplx coef;
    Matrix left;
    Matrix right;
    std::string channel;
};

class Superoperator {
public:
    Superoperator(HilbertSpace space, SectorBasis basis, std::vector<SandwichTerm> terms);

    const HilbertSpace& space() const { return space_; }
    const SectorBasis& basis() const { return basis_; }
    const Matrix& matrix() const { return matrix_; }
    const std::vector<SandwichTerm>& terms() const { return terms_; }

    std::vector<std::string> channel_tags() const;
    bool has_channel(const std::string& tag) const;
    Superoperator channel(const std::string& tag) const;  // throws DomainError if absent

    // L(rho) evaluated directly from the sandwich terms on the full matrix.
    Matrix apply(const Matrix& rho) const;
    // Adjoint action on an observable: sum coef * B X A.
    Matrix apply_adjoint(const Matrix& x) const;

    // max over basis columns of |sum_i L((i,i), n)|; zero for trace-preserving L.
    double trace_preservation_residual() const;

private:
    HilbertSpace space_;
    SectorBasis basis_;
    std::vector<SandwichTerm> terms_;
    Matrix matrix_;
};

// -i[H, .] plus the dissipators. The Hamiltonian part is tagged "coherent".
Superoperator build_liouvillian(const Operator& h, const std::vector<LindbladTerm>& terms);
Superoperator build_liouvillian(const Operator& h, const std::vector<LindbladTerm>& terms,
                                const SectorBasis& basis);

inline constexpr const char* kCoherentChannel = "coherent";

struct SteadyStateDiagnostics {
    double residual = 0.0;            // max |L rho|
    double rcond = 0.0;               // of the trace-bordered system
    bool degenerate = false;          // null space dimension > 1 suspected
    bool propagated = false;          // long-time propagation was used for the answer
    double propagation_mismatch = -1; // |rho_solve - rho_prop|, negative if not checked
    std::vector<std::string> warnings;
};

class DensityOperator {
public:
    DensityOperator(HilbertSpace space, Matrix matrix);

    const HilbertSpace& space() const { return space_; }
    const Matrix& matrix() const { return matrix_; }

    double trace_defect() const;
    double hermiticity_defect() const;
    double min_eigenvalue() const;
    // Throws NumericalError unless hermitian (1e-10), unit trace (1e-10) and min eig >= -1e-9.
    void validate() const;

    SteadyStateDiagnostics diagnostics;

private:
    HilbertSpace space_;
    Matrix matrix_;
};

struct SteadyStateOptions {
    double residual_tol = 1e-10;
    double rcond_floor = 1e-13;
    // Run the propagation cross-check when the basis size is at most this.
    int propagation_check_limit = 256;
};

DensityOperator steady_state(const Superoperator& l, const SteadyStateOptions& opts = {});

// Long-time limit of exp(L t) applied to the maximally mixed state.
DensityOperator propagate_to_stationarity(const Superoperator& l, double tol = 1e-13);

double expectation(const Operator& a, const DensityOperator& rho);

// Tr(H L_tag(rho)).
double channel_current(const Superoperator& l, const std::string& tag, const DensityOperator& rho,
                       const Operator& h);

// Re-runs `observables(truncation)` at truncation + step until every entry
// moves by less than rel_tol (relative, with an absolute floor abs_floor).
struct TruncationResult {
    std::vector<double> values;
    int truncation = 0;
    double max_rel_change = 0.0;
    bool converged = false;
};

TruncationResult converge_truncation(const std::function<std::vector<double>(int)>& observables,
                                     int initial, int step = 4, int max_truncation = 40,
                                     double rel_tol = 1e-6, double abs_floor = 1e-14);

}  // namespace qtricycle::core
