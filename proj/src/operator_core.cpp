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

#include "qtricycle/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unsupported/Eigen/MatrixFunctions>

namespace qtricycle::core {

namespace {

const cplx kI(0.0, 1.0);

// Column-wise list of nonzero entries: for each column k, (row, value).
using SparseCols = std::vector<std::vector<std::pair<int, cplx>>>;

SparseCols nonzero_columns(const Matrix& m) {
    SparseCols out(static_cast<std::size_t>(m.cols()));
    for (int k = 0; k < m.cols(); ++k)
        for (int i = 0; i < m.rows(); ++i)
            if (m(i, k) != cplx(0.0)) out[k].emplace_back(i, m(i, k));
    return out;
}

SparseCols nonzero_rows(const Matrix& m) { return nonzero_columns(m.transpose()); }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

// ---------------------------------------------------------------- HilbertSpace

HilbertSpace::HilbertSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw DomainError("HilbertSpace: at least one factor required");
    std::set<std::string> seen;
    total_dim_ = 1;
    for (const auto& f : factors_) {
        if (f.dim < 2) throw DomainError("HilbertSpace: factor '" + f.label + "' has dim < 2");
        if (!seen.insert(f.label).second)
            throw DomainError("HilbertSpace: duplicate label '" + f.label + "'");
        total_dim_ *= f.dim;
    }
}

HilbertSpace HilbertSpace::single(const std::string& label, int dim) {
    return HilbertSpace({Factor{label, dim}});
}

int HilbertSpace::factor_index(const std::string& label) const {
    for (std::size_t k = 0; k < factors_.size(); ++k)
        if (factors_[k].label == label) return static_cast<int>(k);
    throw DomainError("HilbertSpace: unknown factor label '" + label + "'");
}

bool HilbertSpace::operator==(const HilbertSpace& other) const {
    if (factors_.size() != other.factors_.size()) return false;
    for (std::size_t k = 0; k < factors_.size(); ++k)
        if (factors_[k].label != other.factors_[k].label || factors_[k].dim != other.factors_[k].dim)
            return false;
    return true;
}

// -------------------------------------------------------------------- Operator

Operator::Operator(HilbertSpace space, Matrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
    const int d = space_.total_dim();
    if (matrix_.rows() != d || matrix_.cols() != d)
        throw DomainError("Operator: matrix shape does not match space dimension");
}

Operator Operator::identity(const HilbertSpace& space) {
    const int d = space.total_dim();
    return Operator(space, Matrix::Identity(d, d));
}

Operator Operator::zero(const HilbertSpace& space) {
    const int d = space.total_dim();
    return Operator(space, Matrix::Zero(d, d));
}

Operator Operator::adjoint() const { return Operator(space_, matrix_.adjoint()); }

double Operator::hermiticity_defect() const { return max_abs(matrix_ - matrix_.adjoint()); }

void Operator::require_same_space(const Operator& o) const {
    if (space_ != o.space_) throw DomainError("Operator: space mismatch");
}

Operator Operator::operator+(const Operator& o) const {
    require_same_space(o);
    return Operator(space_, matrix_ + o.matrix_);
}

Operator Operator::operator-(const Operator& o) const {
    require_same_space(o);
    return Operator(space_, matrix_ - o.matrix_);
}

Operator Operator::operator*(const Operator& o) const {
    require_same_space(o);
    return Operator(space_, matrix_ * o.matrix_);
}

Operator Operator::operator*(cplx s) const { return Operator(space_, matrix_ * s); }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator tensor_embed(const Operator& op, const HilbertSpace& space, const std::string& label) {
    const int k = space.factor_index(label);
    const auto& factors = space.factors();
    if (op.dim() != factors[k].dim)
        throw DomainError("tensor_embed: operator dim " + std::to_string(op.dim()) +
                          " does not match factor '" + label + "' dim " +
                          std::to_string(factors[k].dim));
    int before = 1;
    int after = 1;
    for (int f = 0; f < k; ++f) before *= factors[f].dim;
    for (std::size_t f = k + 1; f < factors.size(); ++f) after *= factors[f].dim;

    // Index of |..., s_k, ...> is (outer * dk + s_k) * after + inner.
    const int dk = factors[k].dim;
    const int d = space.total_dim();
    Matrix out = Matrix::Zero(d, d);
    const Matrix& m = op.matrix();
    for (int outer = 0; outer < before; ++outer)
        for (int r = 0; r < dk; ++r)
            for (int c = 0; c < dk; ++c) {
                if (m(r, c) == cplx(0.0)) continue;
                for (int inner = 0; inner < after; ++inner)
                    out((outer * dk + r) * after + inner, (outer * dk + c) * after + inner) = m(r, c);
            }
    return Operator(space, std::move(out));
}

std::pair<Operator, Operator> ladder_pair(int truncation, const std::string& label) {
    if (truncation < 2) throw DomainError("ladder_pair: truncation must be >= 2");
    Matrix a = Matrix::Zero(truncation, truncation);
    for (int n = 0; n + 1 < truncation; ++n) a(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
    auto space = HilbertSpace::single(label, truncation);
    Operator lower(space, a);
    return {lower, lower.adjoint()};
}

Operator pauli_z(const std::string& label) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return Operator(HilbertSpace::single(label, 2), m);
}

Operator sigma_plus(const std::string& label) {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return Operator(HilbertSpace::single(label, 2), m);
}

Operator sigma_minus(const std::string& label) { return sigma_plus(label).adjoint(); }

Operator excitation(const std::string& label) {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 1) = 1.0;
    return Operator(HilbertSpace::single(label, 2), m);
}

// --------------------------------------------------------------- LindbladTerm

LindbladTerm::LindbladTerm(Operator jump_, double rate_, std::string channel_)
    : jump(std::move(jump_)), rate(rate_), channel(std::move(channel_)) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw DomainError("LindbladTerm: rate must be finite and >= 0");
}

LindbladTerm::LindbladTerm(Operator jump_, Operator partner_, double rate_, std::string channel_)
    : LindbladTerm(std::move(jump_), rate_, std::move(channel_)) {
    if (partner_.space() != jump.space()) throw DomainError("LindbladTerm: partner space mismatch");
    partner = std::move(partner_);
}

// ---------------------------------------------------------------- SectorBasis

SectorBasis::SectorBasis(int dim, std::vector<int> rows, std::vector<int> cols)
    : dim_(dim), rows_(std::move(rows)), cols_(std::move(cols)),
      lookup_(static_cast<std::size_t>(dim) * dim, -1) {
    for (int n = 0; n < size(); ++n)
        lookup_[static_cast<std::size_t>(rows_[n]) + static_cast<std::size_t>(cols_[n]) * dim_] = n;
}

SectorBasis SectorBasis::full(int dim) {
    std::vector<int> rows;
    std::vector<int> cols;
    rows.reserve(static_cast<std::size_t>(dim) * dim);
    cols.reserve(static_cast<std::size_t>(dim) * dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) {
            rows.push_back(i);
            cols.push_back(j);
        }
    return SectorBasis(dim, std::move(rows), std::move(cols));
}

SectorBasis SectorBasis::charge_block(const std::vector<int>& charge, int offset) {
    const int dim = static_cast<int>(charge.size());
    std::vector<int> rows;
    std::vector<int> cols;
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i)
            if (charge[i] == charge[j] + offset) {
                rows.push_back(i);
                cols.push_back(j);
            }
    return SectorBasis(dim, std::move(rows), std::move(cols));
}

Vector SectorBasis::vectorize(const Matrix& rho) const {
    Vector v(size());
    for (int n = 0; n < size(); ++n) v(n) = rho(rows_[n], cols_[n]);
    return v;
}

Matrix SectorBasis::unvectorize(const Vector& v) const {
    Matrix rho = Matrix::Zero(dim_, dim_);
    for (int n = 0; n < size(); ++n) rho(rows_[n], cols_[n]) = v(n);
    return rho;
}

// ------------------------------------------------------------- Superoperator

Superoperator::Superoperator(HilbertSpace space, SectorBasis basis, std::vector<SandwichTerm> terms)
    : space_(std::move(space)), basis_(std::move(basis)), terms_(std::move(terms)) {
    if (basis_.dim() != space_.total_dim()) throw DomainError("Superoperator: basis/space mismatch");
    const int n = basis_.size();
    matrix_ = Matrix::Zero(n, n);
    for (const auto& t : terms_) {
        // (A rho B)(i, j) = sum_{k,l} A(i,k) rho(k,l) B(l,j)
        const SparseCols a_cols = nonzero_columns(t.left);
        const SparseCols b_rows = nonzero_rows(t.right);
        for (int col = 0; col < n; ++col) {
            const int k = basis_.row_of(col);
            const int l = basis_.col_of(col);
            for (const auto& [i, a] : a_cols[k])
                for (const auto& [j, b] : b_rows[l]) {
                    const int row = basis_.index(i, j);
                    if (row >= 0) matrix_(row, col) += t.coef * a * b;
                }
        }
    }
}

std::vector<std::string> Superoperator::channel_tags() const {
    std::vector<std::string> tags;
    for (const auto& t : terms_)
        if (std::find(tags.begin(), tags.end(), t.channel) == tags.end()) tags.push_back(t.channel);
    return tags;
}

bool Superoperator::has_channel(const std::string& tag) const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const SandwichTerm& t) { return t.channel == tag; });
}

Superoperator Superoperator::channel(const std::string& tag) const {
    std::vector<SandwichTerm> picked;
    for (const auto& t : terms_)
        if (t.channel == tag) picked.push_back(t);
    if (picked.empty()) throw DomainError("Superoperator: channel '" + tag + "' not found");
    return Superoperator(space_, basis_, std::move(picked));
}

Matrix Superoperator::apply(const Matrix& rho) const {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto& t : terms_) out += t.coef * (t.left * rho * t.right);
    return out;
}

Matrix Superoperator::apply_adjoint(const Matrix& x) const {
    // Tr(X coef A rho B) = Tr(coef B X A rho).
    Matrix out = Matrix::Zero(x.rows(), x.cols());
    for (const auto& t : terms_) out += t.coef * (t.right * x * t.left);
    return out;
}

double Superoperator::trace_preservation_residual() const {
    const int n = basis_.size();
    double worst = 0.0;
    for (int col = 0; col < n; ++col) {
        cplx s = 0.0;
        for (int i = 0; i < basis_.dim(); ++i) {
            const int row = basis_.index(i, i);
            if (row >= 0) s += matrix_(row, col);
        }
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

namespace {

void add_dissipator(std::vector<SandwichTerm>& out, const Matrix& a, const Matrix& b, double rate,
                    const std::string& channel, const Matrix& id) {
    if (rate == 0.0) return;
    const Matrix bda = b.adjoint() * a;
    out.push_back({cplx(rate), a, b.adjoint(), channel});
    out.push_back({cplx(-0.5 * rate), bda, id, channel});
    out.push_back({cplx(-0.5 * rate), id, bda, channel});
}

}  // namespace

Superoperator build_liouvillian(const Operator& h, const std::vector<LindbladTerm>& terms) {
    return build_liouvillian(h, terms, SectorBasis::full(h.dim()));
}

Superoperator build_liouvillian(const Operator& h, const std::vector<LindbladTerm>& terms,
                                const SectorBasis& basis) {
    const int d = h.dim();
    const Matrix id = Matrix::Identity(d, d);
    std::vector<SandwichTerm> sandwich;
    sandwich.push_back({-kI, h.matrix(), id, kCoherentChannel});
    sandwich.push_back({kI, id, h.matrix(), kCoherentChannel});
    for (const auto& t : terms) {
        if (t.jump.space() != h.space()) throw DomainError("build_liouvillian: space mismatch in jump operator");
        const Matrix& a = t.jump.matrix();
        const Matrix& b = t.partner ? t.partner->matrix() : a;
        add_dissipator(sandwich, a, b, t.rate, t.channel, id);
    }
    return Superoperator(h.space(), basis, std::move(sandwich));
}

// ------------------------------------------------------------ DensityOperator

DensityOperator::DensityOperator(HilbertSpace space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
    const int d = space_.total_dim();
    if (matrix_.rows() != d || matrix_.cols() != d)
        throw DomainError("DensityOperator: matrix shape does not match space dimension");
}

double DensityOperator::trace_defect() const { return std::abs(matrix_.trace() - cplx(1.0)); }

double DensityOperator::hermiticity_defect() const { return max_abs(matrix_ - matrix_.adjoint()); }

double DensityOperator::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (matrix_ + matrix_.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void DensityOperator::validate() const {
    if (hermiticity_defect() > 1e-10) throw NumericalError("DensityOperator: not hermitian");
    if (trace_defect() > 1e-10) throw NumericalError("DensityOperator: trace != 1");
    if (min_eigenvalue() < -1e-9) throw NumericalError("DensityOperator: negative eigenvalue");
}

// --------------------------------------------------------------- steady state

namespace {

Matrix hermitize_normalize(Matrix rho) {
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const cplx tr = rho.trace();
    if (std::abs(tr) == 0.0) throw NumericalError("steady_state: null vector has zero trace");
    return rho / tr.real();
}

Vector maximally_mixed(const SectorBasis& basis) {
    const int d = basis.dim();
    Vector v = Vector::Zero(basis.size());
    for (int i = 0; i < d; ++i) {
        const int n = basis.index(i, i);
        if (n < 0) throw DomainError("steady_state: basis lacks diagonal matrix units");
        v(n) = 1.0 / d;
    }
    return v;
}

}  // namespace

DensityOperator propagate_to_stationarity(const Superoperator& l, double tol) {
    const Matrix& m = l.matrix();
    const double norm = m.cwiseAbs().colwise().sum().maxCoeff();
    const double tau = norm > 0.0 ? 1.0 / norm : 1.0;
    Matrix step = (m * tau).exp();
    const Vector x0 = maximally_mixed(l.basis());
    Vector x = step * x0;
    bool settled = false;
    // exp(L tau 2^k); 2^90 tau covers any gap above ~1e-27 norm(L).
    for (int k = 0; k < 90; ++k) {
        step = (step * step).eval();
        Vector next = step * x0;
        const double change = (next - x).cwiseAbs().maxCoeff();
        x = std::move(next);
        if (change < tol) {
            settled = true;
            break;
        }
    }
    DensityOperator rho(l.space(), hermitize_normalize(l.basis().unvectorize(x)));
    rho.diagnostics.propagated = true;
    rho.diagnostics.residual = (m * l.basis().vectorize(rho.matrix())).cwiseAbs().maxCoeff();
    if (!settled) rho.diagnostics.warnings.push_back("propagation did not settle");
    return rho;
}

DensityOperator steady_state(const Superoperator& l, const SteadyStateOptions& opts) {
    const SectorBasis& basis = l.basis();
    const int n = basis.size();
    const int d = basis.dim();
    const int anchor = basis.index(0, 0);
    if (anchor < 0) throw DomainError("steady_state: basis lacks diagonal matrix units");

    // Trace-bordered system: the anchor row is a combination of the other
    // diagonal rows (trace preservation), so replacing it keeps full rank
    // exactly when the null space is one-dimensional.
    Matrix bordered = l.matrix();
    bordered.row(anchor).setZero();
    for (int i = 0; i < d; ++i) bordered(anchor, basis.index(i, i)) = 1.0;
    Vector rhs = Vector::Zero(n);
    rhs(anchor) = 1.0;

    Eigen::PartialPivLU<Matrix> lu(bordered);
    const double rcond = lu.rcond();

    bool degenerate = !(rcond > opts.rcond_floor);
    if (!degenerate && n <= opts.propagation_check_limit) {
        Eigen::FullPivLU<Matrix> rank_probe(l.matrix());
        rank_probe.setThreshold(1e-10);
        degenerate = rank_probe.rank() < n - 1;
    }

    if (degenerate) {
        DensityOperator rho = propagate_to_stationarity(l);
        rho.diagnostics.rcond = rcond;
        rho.diagnostics.degenerate = true;
        rho.diagnostics.warnings.push_back("null space dimension > 1; returned long-time limit of the maximally mixed state");
        if (rho.diagnostics.residual > opts.residual_tol)
            throw NumericalError("steady_state: no null vector to tolerance (residual " +
                                 std::to_string(rho.diagnostics.residual) + ")");
        return rho;
    }

    const Vector x = lu.solve(rhs);
    DensityOperator rho(l.space(), hermitize_normalize(basis.unvectorize(x)));
    rho.diagnostics.rcond = rcond;
    rho.diagnostics.residual = (l.matrix() * basis.vectorize(rho.matrix())).cwiseAbs().maxCoeff();
    if (rho.diagnostics.residual > opts.residual_tol)
        throw NumericalError("steady_state: no null vector to tolerance (residual " +
                             std::to_string(rho.diagnostics.residual) + ")");

    if (n <= opts.propagation_check_limit) {
        const DensityOperator prop = propagate_to_stationarity(l);
        rho.diagnostics.propagation_mismatch = max_abs(prop.matrix() - rho.matrix());
        if (rho.diagnostics.propagation_mismatch > 1e-8)
            rho.diagnostics.warnings.push_back("propagation cross-check disagrees with null-space solve");
    }
    return rho;
}

double expectation(const Operator& a, const DensityOperator& rho) {
    if (a.space() != rho.space()) throw DomainError("expectation: space mismatch");
    return (a.matrix() * rho.matrix()).trace().real();
}

double channel_current(const Superoperator& l, const std::string& tag, const DensityOperator& rho,
                       const Operator& h) {
    if (!l.has_channel(tag)) throw DomainError("channel_current: channel '" + tag + "' not found");
    if (h.space() != rho.space() || h.space() != l.space()) throw DomainError("channel_current: space mismatch");
    cplx total = 0.0;
    for (const auto& t : l.terms()) {
        if (t.channel != tag) continue;
        // Tr(H c A rho B) = c Tr(B H A rho)
        const Matrix bha = t.right * h.matrix() * t.left;
        total += t.coef * bha.cwiseProduct(rho.matrix().transpose()).sum();
    }
    return total.real();
}

TruncationResult converge_truncation(const std::function<std::vector<double>(int)>& observables,
                                     int initial, int step, int max_truncation, double rel_tol,
                                     double abs_floor) {
    if (initial < 2 || step < 1) throw DomainError("converge_truncation: bad truncation schedule");
    TruncationResult res;
    std::vector<double> prev = observables(initial);
    for (int n = initial + step; n <= max_truncation; n += step) {
        std::vector<double> cur = observables(n);
        if (cur.size() != prev.size()) throw DomainError("converge_truncation: observable count changed");
        double worst = 0.0;
        for (std::size_t k = 0; k < cur.size(); ++k) {
            const double scale = std::max(std::abs(cur[k]), abs_floor);
            worst = std::max(worst, std::abs(cur[k] - prev[k]) / scale);
        }
        res.values = cur;
        res.truncation = n;
        res.max_rel_change = worst;
        if (worst < rel_tol) {
            res.converged = true;
            return res;
        }
        prev = std::move(cur);
    }
    if (res.values.empty()) {
        res.values = prev;
        res.truncation = initial;
    }
    return res;
}

}  // namespace qtricycle::core
