#include "qnd/bell_operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qnd {
namespace {

constexpr double kUnitTolerance = 1e-12;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kDegeneracyGap = 1e-8;
constexpr int kMaxBellParticles = 8;

void check_unit(const Vec3 &v) {
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (std::abs(norm - 1.0) > kUnitTolerance) {
        std::ostringstream msg;
        msg << "direction (" << v[0] << ", " << v[1] << ", " << v[2] << ") is not a unit vector";
        throw std::invalid_argument(msg.str());
    }
}

void check_spec(const BellOperatorSpec &spec) {
    for (const auto &p : spec.particles) {
        check_unit(p.a);
        check_unit(p.a_prime);
    }
}

Matrix chsh_matrix(const BellOperatorSpec &spec) {
    const Matrix a = pauli_along(spec.particles[0].a);
    const Matrix ap = pauli_along(spec.particles[0].a_prime);
    const Matrix b = pauli_along(spec.particles[1].a);
    const Matrix bp = pauli_along(spec.particles[1].a_prime);
    return kron(a, b) + kron(a, bp) + kron(ap, b) - kron(ap, bp);
}

Matrix recursive_matrix(const BellOperatorSpec &spec) {
    const int n = spec.num_particles();
    if (n == 2) {
        return chsh_matrix(spec);
    }
    const BellOperatorSpec head = spec.prefix(n - 1);
    const Matrix previous = recursive_matrix(head);
    const Matrix previous_swapped = recursive_matrix(head.swapped());
    const Matrix a = pauli_along(spec.particles.back().a);
    const Matrix ap = pauli_along(spec.particles.back().a_prime);
    return kron(previous, 0.5 * (a + ap)) + kron(previous_swapped, 0.5 * (a - ap));
}

// Index ranges [begin, end) of eigenvalues equal within kDegeneracyGap.
std::vector<std::pair<Eigen::Index, Eigen::Index>> eigen_clusters(const Eigen::VectorXd &values) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;
    Eigen::Index begin = 0;
    for (Eigen::Index i = 1; i <= values.size(); ++i) {
        if (i == values.size() || values[i] - values[i - 1] > kDegeneracyGap) {
            clusters.emplace_back(begin, i);
            begin = i;
        }
    }
    return clusters;
}

double max_abs(const Matrix &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

BellOperatorSpec BellOperatorSpec::swapped() const {
    BellOperatorSpec out = *this;
    for (auto &p : out.particles) {
        std::swap(p.a, p.a_prime);
    }
    return out;
}

BellOperatorSpec BellOperatorSpec::prefix(int count) const {
    BellOperatorSpec out;
    out.particles.assign(particles.begin(), particles.begin() + count);
    return out;
}

BellOperatorSpec canonical_chsh_spec() {
    const double r = 0.70710678118654752440;
    return {{{{0, 0, 1}, {1, 0, 0}}, {{r, 0, r}, {-r, 0, r}}}};
}

BellOperatorSpec canonical_bell_spec(int n) {
    if (n == 2) {
        return canonical_chsh_spec();
    }
    BellOperatorSpec spec;
    spec.particles.assign(static_cast<std::size_t>(n), DirectionPair{{0, 1, 0}, {1, 0, 0}});
    return spec;
}

HermitianObservable::HermitianObservable(Matrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 2 || (matrix_.rows() & (matrix_.rows() - 1)) != 0) {
        throw std::invalid_argument("observable must be a square 2^n x 2^n matrix");
    }
    if (hermiticity_error() > kHermitianTolerance) {
        throw std::invalid_argument("observable is not Hermitian");
    }
}

int HermitianObservable::num_qubits() const {
    int n = 0;
    while ((Eigen::Index{1} << n) < matrix_.rows()) {
        ++n;
    }
    return n;
}

double HermitianObservable::hermiticity_error() const { return max_abs(matrix_ - matrix_.adjoint()); }

Eigen::Matrix2cd pauli_along(const Vec3 &d) {
    using C = std::complex<double>;
    Eigen::Matrix2cd m;
    m << C(d[2], 0), C(d[0], -d[1]), C(d[0], d[1]), C(-d[2], 0);
    return m;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

HermitianObservable chsh_operator(const BellOperatorSpec &spec) {
    if (spec.num_particles() != 2) {
        throw std::invalid_argument("chsh_operator needs exactly 2 direction pairs");
    }
    check_spec(spec);
    return HermitianObservable(chsh_matrix(spec));
}

HermitianObservable bell_operator_n(const BellOperatorSpec &spec) {
    const int n = spec.num_particles();
    if (n < 3 || n > kMaxBellParticles) {
        throw std::invalid_argument("bell_operator_n needs 3..8 direction pairs (use chsh_operator for n = 2)");
    }
    check_spec(spec);
    return HermitianObservable(recursive_matrix(spec));
}

HermitianObservable bell_operator(const BellOperatorSpec &spec) {
    return spec.num_particles() == 2 ? chsh_operator(spec) : bell_operator_n(spec);
}

Spectrum spectrum(const HermitianObservable &observable) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(observable.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigen decomposition failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double spectral_radius(const HermitianObservable &observable) {
    const auto values = spectrum(observable).eigenvalues;
    return std::max(std::abs(values.minCoeff()), std::abs(values.maxCoeff()));
}

StateVector eigenvector_state(const Spectrum &spec, Eigen::Index column) {
    const Eigen::VectorXcd v = spec.eigenvectors.col(column);
    int n = 0;
    while ((Eigen::Index{1} << n) < v.size()) {
        ++n;
    }
    return StateVector(n, std::vector<Amplitude>(v.data(), v.data() + v.size()));
}

CompatibilityReport qnd_compatibility_check(const HermitianObservable &observable, std::span<const GateOp> network,
                                            double tolerance) {
    const int data_qubits = observable.num_qubits();
    int total_qubits = data_qubits;
    for (const auto &g : network) {
        total_qubits = std::max(total_qubits, g.target + 1);
        if (g.control) {
            total_qubits = std::max(total_qubits, *g.control + 1);
        }
    }
    const int ancillas = total_qubits - data_qubits;
    if (total_qubits > kMaxQubits) {
        throw std::invalid_argument("network register exceeds the simulator cap");
    }
    const Eigen::Index dim = observable.dimension();
    const std::size_t branch_count = std::size_t{1} << ancillas;

    std::vector<Matrix> kraus(branch_count, Matrix::Zero(dim, dim));
    for (Eigen::Index j = 0; j < dim; ++j) {
        std::vector<Amplitude> amps(std::size_t{1} << total_qubits);
        amps[static_cast<std::size_t>(j) << ancillas] = 1.0;
        StateVector column(total_qubits, std::move(amps));
        apply_gates_in_place(column, network);
        for (Eigen::Index i = 0; i < dim; ++i) {
            for (std::size_t m = 0; m < branch_count; ++m) {
                kraus[m](i, j) = column[(static_cast<std::size_t>(i) << ancillas) | m];
            }
        }
    }

    const Matrix &b = observable.matrix();
    const Spectrum spec = spectrum(observable);
    const auto clusters = eigen_clusters(spec.eigenvalues);

    Matrix weight = Matrix::Zero(dim, dim);
    for (std::size_t m = 0; m < branch_count; ++m) {
        weight += static_cast<double>(m + 1) * kraus[m].adjoint() * kraus[m];
    }

    CompatibilityReport report{data_qubits, ancillas, {}, {}, 0.0, true};
    const Matrix identity = Matrix::Identity(dim, dim);
    for (std::size_t m = 0; m < branch_count; ++m) {
        KrausBranchReport branch;
        for (int k = ancillas - 1; k >= 0; --k) {
            branch.ancilla_bits.push_back(static_cast<std::uint8_t>((m >> k) & 1));
        }
        branch.kraus = kraus[m];
        branch.commutator_norm = max_abs(kraus[m] * b - b * kraus[m]);
        branch.eigenspaces_invariant = true;
        for (auto [begin, end] : clusters) {
            const Matrix v = spec.eigenvectors.middleCols(begin, end - begin);
            const Matrix projector = v * v.adjoint();
            if (max_abs((identity - projector) * kraus[m] * projector) > tolerance) {
                branch.eigenspaces_invariant = false;
            }
        }
        report.max_commutator_norm = std::max(report.max_commutator_norm, branch.commutator_norm);
        report.branches.push_back(std::move(branch));
    }

    for (auto [begin, end] : clusters) {
        const Matrix v = spec.eigenvectors.middleCols(begin, end - begin);
        const Matrix restricted = v.adjoint() * weight * v;
        Eigen::SelfAdjointEigenSolver<Matrix> refine(0.5 * (restricted + restricted.adjoint()));
        const Matrix basis = v * refine.eigenvectors();
        for (Eigen::Index c = 0; c < basis.cols(); ++c) {
            const Eigen::VectorXcd vec = basis.col(c);
            bool preserved = true;
            for (const auto &k : kraus) {
                const Eigen::VectorXcd image = k * vec;
                const double image_norm = image.squaredNorm();
                if (image_norm < tolerance) {
                    continue;
                }
                const double overlap = std::norm(vec.dot(image)) / image_norm;
                if (overlap < 1.0 - tolerance) {
                    preserved = false;
                }
            }
            report.all_eigenstates_preserved = report.all_eigenstates_preserved && preserved;
            report.eigenstates.push_back(
                {spec.eigenvalues[begin + c],
                 StateVector(data_qubits, std::vector<Amplitude>(vec.data(), vec.data() + vec.size())), preserved});
        }
    }
    return report;
}

}  // namespace qnd
