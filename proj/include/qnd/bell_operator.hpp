#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qnd/state_vector.hpp"

namespace qnd {

using Vec3 = std::array<double, 3>;
using Matrix = Eigen::MatrixXcd;

/// Measurement directions (a_k, a'_k) of one particle.
struct DirectionPair {
    Vec3 a;
    Vec3 a_prime;
};

/// Direction pairs for particles 1..n. For n = 2 the pairs are (a, a') and (b, b').
struct BellOperatorSpec {
    std::vector<DirectionPair> particles;

    int num_particles() const { return static_cast<int>(particles.size()); }

    /// Same spec with every a_k and a'_k exchanged.
    BellOperatorSpec swapped() const;
    /// First `count` particles.
    BellOperatorSpec prefix(int count) const;
};

/// a = z, a' = x, b = (z+x)/sqrt2, b' = (z-x)/sqrt2. Spectrum {+-2 sqrt2, 0, 0}.
BellOperatorSpec canonical_chsh_spec();

/// Canonical n >= 3 setting: a_k = y, a'_k = x on every particle. For n = 3
/// the top eigenvalue 4 is nondegenerate with a GHZ eigenvector.
BellOperatorSpec canonical_bell_spec(int n);

/// Dense Hermitian matrix; construction checks Hermiticity within 1e-12.
class HermitianObservable {
  public:
    explicit HermitianObservable(Matrix matrix);

    const Matrix &matrix() const { return matrix_; }
    Eigen::Index dimension() const { return matrix_.rows(); }
    int num_qubits() const;

    /// max_ij |M_ij - conj(M_ji)|.
    double hermiticity_error() const;

  private:
    Matrix matrix_;
};

/// v . sigma.
Eigen::Matrix2cd pauli_along(const Vec3 &direction);

Matrix kron(const Matrix &a, const Matrix &b);

/// a.s (x) b.s + a.s (x) b'.s + a'.s (x) b.s - a'.s (x) b'.s
HermitianObservable chsh_operator(const BellOperatorSpec &spec);

/// B_n = B_{n-1} (x) (a_n.s + a'_n.s)/2 + B'_{n-1} (x) (a_n.s - a'_n.s)/2
/// where B' is built from the swapped spec. Requires 3 <= n <= 8.
HermitianObservable bell_operator_n(const BellOperatorSpec &spec);

/// chsh_operator for n = 2, bell_operator_n otherwise.
HermitianObservable bell_operator(const BellOperatorSpec &spec);

struct Spectrum {
    Eigen::VectorXd eigenvalues;  // ascending
    Matrix eigenvectors;          // columns
};

Spectrum spectrum(const HermitianObservable &observable);

/// Largest |eigenvalue|.
double spectral_radius(const HermitianObservable &observable);

StateVector eigenvector_state(const Spectrum &spec, Eigen::Index column);

// ---------------------------------------------------------------------------

struct KrausBranchReport {
    std::vector<std::uint8_t> ancilla_bits;
    Matrix kraus;               // data-register map for this readout
    double commutator_norm;     // max_ij |[K_m, B]_ij|
    bool eigenspaces_invariant; // K_m maps every eigenspace of B into itself
};

struct EigenstateCheck {
    double eigenvalue;
    StateVector state;
    bool preserved;  // K_m v is ~0 or proportional to v for every branch m
};

struct CompatibilityReport {
    int data_qubits;
    int ancilla_qubits;
    std::vector<KrausBranchReport> branches;
    std::vector<EigenstateCheck> eigenstates;
    double max_commutator_norm;
    bool all_eigenstates_preserved;
};

/// Per-branch commutation of the network-plus-readout Kraus operators
/// K_m = (I (x) <m|) U (I (x) |0...0>) with the observable. Data qubits are
/// 0..d-1 where 2^d is the observable dimension; every higher qubit the
/// network touches is an ancilla starting in |0>. Eigenvectors are taken in
/// a basis that also diagonalizes sum_m (m+1) K_m^dag K_m inside each
/// degenerate eigenspace.
CompatibilityReport qnd_compatibility_check(const HermitianObservable &observable, std::span<const GateOp> network,
                                            double tolerance = 1e-9);

}  // namespace qnd
