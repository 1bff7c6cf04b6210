#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qnd {

using Amplitude = std::complex<double>;

/// Largest register the dense simulator accepts.
inline constexpr int kMaxQubits = 20;

/// Tolerance for normalization at public operation boundaries.
inline constexpr double kNormTolerance = 1e-10;

/// Dense pure state over 2^n computational basis kets.
///
/// Basis indexing is big-endian: qubit 0 is the leftmost symbol of the ket,
/// so |q0 q1 ... q(n-1)> lives at index sum_i q_i * 2^(n-1-i). For two qubits
/// |11> is index 3 and |10> is index 2.
///
/// The amplitudes are not forced to be normalized; operations that need a
/// normalized input check it themselves. apply_dense_operator is allowed to
/// produce unnormalized vectors (projectors in oracle code).
class StateVector {
  public:
    StateVector(int num_qubits, std::vector<Amplitude> amplitudes);

    int num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }

    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    std::span<Amplitude> mutable_amplitudes() { return amplitudes_; }

    const Amplitude &operator[](std::size_t index) const { return amplitudes_[index]; }
    Amplitude &operator[](std::size_t index) { return amplitudes_[index]; }

    double norm_squared() const;
    bool is_normalized(double tolerance = kNormTolerance) const;

    /// Bit mask of `qubit` inside a basis index.
    std::size_t qubit_mask(int qubit) const { return std::size_t{1} << (num_qubits_ - 1 - qubit); }

  private:
    int num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

enum class GateKind { HadamardStandard, HadamardPaper, PauliX, Cnot };

enum class HadamardConvention { Paper, Standard };

struct GateOp {
    GateKind kind;
    int target;
    std::optional<int> control;

    static GateOp hadamard(int target, HadamardConvention convention);
    static GateOp x(int target) { return {GateKind::PauliX, target, std::nullopt}; }
    static GateOp cnot(int control, int target) { return {GateKind::Cnot, target, control}; }

    bool operator==(const GateOp &) const = default;
};

std::string to_string(const GateOp &gate);

/// Pauli errors used by the noise channels. Not part of the circuit gate set.
enum class Pauli { I, X, Y, Z };

struct MeasurementResult {
    int bit;
    double probability;
    StateVector post_state;
};

/// |bits> with bits given as a string of '0'/'1' characters.
StateVector make_basis_state(int num_qubits, std::string_view bitstring);
StateVector make_basis_state(int num_qubits, std::span<const std::uint8_t> bits);

StateVector apply_gate(StateVector state, const GateOp &gate);
void apply_gate_in_place(StateVector &state, const GateOp &gate);

StateVector apply_gates(StateVector state, std::span<const GateOp> gates);
void apply_gates_in_place(StateVector &state, std::span<const GateOp> gates);

void apply_pauli_in_place(StateVector &state, int qubit, Pauli pauli);

/// Projective Z measurement of one qubit. The outcome is 0 iff
/// `random_draw` < Prob(qubit = 0), so results are a pure function of the
/// draw. The post-state keeps all qubits and is renormalized.
MeasurementResult measure_qubit(const StateVector &state, int qubit, double random_draw);

/// Probability that `qubit` reads 0.
double probability_of_zero(const StateVector &state, int qubit);

/// Removes a qubit known to be in |bit>. Throws if the state still has
/// weight above tolerance on the other value.
StateVector remove_qubit(const StateVector &state, int qubit, int bit);

/// state ⊗ |0...0> with `count` fresh qubits appended on the right.
StateVector append_zero_qubits(const StateVector &state, int count);

/// a ⊗ b.
StateVector tensor_product(const StateVector &a, const StateVector &b);

Amplitude inner_product(const StateVector &a, const StateVector &b);

/// |<a|b>|^2; equals 1 iff the two (normalized) states agree up to a global phase.
double fidelity_up_to_global_phase(const StateVector &a, const StateVector &b);

/// Matrix-vector product. No normalization is enforced on the result.
StateVector apply_dense_operator(const StateVector &state, const Eigen::MatrixXcd &matrix);

StateVector normalized(StateVector state);

void require_normalized(const StateVector &state, double tolerance = kNormTolerance);

/// Maximum elementwise |a_k - b_k|.
double max_amplitude_difference(const StateVector &a, const StateVector &b);

}  // namespace qnd
