#pragma once

#include <span>

#include "qnd/state_vector.hpp"

// Amplitude update kernels. `qnd::kernels` are OpenMP parallel over the
// 2^(n-1) amplitude pairs once the register is large enough to amortize the
// thread team; `qnd::reference` holds the plain serial loops used by tests
// and the benchmark as the ground truth.

namespace qnd::kernels {

/// Registers below this many amplitudes run serially.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 12;

void hadamard(std::span<Amplitude> amps, int num_qubits, int target, HadamardConvention convention);
void pauli_x(std::span<Amplitude> amps, int num_qubits, int target);
void pauli_y(std::span<Amplitude> amps, int num_qubits, int target);
void pauli_z(std::span<Amplitude> amps, int num_qubits, int target);
void cnot(std::span<Amplitude> amps, int num_qubits, int control, int target);

double probability_of_zero(std::span<const Amplitude> amps, int num_qubits, int qubit);

}  // namespace qnd::kernels

namespace qnd::reference {

void hadamard(std::span<Amplitude> amps, int num_qubits, int target, HadamardConvention convention);
void pauli_x(std::span<Amplitude> amps, int num_qubits, int target);
void pauli_y(std::span<Amplitude> amps, int num_qubits, int target);
void pauli_z(std::span<Amplitude> amps, int num_qubits, int target);
void cnot(std::span<Amplitude> amps, int num_qubits, int control, int target);

double probability_of_zero(std::span<const Amplitude> amps, int num_qubits, int qubit);

/// Serial gate application over a whole state, used as the oracle for the
/// parallel path.
void apply_gate(StateVector &state, const GateOp &gate);

}  // namespace qnd::reference
