#include "qnd/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <utility>

namespace qnd {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

inline std::size_t bit_of(int num_qubits, int qubit) { return std::size_t{1} << (num_qubits - 1 - qubit); }

// Index of the k-th basis state whose `mask` bit is 0.
inline std::size_t insert_zero(std::size_t k, std::size_t mask) {
    return ((k & ~(mask - 1)) << 1) | (k & (mask - 1));
}

inline void hadamard_pair(Amplitude &a0, Amplitude &a1, HadamardConvention convention) {
    const Amplitude zero = a0;
    const Amplitude one = a1;
    if (convention == HadamardConvention::Standard) {
        a0 = (zero + one) * kInvSqrt2;
        a1 = (zero - one) * kInvSqrt2;
    } else {
        // |0> -> (|1> - |0>)/sqrt2, |1> -> (|1> + |0>)/sqrt2.
        a0 = (one - zero) * kInvSqrt2;
        a1 = (zero + one) * kInvSqrt2;
    }
}

}  // namespace

namespace kernels {

void hadamard(std::span<Amplitude> amps, int num_qubits, int target, HadamardConvention convention) {
    const std::size_t mask = bit_of(num_qubits, target);
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
#pragma omp parallel for if (amps.size() >= kParallelThreshold)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero(static_cast<std::size_t>(k), mask);
        hadamard_pair(amps[i0], amps[i0 | mask], convention);
    }
}

void pauli_x(std::span<Amplitude> amps, int num_qubits, int target) {
    const std::size_t mask = bit_of(num_qubits, target);
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
#pragma omp parallel for if (amps.size() >= kParallelThreshold)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero(static_cast<std::size_t>(k), mask);
        std::swap(amps[i0], amps[i0 | mask]);
    }
}

void pauli_y(std::span<Amplitude> amps, int num_qubits, int target) {
    const std::size_t mask = bit_of(num_qubits, target);
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const Amplitude i_unit{0.0, 1.0};
#pragma omp parallel for if (amps.size() >= kParallelThreshold)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero(static_cast<std::size_t>(k), mask);
        const Amplitude zero = amps[i0];
        amps[i0] = -i_unit * amps[i0 | mask];
        amps[i0 | mask] = i_unit * zero;
    }
}

void pauli_z(std::span<Amplitude> amps, int num_qubits, int target) {
    const std::size_t mask = bit_of(num_qubits, target);
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
#pragma omp parallel for if (amps.size() >= kParallelThreshold)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::size_t i1 = insert_zero(static_cast<std::size_t>(k), mask) | mask;
        amps[i1] = -amps[i1];
    }
}

void cnot(std::span<Amplitude> amps, int num_qubits, int control, int target) {
    const std::size_t cmask = bit_of(num_qubits, control);
    const std::size_t tmask = bit_of(num_qubits, target);
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
#pragma omp parallel for if (amps.size() >= kParallelThreshold)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero(static_cast<std::size_t>(k), tmask);
        if (i0 & cmask) {
            std::swap(amps[i0], amps[i0 | tmask]);
        }
    }
}

double probability_of_zero(std::span<const Amplitude> amps, int num_qubits, int qubit) {
    const std::size_t mask = bit_of(num_qubits, qubit);
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    double total = 0.0;
#pragma omp parallel for reduction(+ : total) if (amps.size() >= kParallelThreshold)
    for (std::int64_t k = 0; k < half; ++k) {
        total += std::norm(amps[insert_zero(static_cast<std::size_t>(k), mask)]);
    }
    return total;
}

}  // namespace kernels

namespace reference {

void hadamard(std::span<Amplitude> amps, int num_qubits, int target, HadamardConvention convention) {
    const std::size_t mask = bit_of(num_qubits, target);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (!(i & mask)) {
            hadamard_pair(amps[i], amps[i | mask], convention);
        }
    }
}

void pauli_x(std::span<Amplitude> amps, int num_qubits, int target) {
    const std::size_t mask = bit_of(num_qubits, target);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (!(i & mask)) {
            std::swap(amps[i], amps[i | mask]);
        }
    }
}

void pauli_y(std::span<Amplitude> amps, int num_qubits, int target) {
    const std::size_t mask = bit_of(num_qubits, target);
    const Amplitude i_unit{0.0, 1.0};
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (!(i & mask)) {
            const Amplitude zero = amps[i];
            amps[i] = -i_unit * amps[i | mask];
            amps[i | mask] = i_unit * zero;
        }
    }
}

void pauli_z(std::span<Amplitude> amps, int num_qubits, int target) {
    const std::size_t mask = bit_of(num_qubits, target);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) {
            amps[i] = -amps[i];
        }
    }
}

void cnot(std::span<Amplitude> amps, int num_qubits, int control, int target) {
    const std::size_t cmask = bit_of(num_qubits, control);
    const std::size_t tmask = bit_of(num_qubits, target);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps[i], amps[i | tmask]);
        }
    }
}

double probability_of_zero(std::span<const Amplitude> amps, int num_qubits, int qubit) {
    const std::size_t mask = bit_of(num_qubits, qubit);
    double total = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (!(i & mask)) {
            total += std::norm(amps[i]);
        }
    }
    return total;
}

void apply_gate(StateVector &state, const GateOp &gate) {
    auto amps = state.mutable_amplitudes();
    const int n = state.num_qubits();
    switch (gate.kind) {
        case GateKind::HadamardStandard:
            hadamard(amps, n, gate.target, HadamardConvention::Standard);
            break;
        case GateKind::HadamardPaper:
            hadamard(amps, n, gate.target, HadamardConvention::Paper);
            break;
        case GateKind::PauliX:
            pauli_x(amps, n, gate.target);
            break;
        case GateKind::Cnot:
            cnot(amps, n, *gate.control, gate.target);
            break;
    }
}

}  // namespace reference
}  // namespace qnd
