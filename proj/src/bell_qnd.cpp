#include "qnd/bell_qnd.hpp"

#include <cmath>
#include <stdexcept>

namespace qnd {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

std::string to_string(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus:
            return "phi+";
        case BellLabel::PhiMinus:
            return "phi-";
        case BellLabel::PsiPlus:
            return "psi+";
        case BellLabel::PsiMinus:
            return "psi-";
    }
    throw std::logic_error("unreachable BellLabel");
}

BellLabel parse_bell_label(std::string_view text) {
    for (auto label : kBellLabels) {
        if (text == to_string(label)) {
            return label;
        }
    }
    throw std::invalid_argument("unknown Bell label '" + std::string(text) + "'");
}

StateVector bell_state(BellLabel label) {
    // Index order |00>, |01>, |10>, |11>.
    std::vector<Amplitude> amps(4);
    switch (label) {
        case BellLabel::PhiPlus:
            amps[3] = kInvSqrt2;
            amps[0] = kInvSqrt2;
            break;
        case BellLabel::PhiMinus:
            amps[3] = kInvSqrt2;
            amps[0] = -kInvSqrt2;
            break;
        case BellLabel::PsiPlus:
            amps[2] = kInvSqrt2;
            amps[1] = kInvSqrt2;
            break;
        case BellLabel::PsiMinus:
            amps[2] = kInvSqrt2;
            amps[1] = -kInvSqrt2;
            break;
    }
    return StateVector(2, std::move(amps));
}

BellBits bell_bits(BellLabel label) {
    const int i = index_of(label);
    return {static_cast<std::uint8_t>(i >> 1), static_cast<std::uint8_t>(i & 1)};
}

BellLabel decode_bell(int parity_bit, int phase_bit) {
    if ((parity_bit & ~1) != 0 || (phase_bit & ~1) != 0) {
        throw std::invalid_argument("ancilla bits must be 0 or 1");
    }
    return kBellLabels[static_cast<std::size_t>(parity_bit << 1 | phase_bit)];
}

std::vector<GateOp> bell_network_on(int first, int second, int parity_ancilla, int phase_ancilla,
                                    HadamardConvention convention) {
    return {
        // (1) parity onto the first ancilla
        GateOp::cnot(first, parity_ancilla),
        GateOp::cnot(second, parity_ancilla),
        // (2) phase -> parity
        GateOp::hadamard(first, convention),
        GateOp::hadamard(second, convention),
        // (3) translated phase onto the second ancilla
        GateOp::cnot(first, phase_ancilla),
        GateOp::cnot(second, phase_ancilla),
        // (4) undo the basis rotation
        GateOp::hadamard(first, convention),
        GateOp::hadamard(second, convention),
    };
}

std::vector<GateOp> bell_network_unitary_steps(HadamardConvention convention) {
    return bell_network_on(0, 1, 2, 3, convention);
}

StateVector bell_network_joint_state(const StateVector &input, HadamardConvention convention) {
    if (input.num_qubits() != 2) {
        throw std::invalid_argument("Bell QND input must have 2 qubits");
    }
    require_normalized(input);
    const auto gates = bell_network_unitary_steps(convention);
    return apply_gates(append_zero_qubits(input, 2), gates);
}

RegisterQndOutcome run_bell_qnd_on(const StateVector &state, int first, int second, HadamardConvention convention,
                                   std::array<double, 2> draws) {
    require_normalized(state);
    const int n = state.num_qubits();
    const int parity_ancilla = n;
    const int phase_ancilla = n + 1;
    StateVector joint = append_zero_qubits(state, 2);
    apply_gates_in_place(joint, bell_network_on(first, second, parity_ancilla, phase_ancilla, convention));

    auto parity = measure_qubit(joint, parity_ancilla, draws[0]);
    auto phase = measure_qubit(parity.post_state, phase_ancilla, draws[1]);
    StateVector data = remove_qubit(remove_qubit(phase.post_state, phase_ancilla, phase.bit), parity_ancilla, parity.bit);
    return {parity.bit, phase.bit, parity.probability * phase.probability, std::move(data)};
}

BellQndOutcome run_bell_qnd(const StateVector &input, HadamardConvention convention, std::array<double, 2> draws) {
    if (input.num_qubits() != 2) {
        throw std::invalid_argument("Bell QND input must have 2 qubits");
    }
    auto r = run_bell_qnd_on(input, 0, 1, convention, draws);
    return {r.parity_bit, r.phase_bit, decode_bell(r.parity_bit, r.phase_bit), r.probability, std::move(r.post_state)};
}

std::array<BellBranch, 4> bell_projection_oracle(const StateVector &input) {
    if (input.num_qubits() != 2) {
        throw std::invalid_argument("Bell oracle input must have 2 qubits");
    }
    require_normalized(input);
    std::array<BellBranch, 4> out{
        BellBranch{BellLabel::PhiPlus, {}, 0.0, bell_state(BellLabel::PhiPlus)},
        BellBranch{BellLabel::PhiMinus, {}, 0.0, bell_state(BellLabel::PhiMinus)},
        BellBranch{BellLabel::PsiPlus, {}, 0.0, bell_state(BellLabel::PsiPlus)},
        BellBranch{BellLabel::PsiMinus, {}, 0.0, bell_state(BellLabel::PsiMinus)},
    };
    for (auto &branch : out) {
        branch.overlap = inner_product(branch.post_state, input);
        branch.probability = std::norm(branch.overlap);
    }
    return out;
}

}  // namespace qnd
