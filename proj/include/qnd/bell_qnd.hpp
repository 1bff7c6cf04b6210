#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qnd/state_vector.hpp"

namespace qnd {

/// Phi+- = (|11> +- |00>)/sqrt2, Psi+- = (|10> +- |01>)/sqrt2.
enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellLabel, 4> kBellLabels = {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus,
                                                         BellLabel::PsiMinus};

/// "phi+", "phi-", "psi+", "psi-".
std::string to_string(BellLabel label);
BellLabel parse_bell_label(std::string_view text);

/// Position of the label in kBellLabels; also the ancilla pattern
/// (parity << 1 | phase).
inline int index_of(BellLabel label) { return static_cast<int>(label); }

StateVector bell_state(BellLabel label);

/// Classical ancilla readout: parity (first ancilla) and phase (second ancilla).
struct BellBits {
    std::uint8_t parity = 0;
    std::uint8_t phase = 0;
    bool operator==(const BellBits &) const = default;
};

/// Ancilla bits the network produces for a Bell eigenstate.
BellBits bell_bits(BellLabel label);

/// (parity, phase) -> label: (0,0) Phi+, (0,1) Phi-, (1,0) Psi+, (1,1) Psi-.
BellLabel decode_bell(int parity_bit, int phase_bit);

/// Gate list of the four-step network over data qubits 0, 1 and ancillas 2, 3:
/// CNOT(0->2), CNOT(1->2); H(0), H(1); CNOT(0->3), CNOT(1->3); H(0), H(1).
std::vector<GateOp> bell_network_unitary_steps(HadamardConvention convention = HadamardConvention::Paper);

/// The same network acting on data qubits `first`, `second` of a larger
/// register with ancillas at `parity_ancilla`, `phase_ancilla`.
std::vector<GateOp> bell_network_on(int first, int second, int parity_ancilla, int phase_ancilla,
                                    HadamardConvention convention);

/// input ⊗ |00> after the four unitary steps, before any ancilla is read.
StateVector bell_network_joint_state(const StateVector &input, HadamardConvention convention);

struct BellQndOutcome {
    int parity_bit;
    int phase_bit;
    BellLabel label;
    double probability;
    StateVector post_state;
};

/// Runs the network on a 2-qubit input, reads ancilla 2 with draws[0] and
/// ancilla 3 with draws[1], and returns the decoded Bell state and the
/// 2-qubit post-measurement data state.
BellQndOutcome run_bell_qnd(const StateVector &input, HadamardConvention convention, std::array<double, 2> draws);

/// Result of running the network on two qubits of a larger register.
struct RegisterQndOutcome {
    int parity_bit;
    int phase_bit;
    double probability;
    StateVector post_state;  // ancillas removed, remaining qubits in original order
};

/// Appends two |0> ancillas, runs the network on (first, second), measures
/// the ancillas and drops them.
RegisterQndOutcome run_bell_qnd_on(const StateVector &state, int first, int second, HadamardConvention convention,
                                   std::array<double, 2> draws);

struct BellBranch {
    BellLabel label;
    Amplitude overlap;  // <Bell_label|input>
    double probability;
    StateVector post_state;
};

/// Brute-force Bell-basis projection by direct inner products. Shares no code
/// with the network path.
std::array<BellBranch, 4> bell_projection_oracle(const StateVector &input);

}  // namespace qnd
