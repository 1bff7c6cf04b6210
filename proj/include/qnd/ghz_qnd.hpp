#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnd/state_vector.hpp"

namespace qnd {

enum class Sign { Plus, Minus };

/// Generalized GHZ state (|x> + sign |x̄>)/sqrt2.
///
/// x and its complement name the same ray (Psi-(x̄) = -Psi-(x)), so the
/// canonical label has bits[0] = 1. Text form is "+:10110".
struct GhzLabel {
    Sign sign = Sign::Plus;
    std::vector<std::uint8_t> bits;

    int num_qubits() const { return static_cast<int>(bits.size()); }
    bool is_canonical() const { return bits.size() >= 2 && bits.front() == 1; }

    bool operator==(const GhzLabel &) const = default;
};

/// Largest n the GHZ network and oracle accept.
inline constexpr int kMaxGhzParties = 8;

/// Up to this n the network runs on a full n-data + n-ancilla register;
/// above it ancillas are measured and released one at a time.
inline constexpr int kFullRegisterGhzLimit = 6;

std::string to_string(const GhzLabel &label);
GhzLabel parse_ghz_label(std::string_view text);

/// Flips x -> x̄ when needed so bits[0] = 1. The sign is kept: labels
/// compare by ray.
GhzLabel canonicalize(GhzLabel label);

/// All 2^n canonical labels, ordered by (bits, sign) with '+' first.
std::vector<GhzLabel> all_canonical_ghz_labels(int n);

StateVector ghz_state(const GhzLabel &label);

/// Gate list over data qubits 0..n-1 and ancillas n..2n-1. Ancilla n+i
/// (i < n-1) collects the parity of data i, i+1; ancilla 2n-1 collects the
/// global parity between the two Hadamard layers.
std::vector<GateOp> ghz_network_gate_list(int n, HadamardConvention convention = HadamardConvention::Paper);

/// One Hadamard of the given convention on each of qubits 0..n-1.
std::vector<GateOp> hadamard_layer(int n, HadamardConvention convention);

struct GhzBits {
    std::vector<std::uint8_t> part_parity;  // p_i = x_i xor x_{i+1}
    std::uint8_t global_parity = 0;         // 0 for '+', 1 for '-'
    bool operator==(const GhzBits &) const = default;
};

/// Ancilla readout the network produces for a GHZ eigenstate.
GhzBits ghz_bits(const GhzLabel &label);

/// x_0 = 1, x_{i+1} = x_i xor p_i; sign '+' iff global parity bit is 0.
GhzLabel decode_ghz(std::span<const std::uint8_t> part_parity_bits, int global_parity_bit, int n);

/// The raw global ancilla reads g xor offset. The Paper Hadamard sends
/// Psi+(x) onto kets of weight n (mod 2), so the offset is n mod 2 there
/// and 0 for the Standard Hadamard.
int global_parity_offset(int n, HadamardConvention convention);

enum class GhzExecution { Auto, FullRegister, Staged };

struct GhzQndOutcome {
    std::vector<std::uint8_t> part_parity_bits;
    int global_parity_bit;
    GhzLabel label;
    double probability;
    StateVector post_state;
};

/// Runs the network on an n-qubit input. draws[i] reads part-parity ancilla
/// i and draws[n-1] the global ancilla. Auto picks FullRegister for
/// n <= kFullRegisterGhzLimit, Staged above. Both give identical outcomes for
/// identical draws.
GhzQndOutcome run_ghz_qnd(const StateVector &input, HadamardConvention convention, std::span<const double> draws,
                          GhzExecution execution = GhzExecution::Auto);

struct GhzBranch {
    GhzLabel label;
    double probability;
};

/// Brute-force inner products against all canonical GHZ basis states.
/// Same order as all_canonical_ghz_labels(n).
std::vector<GhzBranch> ghz_projection_oracle(const StateVector &input);

}  // namespace qnd
