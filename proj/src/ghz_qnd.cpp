#include "qnd/ghz_qnd.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qnd {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_party_count(int n) {
    if (n < 2 || n > kMaxGhzParties) {
        std::ostringstream msg;
        msg << "GHZ party count must be in [2, " << kMaxGhzParties << "], got " << n;
        throw std::invalid_argument(msg.str());
    }
}

std::size_t index_of_bits(std::span<const std::uint8_t> bits) {
    std::size_t index = 0;
    for (auto b : bits) {
        index = (index << 1) | b;
    }
    return index;
}

}  // namespace

std::string to_string(const GhzLabel &label) {
    std::string out = label.sign == Sign::Plus ? "+:" : "-:";
    for (auto b : label.bits) {
        out.push_back(static_cast<char>('0' + b));
    }
    return out;
}

GhzLabel parse_ghz_label(std::string_view text) {
    if (text.size() < 4 || (text[0] != '+' && text[0] != '-') || text[1] != ':') {
        throw std::invalid_argument("GHZ label must look like \"+:1011\"");
    }
    GhzLabel label;
    label.sign = text[0] == '+' ? Sign::Plus : Sign::Minus;
    for (char c : text.substr(2)) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("GHZ label bits must be '0' or '1'");
        }
        label.bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return label;
}

GhzLabel canonicalize(GhzLabel label) {
    if (!label.bits.empty() && label.bits.front() == 0) {
        for (auto &b : label.bits) {
            b ^= 1;
        }
    }
    return label;
}

std::vector<GhzLabel> all_canonical_ghz_labels(int n) {
    check_party_count(n);
    std::vector<GhzLabel> labels;
    labels.reserve(std::size_t{1} << n);
    for (std::size_t tail = 0; tail < (std::size_t{1} << (n - 1)); ++tail) {
        GhzLabel label;
        label.bits.push_back(1);
        for (int i = n - 2; i >= 0; --i) {
            label.bits.push_back(static_cast<std::uint8_t>((tail >> i) & 1));
        }
        label.sign = Sign::Plus;
        labels.push_back(label);
        label.sign = Sign::Minus;
        labels.push_back(std::move(label));
    }
    return labels;
}

StateVector ghz_state(const GhzLabel &label) {
    check_party_count(label.num_qubits());
    if (!label.is_canonical()) {
        throw std::invalid_argument("GHZ label " + to_string(label) + " is not canonical (leading bit must be 1)");
    }
    const int n = label.num_qubits();
    const std::size_t x = index_of_bits(label.bits);
    const std::size_t complement = ((std::size_t{1} << n) - 1) ^ x;
    std::vector<Amplitude> amps(std::size_t{1} << n);
    amps[x] = kInvSqrt2;
    amps[complement] = label.sign == Sign::Plus ? kInvSqrt2 : -kInvSqrt2;
    return StateVector(n, std::move(amps));
}

std::vector<GateOp> hadamard_layer(int n, HadamardConvention convention) {
    std::vector<GateOp> layer;
    for (int i = 0; i < n; ++i) {
        layer.push_back(GateOp::hadamard(i, convention));
    }
    return layer;
}

namespace {

std::vector<GateOp> part_parity_gates(int pair, int ancilla) {
    return {GateOp::cnot(pair, ancilla), GateOp::cnot(pair + 1, ancilla)};
}

std::vector<GateOp> global_parity_gates(int n, int ancilla) {
    std::vector<GateOp> gates;
    for (int i = 0; i < n; ++i) {
        gates.push_back(GateOp::cnot(i, ancilla));
    }
    return gates;
}

void append(std::vector<GateOp> &dst, const std::vector<GateOp> &src) { dst.insert(dst.end(), src.begin(), src.end()); }

}  // namespace

std::vector<GateOp> ghz_network_gate_list(int n, HadamardConvention convention) {
    check_party_count(n);
    std::vector<GateOp> gates;
    for (int i = 0; i + 1 < n; ++i) {
        append(gates, part_parity_gates(i, n + i));
    }
    append(gates, hadamard_layer(n, convention));
    append(gates, global_parity_gates(n, 2 * n - 1));
    append(gates, hadamard_layer(n, convention));
    return gates;
}

GhzBits ghz_bits(const GhzLabel &label) {
    GhzBits out;
    for (std::size_t i = 0; i + 1 < label.bits.size(); ++i) {
        out.part_parity.push_back(label.bits[i] ^ label.bits[i + 1]);
    }
    out.global_parity = label.sign == Sign::Plus ? 0 : 1;
    return out;
}

GhzLabel decode_ghz(std::span<const std::uint8_t> part_parity_bits, int global_parity_bit, int n) {
    check_party_count(n);
    if (part_parity_bits.size() != static_cast<std::size_t>(n - 1)) {
        throw std::invalid_argument("decode_ghz needs n-1 part-parity bits");
    }
    GhzLabel label;
    label.sign = global_parity_bit == 0 ? Sign::Plus : Sign::Minus;
    label.bits.push_back(1);
    for (auto p : part_parity_bits) {
        label.bits.push_back(static_cast<std::uint8_t>(label.bits.back() ^ (p & 1)));
    }
    return label;
}

int global_parity_offset(int n, HadamardConvention convention) {
    return convention == HadamardConvention::Paper ? (n & 1) : 0;
}

GhzQndOutcome run_ghz_qnd(const StateVector &input, HadamardConvention convention, std::span<const double> draws,
                          GhzExecution execution) {
    const int n = input.num_qubits();
    check_party_count(n);
    require_normalized(input);
    if (draws.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("run_ghz_qnd needs one draw per ancilla (n draws)");
    }
    if (execution == GhzExecution::Auto) {
        execution = n <= kFullRegisterGhzLimit ? GhzExecution::FullRegister : GhzExecution::Staged;
    }

    std::vector<std::uint8_t> parity(static_cast<std::size_t>(n - 1));
    int raw_global = 0;
    double probability = 1.0;
    StateVector data = input;

    if (execution == GhzExecution::FullRegister) {
        if (2 * n > kMaxQubits) {
            throw std::invalid_argument("full-register GHZ network exceeds the simulator cap");
        }
        StateVector joint = append_zero_qubits(input, n);
        apply_gates_in_place(joint, ghz_network_gate_list(n, convention));
        for (int i = 0; i < n; ++i) {
            auto m = measure_qubit(joint, n + i, draws[static_cast<std::size_t>(i)]);
            probability *= m.probability;
            if (i + 1 < n) {
                parity[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(m.bit);
            } else {
                raw_global = m.bit;
            }
            joint = std::move(m.post_state);
        }
        for (int i = n - 1; i >= 0; --i) {
            const int bit = i + 1 < n ? parity[static_cast<std::size_t>(i)] : raw_global;
            joint = remove_qubit(joint, n + i, bit);
        }
        data = std::move(joint);
    } else {
        // Each part-parity ancilla only sees its own two CNOTs, so it can be
        // read and released before the next one is attached. Live register
        // stays at n + 1 qubits.
        for (int i = 0; i + 1 < n; ++i) {
            StateVector joint = append_zero_qubits(data, 1);
            apply_gates_in_place(joint, part_parity_gates(i, n));
            auto m = measure_qubit(joint, n, draws[static_cast<std::size_t>(i)]);
            probability *= m.probability;
            parity[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(m.bit);
            data = remove_qubit(m.post_state, n, m.bit);
        }
        const auto layer = hadamard_layer(n, convention);
        StateVector joint = append_zero_qubits(data, 1);
        apply_gates_in_place(joint, layer);
        apply_gates_in_place(joint, global_parity_gates(n, n));
        apply_gates_in_place(joint, layer);
        auto m = measure_qubit(joint, n, draws[static_cast<std::size_t>(n - 1)]);
        probability *= m.probability;
        raw_global = m.bit;
        data = remove_qubit(m.post_state, n, m.bit);
    }

    const int global = raw_global ^ global_parity_offset(n, convention);
    GhzLabel label = decode_ghz(parity, global, n);
    return {std::move(parity), global, std::move(label), probability, std::move(data)};
}

std::vector<GhzBranch> ghz_projection_oracle(const StateVector &input) {
    const int n = input.num_qubits();
    check_party_count(n);
    require_normalized(input);
    std::vector<GhzBranch> out;
    double total = 0.0;
    for (auto &label : all_canonical_ghz_labels(n)) {
        const double p = std::norm(inner_product(ghz_state(label), input));
        total += p;
        out.push_back({std::move(label), p});
    }
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw std::logic_error("GHZ basis probabilities do not sum to 1");
    }
    return out;
}

}  // namespace qnd
