#include "qnd/state_vector.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qnd/kernels.hpp"

namespace qnd {
namespace {

void check_qubit_count(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        std::ostringstream msg;
        msg << "num_qubits must be in [1, " << kMaxQubits << "], got " << num_qubits;
        throw std::invalid_argument(msg.str());
    }
}

void check_qubit_index(const StateVector &state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits()) {
        std::ostringstream msg;
        msg << "qubit index " << qubit << " out of range for " << state.num_qubits() << "-qubit state";
        throw std::out_of_range(msg.str());
    }
}

void check_same_dimension(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("state dimension mismatch");
    }
}

}  // namespace

StateVector::StateVector(int num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubit_count(num_qubits);
    if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
        throw std::invalid_argument("amplitude count must be 2^num_qubits");
    }
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

bool StateVector::is_normalized(double tolerance) const { return std::abs(norm_squared() - 1.0) <= tolerance; }

GateOp GateOp::hadamard(int target, HadamardConvention convention) {
    return {convention == HadamardConvention::Paper ? GateKind::HadamardPaper : GateKind::HadamardStandard, target,
            std::nullopt};
}

std::string to_string(const GateOp &gate) {
    std::ostringstream out;
    switch (gate.kind) {
        case GateKind::HadamardStandard:
            out << "H(" << gate.target << ")";
            break;
        case GateKind::HadamardPaper:
            out << "Hp(" << gate.target << ")";
            break;
        case GateKind::PauliX:
            out << "X(" << gate.target << ")";
            break;
        case GateKind::Cnot:
            out << "CNOT(" << gate.control.value_or(-1) << "->" << gate.target << ")";
            break;
    }
    return out.str();
}

StateVector make_basis_state(int num_qubits, std::string_view bitstring) {
    check_qubit_count(num_qubits);
    if (bitstring.size() != static_cast<std::size_t>(num_qubits)) {
        throw std::invalid_argument("bitstring length does not match num_qubits");
    }
    std::vector<std::uint8_t> bits;
    bits.reserve(bitstring.size());
    for (char c : bitstring) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bitstring may only contain '0' and '1'");
        }
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return make_basis_state(num_qubits, bits);
}

StateVector make_basis_state(int num_qubits, std::span<const std::uint8_t> bits) {
    check_qubit_count(num_qubits);
    if (bits.size() != static_cast<std::size_t>(num_qubits)) {
        throw std::invalid_argument("bitstring length does not match num_qubits");
    }
    std::size_t index = 0;
    for (auto b : bits) {
        if (b > 1) {
            throw std::invalid_argument("bits must be 0 or 1");
        }
        index = (index << 1) | b;
    }
    std::vector<Amplitude> amps(std::size_t{1} << num_qubits);
    amps[index] = 1.0;
    return StateVector(num_qubits, std::move(amps));
}

void apply_gate_in_place(StateVector &state, const GateOp &gate) {
    check_qubit_index(state, gate.target);
    auto amps = state.mutable_amplitudes();
    const int n = state.num_qubits();
    switch (gate.kind) {
        case GateKind::HadamardStandard:
            kernels::hadamard(amps, n, gate.target, HadamardConvention::Standard);
            break;
        case GateKind::HadamardPaper:
            kernels::hadamard(amps, n, gate.target, HadamardConvention::Paper);
            break;
        case GateKind::PauliX:
            kernels::pauli_x(amps, n, gate.target);
            break;
        case GateKind::Cnot:
            if (!gate.control) {
                throw std::invalid_argument("CNOT requires a control qubit");
            }
            check_qubit_index(state, *gate.control);
            if (*gate.control == gate.target) {
                throw std::invalid_argument("CNOT control and target must differ");
            }
            kernels::cnot(amps, n, *gate.control, gate.target);
            break;
    }
}

StateVector apply_gate(StateVector state, const GateOp &gate) {
    apply_gate_in_place(state, gate);
    return state;
}

void apply_gates_in_place(StateVector &state, std::span<const GateOp> gates) {
    for (const auto &g : gates) {
        apply_gate_in_place(state, g);
    }
}

StateVector apply_gates(StateVector state, std::span<const GateOp> gates) {
    apply_gates_in_place(state, gates);
    return state;
}

void apply_pauli_in_place(StateVector &state, int qubit, Pauli pauli) {
    check_qubit_index(state, qubit);
    auto amps = state.mutable_amplitudes();
    switch (pauli) {
        case Pauli::I:
            break;
        case Pauli::X:
            kernels::pauli_x(amps, state.num_qubits(), qubit);
            break;
        case Pauli::Y:
            kernels::pauli_y(amps, state.num_qubits(), qubit);
            break;
        case Pauli::Z:
            kernels::pauli_z(amps, state.num_qubits(), qubit);
            break;
    }
}

double probability_of_zero(const StateVector &state, int qubit) {
    check_qubit_index(state, qubit);
    return kernels::probability_of_zero(state.amplitudes(), state.num_qubits(), qubit);
}

MeasurementResult measure_qubit(const StateVector &state, int qubit, double random_draw) {
    check_qubit_index(state, qubit);
    if (!(random_draw >= 0.0 && random_draw < 1.0)) {
        throw std::invalid_argument("random_draw must lie in [0, 1)");
    }
    const double total = state.norm_squared();
    if (total <= 0.0) {
        throw std::invalid_argument("cannot measure a zero-norm state");
    }
    const double p0 = probability_of_zero(state, qubit) / total;
    const int bit = random_draw < p0 ? 0 : 1;
    const double p = bit == 0 ? p0 : 1.0 - p0;

    const std::size_t mask = state.qubit_mask(qubit);
    const double scale = 1.0 / std::sqrt(p * total);
    std::vector<Amplitude> amps(state.dimension());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const bool is_one = (i & mask) != 0;
        if (is_one == (bit == 1)) {
            amps[i] = state[i] * scale;
        }
    }
    return {bit, p, StateVector(state.num_qubits(), std::move(amps))};
}

StateVector remove_qubit(const StateVector &state, int qubit, int bit) {
    check_qubit_index(state, qubit);
    if (state.num_qubits() < 2) {
        throw std::invalid_argument("cannot remove the only qubit of a register");
    }
    const std::size_t mask = state.qubit_mask(qubit);
    const std::size_t want = bit ? mask : 0;
    double stray = 0.0;
    std::vector<Amplitude> amps;
    amps.reserve(state.dimension() / 2);
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if ((i & mask) == want) {
            amps.push_back(state[i]);
        } else {
            stray += std::norm(state[i]);
        }
    }
    if (stray > kNormTolerance) {
        throw std::invalid_argument("qubit is not in a definite computational basis state");
    }
    return StateVector(state.num_qubits() - 1, std::move(amps));
}

StateVector tensor_product(const StateVector &a, const StateVector &b) {
    std::vector<Amplitude> amps(a.dimension() * b.dimension());
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        for (std::size_t j = 0; j < b.dimension(); ++j) {
            amps[i * b.dimension() + j] = a[i] * b[j];
        }
    }
    return StateVector(a.num_qubits() + b.num_qubits(), std::move(amps));
}

StateVector append_zero_qubits(const StateVector &state, int count) {
    if (count < 0 || state.num_qubits() + count > kMaxQubits) {
        throw std::invalid_argument("ancilla count exceeds the register cap");
    }
    if (count == 0) {
        return state;
    }
    std::vector<Amplitude> amps(state.dimension() << count);
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        amps[i << count] = state[i];
    }
    return StateVector(state.num_qubits() + count, std::move(amps));
}

Amplitude inner_product(const StateVector &a, const StateVector &b) {
    check_same_dimension(a, b);
    Amplitude total = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        total += std::conj(a[i]) * b[i];
    }
    return total;
}

double fidelity_up_to_global_phase(const StateVector &a, const StateVector &b) {
    return std::norm(inner_product(a, b));
}

StateVector apply_dense_operator(const StateVector &state, const Eigen::MatrixXcd &matrix) {
    const auto dim = static_cast<Eigen::Index>(state.dimension());
    if (matrix.rows() != dim || matrix.cols() != dim) {
        throw std::invalid_argument("operator dimension does not match state");
    }
    const Eigen::Map<const Eigen::VectorXcd> in(state.amplitudes().data(), dim);
    const Eigen::VectorXcd out = matrix * in;
    return StateVector(state.num_qubits(), std::vector<Amplitude>(out.data(), out.data() + dim));
}

StateVector normalized(StateVector state) {
    const double n2 = state.norm_squared();
    if (n2 <= 0.0) {
        throw std::invalid_argument("cannot normalize a zero vector");
    }
    const double scale = 1.0 / std::sqrt(n2);
    for (auto &a : state.mutable_amplitudes()) {
        a *= scale;
    }
    return state;
}

void require_normalized(const StateVector &state, double tolerance) {
    if (!state.is_normalized(tolerance)) {
        std::ostringstream msg;
        msg << "state is not normalized (norm^2 = " << state.norm_squared() << ")";
        throw std::invalid_argument(msg.str());
    }
}

double max_amplitude_difference(const StateVector &a, const StateVector &b) {
    check_same_dimension(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

}  // namespace qnd
