#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "qnd/bell_qnd.hpp"

using namespace qnd;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector bell_combination(const std::array<Amplitude, 4> &coeffs) {
    std::vector<Amplitude> amps(4);
    for (std::size_t k = 0; k < 4; ++k) {
        const auto b = bell_state(kBellLabels[k]);
        for (std::size_t i = 0; i < 4; ++i) {
            amps[i] += coeffs[k] * b[i];
        }
    }
    return StateVector(2, std::move(amps));
}

// Data-register slice of a 4-qubit joint state for a fixed ancilla pattern.
StateVector branch(const StateVector &joint, std::size_t ancilla_pattern) {
    std::vector<Amplitude> amps(4);
    for (std::size_t d = 0; d < 4; ++d) {
        amps[d] = joint[(d << 2) | ancilla_pattern];
    }
    return StateVector(2, std::move(amps));
}

}  // namespace

TEST(BellState, SignConventions) {
    const auto phi_minus = bell_state(BellLabel::PhiMinus);
    EXPECT_DOUBLE_EQ(phi_minus[3].real(), kInvSqrt2);
    EXPECT_DOUBLE_EQ(phi_minus[0].real(), -kInvSqrt2);
    const auto psi_minus = bell_state(BellLabel::PsiMinus);
    EXPECT_DOUBLE_EQ(psi_minus[2].real(), kInvSqrt2);
    EXPECT_DOUBLE_EQ(psi_minus[1].real(), -kInvSqrt2);
    for (auto a : kBellLabels) {
        for (auto b : kBellLabels) {
            EXPECT_NEAR(fidelity_up_to_global_phase(bell_state(a), bell_state(b)), a == b ? 1.0 : 0.0, 1e-15);
        }
    }
}

TEST(BellLabel, TextRoundTrip) {
    for (auto l : kBellLabels) {
        EXPECT_EQ(parse_bell_label(to_string(l)), l);
    }
    EXPECT_THROW(parse_bell_label("bogus"), std::invalid_argument);
}

TEST(DecodeBell, ReadoutTable) {
    EXPECT_EQ(decode_bell(0, 0), BellLabel::PhiPlus);
    EXPECT_EQ(decode_bell(0, 1), BellLabel::PhiMinus);
    EXPECT_EQ(decode_bell(1, 0), BellLabel::PsiPlus);
    EXPECT_EQ(decode_bell(1, 1), BellLabel::PsiMinus);
    for (auto l : kBellLabels) {
        const auto bits = bell_bits(l);
        EXPECT_EQ(decode_bell(bits.parity, bits.phase), l);
    }
    EXPECT_THROW(decode_bell(2, 0), std::invalid_argument);
}

TEST(BellNetwork, GateListOrder) {
    const auto gates = bell_network_unitary_steps(HadamardConvention::Paper);
    const std::vector<GateOp> expected{
        GateOp::cnot(0, 2),
        GateOp::cnot(1, 2),
        GateOp::hadamard(0, HadamardConvention::Paper),
        GateOp::hadamard(1, HadamardConvention::Paper),
        GateOp::cnot(0, 3),
        GateOp::cnot(1, 3),
        GateOp::hadamard(0, HadamardConvention::Paper),
        GateOp::hadamard(1, HadamardConvention::Paper),
    };
    EXPECT_EQ(gates, expected);
    const auto standard = bell_network_unitary_steps(HadamardConvention::Standard);
    EXPECT_EQ(standard[2].kind, GateKind::HadamardStandard);
}

TEST(BellNetwork, StepOneExtractsParity) {
    const auto gates = bell_network_unitary_steps();
    const std::vector<GateOp> step1(gates.begin(), gates.begin() + 2);
    for (auto l : kBellLabels) {
        const auto joint = apply_gates(append_zero_qubits(bell_state(l), 2), step1);
        const auto expected = tensor_product(bell_state(l), make_basis_state(2, bell_bits(l).parity ? "10" : "00"));
        EXPECT_LT(max_amplitude_difference(joint, expected), 1e-15) << to_string(l);
    }
}

TEST(BellNetwork, StepTwoRotatesBasisWithPaperSigns) {
    // Phi+ -> Phi+, Phi- -> Psi+, Psi+ -> Phi-, Psi- -> -Psi-, exact amplitudes.
    const auto gates = bell_network_unitary_steps(HadamardConvention::Paper);
    const std::vector<GateOp> step2(gates.begin() + 2, gates.begin() + 4);
    const std::vector<GateOp> local{GateOp::hadamard(0, HadamardConvention::Paper),
                                    GateOp::hadamard(1, HadamardConvention::Paper)};
    const std::map<BellLabel, std::pair<BellLabel, double>> expected{
        {BellLabel::PhiPlus, {BellLabel::PhiPlus, 1.0}},
        {BellLabel::PhiMinus, {BellLabel::PsiPlus, 1.0}},
        {BellLabel::PsiPlus, {BellLabel::PhiMinus, 1.0}},
        {BellLabel::PsiMinus, {BellLabel::PsiMinus, -1.0}},
    };
    for (const auto &[in, out] : expected) {
        const auto image = apply_gates(bell_state(in), local);
        auto target = bell_state(out.first);
        for (auto &a : target.mutable_amplitudes()) {
            a *= out.second;
        }
        EXPECT_LT(max_amplitude_difference(image, target), 1e-15) << to_string(in);
        // Same rotation, through the dense oracle.
        const auto dense = apply_dense_operator(
            bell_state(in), oracle::kron(oracle::matrix_of(GateKind::HadamardPaper),
                                         oracle::matrix_of(GateKind::HadamardPaper)));
        EXPECT_LT(max_amplitude_difference(dense, target), 1e-15);
    }
    EXPECT_EQ(step2, local);
}

TEST(BellNetwork, NetworkMatchesDenseCircuitOracle) {
    for (auto conv : {HadamardConvention::Paper, HadamardConvention::Standard}) {
        const auto u = oracle::circuit_matrix(4, bell_network_unitary_steps(conv));
        Rng rng(17);
        for (int t = 0; t < 20; ++t) {
            const auto psi = random_state(2, rng);
            const auto dense = apply_dense_operator(append_zero_qubits(psi, 2), u);
            EXPECT_LT(max_amplitude_difference(bell_network_joint_state(psi, conv), dense), 1e-12);
        }
    }
}

TEST(RunBellQnd, BellInputsReproduceReadoutTable) {
    for (auto conv : {HadamardConvention::Paper, HadamardConvention::Standard}) {
        for (auto l : kBellLabels) {
            for (double d : {0.0, 0.3, 0.999}) {
                const auto r = run_bell_qnd(bell_state(l), conv, {d, 1.0 - d - 1e-9});
                EXPECT_EQ(r.label, l);
                EXPECT_EQ(r.parity_bit, bell_bits(l).parity);
                EXPECT_EQ(r.phase_bit, bell_bits(l).phase);
                EXPECT_NEAR(r.probability, 1.0, 1e-12);
                EXPECT_GT(fidelity_up_to_global_phase(r.post_state, bell_state(l)), 1.0 - 1e-10);
            }
        }
    }
}

TEST(RunBellQnd, PsiMinusReturnedUnchanged) {
    const auto r = run_bell_qnd(bell_state(BellLabel::PsiMinus), HadamardConvention::Paper, {0.5, 0.5});
    EXPECT_EQ(r.parity_bit, 1);
    EXPECT_EQ(r.phase_bit, 1);
    EXPECT_LT(max_amplitude_difference(r.post_state, bell_state(BellLabel::PsiMinus)), 1e-12);
}

TEST(RunBellQnd, EqualSuperpositionGivesQuarterEach) {
    const auto psi = bell_combination({0.5, 0.5, 0.5, 0.5});
    // Sweep the draws across all four cells of the unit square.
    for (double d0 : {0.1, 0.9}) {
        for (double d1 : {0.1, 0.9}) {
            const auto r = run_bell_qnd(psi, HadamardConvention::Paper, {d0, d1});
            EXPECT_NEAR(r.probability, 0.25, 1e-12);
            EXPECT_EQ(r.parity_bit, d0 < 0.5 ? 0 : 1);
            EXPECT_EQ(r.phase_bit, d1 < 0.5 ? 0 : 1);
            EXPECT_GT(fidelity_up_to_global_phase(r.post_state, bell_state(r.label)), 1.0 - 1e-10);
        }
    }
}

TEST(RunBellQnd, JointStateHasExactBranchCoefficients) {
    Rng rng(21);
    for (int t = 0; t < 50; ++t) {
        const auto c = random_state(2, rng);
        const std::array<Amplitude, 4> coeffs{c[0], c[1], c[2], c[3]};
        const auto joint = bell_network_joint_state(bell_combination(coeffs), HadamardConvention::Paper);
        for (std::size_t m = 0; m < 4; ++m) {
            auto expected = bell_state(kBellLabels[m]);
            for (auto &a : expected.mutable_amplitudes()) {
                a *= coeffs[m];
            }
            EXPECT_LT(max_amplitude_difference(branch(joint, m), expected), 1e-12);
        }
    }
}

TEST(RunBellQnd, RejectsUnnormalizedOrWrongSize) {
    EXPECT_THROW(run_bell_qnd(StateVector(2, {1.0, 1.0, 0.0, 0.0}), HadamardConvention::Paper, {0.1, 0.1}),
                 std::invalid_argument);
    EXPECT_THROW(run_bell_qnd(make_basis_state(3, "000"), HadamardConvention::Paper, {0.1, 0.1}),
                 std::invalid_argument);
}

TEST(RunBellQnd, MatchesProjectionOracleOnRandomStates) {
    Rng rng(123);
    for (int t = 0; t < 200; ++t) {
        const auto psi = random_state(2, rng);
        const auto oracle_branches = bell_projection_oracle(psi);
        double covered = 0.0;
        for (std::size_t m = 0; m < 4; ++m) {
            // Draw that lands in ancilla branch m: parity then phase.
            const double p_parity0 = oracle_branches[0].probability + oracle_branches[1].probability;
            const int parity = static_cast<int>(m >> 1);
            const int phase = static_cast<int>(m & 1);
            const double pp = parity == 0 ? p_parity0 : 1.0 - p_parity0;
            if (oracle_branches[m].probability < 1e-9 || pp < 1e-9) {
                continue;
            }
            const double p_phase0 = oracle_branches[static_cast<std::size_t>(parity << 1)].probability / pp;
            const double d0 = parity == 0 ? p_parity0 / 2 : (1.0 + p_parity0) / 2;
            const double d1 = phase == 0 ? p_phase0 / 2 : (1.0 + p_phase0) / 2;
            const auto r = run_bell_qnd(psi, HadamardConvention::Paper, {d0, d1});
            ASSERT_EQ(r.label, kBellLabels[m]);
            EXPECT_NEAR(r.probability, oracle_branches[m].probability, 1e-10);
            EXPECT_GT(fidelity_up_to_global_phase(r.post_state, oracle_branches[m].post_state), 1.0 - 1e-10);
            covered += r.probability;
        }
        EXPECT_NEAR(covered, 1.0, 1e-8);
    }
}

TEST(RunBellQnd, ConventionsAgreeOnBitsAndProbabilities) {
    Rng rng(7);
    for (int t = 0; t < 100; ++t) {
        const auto psi = random_state(2, rng);
        const std::array<double, 2> draws{uniform_draw(rng), uniform_draw(rng)};
        const auto a = run_bell_qnd(psi, HadamardConvention::Paper, draws);
        const auto b = run_bell_qnd(psi, HadamardConvention::Standard, draws);
        EXPECT_EQ(a.parity_bit, b.parity_bit);
        EXPECT_EQ(a.phase_bit, b.phase_bit);
        EXPECT_NEAR(a.probability, b.probability, 1e-12);
    }
}

TEST(RunBellQnd, GlobalPhaseIsErased) {
    Rng rng(70);
    const auto psi = random_state(2, rng);
    for (double theta : {0.3, 1.7, 3.14159, 5.0}) {
        auto rotated = psi;
        for (auto &a : rotated.mutable_amplitudes()) {
            a *= std::polar(1.0, theta);
        }
        for (int t = 0; t < 10; ++t) {
            const std::array<double, 2> draws{uniform_draw(rng), uniform_draw(rng)};
            const auto a = run_bell_qnd(psi, HadamardConvention::Paper, draws);
            const auto b = run_bell_qnd(rotated, HadamardConvention::Paper, draws);
            EXPECT_EQ(a.label, b.label);
            EXPECT_NEAR(a.probability, b.probability, 1e-12);
        }
    }
}

TEST(RunBellQnd, RepeatedMeasurementIsStable) {
    Rng rng(8);
    const auto psi = random_state(2, rng);
    auto first = run_bell_qnd(psi, HadamardConvention::Paper, {uniform_draw(rng), uniform_draw(rng)});
    auto state = first.post_state;
    for (int k = 0; k < 20; ++k) {
        auto again = run_bell_qnd(state, HadamardConvention::Paper, {uniform_draw(rng), uniform_draw(rng)});
        EXPECT_EQ(again.label, first.label);
        EXPECT_NEAR(again.probability, 1.0, 1e-10);
        state = again.post_state;
    }
}

TEST(BellProjectionOracle, Examples) {
    const auto phi_minus = bell_projection_oracle(bell_state(BellLabel::PhiMinus));
    for (const auto &b : phi_minus) {
        EXPECT_NEAR(b.probability, b.label == BellLabel::PhiMinus ? 1.0 : 0.0, 1e-15);
    }
    const auto zero = bell_projection_oracle(make_basis_state(2, "00"));
    EXPECT_NEAR(zero[0].overlap.real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(zero[1].overlap.real(), -kInvSqrt2, 1e-15);
    EXPECT_NEAR(zero[0].probability, 0.5, 1e-15);
    EXPECT_NEAR(zero[1].probability, 0.5, 1e-15);
    EXPECT_NEAR(zero[2].probability + zero[3].probability, 0.0, 1e-15);

    Rng rng(9);
    const auto r = bell_projection_oracle(random_state(2, rng));
    EXPECT_NEAR(r[0].probability + r[1].probability + r[2].probability + r[3].probability, 1.0, 1e-12);
    EXPECT_THROW(bell_projection_oracle(StateVector(2, {1.0, 1.0, 0.0, 0.0})), std::invalid_argument);
}
