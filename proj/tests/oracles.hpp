#pragma once

// Test-only oracles. Everything here is built from explicit matrices and
// Kronecker products so it shares no code with the amplitude kernels.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qnd/bell_qnd.hpp"
#include "qnd/random.hpp"
#include "qnd/state_vector.hpp"

namespace qnd::oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat identity2() { return Mat::Identity(2, 2); }

inline Mat matrix_of(GateKind kind) {
    const double r = 1.0 / std::sqrt(2.0);
    Mat m(2, 2);
    switch (kind) {
        case GateKind::HadamardStandard:
            m << r, r, r, -r;
            break;
        case GateKind::HadamardPaper:
            // columns are the images of |0> and |1>
            m << -r, r, r, r;
            break;
        case GateKind::PauliX:
        case GateKind::Cnot:
            m << 0, 1, 1, 0;
            break;
    }
    return m;
}

inline Mat pauli(Pauli p) {
    Mat m(2, 2);
    switch (p) {
        case Pauli::I:
            m << 1, 0, 0, 1;
            break;
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << 0, C(0, -1), C(0, 1), 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// ops[q] placed on qubit q (qubit 0 leftmost factor).
inline Mat kron_all(const std::vector<Mat> &ops) {
    Mat out = ops.front();
    for (std::size_t i = 1; i < ops.size(); ++i) {
        out = kron(out, ops[i]);
    }
    return out;
}

inline Mat single_qubit_operator(int n, int qubit, const Mat &m) {
    std::vector<Mat> ops(static_cast<std::size_t>(n), identity2());
    ops[static_cast<std::size_t>(qubit)] = m;
    return kron_all(ops);
}

inline Mat gate_matrix(int n, const GateOp &gate) {
    if (gate.kind != GateKind::Cnot) {
        return single_qubit_operator(n, gate.target, matrix_of(gate.kind));
    }
    Mat p0 = Mat::Zero(2, 2);
    p0(0, 0) = 1;
    Mat p1 = Mat::Zero(2, 2);
    p1(1, 1) = 1;
    std::vector<Mat> a(static_cast<std::size_t>(n), identity2());
    std::vector<Mat> b(static_cast<std::size_t>(n), identity2());
    a[static_cast<std::size_t>(*gate.control)] = p0;
    b[static_cast<std::size_t>(*gate.control)] = p1;
    b[static_cast<std::size_t>(gate.target)] = matrix_of(GateKind::PauliX);
    return kron_all(a) + kron_all(b);
}

inline Mat circuit_matrix(int n, const std::vector<GateOp> &gates) {
    Mat u = Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (const auto &g : gates) {
        u = gate_matrix(n, g) * u;
    }
    return u;
}

inline Eigen::VectorXcd vec(const StateVector &s) {
    return Eigen::Map<const Eigen::VectorXcd>(s.amplitudes().data(), static_cast<Eigen::Index>(s.dimension()));
}

inline Mat density(const StateVector &s) {
    const Eigen::VectorXcd v = vec(s);
    return v * v.adjoint();
}

/// Reduced density matrix of the listed qubits (kept in the listed order).
inline Mat partial_trace_keep(const StateVector &s, const std::vector<int> &keep) {
    const int n = s.num_qubits();
    const int k = static_cast<int>(keep.size());
    std::vector<int> traced;
    for (int q = 0; q < n; ++q) {
        bool kept = false;
        for (int x : keep) {
            kept = kept || x == q;
        }
        if (!kept) {
            traced.push_back(q);
        }
    }
    auto compose = [&](std::size_t kept_bits, std::size_t traced_bits) {
        std::size_t index = 0;
        for (int i = 0; i < k; ++i) {
            if ((kept_bits >> (k - 1 - i)) & 1) {
                index |= std::size_t{1} << (n - 1 - keep[static_cast<std::size_t>(i)]);
            }
        }
        const int t = static_cast<int>(traced.size());
        for (int i = 0; i < t; ++i) {
            if ((traced_bits >> (t - 1 - i)) & 1) {
                index |= std::size_t{1} << (n - 1 - traced[static_cast<std::size_t>(i)]);
            }
        }
        return index;
    };
    const std::size_t dk = std::size_t{1} << k;
    const std::size_t dt = std::size_t{1} << traced.size();
    Mat rho = Mat::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::size_t a = 0; a < dk; ++a) {
        for (std::size_t b = 0; b < dk; ++b) {
            C total = 0;
            for (std::size_t t = 0; t < dt; ++t) {
                total += s[compose(a, t)] * std::conj(s[compose(b, t)]);
            }
            rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = total;
        }
    }
    return rho;
}

/// <Bell_k| rho |Bell_k> for the four labels in kBellLabels order.
inline std::array<double, 4> bell_probabilities(const Mat &rho) {
    std::array<double, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) {
        const Eigen::VectorXcd b = vec(bell_state(kBellLabels[k]));
        out[k] = (b.adjoint() * rho * b)(0, 0).real();
    }
    return out;
}

/// Random gate from the circuit gate set on an n-qubit register.
inline GateOp random_gate(int n, Rng &rng) {
    const int kind = static_cast<int>(rng() % 4);
    const int target = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    switch (kind) {
        case 0:
            return GateOp::hadamard(target, HadamardConvention::Standard);
        case 1:
            return GateOp::hadamard(target, HadamardConvention::Paper);
        case 2:
            return GateOp::x(target);
        default: {
            int control = static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
            if (control >= target) {
                ++control;
            }
            return GateOp::cnot(control, target);
        }
    }
}

/// Number of standard errors separating an observed count from p * trials.
inline double standard_errors(std::uint64_t hits, std::uint64_t trials, double p) {
    const double n = static_cast<double>(trials);
    const double se = std::sqrt(std::max(p * (1.0 - p), 1e-300) / n);
    return std::abs(static_cast<double>(hits) / n - p) / se;
}

}  // namespace qnd::oracle
