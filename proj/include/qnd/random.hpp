#pragma once

#include <cstdint>
#include <random>

#include "qnd/state_vector.hpp"

namespace qnd {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
/// Spelled out rather than using std::uniform_real_distribution so the
/// stream is identical across standard library implementations.
inline double uniform_draw(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Seed of Monte-Carlo trial `index` under root seed `root`.
inline std::uint64_t trial_seed(std::uint64_t root, std::uint64_t index) { return root + index; }

/// Haar-random pure state on `num_qubits` qubits (normalized complex Gaussian vector).
StateVector random_state(int num_qubits, Rng &rng);

/// Haar-random single-qubit state, cos(t/2)|0> + e^{i f} sin(t/2)|1> with a
/// uniformly distributed Bloch vector.
StateVector random_qubit(Rng &rng);

}  // namespace qnd
