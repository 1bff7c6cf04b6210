#include "qnd/random.hpp"

#include <cmath>
#include <numbers>

namespace qnd {
namespace {

// Box-Muller on two engine draws.
double standard_normal(Rng &rng) {
    double u1 = uniform_draw(rng);
    while (u1 <= 0.0) {
        u1 = uniform_draw(rng);
    }
    const double u2 = uniform_draw(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

StateVector random_state(int num_qubits, Rng &rng) {
    std::vector<Amplitude> amps(std::size_t{1} << num_qubits);
    for (auto &a : amps) {
        const double re = standard_normal(rng);
        const double im = standard_normal(rng);
        a = {re, im};
    }
    return normalized(StateVector(num_qubits, std::move(amps)));
}

StateVector random_qubit(Rng &rng) {
    const double cos_theta = 1.0 - 2.0 * uniform_draw(rng);
    const double phi = 2.0 * std::numbers::pi * uniform_draw(rng);
    const double c = std::sqrt((1.0 + cos_theta) / 2.0);
    const double s = std::sqrt((1.0 - cos_theta) / 2.0);
    return StateVector(1, {Amplitude{c, 0.0}, std::polar(s, phi)});
}

}  // namespace qnd
