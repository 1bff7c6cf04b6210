#pragma once

#include <filesystem>

#include "json.hpp"
#include "qnd/state_vector.hpp"

namespace qnd {

/// {"num_qubits": n, "amplitudes": [[re, im], ...]} in index order.
nlohmann::json state_to_json(const StateVector &state);

/// Parses a state dump and checks it is normalized within `tolerance`.
/// Hand-written files are the main source, hence the loose default.
StateVector state_from_json(const nlohmann::json &doc, double tolerance = 1e-8);

StateVector load_state_file(const std::filesystem::path &path, double tolerance = 1e-8);

/// Dump equality: same register size and fidelity within `tolerance` of 1.
bool states_equivalent(const StateVector &a, const StateVector &b, double tolerance = kNormTolerance);

}  // namespace qnd
