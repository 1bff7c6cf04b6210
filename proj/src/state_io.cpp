#include "qnd/state_io.hpp"

#include <fstream>
#include <stdexcept>

namespace qnd {

nlohmann::json state_to_json(const StateVector &state) {
    nlohmann::json amps = nlohmann::json::array();
    for (const auto &a : state.amplitudes()) {
        amps.push_back({a.real(), a.imag()});
    }
    return {{"num_qubits", state.num_qubits()}, {"amplitudes", std::move(amps)}};
}

StateVector state_from_json(const nlohmann::json &doc, double tolerance) {
    if (!doc.is_object() || !doc.contains("num_qubits") || !doc.contains("amplitudes")) {
        throw std::invalid_argument("state dump needs \"num_qubits\" and \"amplitudes\"");
    }
    const int n = doc.at("num_qubits").get<int>();
    const auto &list = doc.at("amplitudes");
    if (!list.is_array()) {
        throw std::invalid_argument("\"amplitudes\" must be an array");
    }
    std::vector<Amplitude> amps;
    amps.reserve(list.size());
    for (const auto &entry : list) {
        if (!entry.is_array() || entry.size() != 2) {
            throw std::invalid_argument("each amplitude must be a [re, im] pair");
        }
        amps.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
    StateVector state(n, std::move(amps));
    require_normalized(state, tolerance);
    return state;
}

StateVector load_state_file(const std::filesystem::path &path, double tolerance) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open state file " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument("state file " + path.string() + " is not valid JSON: " + e.what());
    }
    return state_from_json(doc, tolerance);
}

bool states_equivalent(const StateVector &a, const StateVector &b, double tolerance) {
    if (a.num_qubits() != b.num_qubits()) {
        return false;
    }
    return std::abs(1.0 - fidelity_up_to_global_phase(a, b)) <= tolerance;
}

}  // namespace qnd
