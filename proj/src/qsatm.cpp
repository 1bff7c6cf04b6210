#include "qnd/qsatm.hpp"

#include <cmath>
#include <stdexcept>

namespace qnd {
namespace {

constexpr HadamardConvention kNetworkConvention = HadamardConvention::Paper;

// Register layout of one pair during a session: 0 genuine card, 1 machine,
// 2 card slot, 3 attacker reference (decoy/guess only).
constexpr int kCard = 0;
constexpr int kMachine = 1;
constexpr int kSlot = 2;

BellLabel random_bell_label(Rng &rng) { return kBellLabels[static_cast<std::size_t>(rng() >> 62)]; }

Pauli sample_pauli(const NoiseSpec &noise, Rng &rng) {
    switch (noise.model) {
        case NoiseModel::None:
            return Pauli::I;
        case NoiseModel::Dephasing:
            return uniform_draw(rng) < noise.p ? Pauli::Z : Pauli::I;
        case NoiseModel::Depolarizing:
            if (uniform_draw(rng) < noise.p) {
                return static_cast<Pauli>(rng() >> 62);
            }
            return Pauli::I;
    }
    throw std::logic_error("unreachable NoiseModel");
}

// Exact single-qubit Pauli channel weights for I, X, Y, Z.
std::array<double, 4> pauli_weights(const NoiseSpec &noise) {
    switch (noise.model) {
        case NoiseModel::None:
            return {1.0, 0.0, 0.0, 0.0};
        case NoiseModel::Dephasing:
            return {1.0 - noise.p, 0.0, 0.0, noise.p};
        case NoiseModel::Depolarizing:
            return {1.0 - 0.75 * noise.p, 0.25 * noise.p, 0.25 * noise.p, 0.25 * noise.p};
    }
    throw std::logic_error("unreachable NoiseModel");
}

// Whatever the presenter puts in the slot, plus anything they keep entangled
// with it. Slot qubit first.
StateVector presented_system(const AttackerModel &attacker, Rng &rng) {
    switch (attacker.kind) {
        case AttackerKind::Legitimate:
            throw std::logic_error("legitimate card has no separate presented system");
        case AttackerKind::FreshQubit:
            return attacker.preparation == FreshPreparation::FixedZero ? make_basis_state(1, "0") : random_qubit(rng);
        case AttackerKind::EntangledDecoy:
            return bell_state(BellLabel::PhiPlus);
        case AttackerKind::RandomBellGuess:
            return bell_state(random_bell_label(rng));
    }
    throw std::logic_error("unreachable AttackerKind");
}

struct PairReadout {
    BellBits bits;
    StateVector collapsed;
};

PairReadout run_pair(const StateVector &pair, const AttackerModel &attacker, Rng &rng) {
    if (attacker.kind == AttackerKind::Legitimate) {
        const std::array<double, 2> draws{uniform_draw(rng), uniform_draw(rng)};
        auto r = run_bell_qnd_on(pair, kCard, kMachine, kNetworkConvention, draws);
        return {{static_cast<std::uint8_t>(r.parity_bit), static_cast<std::uint8_t>(r.phase_bit)},
                std::move(r.post_state)};
    }
    const StateVector joint = tensor_product(pair, presented_system(attacker, rng));
    const std::array<double, 2> draws{uniform_draw(rng), uniform_draw(rng)};
    auto r = run_bell_qnd_on(joint, kSlot, kMachine, kNetworkConvention, draws);
    // (slot, machine) is now a Bell state in product with the rest; that pair
    // is what the machine holds from here on.
    return {{static_cast<std::uint8_t>(r.parity_bit), static_cast<std::uint8_t>(r.phase_bit)},
            bell_state(decode_bell(r.parity_bit, r.phase_bit))};
}

// Branch sums of |amplitude|^2 over the two trailing ancillas.
std::array<double, 4> network_branch_probabilities(const StateVector &joint, int first, int second) {
    const int n = joint.num_qubits();
    StateVector full = append_zero_qubits(joint, 2);
    apply_gates_in_place(full, bell_network_on(first, second, n, n + 1, kNetworkConvention));
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < full.dimension(); ++i) {
        out[i & 3] += std::norm(full[i]);
    }
    return out;
}

// (probability weight, presented system) components of the attacker's
// preparation; a guess is an equal mixture over the four Bell states.
std::vector<std::pair<double, StateVector>> presented_components(const AttackerModel &attacker,
                                                                 std::uint64_t attacker_seed) {
    switch (attacker.kind) {
        case AttackerKind::Legitimate:
            return {};
        case AttackerKind::FreshQubit: {
            Rng rng(attacker_seed);
            return {{1.0, presented_system(attacker, rng)}};
        }
        case AttackerKind::EntangledDecoy:
            return {{1.0, bell_state(BellLabel::PhiPlus)}};
        case AttackerKind::RandomBellGuess: {
            std::vector<std::pair<double, StateVector>> out;
            for (auto label : kBellLabels) {
                out.emplace_back(0.25, bell_state(label));
            }
            return out;
        }
    }
    throw std::logic_error("unreachable AttackerKind");
}

}  // namespace

std::string to_string(const AttackerModel &model) {
    switch (model.kind) {
        case AttackerKind::Legitimate:
            return "legitimate";
        case AttackerKind::FreshQubit:
            return model.preparation == FreshPreparation::FixedZero ? "fresh-zero" : "fresh-haar";
        case AttackerKind::EntangledDecoy:
            return "decoy";
        case AttackerKind::RandomBellGuess:
            return "guess";
    }
    throw std::logic_error("unreachable AttackerKind");
}

AttackerModel parse_attacker(std::string_view text) {
    for (const auto &m : {AttackerModel::legitimate(), AttackerModel::fresh_zero(), AttackerModel::fresh_haar(),
                          AttackerModel::decoy(), AttackerModel::guess()}) {
        if (text == to_string(m)) {
            return m;
        }
    }
    throw std::invalid_argument("unknown attacker model '" + std::string(text) + "'");
}

std::string to_string(NoiseModel model) {
    switch (model) {
        case NoiseModel::None:
            return "none";
        case NoiseModel::Depolarizing:
            return "depolarizing";
        case NoiseModel::Dephasing:
            return "dephasing";
    }
    throw std::logic_error("unreachable NoiseModel");
}

NoiseModel parse_noise_model(std::string_view text) {
    for (auto m : {NoiseModel::None, NoiseModel::Depolarizing, NoiseModel::Dephasing}) {
        if (text == to_string(m)) {
            return m;
        }
    }
    throw std::invalid_argument("unknown noise model '" + std::string(text) + "'");
}

void validate(const NoiseSpec &noise) {
    if (!(noise.p >= 0.0 && noise.p <= 1.0)) {
        throw std::invalid_argument("noise probability must lie in [0, 1]");
    }
}

AuthAccount enroll(std::span<const BellLabel> initial_labels) {
    if (initial_labels.empty()) {
        throw std::invalid_argument("an account needs at least one pair");
    }
    AuthAccount account;
    for (auto label : initial_labels) {
        account.pairs.push_back(bell_state(label));
        account.records.push_back(bell_bits(label));
    }
    return account;
}

AuthAccount enroll_random(int n, Rng &rng) {
    if (n < 1) {
        throw std::invalid_argument("an account needs at least one pair");
    }
    std::vector<BellLabel> labels;
    for (int i = 0; i < n; ++i) {
        labels.push_back(random_bell_label(rng));
    }
    return enroll(labels);
}

AuthAccount enroll_random(int n, std::uint64_t seed) {
    Rng rng(seed);
    return enroll_random(n, rng);
}

StateVector apply_noise(const StateVector &joint_state, const NoiseSpec &noise, Rng &rng) {
    validate(noise);
    require_normalized(joint_state);
    StateVector out = joint_state;
    for (int q = 0; q < joint_state.num_qubits(); ++q) {
        apply_pauli_in_place(out, q, sample_pauli(noise, rng));
    }
    return out;
}

StateVector apply_noise(const StateVector &joint_state, const NoiseSpec &noise, std::uint64_t seed) {
    Rng rng(seed);
    return apply_noise(joint_state, noise, rng);
}

SessionResult verify_session(AuthAccount &account, const AttackerModel &attacker, const NoiseSpec &noise,
                             double threshold, Rng &rng, bool password_ok) {
    validate(noise);
    if (account.status == AccountStatus::Flagged) {
        throw std::logic_error("account is flagged; re-enroll to continue");
    }
    SessionResult result;
    if (!password_ok) {
        result.per_pair_match.assign(account.pairs.size(), false);
        return result;
    }

    std::vector<StateVector> collapsed;
    std::size_t matches = 0;
    for (std::size_t i = 0; i < account.pairs.size(); ++i) {
        const StateVector noisy = apply_noise(account.pairs[i], noise, rng);
        auto readout = run_pair(noisy, attacker, rng);
        const bool match = readout.bits == account.records[i];
        matches += match ? 1 : 0;
        result.per_pair_match.push_back(match);
        result.updated_records.push_back(readout.bits);
        collapsed.push_back(std::move(readout.collapsed));
    }
    result.match_fraction = static_cast<double>(matches) / static_cast<double>(account.pairs.size());
    result.accepted = result.match_fraction >= threshold;

    account.pairs = std::move(collapsed);
    if (result.accepted) {
        account.records = result.updated_records;
    } else {
        account.status = AccountStatus::Flagged;
    }
    return result;
}

SessionResult verify_session(AuthAccount &account, const AttackerModel &attacker, const NoiseSpec &noise,
                             double threshold, std::uint64_t seed, bool password_ok) {
    Rng rng(seed);
    return verify_session(account, attacker, noise, threshold, rng, password_ok);
}

std::array<double, 4> attacker_round_distribution(const AttackerModel &attacker, BellLabel true_label,
                                                  const NoiseSpec &noise, std::uint64_t attacker_seed) {
    validate(noise);
    const auto weights = pauli_weights(noise);
    const auto components = presented_components(attacker, attacker_seed);

    std::array<double, 4> out{};
    for (int e1 = 0; e1 < 4; ++e1) {
        for (int e2 = 0; e2 < 4; ++e2) {
            const double w = weights[static_cast<std::size_t>(e1)] * weights[static_cast<std::size_t>(e2)];
            if (w == 0.0) {
                continue;
            }
            StateVector pair = bell_state(true_label);
            apply_pauli_in_place(pair, kCard, static_cast<Pauli>(e1));
            apply_pauli_in_place(pair, kMachine, static_cast<Pauli>(e2));
            if (attacker.kind == AttackerKind::Legitimate) {
                const auto p = network_branch_probabilities(pair, kCard, kMachine);
                for (std::size_t k = 0; k < 4; ++k) {
                    out[k] += w * p[k];
                }
                continue;
            }
            for (const auto &[cw, system] : components) {
                const auto p = network_branch_probabilities(tensor_product(pair, system), kSlot, kMachine);
                for (std::size_t k = 0; k < 4; ++k) {
                    out[k] += w * cw * p[k];
                }
            }
        }
    }
    return out;
}

double round_match_probability(const AttackerModel &attacker, const NoiseSpec &noise, std::uint64_t attacker_seed) {
    double total = 0.0;
    for (auto label : kBellLabels) {
        total += attacker_round_distribution(attacker, label, noise, attacker_seed)[static_cast<std::size_t>(
            index_of(label))];
    }
    return total / 4.0;
}

double session_acceptance_probability(double q, int n, double threshold) {
    if (n < 1) {
        throw std::invalid_argument("session needs at least one pair");
    }
    double total = 0.0;
    double binom = 1.0;  // C(n, k)
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            binom = binom * static_cast<double>(n - k + 1) / static_cast<double>(k);
        }
        if (static_cast<double>(k) / static_cast<double>(n) >= threshold) {
            total += binom * std::pow(q, k) * std::pow(1.0 - q, n - k);
        }
    }
    return total;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0 || successes > trials) {
        throw std::invalid_argument("wilson_interval needs 0 <= successes <= trials, trials > 0");
    }
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

bool run_trial(int n, const SweepConfig &config, std::uint64_t trial) {
    Rng rng(trial_seed(config.seed, trial));
    AuthAccount account = enroll_random(n, rng);
    return verify_session(account, config.attacker, config.noise, config.threshold, rng).accepted;
}

SweepRow make_row(int n, const SweepConfig &config, std::uint64_t accepted) {
    const double q = round_match_probability(config.attacker, config.noise, config.seed);
    return {n,
            config.trials,
            accepted,
            static_cast<double>(accepted) / static_cast<double>(config.trials),
            session_acceptance_probability(q, n, config.threshold),
            wilson_interval(accepted, config.trials)};
}

void check_sweep(std::span<const int> n_values, const SweepConfig &config) {
    if (config.trials < 1) {
        throw std::invalid_argument("security sweep needs at least one trial");
    }
    validate(config.noise);
    for (int n : n_values) {
        if (n < 1) {
            throw std::invalid_argument("pair counts must be >= 1");
        }
    }
}

}  // namespace

std::vector<SweepRow> security_sweep(std::span<const int> n_values, const SweepConfig &config) {
    check_sweep(n_values, config);
    std::vector<SweepRow> rows;
    for (int n : n_values) {
        const auto trials = static_cast<std::int64_t>(config.trials);
        std::uint64_t accepted = 0;
#pragma omp parallel for reduction(+ : accepted) schedule(static)
        for (std::int64_t t = 0; t < trials; ++t) {
            accepted += run_trial(n, config, static_cast<std::uint64_t>(t)) ? 1 : 0;
        }
        rows.push_back(make_row(n, config, accepted));
    }
    return rows;
}

namespace reference {

std::vector<SweepRow> security_sweep(std::span<const int> n_values, const SweepConfig &config) {
    check_sweep(n_values, config);
    std::vector<SweepRow> rows;
    for (int n : n_values) {
        std::uint64_t accepted = 0;
        for (std::uint64_t t = 0; t < config.trials; ++t) {
            accepted += run_trial(n, config, t) ? 1 : 0;
        }
        rows.push_back(make_row(n, config, accepted));
    }
    return rows;
}

}  // namespace reference
}  // namespace qnd
