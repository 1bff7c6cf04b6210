#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnd/bell_qnd.hpp"
#include "qnd/random.hpp"
#include "qnd/state_vector.hpp"

namespace qnd {

enum class AccountStatus { Active, Flagged };

/// Enrolled card/machine pairs. Each joint state holds the card qubit first
/// and the machine qubit second; `records` are the machine's stored ancilla
/// bits for each pair.
struct AuthAccount {
    std::vector<StateVector> pairs;
    std::vector<BellBits> records;
    AccountStatus status = AccountStatus::Active;

    int num_pairs() const { return static_cast<int>(pairs.size()); }
};

enum class AttackerKind { Legitimate, FreshQubit, EntangledDecoy, RandomBellGuess };
enum class FreshPreparation { FixedZero, HaarRandom };

/// What gets inserted into the card slot. Only the slot qubit is under the
/// presenter's control; the machine qubit, ancillas and records are not.
///   Legitimate       the genuine card qubit
///   FreshQubit       a new qubit, |0> or Haar random
///   EntangledDecoy   one half of a Phi+ pair whose other half the attacker keeps
///   RandomBellGuess  one half of a uniformly guessed Bell pair, other half kept
struct AttackerModel {
    AttackerKind kind = AttackerKind::Legitimate;
    FreshPreparation preparation = FreshPreparation::FixedZero;

    static AttackerModel legitimate() { return {AttackerKind::Legitimate, FreshPreparation::FixedZero}; }
    static AttackerModel fresh_zero() { return {AttackerKind::FreshQubit, FreshPreparation::FixedZero}; }
    static AttackerModel fresh_haar() { return {AttackerKind::FreshQubit, FreshPreparation::HaarRandom}; }
    static AttackerModel decoy() { return {AttackerKind::EntangledDecoy, FreshPreparation::FixedZero}; }
    static AttackerModel guess() { return {AttackerKind::RandomBellGuess, FreshPreparation::FixedZero}; }
};

/// CLI names: legitimate, fresh-zero, fresh-haar, decoy, guess.
std::string to_string(const AttackerModel &model);
AttackerModel parse_attacker(std::string_view text);

enum class NoiseModel { None, Depolarizing, Dephasing };

/// Per-qubit, per-session error probability p. Depolarizing applies a
/// uniformly chosen Pauli from {I, X, Y, Z} with probability p; dephasing
/// applies Z with probability p.
struct NoiseSpec {
    NoiseModel model = NoiseModel::None;
    double p = 0.0;
};

std::string to_string(NoiseModel model);
NoiseModel parse_noise_model(std::string_view text);

void validate(const NoiseSpec &noise);

struct SessionResult {
    std::vector<bool> per_pair_match;
    double match_fraction = 0.0;
    bool accepted = false;
    std::vector<BellBits> updated_records;
};

AuthAccount enroll(std::span<const BellLabel> initial_labels);
AuthAccount enroll_random(int n, std::uint64_t seed);
AuthAccount enroll_random(int n, Rng &rng);

/// One trajectory of the noise channel on both qubits of a joint state.
StateVector apply_noise(const StateVector &joint_state, const NoiseSpec &noise, Rng &rng);
StateVector apply_noise(const StateVector &joint_state, const NoiseSpec &noise, std::uint64_t seed);

/// One verification session. Each pair gets a noise trajectory, then the
/// Bell QND network runs on (slot qubit, machine qubit) and the readout is
/// compared with the stored record. Accepted iff match_fraction >= threshold;
/// then the records take the new readout and each pair is reset to the
/// collapsed Bell state. A rejected session flags the account.
/// `password_ok = false` rejects before anything quantum happens.
/// Throws std::logic_error on an already flagged account.
SessionResult verify_session(AuthAccount &account, const AttackerModel &attacker, const NoiseSpec &noise,
                             double threshold, Rng &rng, bool password_ok = true);
SessionResult verify_session(AuthAccount &account, const AttackerModel &attacker, const NoiseSpec &noise,
                             double threshold, std::uint64_t seed, bool password_ok = true);

/// Exact probabilities of the four readouts, ordered as kBellLabels, for one
/// pair enrolled as `true_label`. Computed by summing |amplitude|^2 over
/// ancilla branches of the enlarged pure state (true pair, attacker system,
/// noise Pauli branch). `attacker_seed` fixes the Haar state for
/// FreshQubit(HaarRandom).
std::array<double, 4> attacker_round_distribution(const AttackerModel &attacker, BellLabel true_label,
                                                  const NoiseSpec &noise = {}, std::uint64_t attacker_seed = 0);

/// Probability one pair matches its record, averaged over the four
/// enrollment labels.
double round_match_probability(const AttackerModel &attacker, const NoiseSpec &noise = {},
                               std::uint64_t attacker_seed = 0);

/// P(matches / n >= threshold) for n independent rounds of match probability q.
double session_acceptance_probability(double q, int n, double threshold);

struct WilsonInterval {
    double low;
    double high;
};

/// z for a two-sided 99.7% normal interval.
inline constexpr double kWilsonZ997 = 2.9677379253417944;

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kWilsonZ997);

struct SweepRow {
    int n;
    std::uint64_t trials;
    std::uint64_t accepted;
    double empirical_accept_rate;
    double analytic_rate;
    WilsonInterval wilson;
};

struct SweepConfig {
    AttackerModel attacker;
    NoiseSpec noise;
    double threshold = 1.0;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
};

/// Monte-Carlo acceptance rate per n. Trial t uses an engine seeded with
/// trial_seed(seed, t): it enrolls a random account and runs one session.
/// Trials are spread over OpenMP threads; the counts do not depend on the
/// thread count.
std::vector<SweepRow> security_sweep(std::span<const int> n_values, const SweepConfig &config);

namespace reference {

/// Serial version of security_sweep.
std::vector<SweepRow> security_sweep(std::span<const int> n_values, const SweepConfig &config);

}  // namespace reference

}  // namespace qnd
