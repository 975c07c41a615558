#pragma once

#include <cstdint>
#include <stdexcept>

#include "rlnc/bounds.hpp"
#include "rlnc/field.hpp"
#include "rlnc/linalg.hpp"

namespace rlnc {

/// Counter-keyed SplitMix64 stream. Each (seed, trial) pair selects an
/// independent starting state, so trials can run on any worker in any order.
class TrialStream {
public:
    TrialStream(std::uint64_t seed, std::uint64_t trial) noexcept;

    using result_type = std::uint64_t;
    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Bernoulli draw: true with probability p (p = 1 always, p = 0 never).
    bool bernoulli(double p) noexcept { return uniform() < p; }

    /// Uniform on [0, bound), bound > 0, without modulo bias.
    std::uint64_t below(std::uint64_t bound) noexcept;

private:
    std::uint64_t state_;
};

/// One coefficient: zero with probability eps_sr, otherwise uniform on F_q \ {0}.
Element sample_coefficient(const Field& field, double eps_sr, TrialStream& rng);

/// Draws the M x N coefficient matrix row by row and keeps each row with
/// probability 1 - eps_rd. Row i consumes its N coefficients followed by its
/// delivery draw, so a realization with M + 1 relays extends the one with M.
CodingMatrix sample_received_matrix(const Field& field, const NetworkParams& params,
                                    TrialStream& rng);

struct SimEstimate {
    NetworkParams params;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double estimate = 0;
    double ci_low = 0;   // estimate - 4 sigma, clamped
    double ci_high = 0;  // estimate + 4 sigma, clamped
    std::uint64_t seed = 0;

    /// Normal-approximation standard error sqrt(p(1-p)/trials).
    double sigma() const noexcept;
};

/// Width of the reported interval in standard errors.
inline constexpr double kCiSigmas = 4.0;

/// Monte Carlo decoding-failure rate. Deterministic in (params, trials, seed);
/// `workers` = 0 uses the hardware concurrency.
SimEstimate estimate_pfail(const NetworkParams& params, std::uint64_t trials, std::uint64_t seed,
                           unsigned workers = 0);

class OracleGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest q^(M N) 2^M state space the exact oracle will enumerate.
inline constexpr double kOracleStateLimit = 1e8;

struct ExactResult {
    NetworkParams params;
    double p_fail = 0;
    std::uint64_t state_count = 0;
};

/// Number of (coefficient matrix, delivery pattern) configurations, as a double.
double oracle_state_count(const NetworkParams& params);

/// Exact failure probability by enumerating every coefficient matrix and
/// delivery pattern. Masses are accumulated in exact rational arithmetic.
/// Throws OracleGuardError above kOracleStateLimit states.
ExactResult exact_pfail(const NetworkParams& params);

} // namespace rlnc
