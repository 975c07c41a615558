#include "rlnc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rlnc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Samples the relays in order, writing delivered rows to the top of `buffer`.
// Returns the number of delivered rows.
Eigen::Index fill_received(const Field& field, const NetworkParams& params, TrialStream& rng,
                           ElementMatrix& buffer)
{
    const Eigen::Index n = params.n_sources;
    Eigen::Index kept = 0;
    for (int relay = 0; relay < params.n_relays; ++relay) {
        for (Eigen::Index j = 0; j < n; ++j) {
            buffer(kept, j) = sample_coefficient(field, params.eps_sr, rng);
        }
        if (!rng.bernoulli(params.eps_rd)) ++kept;
    }
    return kept;
}

} // namespace

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t trial) noexcept
    : state_(mix64(mix64(seed + kGolden) ^ (trial * kGolden + 1)))
{
}

TrialStream::result_type TrialStream::operator()() noexcept
{
    state_ += kGolden;
    return mix64(state_);
}

std::uint64_t TrialStream::below(std::uint64_t bound) noexcept
{
    // Lemire's multiply-shift with rejection.
    using u128 = unsigned __int128;
    u128 product = static_cast<u128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            product = static_cast<u128>((*this)()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

Element sample_coefficient(const Field& field, double eps_sr, TrialStream& rng)
{
    if (rng.bernoulli(eps_sr)) return 0;
    if (field.order() == 2) return 1;
    return static_cast<Element>(1 + rng.below(field.order() - 1));
}

CodingMatrix sample_received_matrix(const Field& field, const NetworkParams& params,
                                    TrialStream& rng)
{
    ElementMatrix buffer(params.n_relays, params.n_sources);
    const Eigen::Index kept = fill_received(field, params, rng, buffer);
    return CodingMatrix(field, ElementMatrix(buffer.topRows(kept)));
}

double SimEstimate::sigma() const noexcept
{
    if (trials == 0) return 0;
    return std::sqrt(estimate * (1 - estimate) / static_cast<double>(trials));
}

SimEstimate estimate_pfail(const NetworkParams& params, std::uint64_t trials, std::uint64_t seed,
                           unsigned workers)
{
    params.validate();
    if (trials < 1) throw std::invalid_argument("trial count must be at least 1");
    const Field field(params.q);

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

    std::vector<std::uint64_t> failures(workers, 0);
    auto run = [&](unsigned worker) {
        ElementMatrix buffer(params.n_relays, params.n_sources);
        std::uint64_t local = 0;
        for (std::uint64_t t = worker; t < trials; t += workers) {
            TrialStream rng(seed, t);
            const Eigen::Index kept = fill_received(field, params, rng, buffer);
            if (!is_decodable(field, buffer.topRows(kept))) ++local;
        }
        failures[worker] = local;
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }

    SimEstimate out;
    out.params = params;
    out.trials = trials;
    out.seed = seed;
    for (const auto f : failures) out.failures += f;
    out.estimate = static_cast<double>(out.failures) / static_cast<double>(trials);
    const double half = kCiSigmas * out.sigma();
    out.ci_low = std::clamp(out.estimate - half, 0.0, 1.0);
    out.ci_high = std::clamp(out.estimate + half, 0.0, 1.0);
    return out;
}

double oracle_state_count(const NetworkParams& params)
{
    return std::pow(static_cast<double>(params.q),
                    static_cast<double>(params.n_relays) * params.n_sources) *
           std::pow(2.0, params.n_relays);
}

ExactResult exact_pfail(const NetworkParams& params)
{
    using Rational = boost::multiprecision::cpp_rational;

    params.validate();
    const double states = oracle_state_count(params);
    if (states > kOracleStateLimit) {
        std::ostringstream os;
        os << "exact oracle state space " << states << " exceeds limit " << kOracleStateLimit;
        throw OracleGuardError(os.str());
    }

    const Field field(params.q);
    const int m = params.n_relays;
    const int n = params.n_sources;
    const int cells = m * n;
    const std::uint32_t q = params.q;

    // counts[zeros][lost]: failing configurations with that many zero
    // coefficients and that many undelivered rows.
    std::vector<std::vector<std::uint64_t>> counts(cells + 1, std::vector<std::uint64_t>(m + 1, 0));

    ElementMatrix a = ElementMatrix::Zero(m, n);
    ElementMatrix kept_rows(m, n);
    std::uint64_t state_count = 0;
    const std::uint32_t patterns = 1u << m;
    for (;;) {
        const auto zeros = static_cast<int>((a.array() == 0).count());
        for (std::uint32_t mask = 0; mask < patterns; ++mask) {
            Eigen::Index kept = 0;
            for (int i = 0; i < m; ++i) {
                if (mask & (1u << i)) kept_rows.row(kept++) = a.row(i);
            }
            ++state_count;
            if (!is_decodable(field, kept_rows.topRows(kept))) ++counts[zeros][m - kept];
        }

        // Odometer over all q^(m n) matrices.
        Element* data = a.data();
        int k = 0;
        while (k < cells && ++data[k] == q) data[k++] = 0;
        if (k == cells) break;
    }

    const Rational eps_sr(params.eps_sr);
    const Rational eps_rd(params.eps_rd);
    const Rational nonzero_mass = (Rational(1) - eps_sr) / Rational(q - 1);
    const Rational kept_mass = Rational(1) - eps_rd;

    auto powers = [](const Rational& base, int count) {
        std::vector<Rational> out(count + 1, Rational(1));
        for (int k = 1; k <= count; ++k) out[k] = out[k - 1] * base;
        return out;
    };
    const auto zero_pow = powers(eps_sr, cells);
    const auto nonzero_pow = powers(nonzero_mass, cells);
    const auto lost_pow = powers(eps_rd, m);
    const auto kept_pow = powers(kept_mass, m);

    Rational p_fail(0);
    for (int z = 0; z <= cells; ++z) {
        for (int lost = 0; lost <= m; ++lost) {
            if (counts[z][lost] == 0) continue;
            p_fail += Rational(counts[z][lost]) * zero_pow[z] * nonzero_pow[cells - z] *
                      lost_pow[lost] * kept_pow[m - lost];
        }
    }

    ExactResult out;
    out.params = params;
    out.p_fail = std::clamp(p_fail.convert_to<double>(), 0.0, 1.0);
    out.state_count = state_count;
    return out;
}

} // namespace rlnc
