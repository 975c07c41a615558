#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rlnc/field.hpp"

namespace rlnc {

/// One N-source, M-relay erasure network.
struct NetworkParams {
    int n_sources = 1;       // N
    int n_relays = 1;        // M
    std::uint32_t q = 2;     // field order
    double eps_sr = 0.0;     // source -> relay erasure probability
    double eps_rd = 0.0;     // relay -> destination erasure probability

    /// Throws std::invalid_argument (FieldError for q) on out-of-domain values.
    /// M < N is accepted.
    void validate() const
    {
        if (n_sources < 1) throw std::invalid_argument("number of sources must be at least 1");
        if (n_relays < 1) throw std::invalid_argument("number of relays must be at least 1");
        if (!is_prime_power(q)) {
            throw FieldError("field order must be a prime power (got " + std::to_string(q) + ")");
        }
        if (q > kMaxFieldOrder) throw FieldError("field order exceeds 65536");
        if (!(eps_sr >= 0.0 && eps_sr <= 1.0)) throw std::invalid_argument("eps_sr must lie in [0, 1]");
        if (!(eps_rd >= 0.0 && eps_rd <= 1.0)) throw std::invalid_argument("eps_rd must lie in [0, 1]");
    }

    /// Probability that a given coefficient is lost on either hop.
    double combined_erasure() const noexcept { return eps_sr + eps_rd - eps_sr * eps_rd; }
};

enum class Extremum { max, min };

namespace detail {

template <typename Scalar>
Scalar log_binomial(int n, int k)
{
    using std::lgamma;
    return lgamma(Scalar(n + 1)) - lgamma(Scalar(k + 1)) - lgamma(Scalar(n - k + 1));
}

/// e * ln(base) with 0^0 = 1; -inf for a zero base and positive exponent.
template <typename Scalar>
Scalar log_pow(Scalar base, Scalar exponent)
{
    using std::log;
    if (exponent == Scalar(0)) return Scalar(0);
    if (base <= Scalar(0)) return -std::numeric_limits<Scalar>::infinity();
    return exponent * log(base);
}

template <typename Scalar>
Scalar pow0(Scalar base, Scalar exponent)
{
    using std::pow;
    if (exponent == Scalar(0)) return Scalar(1);
    return pow(base, exponent);
}

/// Sum of nonnegative terms, largest first.
template <typename Scalar>
Scalar sum_nonnegative(std::vector<Scalar> terms)
{
    std::sort(terms.begin(), terms.end(), std::greater<>());
    Scalar total(0);
    for (const Scalar t : terms) total += t;
    return total;
}

/// Log of the Binomial(M, 1 - eps_rd) mass at r, -inf when the mass is zero.
template <typename Scalar>
Scalar log_delivery_weight(const NetworkParams& params, int r)
{
    const int m = params.n_relays;
    const Scalar eps = Scalar(params.eps_rd);
    const Scalar a = log_pow<Scalar>(eps, Scalar(m - r));
    const Scalar b = log_pow<Scalar>(Scalar(1) - eps, Scalar(r));
    if (std::isinf(a) || std::isinf(b)) return -std::numeric_limits<Scalar>::infinity();
    return log_binomial<Scalar>(m, r) + a + b;
}

template <typename Scalar>
Scalar clamp_probability(Scalar x)
{
    return std::clamp(x, Scalar(0), Scalar(1));
}

} // namespace detail

/// Probability that a weight-w row combination vanishes; clamped into [0, 1].
template <typename Scalar = double>
Scalar gamma(const NetworkParams& params, int w)
{
    const Scalar q_inv = Scalar(1) / Scalar(params.q);
    const Scalar inner = Scalar(1) - (Scalar(1) - Scalar(params.eps_sr)) / (Scalar(1) - q_inv);
    const Scalar value = q_inv + (Scalar(1) - q_inv) * detail::pow0(inner, Scalar(w));
    return detail::clamp_probability(value);
}

/// Unclamped gamma, for checking rounding slack.
template <typename Scalar = double>
Scalar gamma_unclamped(const NetworkParams& params, int w)
{
    const Scalar q_inv = Scalar(1) / Scalar(params.q);
    const Scalar inner = Scalar(1) - (Scalar(1) - Scalar(params.eps_sr)) / (Scalar(1) - q_inv);
    return q_inv + (Scalar(1) - q_inv) * detail::pow0(inner, Scalar(w));
}

/// Probability that `rows` independent rows all annihilate a fixed weight-w vector.
template <typename Scalar = double>
Scalar dependence_prob(const NetworkParams& params, int w, int rows)
{
    return detail::pow0(gamma<Scalar>(params, w), Scalar(rows));
}

/// Expected number of projective null vectors of a rows x N coding matrix
/// when every row is delivered.
template <typename Scalar = double>
Scalar mu0(const NetworkParams& params, int rows)
{
    using std::exp;
    using std::log;
    const int n = params.n_sources;
    const Scalar log_units = log(Scalar(params.q - 1));
    std::vector<Scalar> terms;
    terms.reserve(static_cast<std::size_t>(n));
    for (int w = 1; w <= n; ++w) {
        const Scalar lp = detail::log_pow(gamma<Scalar>(params, w), Scalar(rows));
        if (std::isinf(lp)) continue;
        terms.push_back(exp(detail::log_binomial<Scalar>(n, w) + Scalar(w - 1) * log_units + lp));
    }
    return detail::sum_nonnegative(std::move(terms));
}

/// Expected-null-vector upper bound with relay losses, raw (may exceed 1).
template <typename Scalar = double>
Scalar ub_old(const NetworkParams& params)
{
    using std::exp;
    using std::log;
    const int n = params.n_sources;
    const Scalar eps_rd = Scalar(params.eps_rd);
    const Scalar log_units = log(Scalar(params.q - 1));
    std::vector<Scalar> terms;
    for (int w = 1; w <= n; ++w) {
        const Scalar base = eps_rd + (Scalar(1) - eps_rd) * gamma<Scalar>(params, w);
        const Scalar lp = detail::log_pow(base, Scalar(params.n_relays));
        if (std::isinf(lp)) continue;
        terms.push_back(exp(detail::log_binomial<Scalar>(n, w) + Scalar(w - 1) * log_units + lp));
    }
    return detail::sum_nonnegative(std::move(terms));
}

template <typename Scalar = double>
Scalar ub_old_clamped(const NetworkParams& params)
{
    return std::min(Scalar(1), ub_old<Scalar>(params));
}

/// The same quantity as ub_old, written as a delivery-count mixture of mu0.
template <typename Scalar = double>
Scalar ub_old_binomial_form(const NetworkParams& params)
{
    using std::exp;
    std::vector<Scalar> terms;
    for (int r = 0; r <= params.n_relays; ++r) {
        const Scalar lw = detail::log_delivery_weight<Scalar>(params, r);
        if (std::isinf(lw)) continue;
        terms.push_back(exp(lw) * mu0<Scalar>(params, r));
    }
    return detail::sum_nonnegative(std::move(terms));
}

/// Column-erasure lower bound in its binomial-sum form.
template <typename Scalar = double>
Scalar lb_old_binomial_sum(const NetworkParams& params)
{
    using std::exp;
    const int n = params.n_sources;
    const Scalar x = detail::pow0(Scalar(params.combined_erasure()), Scalar(params.n_relays));
    std::vector<Scalar> terms;
    for (int k = 1; k <= n; ++k) {
        const Scalar a = detail::log_pow(x, Scalar(k));
        const Scalar b = detail::log_pow(Scalar(1) - x, Scalar(n - k));
        if (std::isinf(a) || std::isinf(b)) continue;
        terms.push_back(exp(detail::log_binomial<Scalar>(n, k) + a + b));
    }
    return detail::sum_nonnegative(std::move(terms));
}

/// 1 - (1 - x)^n, accurate for tiny x.
template <typename Scalar>
Scalar at_least_one(Scalar x, int n)
{
    using std::expm1;
    using std::log1p;
    if (x >= Scalar(1)) return Scalar(1);
    if (x <= Scalar(0)) return Scalar(0);
    return detail::clamp_probability(-expm1(Scalar(n) * log1p(-x)));
}

/// Column-erasure lower bound, closed form 1 - (1 - eps^M)^N.
template <typename Scalar = double>
Scalar lb_old(const NetworkParams& params)
{
    const Scalar x = detail::pow0(Scalar(params.combined_erasure()), Scalar(params.n_relays));
    const Scalar closed = at_least_one(x, params.n_sources);
    assert(std::abs(static_cast<double>(closed - lb_old_binomial_sum<Scalar>(params))) <= 1e-12);
    return closed;
}

/// Largest / smallest single-symbol probability of a coefficient.
template <typename Scalar = double>
Scalar beta(const NetworkParams& params, Extremum which)
{
    const Scalar zero = Scalar(params.eps_sr);
    const Scalar nonzero = (Scalar(1) - zero) / Scalar(params.q - 1);
    return which == Extremum::max ? std::max(zero, nonzero) : std::min(zero, nonzero);
}

/// Column-by-column independence bound 1 - prod_{i=1}^{N} (1 - beta^(rows-i+1)).
/// Any factor with a non-positive exponent is zero, so rows < N gives 1.
template <typename Scalar = double>
Scalar eta(const NetworkParams& params, int rows, Extremum which)
{
    using std::expm1;
    using std::log1p;
    using std::pow;
    if (rows < params.n_sources) return Scalar(1);
    const Scalar b = beta<Scalar>(params, which);
    Scalar log_full_rank(0);
    for (int i = 1; i <= params.n_sources; ++i) {
        const Scalar dep = pow(b, Scalar(rows - i + 1));
        if (dep >= Scalar(1)) return Scalar(1);
        log_full_rank += log1p(-dep);
    }
    return detail::clamp_probability(-expm1(log_full_rank));
}

/// Probability that some source column is entirely zero among `rows` delivered rows.
template <typename Scalar = double>
Scalar p0(const NetworkParams& params, int rows)
{
    return at_least_one(detail::pow0(Scalar(params.eps_sr), Scalar(rows)), params.n_sources);
}

/// Per-delivery-count mixture; `per_rows(r)` is evaluated for r = 0..M.
template <typename Scalar, typename PerRows>
Scalar delivery_mixture(const NetworkParams& params, PerRows&& per_rows)
{
    using std::exp;
    std::vector<Scalar> terms;
    for (int r = 0; r <= params.n_relays; ++r) {
        const Scalar lw = detail::log_delivery_weight<Scalar>(params, r);
        if (std::isinf(lw)) continue;
        terms.push_back(exp(lw) * per_rows(r));
    }
    return detail::clamp_probability(detail::sum_nonnegative(std::move(terms)));
}

/// Improved upper bound: per delivery count, the smaller of eta_max and mu0 (and 1).
template <typename Scalar = double>
Scalar ub_new(const NetworkParams& params)
{
    return delivery_mixture<Scalar>(params, [&](int r) {
        return std::min({Scalar(1), eta<Scalar>(params, r, Extremum::max), mu0<Scalar>(params, r)});
    });
}

/// Improved lower bound: per delivery count, the larger of eta_min and p0.
template <typename Scalar = double>
Scalar lb_new(const NetworkParams& params)
{
    return delivery_mixture<Scalar>(params, [&](int r) {
        return std::max(eta<Scalar>(params, r, Extremum::min), p0<Scalar>(params, r));
    });
}

/// Every analytical quantity for one network, with per-delivery-count tables.
template <typename Scalar = double>
struct BoundSet {
    using Vector = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

    NetworkParams params;
    Scalar mu0 = 0;            // expected null vectors at rows = M, eps_rd ignored
    Scalar lb_old = 0;
    Scalar lb_new = 0;
    Scalar ub_new = 0;
    Scalar ub_old_raw = 0;
    Scalar ub_old_clamped = 0;

    // Indexed by the number of delivered rows r = 0..M.
    Vector delivery_weight;
    Vector eta_max;
    Vector eta_min;
    Vector mu0_rows;
    Vector p0_rows;
};

template <typename Scalar = double>
BoundSet<Scalar> evaluate_all(const NetworkParams& params)
{
    using std::exp;
    const int m = params.n_relays;
    BoundSet<Scalar> out;
    out.params = params;
    out.delivery_weight.resize(m + 1);
    out.eta_max.resize(m + 1);
    out.eta_min.resize(m + 1);
    out.mu0_rows.resize(m + 1);
    out.p0_rows.resize(m + 1);

    std::vector<Scalar> upper, lower;
    for (int r = 0; r <= m; ++r) {
        const Scalar lw = detail::log_delivery_weight<Scalar>(params, r);
        out.delivery_weight(r) = std::isinf(lw) ? Scalar(0) : exp(lw);
        out.eta_max(r) = eta<Scalar>(params, r, Extremum::max);
        out.eta_min(r) = eta<Scalar>(params, r, Extremum::min);
        out.mu0_rows(r) = mu0<Scalar>(params, r);
        out.p0_rows(r) = p0<Scalar>(params, r);
        if (std::isinf(lw)) continue;
        const Scalar w = out.delivery_weight(r);
        upper.push_back(w * std::min({Scalar(1), out.eta_max(r), out.mu0_rows(r)}));
        lower.push_back(w * std::max(out.eta_min(r), out.p0_rows(r)));
    }

    out.mu0 = out.mu0_rows(m);
    out.ub_new = detail::clamp_probability(detail::sum_nonnegative(std::move(upper)));
    out.lb_new = detail::clamp_probability(detail::sum_nonnegative(std::move(lower)));
    out.lb_old = lb_old<Scalar>(params);
    out.ub_old_raw = ub_old<Scalar>(params);
    out.ub_old_clamped = std::min(Scalar(1), out.ub_old_raw);
    return out;
}

} // namespace rlnc
