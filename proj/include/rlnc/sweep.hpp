#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rlnc/bounds.hpp"
#include "rlnc/simulator.hpp"

namespace rlnc {

enum class SweepAxis { eps_sr, eps_rd, n_relays, q };

/// Parses "eps-sr", "eps-rd", "relays" / "n-relays", "field" / "q".
SweepAxis parse_axis(std::string_view name);
std::string_view axis_name(SweepAxis axis) noexcept;

inline constexpr std::uint64_t kDefaultTrials = 10000;

struct SweepSpec {
    NetworkParams base;
    SweepAxis axis = SweepAxis::eps_sr;
    std::vector<double> values;
    std::uint64_t trials = kDefaultTrials;
    std::uint64_t seed = 0;
    bool include_sim = true;
    bool include_exact = false;

    /// Parameters of the i-th sweep point.
    NetworkParams point(std::size_t i) const;

    /// Throws std::invalid_argument (or FieldError) for an empty value list,
    /// out-of-domain values, or non-integral relay counts / field orders.
    void validate() const;
};

/// Figure presets: "fig2", "fig3", "fig4", "fig5". Each expands to one sweep
/// per curve family. Throws std::invalid_argument for other names.
std::vector<SweepSpec> preset(std::string_view name, std::uint64_t trials, std::uint64_t seed,
                              bool include_sim);

/// The preset names, in order.
std::vector<std::string> preset_names();

struct ReportRow {
    BoundSet<double> bounds;
    std::optional<SimEstimate> sim;
    std::optional<ExactResult> exact;
};

ReportRow evaluate_point(const NetworkParams& params, std::uint64_t trials, std::uint64_t seed,
                         bool include_sim, bool include_exact);

std::vector<ReportRow> run_sweep(const SweepSpec& spec);

/// n,m,q,eps_sr,eps_rd,mu0,lb_old,lb_new,sim_estimate,sim_ci_low,sim_ci_high,
/// ub_new,ub_old_clamped,ub_old_raw,trials,seed,exact_pfail
std::string csv_header();
std::string csv_row(const ReportRow& row);

/// 12 significant digits; never inf or nan.
std::string format_number(double value);

} // namespace rlnc
