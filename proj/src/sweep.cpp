#include "rlnc/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rlnc {

namespace {

std::vector<double> tenths(int first, int last)
{
    std::vector<double> out;
    for (int k = first; k <= last; ++k) out.push_back(k / 10.0);
    return out;
}

std::vector<double> integers(int first, int last)
{
    std::vector<double> out;
    for (int k = first; k <= last; ++k) out.push_back(k);
    return out;
}

SweepSpec make(NetworkParams base, SweepAxis axis, std::vector<double> values,
               std::uint64_t trials, std::uint64_t seed, bool include_sim)
{
    SweepSpec s;
    s.base = base;
    s.axis = axis;
    s.values = std::move(values);
    s.trials = trials;
    s.seed = seed;
    s.include_sim = include_sim;
    return s;
}

bool is_integral(double v) { return std::isfinite(v) && std::floor(v) == v; }

} // namespace

SweepAxis parse_axis(std::string_view name)
{
    if (name == "eps-sr" || name == "eps_sr") return SweepAxis::eps_sr;
    if (name == "eps-rd" || name == "eps_rd") return SweepAxis::eps_rd;
    if (name == "relays" || name == "n-relays" || name == "n_relays" || name == "m") {
        return SweepAxis::n_relays;
    }
    if (name == "field" || name == "q") return SweepAxis::q;
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

std::string_view axis_name(SweepAxis axis) noexcept
{
    switch (axis) {
    case SweepAxis::eps_sr: return "eps-sr";
    case SweepAxis::eps_rd: return "eps-rd";
    case SweepAxis::n_relays: return "relays";
    case SweepAxis::q: return "field";
    }
    return "";
}

NetworkParams SweepSpec::point(std::size_t i) const
{
    NetworkParams p = base;
    const double v = values.at(i);
    switch (axis) {
    case SweepAxis::eps_sr: p.eps_sr = v; break;
    case SweepAxis::eps_rd: p.eps_rd = v; break;
    case SweepAxis::n_relays: p.n_relays = static_cast<int>(v); break;
    case SweepAxis::q: p.q = static_cast<std::uint32_t>(v); break;
    }
    return p;
}

void SweepSpec::validate() const
{
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    if (trials < 1) throw std::invalid_argument("trial count must be at least 1");
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if ((axis == SweepAxis::n_relays || axis == SweepAxis::q) &&
            (!is_integral(v) || v < 1 || v > 1e9)) {
            throw std::invalid_argument("sweep value " + format_number(v) + " is not a valid " +
                                        std::string(axis_name(axis)));
        }
        point(i).validate();
    }
}

std::vector<SweepSpec> preset(std::string_view name, std::uint64_t trials, std::uint64_t seed,
                              bool include_sim)
{
    std::vector<SweepSpec> out;
    if (name == "fig2") {
        // Upper bounds versus eps_sr at q = 2, eps_rd = 0.1 for three (N, M) pairs.
        for (const auto& [n, m] : {std::pair{10, 15}, std::pair{20, 25}, std::pair{30, 35}}) {
            out.push_back(make({n, m, 2, 0.0, 0.1}, SweepAxis::eps_sr, tenths(1, 9), trials, seed,
                               include_sim));
        }
    } else if (name == "fig3") {
        for (const std::uint32_t q : {4u, 64u}) {
            out.push_back(make({20, 25, q, 0.0, 0.1}, SweepAxis::eps_sr, tenths(1, 9), trials, seed,
                               include_sim));
        }
    } else if (name == "fig4") {
        for (const std::uint32_t q : {2u, 4u}) {
            out.push_back(make({10, 10, q, 0.7, 0.2}, SweepAxis::n_relays, integers(10, 30), trials,
                               seed, include_sim));
        }
    } else if (name == "fig5") {
        for (const std::uint32_t q : {2u, 4u}) {
            out.push_back(make({10, 10, q, 0.3, 0.1}, SweepAxis::n_relays, integers(10, 30), trials,
                               seed, include_sim));
        }
    } else {
        throw std::invalid_argument("unknown preset '" + std::string(name) +
                                    "' (expected fig2, fig3, fig4 or fig5)");
    }
    return out;
}

std::vector<std::string> preset_names() { return {"fig2", "fig3", "fig4", "fig5"}; }

ReportRow evaluate_point(const NetworkParams& params, std::uint64_t trials, std::uint64_t seed,
                         bool include_sim, bool include_exact)
{
    params.validate();
    ReportRow row;
    if (include_exact) row.exact = exact_pfail(params);
    row.bounds = evaluate_all<double>(params);
    if (include_sim) row.sim = estimate_pfail(params, trials, seed);
    return row;
}

std::vector<ReportRow> run_sweep(const SweepSpec& spec)
{
    spec.validate();
    std::vector<ReportRow> rows;
    rows.reserve(spec.values.size());
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        rows.push_back(
            evaluate_point(spec.point(i), spec.trials, spec.seed, spec.include_sim, spec.include_exact));
    }
    return rows;
}

std::string format_number(double value)
{
    if (std::isnan(value)) value = 0;
    if (std::isinf(value)) {
        value = value > 0 ? std::numeric_limits<double>::max() : std::numeric_limits<double>::lowest();
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::string csv_header()
{
    return "n,m,q,eps_sr,eps_rd,mu0,lb_old,lb_new,sim_estimate,sim_ci_low,sim_ci_high,"
           "ub_new,ub_old_clamped,ub_old_raw,trials,seed,exact_pfail";
}

std::string csv_row(const ReportRow& row)
{
    const auto& b = row.bounds;
    const auto& p = b.params;
    std::ostringstream os;
    os << p.n_sources << ',' << p.n_relays << ',' << p.q << ',' << format_number(p.eps_sr) << ','
       << format_number(p.eps_rd) << ',' << format_number(b.mu0) << ',' << format_number(b.lb_old)
       << ',' << format_number(b.lb_new) << ',';
    if (row.sim) {
        os << format_number(row.sim->estimate) << ',' << format_number(row.sim->ci_low) << ','
           << format_number(row.sim->ci_high) << ',';
    } else {
        os << ",,,";
    }
    os << format_number(b.ub_new) << ',' << format_number(b.ub_old_clamped) << ','
       << format_number(b.ub_old_raw) << ',';
    if (row.sim) {
        os << row.sim->trials << ',' << row.sim->seed << ',';
    } else {
        os << ",,";
    }
    if (row.exact) os << format_number(row.exact->p_fail);
    return os.str();
}

} // namespace rlnc
