// Command-line front end: bounds, sweeps, simulation and exact oracle runs as CSV.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rlnc/bounds.hpp"
#include "rlnc/simulator.hpp"
#include "rlnc/sweep.hpp"

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitGuard = 3;

struct PointOptions {
    int sources = 10;
    int relays = 15;
    std::uint32_t field = 2;
    double eps_sr = 0.5;
    double eps_rd = 0.1;
};

void add_point_options(CLI::App& cmd, PointOptions& o)
{
    cmd.add_option("--sources,-n", o.sources, "Number of source nodes N")->capture_default_str();
    cmd.add_option("--relays,-m", o.relays, "Number of relay nodes M")->capture_default_str();
    cmd.add_option("--field,-q", o.field, "Field order q (prime power <= 65536)")->capture_default_str();
    cmd.add_option("--eps-sr", o.eps_sr, "Source-to-relay erasure probability")->capture_default_str();
    cmd.add_option("--eps-rd", o.eps_rd, "Relay-to-destination erasure probability")->capture_default_str();
}

rlnc::NetworkParams to_params(const PointOptions& o)
{
    return {o.sources, o.relays, o.field, o.eps_sr, o.eps_rd};
}

void warn_if_underdetermined(const rlnc::NetworkParams& p)
{
    if (p.n_relays < p.n_sources) {
        std::cerr << "warning: M=" << p.n_relays << " < N=" << p.n_sources
                  << "; decoding always fails\n";
    }
}

std::vector<double> parse_values(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse sweep value '" + item + "'");
        }
        if (used != item.size()) throw std::invalid_argument("cannot parse sweep value '" + item + "'");
        out.push_back(v);
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Decoding-failure bounds and simulation for random linear network coding "
                 "over multi-source multi-relay erasure networks"};
    app.require_subcommand(1);

    std::string output;
    std::uint64_t trials = rlnc::kDefaultTrials;
    std::uint64_t seed = 0;
    bool no_sim = false;

    auto common = [&](CLI::App* cmd, bool with_sim) {
        cmd->add_option("--output,-o", output, "Write CSV to this path instead of stdout");
        if (with_sim) {
            cmd->add_option("--trials", trials, "Monte Carlo trials per point")->capture_default_str();
            cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
            cmd->add_flag("--no-sim", no_sim, "Skip the Monte Carlo estimate");
        }
    };

    PointOptions point;
    auto* bounds = app.add_subcommand("bounds", "Evaluate every bound at one parameter point");
    add_point_options(*bounds, point);
    common(bounds, true);

    auto* exact = app.add_subcommand("exact", "Exact failure probability by enumeration (tiny instances)");
    PointOptions exact_point;
    exact_point.sources = 2;
    exact_point.relays = 3;
    add_point_options(*exact, exact_point);
    common(exact, false);

    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter, or run a figure preset");
    PointOptions sweep_point;
    std::string preset_name;
    std::string axis = "eps-sr";
    std::string values;
    bool with_exact = false;
    add_point_options(*sweep, sweep_point);
    sweep->add_option("--preset", preset_name, "Figure preset: fig2, fig3, fig4, fig5");
    sweep->add_option("--axis", axis, "Swept parameter: eps-sr, eps-rd, relays, field")->capture_default_str();
    sweep->add_option("--values", values, "Comma-separated values for the swept parameter");
    sweep->add_flag("--exact", with_exact, "Also run the exact oracle at every point");
    common(sweep, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitDomain;
    }

    std::ostringstream csv;
    try {
        csv << rlnc::csv_header() << '\n';
        if (*bounds) {
            const auto p = to_params(point);
            p.validate();
            warn_if_underdetermined(p);
            csv << rlnc::csv_row(rlnc::evaluate_point(p, trials, seed, !no_sim, false)) << '\n';
        } else if (*exact) {
            const auto p = to_params(exact_point);
            p.validate();
            warn_if_underdetermined(p);
            csv << rlnc::csv_row(rlnc::evaluate_point(p, 0, 0, false, true)) << '\n';
        } else if (*sweep) {
            std::vector<rlnc::SweepSpec> specs;
            if (!preset_name.empty()) {
                specs = rlnc::preset(preset_name, trials, seed, !no_sim);
            } else {
                if (values.empty()) throw std::invalid_argument("sweep needs --preset or --values");
                rlnc::SweepSpec s;
                s.base = to_params(sweep_point);
                s.axis = rlnc::parse_axis(axis);
                s.values = parse_values(values);
                s.trials = trials;
                s.seed = seed;
                s.include_sim = !no_sim;
                specs.push_back(std::move(s));
            }
            for (auto& s : specs) {
                s.include_exact = with_exact;
                s.validate();
                for (std::size_t i = 0; i < s.values.size(); ++i) warn_if_underdetermined(s.point(i));
            }
            for (const auto& s : specs) {
                for (const auto& row : rlnc::run_sweep(s)) csv << rlnc::csv_row(row) << '\n';
            }
        }
    } catch (const rlnc::OracleGuardError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitGuard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }

    if (output.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream file(output);
        if (!file) {
            std::cerr << "error: cannot open " << output << '\n';
            return kExitDomain;
        }
        file << csv.str();
    }
    return EXIT_SUCCESS;
}
