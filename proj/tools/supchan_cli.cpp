#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "supchan/channel_spec.hpp"
#include "supchan/experiments.hpp"

namespace {

using namespace supchan;

void run_simulate(const std::string& experiment, const std::string& config_path,
                  const std::string& out_path) {
    nlohmann::json cfg = load_json_file(config_path);
    if (experiment == "fig4") {
        write_csv(out_path, run_fig4(fig4_config_from_json(cfg)));
    } else if (experiment == "fig5") {
        write_csv(out_path, run_fig5(fig5_config_from_json(cfg)));
    } else if (experiment == "asymptotic") {
        auto entries = run_asymptotic(asymptotic_config_from_json(cfg));
        write_csv(out_path, asymptotic_rows(entries));
        std::cout << asymptotic_report_json(entries).dump(2) << "\n";
    } else {
        throw InvalidConfig("unknown experiment: " + experiment);
    }
}

void run_capacity(const std::string& channel_path, int n, double s) {
    if (n < 1) throw InvalidConfig("--n must be positive");
    VacuumExtension ext = load_channel(channel_path);
    Branch chain = detail::chain_branches(ext, n).back();
    const double gamma = gamma_factor(s, n);
    const double bound = detail::superposed_bound(chain, gamma);
    const double classical = two_state_lower_bound(chain.channel).value;

    nlohmann::json j;
    j["n"] = n;
    j["s"] = s;
    j["gamma"] = gamma;
    j["bound_superposed"] = bound;
    j["capacity_classical"] = classical;
    j["gap"] = bound - classical;
    std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"capacity bounds for channels routed in coherent superposition"};
    app.require_subcommand(1);

    std::string experiment, config_path, out_path, channel_path;
    int n_links = 1;
    double s_dephase = 0.0;

    CLI::App* sim = app.add_subcommand("simulate", "run a sweep and write a csv");
    sim->add_option("experiment", experiment, "fig4 | fig5 | asymptotic")->required();
    sim->add_option("--config", config_path, "json config file")->required();
    sim->add_option("--out", out_path, "output csv path")->required();

    CLI::App* thm =
        app.add_subcommand("theorem1-check", "test a channel for a perfect repeater");
    thm->add_option("--channel", channel_path, "json channel spec")->required();

    CLI::App* cap = app.add_subcommand("capacity", "bounds for a chain of one channel");
    cap->add_option("--channel", channel_path, "json channel spec")->required();
    cap->add_option("--n", n_links, "links in the chain");
    cap->add_option("--s", s_dephase, "per-link control dephasing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*sim) {
            run_simulate(experiment, config_path, out_path);
        } else if (*thm) {
            supchan::VacuumExtension ext = supchan::load_channel(channel_path);
            std::cout << supchan::theorem1_to_json(supchan::theorem1_check(ext)).dump(2) << "\n";
        } else if (*cap) {
            run_capacity(channel_path, n_links, s_dephase);
        }
    } catch (const supchan::NoUnitEigenvalue& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const supchan::NoFixedPoint& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const supchan::NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const supchan::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
