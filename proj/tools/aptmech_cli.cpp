// aptmech — command-line front end.
//
// Subcommands: fig1 | fig2 | fig3 | mass-sense | eigen | simulate.
// Each accepts --config <json>, --out <dir> and repeatable --set key=value
// overrides, writes CSV data plus a JSON sidecar with the fully resolved
// parameters, and exits 0 on success, 2 on configuration errors, 3 on
// numeric failure, 4 on I/O failure.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aptmech/csv.hpp"
#include "aptmech/dynamics.hpp"
#include "aptmech/experiments.hpp"

namespace {

struct SubArgs {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> sets;
};

void add_common(CLI::App* sub, SubArgs& args) {
    sub->add_option("--config", args.config_path,
                    "JSON config file with flat key/value overrides");
    sub->add_option("--out", args.out_dir, "output directory");
    sub->add_option("--set", args.sets,
                    "override as key=value (repeatable); frequency keys are "
                    "ordinary Hz and converted to rad/s");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "anti-parity-time phase transitions of a damped mechanical resonator: "
        "eigenvalue diagrams, optomechanical steady states, EP sensing"};
    app.require_subcommand(1);

    const struct {
        const char* name;
        const char* experiment;
        const char* help;
    } subs[] = {
        {"fig1", "fig1",
         "damping-regime trajectories and eigenvalue sweep vs gamma_m/omega_m"},
        {"fig2", "fig2",
         "steady-state branches and eigenvalues vs drive strength"},
        {"fig3", "fig3",
         "splitting sensitivity vs drive and splitting vs perturbation at the EPs"},
        {"mass-sense", "mass_sense",
         "minimum resolvable nanoparticle mass and splitting report"},
        {"eigen", "eigen", "single-point eigenstructure report"},
        {"simulate", "simulate", "one trajectory (bare or optomech) to CSV"},
    };

    std::vector<SubArgs> args(std::size(subs));
    std::vector<CLI::App*> handles;
    for (std::size_t i = 0; i < std::size(subs); ++i) {
        CLI::App* sub = app.add_subcommand(subs[i].name, subs[i].help);
        add_common(sub, args[i]);
        handles.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < handles.size(); ++i) {
        if (!handles[i]->parsed()) continue;
        try {
            const aptmech::ExperimentConfig cfg = aptmech::load_config(
                subs[i].experiment, args[i].config_path, args[i].sets,
                args[i].out_dir);
            const aptmech::RunResult result = aptmech::run_experiment(cfg);
            for (const auto& w : result.warnings)
                std::cerr << "warning: " << w << "\n";
            for (const auto& f : result.files) std::cout << f << "\n";
            return 0;
        } catch (const aptmech::ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        } catch (const aptmech::NumericError& e) {
            std::cerr << "numeric failure: " << e.what() << "\n";
            return 3;
        } catch (const aptmech::IoError& e) {
            std::cerr << "I/O error: " << e.what() << "\n";
            return 4;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 2;
}
