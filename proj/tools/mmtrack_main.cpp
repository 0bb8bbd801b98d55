// Command-line front end: loads a scenario file and runs one of the
// experiment drivers, writing CSV (and LP) outputs into --out.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mmtrack/experiments.hpp"
#include "mmtrack/scenario.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_trials) {
    cmd->add_option("-c,--config", a.config, "scenario file")->required();
    cmd->add_option("-o,--out", a.out_dir, "output directory (created if missing)");
    cmd->add_option("-s,--seed", a.seed, "override the scenario seed");
    if (with_trials) cmd->add_option("-t,--trials", a.trials, "override the trial count");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"blockage-driven obstacle tracking simulator"};
    app.require_subcommand(1);

    CommonArgs single_a, conf_a, cam_a, tau_a, ilp_a;
    CLI::App* single = app.add_subcommand("single", "run one epoch and dump its artifacts");
    add_common(single, single_a, false);
    CLI::App* conf = app.add_subcommand("confusion-sweep",
                                        "per-regime confusion matrices over many epochs");
    add_common(conf, conf_a, true);
    CLI::App* cam = app.add_subcommand("camera-sweep",
                                       "tracking and handoff vs. camera deployment size");
    add_common(cam, cam_a, true);
    CLI::App* tau = app.add_subcommand("tau-sweep",
                                       "prediction quality vs. discovery-phase length");
    add_common(tau, tau_a, true);
    CLI::App* ilp = app.add_subcommand("emit-ilp", "write cover instances and lp_solve models");
    add_common(ilp, ilp_a, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (single->parsed()) {
            mmtrack::drive_single(mmtrack::load_scenario(single_a.config),
                                  {single_a.out_dir, single_a.seed, single_a.trials});
        } else if (conf->parsed()) {
            mmtrack::drive_confusion_sweep(mmtrack::load_scenario(conf_a.config),
                                           {conf_a.out_dir, conf_a.seed, conf_a.trials});
        } else if (cam->parsed()) {
            mmtrack::drive_camera_sweep(mmtrack::load_scenario(cam_a.config),
                                        {cam_a.out_dir, cam_a.seed, cam_a.trials});
        } else if (tau->parsed()) {
            mmtrack::drive_tau_sweep(mmtrack::load_scenario(tau_a.config),
                                     {tau_a.out_dir, tau_a.seed, tau_a.trials});
        } else if (ilp->parsed()) {
            mmtrack::drive_emit_ilp(mmtrack::load_scenario(ilp_a.config),
                                    {ilp_a.out_dir, ilp_a.seed, ilp_a.trials});
        }
    } catch (const std::exception& e) {
        std::cerr << "FATAL: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
