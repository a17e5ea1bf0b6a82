#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "oideg/harness.hpp"

namespace {

void add_common(CLI::App* cmd, oideg::ExperimentConfig& cfg, std::string& out_dir,
                std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config file (flags override it)");
    cmd->add_option("-n,--n", cfg.n, "hidden string length");
    cmd->add_option("--alpha", cfg.alpha, "strings per equality test (0 = default)");
    cmd->add_option("-t,--copies", cfg.t, "prepackaged copies (0 = default)");
    cmd->add_option("-c,--c", cfg.c, "search budget constant");
    cmd->add_option("-d,--d", cfg.d, "subset size bound (-1 = formula default)");
    cmd->add_option("--eps", cfg.epsilon, "approximation error, e.g. 1/3");
    cmd->add_option("--trials", cfg.trials, "Monte Carlo trials");
    cmd->add_option("--r-samples", cfg.r_samples, "independent base samples");
    cmd->add_option("--seed", cfg.seed, "master seed");
    cmd->add_option("--fn", cfg.fn, "target function / algorithm selector");
    cmd->add_option("--mode", cfg.mode, "boundedness mode: full | domain");
    cmd->add_option("--backend", cfg.backend, "LP backend: rational | float | auto");
    cmd->add_option("--t-values", cfg.t_values, "truncation points for classical runs");
    cmd->add_option("--out", out_dir, "directory for report.json + data.csv");
    cmd->add_flag("!--no-timing", cfg.include_timing, "omit wall time from the report");
    cmd->add_option("--workers", cfg.workers, "worker threads (0 = OIDEG_WORKERS or 1)");
}

int run_kind(oideg::ExperimentConfig cfg, const std::string& out_dir,
             const std::string& config_path) {
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot open config " << config_path << "\n";
            return 2;
        }
        nlohmann::json j;
        in >> j;
        std::string kind = cfg.kind;
        auto file_cfg = oideg::ExperimentConfig::from_json(j);
        file_cfg.kind = kind;
        cfg = file_cfg;
    }
    oideg::ExperimentReport rep = oideg::run(cfg);
    std::cout << rep.to_json().dump(2) << "\n";
    if (!out_dir.empty()) rep.write(out_dir);
    if (cfg.include_timing) std::cerr << "wall_ms " << rep.wall_ms << "\n";
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oideg: oracle-identification degree experiments"};
    app.require_subcommand(1);

    const std::vector<std::string> kinds = {"gt-os",     "gt-ospp",   "ahs", "parity-hardness",
                                            "adeg",      "classical", "noisy-search"};
    struct SubState {
        oideg::ExperimentConfig cfg;
        std::string out_dir;
        std::string config_path;
    };
    std::vector<SubState> states(kinds.size());
    for (size_t k = 0; k < kinds.size(); ++k) {
        auto* cmd = app.add_subcommand(kinds[k]);
        states[k].cfg.kind = kinds[k];
        add_common(cmd, states[k].cfg, states[k].out_dir, states[k].config_path);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        for (size_t k = 0; k < kinds.size(); ++k)
            if (app.got_subcommand(kinds[k]))
                return run_kind(states[k].cfg, states[k].out_dir, states[k].config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
