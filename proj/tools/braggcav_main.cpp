// braggcav: classical optics of a Fabry-Perot cavity dressed by an
// intracavity atomic Bragg stack. One subcommand per output table; results
// go to --out or standard output. Exit codes: 0 success, 2 configuration
// error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "braggcav/commands.hpp"

namespace {

int write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return 0;
    }
    std::ofstream out{out_path, std::ios::binary};
    if (!out) {
        std::cerr << "braggcav: cannot open output file '" << out_path << "'\n";
        return 3;
    }
    out << content;
    return 0;
}

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string mode_override;
    std::optional<int> n_u_override;
    std::optional<int> n_chi_override;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file (key = value)")
            ->required();
        cmd->add_option("--out", out_path, "output file (default: stdout)");
        cmd->add_option("--mode", mode_override,
                        "determinant mode: full or uniform-gas")
            ->check(CLI::IsMember({"full", "uniform-gas"}));
        cmd->add_option("--nu", n_u_override, "frequency grid override");
        cmd->add_option("--nchi", n_chi_override, "atom-phase grid override");
    }

    braggcav::RunConfig load() const {
        braggcav::RunConfig rc = braggcav::load_config(config_path);
        if (mode_override == "full") rc.mode = braggcav::DetMode::full;
        if (mode_override == "uniform-gas") rc.mode = braggcav::DetMode::uniform_gas;
        if (n_u_override) {
            if (*n_u_override < 2) throw braggcav::ConfigError("--nu must be >= 2");
            rc.n_u = *n_u_override;
        }
        if (n_chi_override) {
            if (*n_chi_override < 2) throw braggcav::ConfigError("--nchi must be >= 2");
            rc.n_chi = *n_chi_override;
            rc.n_chi_track = *n_chi_override;
        }
        return rc;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fabry-Perot cavity with an intracavity atomic Bragg mirror"};
    app.require_subcommand(1);

    CommonOpts coeffs_opts, spacing_opts, scan_opts, inset_opts, env_opts, res_opts;
    double env_u = 0.0;
    int env_branch = 0;

    coeffs_opts.attach(app.add_subcommand("coeffs", "stack scattering coefficients"));
    spacing_opts.attach(app.add_subcommand("spacing", "self-consistent lattice period"));
    scan_opts.attach(app.add_subcommand("det-scan", "log10(1/|D|^2) map over (u, z_a)"));
    inset_opts.attach(
        app.add_subcommand("linewidth-inset", "linewidth vs atom position"));
    CLI::App* env_cmd =
        app.add_subcommand("envelope", "field envelope at a resonant atom position");
    env_opts.attach(env_cmd);
    env_cmd->add_option("--u", env_u, "drive detuning in FSR units")->required();
    env_cmd->add_option("--branch", env_branch,
                        "crossing selector, 0-based in order of chi");
    res_opts.attach(
        app.add_subcommand("resonances", "determinant zeros at the configured chi"));

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("coeffs")) {
            return write_output(braggcav::cmd_coeffs(coeffs_opts.load()),
                                coeffs_opts.out_path);
        }
        if (app.got_subcommand("spacing")) {
            return write_output(braggcav::cmd_spacing(spacing_opts.load()),
                                spacing_opts.out_path);
        }
        if (app.got_subcommand("det-scan")) {
            return write_output(braggcav::cmd_det_scan(scan_opts.load()),
                                scan_opts.out_path);
        }
        if (app.got_subcommand("linewidth-inset")) {
            return write_output(braggcav::cmd_linewidth_inset(inset_opts.load()),
                                inset_opts.out_path);
        }
        if (app.got_subcommand("envelope")) {
            return write_output(
                braggcav::cmd_envelope(env_opts.load(), env_u, env_branch),
                env_opts.out_path);
        }
        if (app.got_subcommand("resonances")) {
            return write_output(braggcav::cmd_resonances(res_opts.load()),
                                res_opts.out_path);
        }
    } catch (const braggcav::ConfigError& e) {
        std::cerr << "braggcav: config error: " << e.what() << "\n";
        return 2;
    } catch (const braggcav::NumericalError& e) {
        std::cerr << "braggcav: numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "braggcav: error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
