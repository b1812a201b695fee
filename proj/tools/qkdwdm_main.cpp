// qkdwdm command line front end.
//
// Verbs:
//   validate    parse a scenario file, echo the fully resolved configuration
//   sweep       evaluate a scenario across its distance grid (csv or table)
//   reach       maximum distance satisfying the scenario thresholds
//   fmax        dispersion-limited maximum quantum bit rate per fiber
//   sensitivity coherent receiver sensitivity table
//
// Exit codes: 0 success, 1 validation error, 2 computation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qkdwdm/fiber.hpp"
#include "qkdwdm/modulation.hpp"
#include "qkdwdm/pulse.hpp"
#include "qkdwdm/scenario.hpp"
#include "qkdwdm/sweep.hpp"
#include "qkdwdm/textio.hpp"

namespace {

using namespace qkdwdm;

int run_validate(const std::string& path) {
    const LinkScenario s = load_scenario(path);
    std::cout << "# resolved scenario (" << path << ")\n" << serialize_scenario(s);
    const double dcf = dcf_length_km(s.sweep.l_max_km, s.fiber.dispersion_ps_nm_km);
    std::cout << "\n# accumulated dispersion at l_max would need " << shortest_double(dcf)
              << " km of -100 ps/nm/km compensating fiber\n";
    return 0;
}

void print_record_table(const std::vector<SweepRecord>& records) {
    std::printf("%9s %9s %8s %11s %11s %11s %11s %8s %12s %12s\n", "L_km", "f_ghz", "mu", "p_mu",
                "p_dc", "p_ram", "p_isi", "qber", "r_sift_bps", "r_sec_bps");
    for (const auto& r : records)
        std::printf("%9.2f %9.4f %8.4f %11.4e %11.4e %11.4e %11.4e %7.3f%% %12.4e %12.4e\n",
                    r.length_km, r.f_rep_ghz, r.mu, r.p_mu, r.p_dc_total, r.p_ram_f + r.p_ram_b,
                    r.p_isi, 100.0 * r.qber, r.r_sift_bps, r.r_sec_bps);
}

int run_sweep_verb(const std::string& path, const std::string& out, const std::string& format,
                   const std::string& plot_path) {
    const LinkScenario s = load_scenario(path);
    const std::vector<SweepRecord> records = run_sweep(s);
    if (format == "table") {
        std::cout << "# scenario: " << s.name << " (fiber " << s.fiber.label << ")\n";
        print_record_table(records);
    } else if (!out.empty()) {
        emit_csv(records, out);
        std::cout << records.size() << " records -> " << out << "\n";
    } else {
        std::cout << to_csv(records);
    }
    if (!plot_path.empty()) {
        emit_plot_script(records, s.thresholds, s.name, plot_path);
        std::cout << "plot script -> " << plot_path << "\n";
    }
    return 0;
}

int run_reach(const std::vector<std::string>& paths, const std::string& out) {
    std::vector<ReachRow> rows;
    rows.reserve(paths.size());
    for (const auto& p : paths) rows.push_back(report_reach(load_scenario(p)));
    const std::string table = reach_table(rows);
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + out + "'");
        f << table;
    }
    std::cout << table;
    return 0;
}

int run_fmax(double length_km, double f_err, double tau_fraction, double gate_fraction,
             std::vector<double> extra_d) {
    std::printf("maximum quantum bit rate at L = %.1f km (pulse %.3fT, gate %.3fT, leakage %.2g)\n",
                length_km, tau_fraction, gate_fraction, f_err);
    std::printf("gate capture at that leakage: %.3f\n\n",
                gate_capture_at_isi_target(f_err, tau_fraction, gate_fraction));
    std::printf("%-12s %14s %10s\n", "fiber", "D [ps/nm/km]", "f_max");
    auto row = [&](const std::string& label, double d) {
        const BitrateLimit lim =
            max_quantum_bitrate(d, 1550.0, length_km, f_err, tau_fraction, gate_fraction);
        if (lim.bounded)
            std::printf("%-12s %14.2f %7.2f GHz\n", label.c_str(), d, lim.f_max_ghz);
        else
            std::printf("%-12s %14.2f %10s\n", label.c_str(), d, "unbounded");
    };
    row("leaf", 4.25);
    row("ex2000", 20.35);
    row("ldf", 0.1);
    row("smf28e", 17.0);
    row("low-disp #1", 0.8);
    row("low-disp #2", 0.2);
    for (double d : extra_d) row("custom", d);
    return 0;
}

int run_sensitivity(double baud, const std::string& penalty_name) {
    const PenaltyModel penalty = penalty_name == "ideal" ? kIdealPenalty : kMeasuredPenalty;
    std::printf("receiver sensitivity [dBm] at %.1f Gbaud, %s penalty model\n", baud,
                penalty_name.c_str());
    std::printf("%-12s %10s %10s\n", "format", "HD", "SD");
    for (ModulationFormat fmt : {ModulationFormat::PmBpsk, ModulationFormat::PmQpsk,
                                 ModulationFormat::PmSp8Qam, ModulationFormat::Pm16Qam}) {
        const double hd = receiver_sensitivity_dbm(fmt, FecThreshold::hd(), penalty, baud);
        const double sd = receiver_sensitivity_dbm(fmt, FecThreshold::sd(), penalty, baud);
        std::printf("%-12s %10.2f %10.2f\n", to_string(fmt), hd, sd);
    }
    std::printf("%-12s %10s %10.2f   (constant, 1 Gbaud direct detection)\n", "ook", "-",
                kOokRxSensitivityDbm);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qkdwdm - quantum key distribution over shared classical WDM fiber"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, format = "csv", plot_path, penalty = "measured";
    std::vector<std::string> scenario_paths;
    double length_km = 300.0, f_err = 0.001, tau_fraction = kDefaultTauFraction,
           gate_fraction = kDefaultGateFraction, baud = 10.0;
    std::vector<double> extra_d;

    auto* validate_cmd = app.add_subcommand("validate", "check a scenario file");
    validate_cmd->add_option("--scenario", scenario_path, "scenario file")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a scenario across distances");
    sweep_cmd->add_option("--scenario", scenario_path, "scenario file")->required();
    sweep_cmd->add_option("--out", out_path, "output csv path");
    sweep_cmd->add_option("--format", format, "csv|table")->check(CLI::IsMember({"csv", "table"}));
    sweep_cmd->add_option("--plot-script", plot_path, "write a matplotlib script here");

    auto* reach_cmd = app.add_subcommand("reach", "reach at the configured thresholds");
    reach_cmd->add_option("--scenario", scenario_paths, "scenario file (repeatable)")->required();
    reach_cmd->add_option("--out", out_path, "also write the table here");

    auto* fmax_cmd = app.add_subcommand("fmax", "dispersion-limited quantum bit rate");
    fmax_cmd->add_option("--distance-km", length_km, "link length");
    fmax_cmd->add_option("--f-err", f_err, "neighbor-gate leakage target");
    fmax_cmd->add_option("--tau-fraction", tau_fraction, "pulse FWHM / bit period");
    fmax_cmd->add_option("--gate-fraction", gate_fraction, "gate / bit period");
    fmax_cmd->add_option("--dispersion", extra_d, "additional D values to evaluate");

    auto* sens_cmd = app.add_subcommand("sensitivity", "classical receiver sensitivity table");
    sens_cmd->add_option("--baud", baud, "symbol rate in Gbaud");
    sens_cmd->add_option("--penalty", penalty, "measured|ideal")
        ->check(CLI::IsMember({"measured", "ideal"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (validate_cmd->parsed()) return run_validate(scenario_path);
        if (sweep_cmd->parsed()) return run_sweep_verb(scenario_path, out_path, format, plot_path);
        if (reach_cmd->parsed()) return run_reach(scenario_paths, out_path);
        if (fmax_cmd->parsed()) return run_fmax(length_km, f_err, tau_fraction, gate_fraction, extra_d);
        if (sens_cmd->parsed()) return run_sensitivity(baud, penalty);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
