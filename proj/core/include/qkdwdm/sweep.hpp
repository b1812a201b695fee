#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qkdwdm/scenario.hpp"

namespace qkdwdm {

/// One evaluated link configuration at one distance.
struct SweepRecord {
    double length_km = 0.0;
    double f_rep_ghz = 0.0;
    double mu = 0.0;
    double p_mu = 0.0;
    double p_dc_total = 0.0;
    double p_ap = 0.0;
    double p_ram_f = 0.0;
    double p_ram_b = 0.0;
    double p_lcxt = 0.0;
    double p_isi = 0.0;
    double t_isi = 0.0;
    double qber = 0.0;
    double r_raw_bps = 0.0;
    double r_sift_bps = 0.0;
    double r_sec_bps = 0.0;
    double i_ab = 0.0;
    double i_ae = 0.0;
};

/// Evaluates the scenario at one distance. When mu_override is non-negative
/// it replaces the scenario's mu policy (used by the optimizer).
SweepRecord evaluate_point(const LinkScenario& scenario, double length_km,
                           double mu_override = -1.0);

/// Grid distances of the scenario's sweep section.
std::vector<double> sweep_grid(const SweepGrid& grid);

/// One record per grid point, in ascending distance. Evaluation may fan out
/// over threads (QKDWDM_WORKERS overrides the worker count); the result is
/// identical for any worker count.
std::vector<SweepRecord> run_sweep(const LinkScenario& scenario);

/// Fixed CSV header matching the SweepRecord field names.
extern const char* const kSweepCsvHeader;

std::string to_csv(const std::vector<SweepRecord>& records);
void emit_csv(const std::vector<SweepRecord>& records, const std::string& path);
std::vector<SweepRecord> read_csv(std::istream& in);
std::vector<SweepRecord> read_csv_file(const std::string& path);

/// Writes a standalone plotting script (matplotlib) rendering r_sec on a log
/// axis and QBER vs distance, with the scenario's threshold lines.
std::string plot_script(const std::vector<SweepRecord>& records, const Thresholds& thresholds,
                        const std::string& title);
void emit_plot_script(const std::vector<SweepRecord>& records, const Thresholds& thresholds,
                      const std::string& title, const std::string& path);

struct ReachRow {
    std::string scenario_name;
    std::string fiber_label;
    std::string classical_label;
    double reach_km = 0.0;
    bool feasible = false;
    std::string limited_by;
};

/// Reach of one scenario at its configured thresholds, searched over the
/// sweep window of the scenario.
ReachRow report_reach(const LinkScenario& scenario);

std::string reach_table(const std::vector<ReachRow>& rows);

}  // namespace qkdwdm
