#include "qkdwdm/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qkdwdm/constants.hpp"
#include "qkdwdm/pulse.hpp"
#include "qkdwdm/textio.hpp"

namespace qkdwdm {

namespace {

double resolve_f_rep_ghz(const LinkScenario& s, double length_km) {
    if (s.frep.mode == FrepConfig::Mode::Fixed) return s.frep.value_ghz;
    const BitrateLimit limit =
        max_quantum_bitrate(s.fiber.dispersion_ps_nm_km, s.lambda_nm, length_km,
                            s.frep.f_err_target, s.pulse.tau_fraction, s.pulse.gate_fraction);
    if (!limit.bounded) return s.frep.cap_ghz;
    return std::min(s.frep.cap_ghz, limit.f_max_ghz);
}

}  // namespace

SweepRecord evaluate_point(const LinkScenario& s, double length_km, double mu_override) {
    SweepRecord rec;
    rec.length_km = length_km;
    rec.f_rep_ghz = resolve_f_rep_ghz(s, length_km);

    const double period_ps = 1e3 / rec.f_rep_ghz;
    PulseSpec pulse;
    pulse.tau_fwhm0_ps = s.pulse.tau_fraction * period_ps;
    pulse.chirp = s.pulse.chirp;
    pulse.gate_ps = s.pulse.gate_fraction * period_ps;
    pulse.period_ps = period_ps;
    const double det_gate_ns = s.detector.gate_ns.value_or(pulse.gate_ps * 1e-3);

    const double beta2 = beta2_from_dispersion(s.fiber.dispersion_ps_nm_km, s.lambda_nm);
    const PropagatedPulse prop = broadened_fwhm(pulse, beta2, length_km);
    rec.t_isi = gate_capture(prop.tau_fwhm_ps, pulse.gate_ps);
    const double f_err = isi_error_fraction(prop.tau_fwhm_ps, period_ps, pulse.gate_ps);

    const double t_f = transmission(s.fiber.alpha_db_per_km, length_km);
    const double t_il = db_to_fraction(s.classical.il_db);
    const double t_il_fbg = db_to_fraction(s.classical.il_fbg_db);
    const double t_b = db_to_fraction(s.t_b_db);
    const WavelengthContext wl = WavelengthContext::at(s.lambda_nm);

    rec.p_dc_total = s.detector.n_detectors * s.detector.dark_rate_per_ns * det_gate_ns;
    NoiseBudget budget;
    if (s.classical.enabled && (s.classical.n_forward > 0 || s.classical.n_backward > 0)) {
        const double rx_dbm = s.classical.resolved_rx_dbm();
        const auto [p_out_dbm, p_in_dbm] = launch_and_output_power(
            rx_dbm, s.classical.il_db, s.classical.il_fbg_db, s.fiber.alpha_db_per_km, length_km);
        (void)p_in_dbm;
        const double p_out_w = std::pow(10.0, p_out_dbm / 10.0) * 1e-3;
        const RamanPowers ram =
            raman_powers(s.classical.n_forward, s.classical.n_backward, p_out_w,
                         alpha_natural_per_km(s.fiber.alpha_db_per_km), length_km,
                         s.resolved_rho(), s.noise.delta_lambda_nm);
        budget.raman_power_f_w = ram.forward_w;
        budget.raman_power_b_w = ram.backward_w;
        budget.p_ram_f =
            raman_detection_prob(ram.forward_w, wl.photon_energy_j, s.detector.eta, det_gate_ns);
        budget.p_ram_b =
            raman_detection_prob(ram.backward_w, wl.photon_energy_j, s.detector.eta, det_gate_ns);
        if (s.noise.lcxt_enabled)
            budget.p_lcxt = lcxt_detection_rate_per_ns(rx_dbm, wl.photon_energy_j, s.detector.eta,
                                                       s.noise.quantum_isolation_db) *
                            det_gate_ns;
    }
    budget.p_ram = budget.p_ram_f + budget.p_ram_b;
    rec.p_ram_f = budget.p_ram_f;
    rec.p_ram_b = budget.p_ram_b;
    rec.p_lcxt = budget.p_lcxt;
    const double p_ram = budget.p_ram;

    if (mu_override >= 0.0) {
        rec.mu = mu_override;
    } else {
        switch (s.protocol.mu_policy) {
            case MuPolicy::Fixed: rec.mu = s.protocol.mu_fixed; break;
            case MuPolicy::Analytic: rec.mu = analytic_mu(s.protocol.protocol, t_f); break;
            case MuPolicy::Optimized: {
                const double mu_max = s.protocol.protocol == Protocol::Bb84 ? t_f : 1.0;
                const MuOptimum opt = optimize_mu(
                    [&](double mu) { return evaluate_point(s, length_km, mu).r_sec_bps; }, mu_max);
                rec.mu = opt.feasible ? opt.mu : mu_max;
                break;
            }
        }
    }

    rec.p_mu = signal_prob(rec.mu, t_f, t_il, t_il_fbg, t_b, rec.t_isi, s.detector.eta);
    rec.p_isi = isi_detection_prob(f_err, rec.mu, t_f, t_il, t_il_fbg, t_b, s.detector.eta);
    // After-pulsing follows the detected data stream; each click feeds half a
    // signal share into the correlated-click budget.
    rec.p_ap = afterpulse_prob(s.detector.afterpulse_frac, 0.5 * rec.p_mu, rec.p_dc_total, p_ram,
                               rec.p_lcxt, rec.p_isi);

    const double noise_sum = rec.p_dc_total + rec.p_ap + p_ram + rec.p_lcxt + rec.p_isi;
    const double p_click = rec.p_mu + noise_sum;
    const double f_rep_hz = rec.f_rep_ghz * 1e9;
    const double dead = dead_time_factor(s.detector.dead_time_s, f_rep_hz, p_click);
    const double duty = s.duty.mode == DutyConfig::Mode::Constant
                            ? s.duty.constant
                            : duty_factor(s.duty.l_a_km, length_km);

    const double beta = protocol_beta(s.protocol.protocol, s.protocol.visibility);
    const Rates r = rates(rec.p_mu, noise_sum, f_rep_hz, beta, duty, dead,
                          sifted_fraction(s.protocol.protocol));
    rec.r_raw_bps = r.r_raw_bps;
    rec.r_sift_bps = r.r_sift_bps;

    rec.qber = qber(s.protocol.protocol, beta, s.protocol.visibility, rec.p_mu, noise_sum);
    rec.i_ab = mutual_info_ab(rec.qber, s.protocol.eta_ec);
    const double p_dc_per_gate = s.detector.dark_rate_per_ns * det_gate_ns;
    try {
        rec.i_ae = eve_info(s.protocol.protocol, rec.mu, t_f, s.protocol.visibility, s.detector.eta,
                            p_dc_per_gate, s.detector.n_detectors);
    } catch (const std::domain_error&) {
        rec.i_ae = 1.0;  // outside the security bound's validity; no key
    }
    rec.r_sec_bps = secret_key_rate(rec.r_sift_bps, rec.i_ab, rec.i_ae);
    return rec;
}

std::vector<double> sweep_grid(const SweepGrid& grid) {
    std::vector<double> out;
    const int n = static_cast<int>(std::floor((grid.l_max_km - grid.l_min_km) / grid.step_km + 1e-9));
    out.reserve(n + 1);
    for (int i = 0; i <= n; ++i) out.push_back(grid.l_min_km + i * grid.step_km);
    return out;
}

namespace {

int worker_count(std::size_t jobs) {
    if (const char* env = std::getenv("QKDWDM_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return std::min<std::size_t>(n, jobs);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min<std::size_t>(hw == 0 ? 1 : hw, jobs));
}

}  // namespace

std::vector<SweepRecord> run_sweep(const LinkScenario& s) {
    validate(s);
    const std::vector<double> grid = sweep_grid(s.sweep);
    std::vector<SweepRecord> out(grid.size());
    const int workers = worker_count(grid.size());

    auto work = [&](int stripe) -> std::exception_ptr {
        for (std::size_t i = stripe; i < grid.size(); i += workers) {
            try {
                out[i] = evaluate_point(s, grid[i]);
            } catch (const std::exception& e) {
                return std::make_exception_ptr(std::runtime_error(
                    "sweep failed at L=" + shortest_double(grid[i]) + " km: " + e.what()));
            }
        }
        return nullptr;
    };

    if (workers <= 1) {
        if (auto err = work(0)) std::rethrow_exception(err);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] { errors[w] = work(w); });
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    return out;
}

const char* const kSweepCsvHeader =
    "length_km,f_rep_ghz,mu,p_mu,p_dc_total,p_ap,p_ram_f,p_ram_b,p_lcxt,p_isi,t_isi,qber,"
    "r_raw_bps,r_sift_bps,r_sec_bps,i_ab,i_ae";

namespace {

std::vector<double> record_fields(const SweepRecord& r) {
    return {r.length_km, r.f_rep_ghz, r.mu,     r.p_mu, r.p_dc_total, r.p_ap,
            r.p_ram_f,   r.p_ram_b,   r.p_lcxt, r.p_isi, r.t_isi,      r.qber,
            r.r_raw_bps, r.r_sift_bps, r.r_sec_bps, r.i_ab, r.i_ae};
}

SweepRecord record_from_fields(const std::vector<double>& f) {
    SweepRecord r;
    r.length_km = f[0];
    r.f_rep_ghz = f[1];
    r.mu = f[2];
    r.p_mu = f[3];
    r.p_dc_total = f[4];
    r.p_ap = f[5];
    r.p_ram_f = f[6];
    r.p_ram_b = f[7];
    r.p_lcxt = f[8];
    r.p_isi = f[9];
    r.t_isi = f[10];
    r.qber = f[11];
    r.r_raw_bps = f[12];
    r.r_sift_bps = f[13];
    r.r_sec_bps = f[14];
    r.i_ab = f[15];
    r.i_ae = f[16];
    return r;
}

}  // namespace

std::string to_csv(const std::vector<SweepRecord>& records) {
    std::string out(kSweepCsvHeader);
    out += '\n';
    for (const auto& rec : records) {
        bool first = true;
        for (double v : record_fields(rec)) {
            if (!first) out += ',';
            out += shortest_double(v);
            first = false;
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const std::vector<SweepRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << to_csv(records);
}

std::vector<SweepRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
    if (line != kSweepCsvHeader) throw std::runtime_error("csv: unexpected header '" + line + "'");
    std::vector<SweepRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> fields;
        std::stringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) fields.push_back(parse_double(cell));
        if (fields.size() != 17)
            throw std::runtime_error("csv: expected 17 fields, got " + std::to_string(fields.size()));
        out.push_back(record_from_fields(fields));
    }
    return out;
}

std::vector<SweepRecord> read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    return read_csv(in);
}

std::string plot_script(const std::vector<SweepRecord>& records, const Thresholds& thresholds,
                        const std::string& title) {
    std::ostringstream py;
    py << "#!/usr/bin/env python3\n"
       << "# Generated by qkdwdm; renders the sweep the way the companion plots are laid out.\n"
       << "import matplotlib.pyplot as plt\n\n";
    auto emit_list = [&](const char* name, auto getter) {
        py << name << " = [";
        for (std::size_t i = 0; i < records.size(); ++i)
            py << (i ? ", " : "") << shortest_double(getter(records[i]));
        py << "]\n";
    };
    emit_list("length_km", [](const SweepRecord& r) { return r.length_km; });
    emit_list("r_sec_bps", [](const SweepRecord& r) { return r.r_sec_bps; });
    emit_list("qber", [](const SweepRecord& r) { return r.qber; });
    py << "\nfig, ax_rate = plt.subplots(figsize=(7.5, 5))\n"
       << "ax_rate.semilogy(length_km, [max(v, 1e-3) for v in r_sec_bps], 'b-', label='secret key rate')\n"
       << "ax_rate.axhline(" << shortest_double(thresholds.rsec_bps)
       << ", color='b', ls=':', label='rate threshold')\n"
       << "ax_rate.set_xlabel('link distance [km]')\n"
       << "ax_rate.set_ylabel('secret key rate [b/s]')\n"
       << "ax_qber = ax_rate.twinx()\n"
       << "ax_qber.plot(length_km, [100 * v for v in qber], 'r--', label='QBER')\n"
       << "ax_qber.axhline(" << shortest_double(100.0 * thresholds.qber)
       << ", color='r', ls=':', label='QBER threshold')\n"
       << "ax_qber.set_ylabel('QBER [%]')\n"
       << "ax_rate.set_title('" << title << "')\n"
       << "h1, l1 = ax_rate.get_legend_handles_labels()\n"
       << "h2, l2 = ax_qber.get_legend_handles_labels()\n"
       << "ax_rate.legend(h1 + h2, l1 + l2, loc='lower left')\n"
       << "fig.tight_layout()\n"
       << "plt.show()\n";
    return py.str();
}

void emit_plot_script(const std::vector<SweepRecord>& records, const Thresholds& thresholds,
                      const std::string& title, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << plot_script(records, thresholds, title);
}

ReachRow report_reach(const LinkScenario& s) {
    validate(s);
    ReachRow row;
    row.scenario_name = s.name;
    row.fiber_label = s.fiber.label;
    if (s.classical.enabled && (s.classical.n_forward > 0 || s.classical.n_backward > 0)) {
        std::ostringstream label;
        label << s.classical.n_forward << "+" << s.classical.n_backward << " "
              << to_string(s.classical.format) << " @ " << shortest_double(s.classical.baud_gbaud)
              << " Gbaud";
        if (s.classical.format != ModulationFormat::PmQpsk &&
            s.classical.format != ModulationFormat::Ook) {
            const double eq =
                capacity_equivalent_qpsk_channels(s.classical.format, s.classical.n_forward);
            label << " (capacity of " << shortest_double(eq) << "+" << shortest_double(eq)
                  << " pm-qpsk)";
        }
        row.classical_label = label.str();
    } else {
        row.classical_label = "none";
    }

    const ReachResult res = link_reach(
        [&](double l) {
            const SweepRecord rec = evaluate_point(s, l);
            return std::make_pair(rec.qber, rec.r_sec_bps);
        },
        s.thresholds.qber, s.thresholds.rsec_bps, s.sweep.l_min_km, s.sweep.l_max_km);
    row.reach_km = res.reach_km;
    row.feasible = res.feasible;
    row.limited_by = res.limited_by;
    return row;
}

std::string reach_table(const std::vector<ReachRow>& rows) {
    auto pad = [](std::string s, std::size_t width) {
        s += "  ";
        while (s.size() < width) s += ' ';
        return s;
    };
    std::ostringstream out;
    out << pad("scenario", 33) << pad("fiber", 12) << pad("classical plan", 46)
        << pad("reach_km", 10) << "limited_by\n";
    for (const auto& r : rows) {
        std::string reach = "none";
        if (r.feasible) {
            std::ostringstream v;
            v.precision(1);
            v << std::fixed << r.reach_km;
            reach = v.str();
        }
        out << pad(r.scenario_name, 33) << pad(r.fiber_label, 12) << pad(r.classical_label, 46)
            << pad(reach, 10) << r.limited_by << '\n';
    }
    return out.str();
}

}  // namespace qkdwdm
