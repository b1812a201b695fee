// End-to-end acceptance run: checks the model against the published
// reference figures for the systems it reproduces, at fixed tolerances.
// Prints one line per check and exits nonzero when any check fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qkdwdm/fiber.hpp"
#include "qkdwdm/modulation.hpp"
#include "qkdwdm/noise.hpp"
#include "qkdwdm/pulse.hpp"
#include "qkdwdm/qkd.hpp"
#include "qkdwdm/scenario.hpp"
#include "qkdwdm/sweep.hpp"

#ifndef QKDWDM_PRESET_DIR
#define QKDWDM_PRESET_DIR "presets"
#endif

using namespace qkdwdm;

namespace {

int g_failed = 0;
int g_total = 0;

void report(const std::string& label, bool ok, const std::string& detail) {
    ++g_total;
    if (!ok) ++g_failed;
    std::printf("%s  %-34s %s\n", ok ? "PASS" : "FAIL", label.c_str(), detail.c_str());
}

void check_near(const std::string& label, double measured, double target, double tol_abs,
                const std::string& unit) {
    char detail[160];
    std::snprintf(detail, sizeof(detail), "measured %.6g %s, expected %.6g +- %.3g %s",
                  measured, unit.c_str(), target, tol_abs, unit.c_str());
    report(label, std::fabs(measured - target) <= tol_abs, detail);
}

std::string preset(const std::string& name) {
    return std::string(QKDWDM_PRESET_DIR) + "/" + name + ".scn";
}

void criterion_1_table4() {
    const LinkScenario s = load_scenario(preset("example1_dynes_1gbps"));
    const SweepRecord r = evaluate_point(s, 45.0);
    check_near("1a 1G link QBER @45 km [%]", 100.0 * r.qber, 0.54, 0.10, "%");
    check_near("1b 1G link R_sec @45 km [kb/s]", r.r_sec_bps / 1e3, 282.0, 28.2, "kb/s");
}

void criterion_2_table6() {
    const LinkScenario s = load_scenario(preset("example2_takesue_10gbps"));
    const SweepRecord a = evaluate_point(s, 105.0);
    check_near("2a 10G link QBER @105 km [%]", 100.0 * a.qber, 0.9, 0.2, "%");
    check_near("2b 10G link R_sec @105 km [kb/s]", a.r_sec_bps / 1e3, 14.0, 2.1, "kb/s");
    const SweepRecord b = evaluate_point(s, 200.0);
    check_near("2c 10G link QBER @200 km [%]", 100.0 * b.qber, 8.4, 0.5, "%");
    check_near("2d 10G link R_sec @200 km [b/s]", b.r_sec_bps, 37.0, 7.4, "b/s");
}

void criterion_3_bitrate_table() {
    check_near("3a f_max(D=4.25, 300 km) [GHz]",
               max_quantum_bitrate(4.25, 1550.0, 300.0, 0.001).f_max_ghz, 4.31, 0.02 * 4.31, "GHz");
    check_near("3b f_max(D=20.35, 300 km) [GHz]",
               max_quantum_bitrate(20.35, 1550.0, 300.0, 0.001).f_max_ghz, 1.97, 0.02 * 1.97, "GHz");
    check_near("3c f_max(D=0.8, 300 km) [GHz]",
               max_quantum_bitrate(0.8, 1550.0, 300.0, 0.001).f_max_ghz, 10.0, 0.2, "GHz");
    check_near("3d f_max(D=0.2, 300 km) [GHz]",
               max_quantum_bitrate(0.2, 1550.0, 300.0, 0.001).f_max_ghz, 20.0, 0.4, "GHz");

    const double d_grid[5] = {0.2, 1.0, 4.25, 10.0, 20.35};
    const double l_grid[5] = {50.0, 100.0, 200.0, 300.0, 400.0};
    double lo = 1e300, hi = -1e300;
    for (double d : d_grid)
        for (double l : l_grid) {
            const double inv =
                max_quantum_bitrate(d, 1550.0, l, 0.001).f_max_ghz * std::sqrt(d * l);
            lo = std::min(lo, inv);
            hi = std::max(hi, inv);
        }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "f*sqrt(DL) spans [%.6g, %.6g], spread %.3g%%", lo, hi,
                  100.0 * (hi - lo) / lo);
    report("3e f_max*sqrt(DL) constant to 0.5%", (hi - lo) / lo <= 0.005, detail);
}

void criterion_4_gate_capture() {
    const double targets[4] = {0.1, 0.01, 0.001, 0.0001};
    const double expected[4] = {0.331, 0.562, 0.697, 0.785};
    for (int i = 0; i < 4; ++i) {
        char label[80];
        std::snprintf(label, sizeof(label), "4%c t_ISI at leakage %g", 'a' + i, targets[i]);
        check_near(label, gate_capture_at_isi_target(targets[i]), expected[i], 0.002, "");
    }
}

void criterion_5_sensitivity() {
    const auto sd = FecThreshold::sd();
    check_near("5a PM-BPSK SD sensitivity [dBm]",
               receiver_sensitivity_dbm(ModulationFormat::PmBpsk, sd, kMeasuredPenalty, 10.0),
               -50.0, 0.5, "dBm");
    check_near("5b PM-QPSK SD sensitivity [dBm]",
               receiver_sensitivity_dbm(ModulationFormat::PmQpsk, sd, kMeasuredPenalty, 10.0),
               -47.0, 0.5, "dBm");
    check_near("5c PM-16QAM SD sensitivity [dBm]",
               receiver_sensitivity_dbm(ModulationFormat::Pm16Qam, sd, kMeasuredPenalty, 10.0),
               -38.0, 0.5, "dBm");
    const double shift =
        receiver_sensitivity_dbm(ModulationFormat::PmQpsk, sd, kMeasuredPenalty, 32.0) -
        receiver_sensitivity_dbm(ModulationFormat::PmQpsk, sd, kMeasuredPenalty, 10.0);
    check_near("5d 32 Gbaud sensitivity shift [dB]", shift, 5.05, 0.1, "dB");
}

void criterion_6_reach_table() {
    const char* names[5] = {"table7_none", "table7_bpsk2", "table7_qpsk2", "table7_16qam2",
                            "table7_ook2"};
    const double expected[5] = {225.0, 155.0, 148.0, 135.0, 85.0};
    double reach[5];
    for (int i = 0; i < 5; ++i) {
        const ReachRow row = report_reach(load_scenario(preset(names[i])));
        reach[i] = row.feasible ? row.reach_km : 0.0;
        char label[80];
        std::snprintf(label, sizeof(label), "6%c reach %s [km]", 'a' + i, names[i]);
        check_near(label, reach[i], expected[i], 5.0, "km");
    }
    const bool ordered = reach[0] > reach[1] && reach[1] > reach[2] && reach[2] > reach[3] &&
                         reach[3] > reach[4];
    char detail[160];
    std::snprintf(detail, sizeof(detail), "reaches %.1f > %.1f > %.1f > %.1f > %.1f", reach[0],
                  reach[1], reach[2], reach[3], reach[4]);
    report("6f reach strictly ordered", ordered, detail);
}

void criterion_7_quadrature_oracle() {
    std::mt19937_64 rng(0xace5);
    auto uni = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    double worst_isi = 0.0, worst_gate = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double tau_l = std::exp(uni(std::log(15.0), std::log(500.0)));
        const double period = uni(50.0, 1000.0);
        const double gate = uni(0.1, 1.0) * period;
        const double isi = isi_error_fraction(tau_l, period, gate);
        const double isi_quad = oracles::integrate(
            [&](double t) { return oracles::gaussian_intensity(t, tau_l); }, period - gate / 2.0,
            period + gate / 2.0);
        worst_isi = std::max(worst_isi, std::fabs(isi - isi_quad));
        const double cap = gate_capture(tau_l, gate);
        const double cap_quad = oracles::integrate(
            [&](double t) { return oracles::gaussian_intensity(t, tau_l); }, -gate / 2.0,
            gate / 2.0);
        worst_gate = std::max(worst_gate, std::fabs(cap - cap_quad));
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "worst |closed - quadrature|: isi %.2e, gate %.2e",
                  worst_isi, worst_gate);
    report("7  gate overlap vs quadrature (100 draws)", worst_isi <= 1e-10 && worst_gate <= 1e-10,
           detail);
}

void criterion_8_properties() {
    std::mt19937_64 rng(0x8a5e);
    auto uni = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    auto logu = [&](double lo, double hi) { return std::exp(uni(std::log(lo), std::log(hi))); };

    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
        const double alpha = uni(0.05, 0.5), l1 = uni(0.0, 200.0), l2 = uni(0.0, 200.0);
        ok = std::fabs(transmission(alpha, l1 + l2) - transmission(alpha, l1) * transmission(alpha, l2)) <=
             1e-12 * transmission(alpha, l1 + l2);
    }
    report("8a transmission multiplicative (1000)", ok, "t(L1+L2) == t(L1)t(L2) @1e-12");

    ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
        const double k = logu(0.5, 2.0), l = uni(1.0, 300.0);
        const auto base = raman_powers(2, 2, 1e-6, 0.04, l, 2.6e-9, 0.8);
        const auto scaled = raman_powers(2, 2, k * 1e-6, 0.04, l, 2.6e-9, 0.8);
        ok = std::fabs(scaled.forward_w - k * base.forward_w) <= 1e-12 * scaled.forward_w &&
             std::fabs(scaled.backward_w - k * base.backward_w) <= 1e-12 * scaled.backward_w &&
             base.backward_w >= base.forward_w * (1.0 - 1e-12);
    }
    report("8b raman scaling and b>=f (1000)", ok, "linear in P_out; sinh(x)/x >= 1");

    ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
        const double p_mu = logu(1e-8, 1e-2), noise = logu(1e-9, 1e-3), k = logu(1e-3, 1e3);
        ok = std::fabs(qber(Protocol::Cow, 1.0, 0.995, p_mu, noise) -
                       qber(Protocol::Cow, 1.0, 0.995, k * p_mu, k * noise)) <= 1e-12;
    }
    report("8c qber scale invariance (1000)", ok, "common probability scaling");

    ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
        const double p_mu = logu(1e-7, 1e-2), noise = logu(1e-9, 1e-3);
        const double q0 = qber(Protocol::Cow, 1.0, 0.997, p_mu, noise);
        const double q1 = qber(Protocol::Cow, 1.0, 0.997, p_mu, noise * uni(1.0, 10.0));
        const double r0 = secret_key_rate(1e5, mutual_info_ab(q0, 1.2), 0.3);
        const double r1 = secret_key_rate(1e5, mutual_info_ab(q1, 1.2), 0.3);
        ok = r0 >= 0.0 && r1 <= r0 + 1e-9 &&
             raman_detection_prob(logu(1e-9, 1.0), 1.28e-19, 1.0, 1.0) <= 1.0;
    }
    report("8d monotone noise response and clamps (1000)", ok, "r_sec non-increasing in noise");

    LinkScenario s = load_scenario(preset("table7_bpsk2"));
    s.sweep = {5.0, 100.0, 5.0};
    setenv("QKDWDM_WORKERS", "1", 1);
    const std::string one = to_csv(run_sweep(s));
    const std::string one_again = to_csv(run_sweep(s));
    setenv("QKDWDM_WORKERS", "4", 1);
    const std::string four = to_csv(run_sweep(s));
    unsetenv("QKDWDM_WORKERS");
    report("8e sweep determinism", one == one_again, "two serial runs byte-identical");
    report("8f sweep parallelism invariance", one == four, "1 vs 4 workers byte-identical");
}

void criterion_10_curve_shapes() {
    // classical load ordering: more launch power in the band, shorter reach
    const double r_bpsk2 = report_reach(load_scenario(preset("fig16_1g_bpsk2"))).reach_km;
    const double r_bpsk4 = report_reach(load_scenario(preset("fig17_1g_bpsk4"))).reach_km;
    const double r_bpsk8 = report_reach(load_scenario(preset("fig18_1g_bpsk8"))).reach_km;
    const double r_ook2 = report_reach(load_scenario(preset("fig15_1g_ook2"))).reach_km;
    char detail[160];
    std::snprintf(detail, sizeof(detail), "reach km: bpsk2 %.1f > bpsk4 %.1f > bpsk8 %.1f > ook2 %.1f",
                  r_bpsk2, r_bpsk4, r_bpsk8, r_ook2);
    report("10a channel-count reach ordering", r_bpsk2 > r_bpsk4 && r_bpsk4 > r_bpsk8 && r_bpsk8 > r_ook2,
           detail);

    auto monotone_decay = [](const std::vector<SweepRecord>& recs) {
        for (std::size_t i = 1; i < recs.size(); ++i)
            if (recs[i].r_sec_bps > recs[i - 1].r_sec_bps * (1.0 + 1e-3) + 1e-9) return false;
        return true;
    };
    report("10b 1G R_sec decays monotonically",
           monotone_decay(run_sweep(load_scenario(preset("fig16_1g_bpsk2")))),
           "secret rate non-increasing across the sweep grid");
    report("10c 10G R_sec decays monotonically",
           monotone_decay(run_sweep(load_scenario(preset("fig21_10g_bpsk2")))),
           "secret rate non-increasing across the sweep grid");
    report("10d ideal-rate SNSPD R_sec decays monotonically",
           monotone_decay(run_sweep(load_scenario(preset("fig10_10g_snspd_ideal")))),
           "rate solver and photon-number optimizer active");
}

void criterion_9_ber_monte_carlo() {
    constexpr std::size_t kSymbols = 10'000'000;
    struct Case {
        ModulationFormat fmt;
        const char* name;
        double boundary;
        double arg_scale;  // decision distance in noise deviations at SNR = 1
    };
    // per-bit nearest-boundary decision model matching the closed forms
    const Case cases[3] = {{ModulationFormat::PmBpsk, "pm-bpsk", 1.0, 2.0},
                           {ModulationFormat::PmQpsk, "pm-qpsk", 1.0, 1.0},
                           {ModulationFormat::Pm16Qam, "pm-16qam", 0.75, 0.2}};
    std::uint64_t seed = 0x9b5e;
    for (const auto& c : cases) {
        for (double snr : {5.0, 10.0, 15.0}) {
            const double closed = ber(c.fmt, snr);
            const double mc =
                oracles::mc_bit_error_rate(std::sqrt(c.arg_scale * snr), c.boundary, kSymbols, seed++);
            const double sigma = std::sqrt(closed * (1.0 - closed) / kSymbols);
            char label[80], detail[160];
            std::snprintf(label, sizeof(label), "9  %s MC @ SNR=%.0f", c.name, snr);
            std::snprintf(detail, sizeof(detail), "closed %.4e, mc %.4e, 3sigma %.2e", closed, mc,
                          3.0 * sigma);
            report(label, std::fabs(mc - closed) <= 3.0 * sigma, detail);
        }
    }
}

}  // namespace

int main() {
    std::printf("qkdwdm acceptance run\n");
    std::printf("---------------------\n");
    criterion_1_table4();
    criterion_2_table6();
    criterion_3_bitrate_table();
    criterion_4_gate_capture();
    criterion_5_sensitivity();
    criterion_6_reach_table();
    criterion_7_quadrature_oracle();
    criterion_8_properties();
    criterion_9_ber_monte_carlo();
    criterion_10_curve_shapes();
    std::printf("---------------------\n");
    std::printf("%d/%d checks passed\n", g_total - g_failed, g_total);
    return g_failed == 0 ? 0 : 1;
}
