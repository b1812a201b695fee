// Randomized property checks over the model invariants.
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qkdwdm/fiber.hpp"
#include "qkdwdm/modulation.hpp"
#include "qkdwdm/noise.hpp"
#include "qkdwdm/pulse.hpp"
#include "qkdwdm/qkd.hpp"

using namespace qkdwdm;

namespace {
constexpr int kCases = 1000;

struct Rng {
    std::mt19937_64 gen{0x51f0da7a};
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
};
}  // namespace

TEST_CASE("std::erfc passes the tabulated reference suite") {
    for (const auto& s : oracles::kErfcTable) {
        const double got = std::erfc(s.x);
        CHECK(std::fabs(got - s.value) <= 1e-12 * std::max(1.0, std::fabs(s.value)));
    }
}

TEST_CASE("transmission is multiplicative and strictly decreasing") {
    Rng rng;
    for (int i = 0; i < kCases; ++i) {
        const double alpha = rng.uniform(0.05, 0.5);
        const double l1 = rng.uniform(0.0, 200.0), l2 = rng.uniform(0.0, 200.0);
        const double joint = transmission(alpha, l1 + l2);
        const double split = transmission(alpha, l1) * transmission(alpha, l2);
        CHECK(std::fabs(joint - split) <= 1e-12 * joint);
        CHECK(transmission(alpha, l1 + l2 + 1.0) < joint);
    }
}

TEST_CASE("dispersion parameter round trips through beta2") {
    Rng rng;
    for (int i = 0; i < kCases; ++i) {
        const double d = rng.uniform(-30.0, 30.0);
        const double lambda = rng.uniform(1250.0, 1650.0);
        const double back = dispersion_from_beta2(beta2_from_dispersion(d, lambda), lambda);
        CHECK(std::fabs(back - d) <= 1e-9 * std::max(1.0, std::fabs(d)));
    }
}

TEST_CASE("dispersion length scales with the square of the pulse width") {
    Rng rng;
    for (int i = 0; i < kCases; ++i) {
        const double tau = rng.log_uniform(1.0, 200.0);
        const double b2 = rng.uniform(0.1, 30.0) * (rng.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
        CHECK(dispersion_length_km(2.0 * tau, b2) ==
              doctest::Approx(4.0 * dispersion_length_km(tau, b2)).epsilon(1e-12));
    }
}

TEST_CASE("broadening never beats the chirped minimum width") {
    Rng rng;
    for (int i = 0; i < kCases; ++i) {
        PulseSpec spec{rng.log_uniform(5.0, 100.0), rng.uniform(-3.0, 3.0), 0.0, 0.0};
        const double b2 = rng.uniform(-30.0, 30.0);
        const double l = rng.log_uniform(0.1, 400.0);
        const auto p = broadened_fwhm(spec, b2, l);
        const double floor = 1.0 / std::sqrt(1.0 + spec.chirp * spec.chirp);
        CHECK(p.broadening_ratio >= floor * (1.0 - 1e-12));
    }
}

TEST_CASE("small-distance expansion of unchirped broadening") {
    Rng rng;
    for (int i = 0; i < kCases; ++i) {
        PulseSpec spec{rng.log_uniform(5.0, 100.0), 0.0, 0.0, 0.0};
        const double b2 = rng.uniform(0.5, 30.0) * (rng.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
        const double ld = dispersion_length_km(spec.tau_fwhm0_ps, b2);
        const double l = rng.uniform(0.0, 0.1) * ld;
        const double x = l / ld;
        const auto p = broadened_fwhm(spec, b2, l);
        CHECK(std::fabs(p.broadening_ratio - (1.0 + 0.5 * x * x)) <= x * x * x * x);
    }
}

TEST_CASE("pre-chirped pulse recovers zero chirp at the compression point") {
    Rng rng;
    for (int i = 0; i < kCases; ++i) {
        const double c = rng.uniform(0.2, 3.0);
        const double b2 = -rng.uniform(0.5, 30.0);  // beta2 * C < 0
        PulseSpec spec{rng.log_uniform(5.0, 100.0), c, 0.0, 0.0};
        const double ld = dispersion_length_km(spec.tau_fwhm0_ps, b2);
        const double l_min = ld * c / (1.0 + c * c);
        const auto p = broadened_fwhm(spec, b2, l_min);
        CHECK(std::fabs(p.chirp_final) <= 1e-9);
    }
}

TEST_CASE("gate capture and the two tails exhaust the pulse") {
    Rng rng;
    for (int i = 0; i < 200; ++i) {
        const double tau_l = rng.log_uniform(10.0, 500.0);
        const double gate = rng.uniform(5.0, 400.0);
        const double captured = gate_capture(tau_l, gate);
        const double tail = oracles::integrate(
            [&](double t) { return oracles::gaussian_intensity(t, tau_l); }, gate / 2.0,
            gate / 2.0 + 12.0 * tau_l);
        CHECK(std::fabs(captured + 2.0 * tail - 1.0) <= 1e-9);
    }
}

TEST_CASE("isi leakage matches quadrature over random geometries") {
    Rng rng;
    for (int i = 0; i < 200; ++i) {
        const double tau_l = rng.log_uniform(20.0, 400.0);
        const double period = rng.uniform(50.0, 1000.0);
        const double gate = rng.uniform(0.1, 1.0) * period;
        const double closed = isi_error_fraction(tau_l, period, gate);
        const double quad = oracles::integrate(
            [&](double t) { return oracles::gaussian_intensity(t, tau_l); }, period - gate / 2.0,
            period + gate / 2.0);
        CHECK(std::fabs(closed - quad) <= 1e-10);
    }
}

TEST_CASE("raman detection scales linearly in every factor") {
    Rng rng;
    for (int i = 0; i < kCases; ++i) {
        const double n_f = rng.uniform(0.0, 8.0), n_b = rng.uniform(0.0, 8.0);
        const double p_out = rng.log_uniform(1e-9, 1e-3);
        const double alpha = rng.uniform(0.01, 0.12);
        const double l = rng.uniform(1.0, 250.0);
        const double rho = rng.log_uniform(1e-10, 1e-8);
        const double dl = rng.uniform(0.1, 1.0);
        const double k = rng.log_uniform(0.5, 2.0);
        const auto base = raman_powers(n_f, n_b, p_out, alpha, l, rho, dl);
        const auto scaled_pout = raman_powers(n_f, n_b, k * p_out, alpha, l, rho, dl);
        const auto scaled_rho = raman_powers(n_f, n_b, p_out, alpha, l, k * rho, dl);
        const auto scaled_dl = raman_powers(n_f, n_b, p_out, alpha, l, rho, k * dl);
        CHECK(scaled_pout.forward_w == doctest::Approx(k * base.forward_w).epsilon(1e-12));
        CHECK(scaled_rho.backward_w == doctest::Approx(k * base.backward_w).epsilon(1e-12));
        CHECK(scaled_dl.backward_w == doctest::Approx(k * base.backward_w).epsilon(1e-12));
        // detection probability linear in eta and gate below the clamp
        const double e = 1.28e-19;
        const double p1 = raman_detection_prob(base.forward_w, e, 0.1, 0.5);
        const double p2 = raman_detection_prob(base.forward_w, e, 0.2, 0.5);
        const double p3 = raman_detection_prob(base.forward_w, e, 0.1, 1.0);
        if (p3 < 1.0) {
            CHECK(p2 == doctest::Approx(2.0 * p1).epsilon(1e-12));
            CHECK(p3 == doctest::Approx(2.0 * p1).epsilon(1e-12));
        }
    }
}

TEST_CASE("backward raman dominates forward at equal channel counts") {
    Rng rng;
    for (int i = 0; i < kCases; ++i) {
        const double alpha = rng.uniform(0.005, 0.15);
        const double l = rng.uniform(0.1, 300.0);
        const auto p = raman_powers(2, 2, 1e-6, alpha, l, 2.6e-9, 0.8);
        CHECK(p.backward_w >= p.forward_w * (1.0 - 1e-12));
        const auto tiny = raman_powers(2, 2, 1e-6, alpha, 1e-4, 2.6e-9, 0.8);
        CHECK(tiny.backward_w == doctest::Approx(tiny.forward_w).epsilon(1e-6));
    }
}

TEST_CASE("raman probability clamps at one") {
    Rng rng;
    for (int i = 0; i < kCases; ++i) {
        const double p = raman_detection_prob(rng.log_uniform(1e-12, 1.0), 1.28e-19,
                                              rng.uniform(0.5, 1.0), rng.uniform(0.5, 2.0));
        CHECK(p <= 1.0);
    }
}

TEST_CASE("ber curves are strictly decreasing in snr") {
    Rng rng;
    for (ModulationFormat fmt : {ModulationFormat::PmBpsk, ModulationFormat::PmQpsk,
                                 ModulationFormat::PmSp8Qam, ModulationFormat::Pm16Qam}) {
        for (int i = 0; i < kCases / 4; ++i) {
            const double snr = rng.log_uniform(0.01, 60.0);
            CHECK(ber(fmt, snr * 1.05) < ber(fmt, snr));
            CHECK(ber(fmt, 1e-12 + snr) <= 0.5);
        }
    }
}

TEST_CASE("sensitivity is monotone in fec strictness and format order") {
    Rng rng;
    for (int i = 0; i < 200; ++i) {
        const PenaltyModel pen{rng.uniform(0.0, 1.5), rng.uniform(0.0, 0.006), -58.5};
        const double baud = rng.uniform(5.0, 40.0);
        const double sd_bpsk = receiver_sensitivity_dbm(ModulationFormat::PmBpsk, FecThreshold::sd(), pen, baud);
        const double hd_bpsk = receiver_sensitivity_dbm(ModulationFormat::PmBpsk, FecThreshold::hd(), pen, baud);
        CHECK(hd_bpsk >= sd_bpsk - 0.011);  // tighter FEC never helps
        const double sd_qpsk = receiver_sensitivity_dbm(ModulationFormat::PmQpsk, FecThreshold::sd(), pen, baud);
        const double sd_16qam = receiver_sensitivity_dbm(ModulationFormat::Pm16Qam, FecThreshold::sd(), pen, baud);
        CHECK(sd_qpsk >= sd_bpsk - 0.011);
        CHECK(sd_16qam >= sd_qpsk - 0.011);
        // the curve evaluated at the sensitivity sits at the threshold
        const double b = ber(ModulationFormat::PmQpsk,
                             effective_snr(snr_from_power(sd_qpsk, pen.shot_noise_dbm +
                                                                       10.0 * std::log10(baud / 10.0)),
                                           pen));
        CHECK(b == doctest::Approx(FecThreshold::sd().input_ber).epsilon(0.02));
    }
}

TEST_CASE("ideal-penalty sensitivities sit below the measured ones") {
    for (ModulationFormat fmt :
         {ModulationFormat::PmBpsk, ModulationFormat::PmQpsk, ModulationFormat::Pm16Qam}) {
        const double ideal = receiver_sensitivity_dbm(fmt, FecThreshold::sd(), kIdealPenalty, 10.0);
        const double meas = receiver_sensitivity_dbm(fmt, FecThreshold::sd(), kMeasuredPenalty, 10.0);
        CHECK(ideal < meas);
    }
}

TEST_CASE("secret rate never increases when any noise grows") {
    Rng rng;
    for (int i = 0; i < kCases; ++i) {
        const double p_mu = rng.log_uniform(1e-7, 1e-2);
        double noise[4] = {rng.log_uniform(1e-9, 1e-3), rng.log_uniform(1e-9, 1e-3),
                           rng.log_uniform(1e-9, 1e-3), rng.log_uniform(1e-9, 1e-3)};
        const double f = 1e9, duty = 0.71, tdead = rng.log_uniform(1e-9, 1e-6);
        const double mu = rng.uniform(0.1, 0.9), tf = rng.log_uniform(1e-4, 0.5);
        auto rsec = [&](double extra) {
            const double ns = noise[0] + noise[1] + noise[2] + noise[3] + extra;
            const double dead = dead_time_factor(tdead, f, p_mu + ns);
            const Rates r = rates(p_mu, ns, f, 1.0, duty, dead, 1.0);
            const double q = qber(Protocol::Cow, 1.0, 0.997, p_mu, ns);
            const double iab = mutual_info_ab(q, 1.2);
            const double iae = eve_info(Protocol::Cow, mu, tf, 0.997, 0.19, 5e-6, 2);
            return secret_key_rate(r.r_sift_bps, iab, iae);
        };
        const double base = rsec(0.0);
        CHECK(base >= 0.0);
        CHECK(rsec(rng.log_uniform(1e-8, 1e-3)) <= base * (1.0 + 1e-12));
    }
}

TEST_CASE("dead time factor stays in (0,1] and limits to 1") {
    Rng rng;
    for (int i = 0; i < kCases; ++i) {
        const double d = dead_time_factor(rng.log_uniform(1e-10, 1e-5), rng.log_uniform(1e6, 1e10),
                                          rng.log_uniform(1e-9, 1e-1));
        CHECK(d > 0.0);
        CHECK(d <= 1.0);
    }
    CHECK(dead_time_factor(1e-30, 1e9, 1e-3) == doctest::Approx(1.0));
}

TEST_CASE("raw rate dominates the sifted rate for beta <= 2") {
    Rng rng;
    for (int i = 0; i < kCases; ++i) {
        const double p_mu = rng.log_uniform(1e-8, 1e-2);
        const double noise = rng.log_uniform(1e-9, 1e-3);
        const double beta = rng.uniform(0.5, 2.0);
        const double sift = rng.uniform(0.0, 1.0) < 0.5 ? 0.5 : 1.0;
        const Rates r = rates(p_mu, noise, 1e9, beta, 0.71, 0.9, sift);
        if (beta <= 1.0 || sift <= 0.5) CHECK(r.r_raw_bps >= r.r_sift_bps * (1.0 - 1e-12));
    }
}

TEST_CASE("qber is invariant under common scaling of all probabilities") {
    Rng rng;
    for (int i = 0; i < kCases; ++i) {
        const double p_mu = rng.log_uniform(1e-8, 1e-2);
        const double noise = rng.log_uniform(1e-9, 1e-3);
        const double k = rng.log_uniform(1e-3, 1e3);
        for (Protocol p : {Protocol::Cow, Protocol::Bb84}) {
            const double q1 = qber(p, 1.0, 0.995, p_mu, noise);
            const double q2 = qber(p, 1.0, 0.995, k * p_mu, k * noise);
            CHECK(q1 == doctest::Approx(q2).epsilon(1e-12));
        }
    }
}

TEST_CASE("one-way qber never exceeds the interferometric one") {
    Rng rng;
    for (int i = 0; i < kCases; ++i) {
        const double p_mu = rng.log_uniform(1e-8, 1e-2);
        const double noise = rng.log_uniform(1e-9, 1e-3);
        const double v = rng.uniform(0.9, 0.999);
        CHECK(qber(Protocol::Cow, 1.0, v, p_mu, noise) <=
              qber(Protocol::Bb84, 1.0, v, p_mu, noise) + 1e-15);
    }
}

TEST_CASE("afterpulse vanishes with the afterpulse fraction") {
    Rng rng;
    for (int i = 0; i < kCases; ++i) {
        CHECK(afterpulse_prob(0.0, rng.uniform(0, 1e-2), rng.uniform(0, 1e-3), rng.uniform(0, 1e-3),
                              rng.uniform(0, 1e-3), rng.uniform(0, 1e-3)) == 0.0);
    }
}

TEST_CASE("rate limit scales as the inverse root of dispersion times length") {
    Rng rng;
    double reference = -1.0;
    for (int i = 0; i < 200; ++i) {
        const double d = rng.log_uniform(0.1, 25.0);
        const double l = rng.uniform(40.0, 400.0);
        const double f = max_quantum_bitrate(d, 1550.0, l, 0.001).f_max_ghz;
        const double inv = f * std::sqrt(d * l);
        if (reference < 0.0) reference = inv;
        CHECK(inv == doctest::Approx(reference).epsilon(0.005));
    }
}

TEST_CASE("mu optimizer is insensitive to the clock when dead time is negligible") {
    auto make_rate = [](double f_rep) {
        return [f_rep](double mu) {
            const double p_mu = mu * 0.01;
            const double noise = 1e-6;
            const double dead = dead_time_factor(1e-12, f_rep, p_mu + noise);
            const Rates r = rates(p_mu, noise, f_rep, 1.0, 0.71, dead, 1.0);
            const double q = qber(Protocol::Cow, 1.0, 0.997, p_mu, noise);
            const double iae = eve_info(Protocol::Cow, mu, 0.01, 0.997, 0.19, 5e-6, 2);
            return secret_key_rate(r.r_sift_bps, mutual_info_ab(q, 1.2), iae);
        };
    };
    const MuOptimum a = optimize_mu(make_rate(1e9), 1.0);
    const MuOptimum b = optimize_mu(make_rate(5e9), 1.0);
    REQUIRE(a.feasible);
    REQUIRE(b.feasible);
    CHECK(a.mu == doctest::Approx(b.mu).epsilon(1e-3));
}
