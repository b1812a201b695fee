#pragma once

#include <functional>
#include <optional>
#include <string>

namespace qkdwdm {

enum class DetectorKind { Apd, Snspd };

/// Single-photon detector bank at the quantum receiver.
struct DetectorModel {
    DetectorKind kind = DetectorKind::Apd;
    double eta = 0.0;               // detection efficiency
    double dark_rate_per_ns = 0.0;  // p'_dc per detector
    double dead_time_s = 0.0;
    double afterpulse_frac = 0.0;   // 0 for SNSPD
    int n_detectors = 2;
    std::optional<double> gate_ns;  // fixed gate; when absent the gate tracks the bit period
};

void validate(const DetectorModel& det);

enum class Protocol { Bb84, Cow, Sarg };

const char* to_string(Protocol p);
std::optional<Protocol> parse_protocol(const std::string& name);

enum class MuPolicy { Fixed, Optimized, Analytic };

struct ProtocolParams {
    Protocol protocol = Protocol::Cow;
    double visibility = 0.0;
    double eta_ec = 1.2;           // error-correction inefficiency
    MuPolicy mu_policy = MuPolicy::Fixed;
    double mu_fixed = 0.5;
};

void validate(const ProtocolParams& params);

/// Sifting factor beta entering the sifted-rate signal term.
double protocol_beta(Protocol p, double visibility);

/// Fraction of raw detections surviving sifting. Basis reconciliation halves
/// BB84/SARG; the one-way protocol keeps its data line.
double sifted_fraction(Protocol p);

/// Closed-form mean photon number choices per protocol.
double analytic_mu(Protocol p, double t_f);

/// Per-gate quantum signal detection probability. All loss factors linear.
double signal_prob(double mu, double t_f, double t_il, double t_il_fbg, double t_b, double t_isi,
                   double eta);

/// After-pulse probability given the correlated-click budget; a plain
/// product, the caller decides what feeds the signal term.
double afterpulse_prob(double rho_ap, double signal_term, double p_dc_total, double p_ram,
                       double p_lcxt, double p_isi);

/// Rate reduction from detector dead time at the given click probability.
double dead_time_factor(double dead_time_s, double f_rep_hz, double total_click_prob);

/// Plug-and-play synchronization duty factor l_A / (L + l_A).
double duty_factor(double l_a_km, double length_km);

struct Rates {
    double r_raw_bps = 0.0;
    double r_sift_bps = 0.0;
};

/// Raw and sifted detection rates. noise_sum aggregates every non-signal
/// click probability (dark, after-pulse, Raman, crosstalk, ISI).
Rates rates(double p_mu, double noise_sum, double f_rep_hz, double beta, double duty,
            double dead, double sift_fraction);

double binary_entropy(double p);

/// Mutual information per sifted bit between the endpoints.
double mutual_info_ab(double qber, double eta_ec);

/// Eavesdropper information bound per protocol. BB84 requires mu <= t_f;
/// outside that validity region an std::domain_error is thrown and the
/// caller must reduce mu.
double eve_info(Protocol p, double mu, double t_f, double visibility, double eta,
                double p_dc_per_gate, int n_detectors);

/// Quantum bit error ratio; the all-noise limit (zero denominator) is 0.5.
double qber(Protocol p, double beta, double visibility, double p_mu, double noise_sum);

/// Distilled secret key rate, clamped at zero.
double secret_key_rate(double r_sift_bps, double i_ab, double i_ae);

struct MuOptimum {
    double mu = 0.0;
    double r_sec_bps = 0.0;
    bool feasible = false;
    std::string diagnostic;
};

/// Maximizes r_sec(mu) over (0, mu_max]: 200-point log-spaced scan followed
/// by golden-section refinement to 1e-4 relative in the rate.
MuOptimum optimize_mu(const std::function<double(double)>& r_sec_of_mu, double mu_max);

struct ReachResult {
    double reach_km = 0.0;
    bool feasible = false;
    std::string limited_by;  // "qber" or "rsec"
};

/// Largest length satisfying qber <= qber_thr and r_sec >= rsec_thr,
/// located on a 0.5 km grid and refined by bisection to 0.1 km.
ReachResult link_reach(const std::function<std::pair<double, double>(double)>& qber_rsec_of_km,
                       double qber_thr, double rsec_thr_bps, double l_min_km, double l_max_km);

}  // namespace qkdwdm
