#include "qkdwdm/qkd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qkdwdm {

void validate(const DetectorModel& det) {
    if (!(det.eta > 0.0 && det.eta <= 1.0))
        throw std::invalid_argument("detector: eta must satisfy 0 < eta <= 1");
    if (det.dark_rate_per_ns < 0.0)
        throw std::invalid_argument("detector: dark_rate_per_ns must be >= 0");
    if (det.dead_time_s < 0.0) throw std::invalid_argument("detector: dead_time_s must be >= 0");
    if (det.afterpulse_frac < 0.0)
        throw std::invalid_argument("detector: afterpulse_frac must be >= 0");
    if (det.n_detectors < 1) throw std::invalid_argument("detector: n_detectors must be >= 1");
    if (det.gate_ns && !(*det.gate_ns > 0.0))
        throw std::invalid_argument("detector: gate_ns must be > 0 when set");
}

const char* to_string(Protocol p) {
    switch (p) {
        case Protocol::Bb84: return "bb84";
        case Protocol::Cow: return "cow";
        case Protocol::Sarg: return "sarg";
    }
    return "?";
}

std::optional<Protocol> parse_protocol(const std::string& name) {
    if (name == "bb84") return Protocol::Bb84;
    if (name == "cow") return Protocol::Cow;
    if (name == "sarg") return Protocol::Sarg;
    return std::nullopt;
}

void validate(const ProtocolParams& params) {
    if (!(params.visibility > 0.0 && params.visibility <= 1.0))
        throw std::invalid_argument("protocol: visibility must satisfy 0 < V <= 1");
    if (!(params.eta_ec >= 1.0)) throw std::invalid_argument("protocol: eta_ec must be >= 1");
    if (params.mu_policy == MuPolicy::Fixed && !(params.mu_fixed > 0.0))
        throw std::invalid_argument("protocol: fixed mu must be > 0");
}

double protocol_beta(Protocol p, double visibility) {
    switch (p) {
        case Protocol::Bb84: return 1.0;
        case Protocol::Cow: return 1.0;
        case Protocol::Sarg: return (2.0 - visibility) / 2.0;
    }
    return 1.0;
}

double sifted_fraction(Protocol p) {
    return p == Protocol::Cow ? 1.0 : 0.5;
}

double analytic_mu(Protocol p, double t_f) {
    switch (p) {
        case Protocol::Bb84: return t_f;
        case Protocol::Cow: return 0.5;
        case Protocol::Sarg: return 2.0 * std::sqrt(t_f);
    }
    return 0.5;
}

double signal_prob(double mu, double t_f, double t_il, double t_il_fbg, double t_b, double t_isi,
                   double eta) {
    if (mu < 0.0) throw std::invalid_argument("signal_prob: mu must be >= 0");
    return mu * t_f * t_il * t_il_fbg * t_b * t_isi * eta;
}

double afterpulse_prob(double rho_ap, double signal_term, double p_dc_total, double p_ram,
                       double p_lcxt, double p_isi) {
    return rho_ap * (signal_term + p_dc_total + p_ram + p_lcxt + p_isi);
}

double dead_time_factor(double dead_time_s, double f_rep_hz, double total_click_prob) {
    if (dead_time_s < 0.0 || f_rep_hz < 0.0 || total_click_prob < 0.0)
        throw std::invalid_argument("dead_time_factor: inputs must be >= 0");
    return 1.0 / (1.0 + dead_time_s * f_rep_hz * total_click_prob);
}

double duty_factor(double l_a_km, double length_km) {
    if (!(l_a_km > 0.0)) throw std::invalid_argument("duty_factor: l_a_km must be > 0");
    return l_a_km / (length_km + l_a_km);
}

Rates rates(double p_mu, double noise_sum, double f_rep_hz, double beta, double duty, double dead,
            double sift_fraction) {
    Rates out;
    out.r_raw_bps = (p_mu + noise_sum) * f_rep_hz * duty * dead;
    out.r_sift_bps = sift_fraction * (beta * p_mu + noise_sum) * f_rep_hz * duty * dead;
    return out;
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double mutual_info_ab(double qber, double eta_ec) {
    return 1.0 - eta_ec * binary_entropy(qber);
}

double eve_info(Protocol p, double mu, double t_f, double visibility, double eta,
                double p_dc_per_gate, int n_detectors) {
    switch (p) {
        case Protocol::Bb84: {
            if (mu > t_f)
                throw std::domain_error("eve_info: BB84 bound requires mu <= t_f (outside validity region)");
            const double d = (1.0 - visibility) / (2.0 - mu / t_f);
            const double pe = 0.5 + std::sqrt(d * (1.0 - d));
            const double numer = (1.0 - mu / (2.0 * t_f)) * (1.0 - binary_entropy(pe)) + mu / (2.0 * t_f);
            const double denom = 1.0 + n_detectors * p_dc_per_gate / (mu * t_f * eta);
            return numer / denom;
        }
        case Protocol::Cow: {
            const double x = mu * t_f;
            const double beam_split = mu * (1.0 - t_f);
            const double intercept = (1.0 - visibility) * (1.0 + std::exp(-x)) / (2.0 * std::exp(-x));
            return beam_split + intercept;
        }
        case Protocol::Sarg: {
            const double i_pns1 = 1.0 - binary_entropy(0.5 * (1.0 + std::sqrt(0.5)));
            return i_pns1 + (1.0 / 12.0) * mu * mu / t_f * std::exp(-mu) * (1.0 - i_pns1);
        }
    }
    throw std::invalid_argument("eve_info: unknown protocol");
}

double qber(Protocol p, double beta, double visibility, double p_mu, double noise_sum) {
    const double denom = beta * p_mu + noise_sum;
    if (denom <= 0.0) return 0.5;
    const double optical_err = p == Protocol::Cow ? 0.0 : p_mu * (1.0 - visibility);
    return 0.5 * (optical_err + noise_sum) / denom;
}

double secret_key_rate(double r_sift_bps, double i_ab, double i_ae) {
    return std::max(0.0, r_sift_bps * (i_ab - i_ae));
}

MuOptimum optimize_mu(const std::function<double(double)>& r_sec_of_mu, double mu_max) {
    MuOptimum best;
    if (!(mu_max > 0.0)) {
        best.diagnostic = "empty validity region (mu_max <= 0)";
        return best;
    }

    constexpr int kScanPoints = 200;
    const double lo_mu = mu_max * 1e-4;
    std::vector<double> mus(kScanPoints);
    const double log_lo = std::log(lo_mu), log_hi = std::log(mu_max);
    int best_i = -1;
    for (int i = 0; i < kScanPoints; ++i) {
        mus[i] = std::exp(log_lo + (log_hi - log_lo) * i / (kScanPoints - 1));
        const double r = r_sec_of_mu(mus[i]);
        if (r > best.r_sec_bps) {
            best.r_sec_bps = r;
            best.mu = mus[i];
            best_i = i;
        }
    }
    if (best_i < 0 || best.r_sec_bps <= 0.0) {
        best.diagnostic = "no mu with positive secret key rate";
        return best;
    }

    // Golden-section refinement around the scan maximum.
    double a = mus[std::max(0, best_i - 1)];
    double b = mus[std::min(kScanPoints - 1, best_i + 1)];
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
    double f1 = r_sec_of_mu(x1), f2 = r_sec_of_mu(x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = r_sec_of_mu(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = r_sec_of_mu(x1);
        }
        const double span = std::max(f1, f2) - std::min(f1, f2);
        if (std::max(f1, f2) > 0.0 && span < 1e-4 * std::max(f1, f2) && (b - a) < 1e-3 * best.mu) break;
    }
    if (std::max(f1, f2) > best.r_sec_bps) {
        best.r_sec_bps = std::max(f1, f2);
        best.mu = f1 > f2 ? x1 : x2;
    }
    best.feasible = true;
    return best;
}

ReachResult link_reach(const std::function<std::pair<double, double>(double)>& qber_rsec_of_km,
                       double qber_thr, double rsec_thr_bps, double l_min_km, double l_max_km) {
    if (!(qber_thr > 0.0) || !(rsec_thr_bps > 0.0))
        throw std::invalid_argument("link_reach: thresholds must be > 0");

    auto ok = [&](double l) {
        const auto [q, r] = qber_rsec_of_km(l);
        return q <= qber_thr && r >= rsec_thr_bps;
    };

    ReachResult out;
    double last_ok = -1.0;
    for (double l = std::max(0.5, l_min_km); l <= l_max_km + 1e-9; l += 0.5)
        if (ok(l)) last_ok = l;
    if (last_ok < 0.0) {
        out.limited_by = "no feasible length";
        return out;
    }

    double lo = last_ok, hi = std::min(last_ok + 0.5, l_max_km);
    while (hi - lo > 0.1) {
        const double mid = 0.5 * (lo + hi);
        if (ok(mid)) lo = mid;
        else hi = mid;
    }
    out.reach_km = lo;
    out.feasible = true;
    const auto [q_beyond, r_beyond] = qber_rsec_of_km(std::min(lo + 0.2, l_max_km));
    out.limited_by = q_beyond > qber_thr ? "qber" : "rsec";
    return out;
}

}  // namespace qkdwdm
