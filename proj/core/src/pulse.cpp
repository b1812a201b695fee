#include "qkdwdm/pulse.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qkdwdm/constants.hpp"
#include "qkdwdm/fiber.hpp"

namespace qkdwdm {

namespace {

constexpr double kSqrtLn2 = 0.8325546111576977;

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Solves fn(x) = target for monotone increasing fn by bisection.
template <typename Fn>
double bisect_increasing(Fn&& fn, double lo, double hi, double rel_tol) {
    while ((hi - lo) > rel_tol * lo) {
        const double mid = 0.5 * (lo + hi);
        if (fn(mid)) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

PropagatedPulse broadened_fwhm(const PulseSpec& spec, double beta2_ps2_km, double length_km) {
    if (!(spec.tau_fwhm0_ps > 0.0)) throw std::invalid_argument("broadened_fwhm: tau_fwhm0_ps must be > 0");
    if (length_km < 0.0) throw std::invalid_argument("broadened_fwhm: length_km must be >= 0");

    const double tau0 = spec.tau_fwhm0_ps / (2.0 * kSqrtLn2);  // 1/e intensity half-width
    const double chirp_term = 1.0 + spec.chirp * beta2_ps2_km * length_km / (tau0 * tau0);
    const double ld = dispersion_length_km(spec.tau_fwhm0_ps, beta2_ps2_km);
    const double disp_term = std::isinf(ld) ? 0.0 : length_km / ld;

    PropagatedPulse out;
    out.broadening_ratio = std::sqrt(chirp_term * chirp_term + disp_term * disp_term);
    out.tau_fwhm_ps = spec.tau_fwhm0_ps * out.broadening_ratio;
    out.chirp_final =
        spec.chirp + sign(beta2_ps2_km) * disp_term * (1.0 + spec.chirp * spec.chirp);
    return out;
}

double spectral_width_fwhm_ghz(const PulseSpec& spec) {
    if (!(spec.tau_fwhm0_ps > 0.0))
        throw std::invalid_argument("spectral_width_fwhm: tau_fwhm0_ps must be > 0");
    const double thz =
        2.0 * constants::kLn2 / M_PI * std::sqrt(1.0 + spec.chirp * spec.chirp) / spec.tau_fwhm0_ps;
    return thz * 1e3;
}

double isi_error_fraction(double tau_fwhm_l_ps, double period_ps, double gate_ps) {
    if (!(tau_fwhm_l_ps > 0.0)) throw std::invalid_argument("isi_error_fraction: pulse width must be > 0");
    const double near_edge = kSqrtLn2 * (2.0 * period_ps - gate_ps) / tau_fwhm_l_ps;
    const double far_edge = kSqrtLn2 * (2.0 * period_ps + gate_ps) / tau_fwhm_l_ps;
    return 0.5 * (std::erfc(near_edge) - std::erfc(far_edge));
}

double gate_capture(double tau_fwhm_l_ps, double gate_ps) {
    if (!(tau_fwhm_l_ps > 0.0) || !(gate_ps > 0.0))
        throw std::invalid_argument("gate_capture: inputs must be > 0");
    const double x = gate_ps * kSqrtLn2 / tau_fwhm_l_ps;
    return 0.5 * (std::erfc(-x) - std::erfc(x));
}

double isi_detection_prob(double f_err, double mu, double t_f, double t_il, double t_il_fbg,
                          double t_b, double eta) {
    return 2.0 * f_err * mu * t_f * t_il * t_il_fbg * t_b * eta;
}

namespace {

struct RateGeometry {
    double arg_scale;   // near-edge erfc argument at zero broadening
    double x_coeff;     // X = x_coeff * f_ghz^2 with X = L / L_D
};

RateGeometry rate_geometry(double d_ps_nm_km, double lambda_nm, double length_km,
                           double tau_fraction, double gate_fraction) {
    RateGeometry g;
    g.arg_scale = kSqrtLn2 * (2.0 - gate_fraction) / tau_fraction;
    g.x_coeff = 2.0 * constants::kLn2 * lambda_nm * lambda_nm * std::fabs(d_ps_nm_km) * length_km /
                (tau_fraction * tau_fraction * 1e6 * M_PI * constants::kSpeedOfLightNmPerPs);
    return g;
}

void check_rate_inputs(double length_km, double f_err_target, double tau_fraction,
                       double gate_fraction) {
    if (!(length_km > 0.0)) throw std::invalid_argument("max_quantum_bitrate: length_km must be > 0");
    if (!(f_err_target > 0.0 && f_err_target < 0.5))
        throw std::invalid_argument("max_quantum_bitrate: f_err_target must be in (0, 0.5)");
    if (!(tau_fraction > 0.0) || !(gate_fraction > 0.0) || gate_fraction > 1.0)
        throw std::invalid_argument("max_quantum_bitrate: invalid pulse/gate fractions");
}

template <typename LeakFn>
BitrateLimit solve_bitrate(LeakFn&& leak_at, double f_err_target) {
    double lo = 1e-3, hi = 1e3;
    constexpr double kBracketCapGhz = 1e6;
    while (leak_at(hi) < f_err_target) {
        lo = hi;
        hi *= 10.0;
        if (hi > kBracketCapGhz)
            throw std::runtime_error("max_quantum_bitrate: no root below 1e6 GHz bracket cap");
    }
    while (leak_at(lo) > f_err_target) {
        hi = lo;
        lo /= 10.0;
        if (lo < 1e-12) throw std::runtime_error("max_quantum_bitrate: no bracket below 1e-12 GHz");
    }
    BitrateLimit out;
    out.f_max_ghz = bisect_increasing([&](double f) { return leak_at(f) >= f_err_target; }, lo, hi, 1e-6);
    return out;
}

}  // namespace

BitrateLimit max_quantum_bitrate(double d_ps_nm_km, double lambda_nm, double length_km,
                                 double f_err_target, double tau_fraction, double gate_fraction) {
    check_rate_inputs(length_km, f_err_target, tau_fraction, gate_fraction);
    if (d_ps_nm_km == 0.0) return {false, std::numeric_limits<double>::infinity()};

    const RateGeometry g = rate_geometry(d_ps_nm_km, lambda_nm, length_km, tau_fraction, gate_fraction);
    auto leak = [&](double f_ghz) {
        const double x = g.x_coeff * f_ghz * f_ghz;
        return 0.5 * std::erfc(g.arg_scale / std::sqrt(1.0 + x * x));
    };
    return solve_bitrate(leak, f_err_target);
}

BitrateLimit max_quantum_bitrate_pulse_chain(double d_ps_nm_km, double lambda_nm,
                                             double length_km, double f_err_target,
                                             double tau_fraction, double gate_fraction) {
    check_rate_inputs(length_km, f_err_target, tau_fraction, gate_fraction);
    if (d_ps_nm_km == 0.0) return {false, std::numeric_limits<double>::infinity()};

    const double beta2 = beta2_from_dispersion(d_ps_nm_km, lambda_nm);
    auto leak = [&](double f_ghz) {
        const double period_ps = 1e3 / f_ghz;
        PulseSpec spec;
        spec.tau_fwhm0_ps = tau_fraction * period_ps;
        spec.gate_ps = gate_fraction * period_ps;
        spec.period_ps = period_ps;
        const PropagatedPulse p = broadened_fwhm(spec, beta2, length_km);
        // Only the near gate edge matters at the leakage levels of interest.
        const double arg = kSqrtLn2 * (2.0 * period_ps - spec.gate_ps) / p.tau_fwhm_ps;
        return 0.5 * std::erfc(arg);
    };
    return solve_bitrate(leak, f_err_target);
}

double gate_capture_at_isi_target(double f_err_target, double tau_fraction, double gate_fraction) {
    if (!(f_err_target > 0.0 && f_err_target < 0.5))
        throw std::invalid_argument("gate_capture_at_isi_target: target must be in (0, 0.5)");
    const double arg_scale = kSqrtLn2 * (2.0 - gate_fraction) / tau_fraction;
    // Broadening factor s at which the near-edge leakage reaches the target.
    double lo = 1.0, hi = 2.0;
    while (0.5 * std::erfc(arg_scale / hi) < f_err_target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e15) throw std::runtime_error("gate_capture_at_isi_target: no solution");
    }
    const double s =
        bisect_increasing([&](double v) { return 0.5 * std::erfc(arg_scale / v) >= f_err_target; },
                          lo, hi, 1e-12);
    const double x = arg_scale * gate_fraction / ((2.0 - gate_fraction) * s);
    return 0.5 * (std::erfc(-x) - std::erfc(x));
}

double dcf_length_km(double length_km, double d_ps_nm_km, double d_dcf_ps_nm_km) {
    if (d_dcf_ps_nm_km == 0.0) throw std::invalid_argument("dcf_length_km: compensating D must be nonzero");
    return length_km * std::fabs(d_ps_nm_km) / std::fabs(d_dcf_ps_nm_km);
}

}  // namespace qkdwdm
