#pragma once

namespace qkdwdm {

/// Chirped Gaussian pulse launched into the quantum channel, together with
/// the receiver gate and bit period it has to fit into. All times in ps.
struct PulseSpec {
    double tau_fwhm0_ps = 0.0;  // intensity FWHM at the fiber input
    double chirp = 0.0;         // dimensionless linear chirp C
    double gate_ps = 0.0;       // detector gate duration
    double period_ps = 0.0;     // quantum bit period T = 1/f_rep
};

struct PropagatedPulse {
    double tau_fwhm_ps = 0.0;
    double chirp_final = 0.0;
    double broadening_ratio = 1.0;
};

/// Linear propagation of the chirped Gaussian over length_km of fiber with
/// group-velocity dispersion beta2 (ps^2/km).
PropagatedPulse broadened_fwhm(const PulseSpec& spec, double beta2_ps2_km, double length_km);

/// FWHM spectral width in GHz of the (possibly chirped) input pulse.
double spectral_width_fwhm_ghz(const PulseSpec& spec);

/// Fraction of the broadened pulse energy that leaks into the gate of the
/// neighboring bit slot (one neighbor).
double isi_error_fraction(double tau_fwhm_l_ps, double period_ps, double gate_ps);

/// Fraction of the broadened pulse energy captured by its own gate.
double gate_capture(double tau_fwhm_l_ps, double gate_ps);

/// Detection probability of inter-symbol-interference photons, counting both
/// neighboring bit slots. All transmission factors are linear fractions.
double isi_detection_prob(double f_err, double mu, double t_f, double t_il, double t_il_fbg,
                          double t_b, double eta);

/// Maximum repetition rate search result. `bounded` is false for zero
/// dispersion, where no finite rate limit exists.
struct BitrateLimit {
    bool bounded = true;
    double f_max_ghz = 0.0;
};

// Gate/pulse geometry used when solving for the maximum quantum bit rate:
// pulse FWHM and gate duration fixed as fractions of the bit period. The
// defaults reproduce the published rate tables for 300 km links.
inline constexpr double kDefaultTauFraction = 0.15;
inline constexpr double kDefaultGateFraction = 0.5;

/// Largest repetition rate (GHz) keeping the neighbor-gate leakage of the
/// dispersion-broadened pulse at f_err_target. Closed form in engineering
/// units (D in ps/nm/km, lambda in nm, L in km), solved by bracketed
/// bisection to 1e-6 relative.
BitrateLimit max_quantum_bitrate(double d_ps_nm_km, double lambda_nm, double length_km,
                                 double f_err_target,
                                 double tau_fraction = kDefaultTauFraction,
                                 double gate_fraction = kDefaultGateFraction);

/// Same quantity evaluated through the pulse-broadening chain
/// (beta2 -> dispersion length -> broadened FWHM -> gate overlap) instead of
/// the closed form; the two must agree to 1e-6 relative.
BitrateLimit max_quantum_bitrate_pulse_chain(double d_ps_nm_km, double lambda_nm,
                                             double length_km, double f_err_target,
                                             double tau_fraction = kDefaultTauFraction,
                                             double gate_fraction = kDefaultGateFraction);

/// Gate capture fraction at the operating point where the neighbor-gate
/// leakage equals f_err_target (independent of fiber and rate).
double gate_capture_at_isi_target(double f_err_target, double tau_fraction = kDefaultTauFraction,
                                  double gate_fraction = kDefaultGateFraction);

/// Length of compensating fiber needed to undo L*D of accumulated
/// dispersion; reporting helper only.
double dcf_length_km(double length_km, double d_ps_nm_km, double d_dcf_ps_nm_km = -100.0);

}  // namespace qkdwdm
