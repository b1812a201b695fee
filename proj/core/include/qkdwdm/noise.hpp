#pragma once

namespace qkdwdm {

/// Spontaneous Raman scattering powers collected within the quantum receiver
/// bandwidth, referenced to the classical end-of-fiber power p_out_w.
struct RamanPowers {
    double forward_w = 0.0;
    double backward_w = 0.0;
};

/// n_forward / n_backward count co- and counter-propagating classical
/// channels; alpha is the attenuation in natural units (1/km); rho the
/// effective scattering cross-section per (km*nm); delta_lambda_nm the
/// quantum receiver bandwidth.
RamanPowers raman_powers(double n_forward, double n_backward, double p_out_w,
                         double alpha_nat_per_km, double length_km, double rho_per_km_nm,
                         double delta_lambda_nm);

/// Per-gate detection probability of a noise power: photon flux times
/// detector efficiency integrated over the gate. Clamped to 1 when the
/// single-photon counting picture stops being meaningful.
double raman_detection_prob(double power_w, double photon_energy_j, double eta, double gate_ns);

/// Photon arrival rate (1/ns) corresponding to a receiver power in dBm.
double photon_rate_per_ns(double power_dbm, double photon_energy_j);

/// Detection probability rate (1/ns) of classical light leaking through a
/// WDM filter with the given isolation.
double lcxt_detection_rate_per_ns(double rx_dbm, double photon_energy_j, double eta,
                                  double isolation_db);

/// Per-gate noise detection probabilities feeding the key-rate budget.
struct NoiseBudget {
    double raman_power_f_w = 0.0;
    double raman_power_b_w = 0.0;
    double p_ram_f = 0.0;
    double p_ram_b = 0.0;
    double p_ram = 0.0;
    double p_lcxt = 0.0;
};

}  // namespace qkdwdm
