#include "qkdwdm/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qkdwdm {

RamanPowers raman_powers(double n_forward, double n_backward, double p_out_w,
                         double alpha_nat_per_km, double length_km, double rho_per_km_nm,
                         double delta_lambda_nm) {
    if (n_forward < 0.0 || n_backward < 0.0 || p_out_w < 0.0 || alpha_nat_per_km < 0.0 ||
        length_km < 0.0 || rho_per_km_nm < 0.0 || delta_lambda_nm < 0.0)
        throw std::invalid_argument("raman_powers: inputs must be >= 0");

    const double spectral = rho_per_km_nm * delta_lambda_nm;
    // sinh(aL)/a -> L in the lossless limit.
    const double backward_km = alpha_nat_per_km == 0.0
                                   ? length_km
                                   : std::sinh(alpha_nat_per_km * length_km) / alpha_nat_per_km;
    RamanPowers out;
    out.forward_w = n_forward * p_out_w * length_km * spectral;
    out.backward_w = n_backward * p_out_w * backward_km * spectral;
    return out;
}

double raman_detection_prob(double power_w, double photon_energy_j, double eta, double gate_ns) {
    if (power_w < 0.0 || eta < 0.0 || gate_ns < 0.0 || !(photon_energy_j > 0.0))
        throw std::invalid_argument("raman_detection_prob: invalid inputs");
    // photons/s -> photons/ns, integrated over the gate
    const double p = power_w / photon_energy_j * 1e-9 * gate_ns * eta;
    return std::min(p, 1.0);
}

double photon_rate_per_ns(double power_dbm, double photon_energy_j) {
    // dBm -> W is 1e-3, per-second -> per-ns is 1e-9
    return std::pow(10.0, power_dbm / 10.0) / photon_energy_j * 1e-12;
}

double lcxt_detection_rate_per_ns(double rx_dbm, double photon_energy_j, double eta,
                                  double isolation_db) {
    if (isolation_db < 0.0) throw std::invalid_argument("lcxt_detection_rate: isolation_db must be >= 0");
    return eta * photon_rate_per_ns(rx_dbm, photon_energy_j) * std::pow(10.0, -isolation_db / 10.0);
}

}  // namespace qkdwdm
