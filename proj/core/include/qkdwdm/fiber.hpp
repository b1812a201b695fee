#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qkdwdm {

/// Physical parameters of one fiber family. Dispersion and slope are quoted
/// at 1550 nm; the Raman cross-section is the effective scattering strength
/// per km of fiber and nm of receiver bandwidth.
struct FiberProfile {
    std::string label;
    double alpha_db_per_km = 0.0;
    double dispersion_ps_nm_km = 0.0;        // D, may be any sign
    double dispersion_slope_ps_nm2_km = 0.0;  // stored for documentation only
    double raman_cross_section_per_km_nm = 2.6e-9;
};

/// Throws std::invalid_argument when a profile violates its invariants
/// (alpha > 0, raman cross-section > 0).
void validate(const FiberProfile& profile);

/// Quantum-channel wavelength and the corresponding single-photon energy.
struct WavelengthContext {
    double lambda_nm = 0.0;
    double photon_energy_j = 0.0;

    static WavelengthContext at(double lambda_nm);
};

// dB <-> linear conversions for loss factors. All other modules consume the
// linear fractions produced here.
double db_to_fraction(double loss_db);     // 10^(-dB/10), in (0,1] for dB >= 0
double fraction_to_db(double fraction);
double alpha_natural_per_km(double alpha_db_per_km);

/// Fiber power transmission over length_km. length_km must be >= 0.
double transmission(double alpha_db_per_km, double length_km);

/// Group-velocity dispersion from the engineering dispersion parameter.
/// Returns beta2 in ps^2/km, negative for positive D (anomalous regime).
double beta2_from_dispersion(double d_ps_nm_km, double lambda_nm);

/// Inverse of beta2_from_dispersion.
double dispersion_from_beta2(double beta2_ps2_km, double lambda_nm);

/// Characteristic length over which a transform-limited Gaussian pulse of
/// the given intensity FWHM broadens by sqrt(2). Returns +infinity when
/// beta2 is zero (no broadening).
double dispersion_length_km(double tau_fwhm0_ps, double beta2_ps2_km);

/// Built-in fiber families, including both quoted SMF28e loss figures.
const std::vector<FiberProfile>& builtin_profiles();

/// nullptr when no profile carries the label (case-insensitive).
const FiberProfile* find_profile(std::string_view label);

}  // namespace qkdwdm
