#include "qkdwdm/fiber.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qkdwdm/constants.hpp"

namespace qkdwdm {

void validate(const FiberProfile& profile) {
    if (!(profile.alpha_db_per_km > 0.0))
        throw std::invalid_argument("fiber '" + profile.label + "': alpha_db_per_km must be > 0");
    if (!(profile.raman_cross_section_per_km_nm > 0.0))
        throw std::invalid_argument("fiber '" + profile.label + "': raman_cross_section must be > 0");
}

WavelengthContext WavelengthContext::at(double lambda_nm) {
    if (!(lambda_nm > 0.0)) throw std::invalid_argument("lambda_nm must be > 0");
    WavelengthContext ctx;
    ctx.lambda_nm = lambda_nm;
    ctx.photon_energy_j = constants::kPlanckJs * constants::kSpeedOfLightMPerS / (lambda_nm * 1e-9);
    return ctx;
}

double db_to_fraction(double loss_db) { return std::pow(10.0, -loss_db / 10.0); }

double fraction_to_db(double fraction) { return -10.0 * std::log10(fraction); }

double alpha_natural_per_km(double alpha_db_per_km) {
    return alpha_db_per_km * constants::kDbToNaturalPerKm;
}

double transmission(double alpha_db_per_km, double length_km) {
    if (length_km < 0.0) throw std::invalid_argument("transmission: length_km must be >= 0");
    return std::pow(10.0, -alpha_db_per_km * length_km / 10.0);
}

double beta2_from_dispersion(double d_ps_nm_km, double lambda_nm) {
    if (!(lambda_nm > 0.0)) throw std::invalid_argument("beta2_from_dispersion: lambda_nm must be > 0");
    // |beta2| = D lambda^2 / (2 pi c); anomalous dispersion (D > 0) gives beta2 < 0.
    return -d_ps_nm_km * lambda_nm * lambda_nm / (2.0 * M_PI * constants::kSpeedOfLightNmPerPs);
}

double dispersion_from_beta2(double beta2_ps2_km, double lambda_nm) {
    return -beta2_ps2_km * 2.0 * M_PI * constants::kSpeedOfLightNmPerPs / (lambda_nm * lambda_nm);
}

double dispersion_length_km(double tau_fwhm0_ps, double beta2_ps2_km) {
    if (!(tau_fwhm0_ps > 0.0)) throw std::invalid_argument("dispersion_length: tau_fwhm0_ps must be > 0");
    if (beta2_ps2_km == 0.0) return std::numeric_limits<double>::infinity();
    return tau_fwhm0_ps * tau_fwhm0_ps / (4.0 * constants::kLn2 * std::fabs(beta2_ps2_km));
}

const std::vector<FiberProfile>& builtin_profiles() {
    static const std::vector<FiberProfile> profiles = {
        {"ex2000", 0.16, 20.35, 0.06, 2.6e-9},
        {"leaf", 0.185, 4.25, 0.085, 2.6e-9},
        {"ldf", 0.185, 0.1, 0.085, 2.6e-9},
        {"smf28e", 0.21, 17.0, 0.06, 2.6e-9},
        {"smf28e_03", 0.3, 17.0, 0.06, 2.6e-9},
    };
    return profiles;
}

const FiberProfile* find_profile(std::string_view label) {
    auto lower = [](std::string_view s) {
        std::string out(s);
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return out;
    };
    const std::string wanted = lower(label);
    for (const auto& p : builtin_profiles())
        if (lower(p.label) == wanted) return &p;
    return nullptr;
}

}  // namespace qkdwdm
