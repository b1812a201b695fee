#pragma once

#include <iosfwd>
#include <string>

#include "qkdwdm/fiber.hpp"
#include "qkdwdm/modulation.hpp"
#include "qkdwdm/noise.hpp"
#include "qkdwdm/qkd.hpp"

namespace qkdwdm {

struct PulseRatios {
    double tau_fraction = 0.1;   // input FWHM as a fraction of the bit period
    double gate_fraction = 0.5;  // gate duration as a fraction of the bit period
    double chirp = 0.0;
};

struct NoiseConfig {
    double rho_per_km_nm = 0.0;       // 0: take the fiber profile's value
    double delta_lambda_nm = 0.8;
    double quantum_isolation_db = 82.0;
    bool lcxt_enabled = true;
};

struct FrepConfig {
    enum class Mode { Fixed, Ideal };
    Mode mode = Mode::Fixed;
    double value_ghz = 1.0;
    double cap_ghz = 10.0;
    double f_err_target = 0.001;
};

struct DutyConfig {
    enum class Mode { Constant, PlugAndPlay };
    Mode mode = Mode::Constant;
    double constant = 1.0;
    double l_a_km = 10.0;
};

struct SweepGrid {
    double l_min_km = 5.0;
    double l_max_km = 250.0;
    double step_km = 5.0;
};

struct Thresholds {
    double qber = 0.09;
    double rsec_bps = 853.0;
};

/// A complete link configuration: everything needed to evaluate the quantum
/// channel at one distance.
struct LinkScenario {
    std::string name;
    FiberProfile fiber;
    double lambda_nm = 1550.0;
    PulseRatios pulse;
    ClassicalChannelPlan classical;
    NoiseConfig noise;
    DetectorModel detector;
    ProtocolParams protocol;
    FrepConfig frep;
    DutyConfig duty;
    double t_b_db = 2.65;  // receiver internal loss
    SweepGrid sweep;
    Thresholds thresholds;

    double resolved_rho() const {
        return noise.rho_per_km_nm > 0.0 ? noise.rho_per_km_nm : fiber.raman_cross_section_per_km_nm;
    }
};

/// Full validation of every invariant; throws std::invalid_argument naming
/// the violated constraint.
void validate(const LinkScenario& scenario);

/// Parses the line-oriented scenario format ([section] headers, key = value,
/// '#' comments). Unknown keys and missing mandatory keys
/// (detector.eta, detector.dark_rate_per_ns, protocol.visibility) are errors.
LinkScenario parse_scenario(std::istream& in, const std::string& origin);
LinkScenario load_scenario(const std::string& path);

/// Canonical serialization; load(serialize(s)) == s.
std::string serialize_scenario(const LinkScenario& scenario);

bool operator==(const LinkScenario& a, const LinkScenario& b);

}  // namespace qkdwdm
