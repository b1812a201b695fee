#pragma once

#include <optional>
#include <string>
#include <utility>

namespace qkdwdm {

enum class ModulationFormat { PmBpsk, PmQpsk, PmSp8Qam, Pm16Qam, Ook };

const char* to_string(ModulationFormat format);
std::optional<ModulationFormat> parse_modulation(const std::string& name);

/// Bits per symbol carried by a polarization-multiplexed format at a given
/// baud; used to label capacity-equivalent channel plans
/// (4x PM-BPSK == 2x PM-QPSK == 1x PM-16QAM).
int bits_per_symbol(ModulationFormat format);
double capacity_equivalent_qpsk_channels(ModulationFormat format, int n_channels);

/// Receiver impairment model: constant hidden noise plus a noise term
/// growing linearly with signal power, both normalized to the shot noise.
struct PenaltyModel {
    double alpha_n = 0.0;
    double beta = 0.0;
    double shot_noise_dbm = -58.5;  // 10 Gbaud reference electrical noise floor
};

inline constexpr PenaltyModel kIdealPenalty{0.0, 0.0, -58.5};
inline constexpr PenaltyModel kMeasuredPenalty{1.07, 0.0075, -58.5};

enum class FecKind { Hd, Sd, None };

struct FecThreshold {
    FecKind kind = FecKind::Sd;
    double input_ber = 0.0;

    static FecThreshold hd();    // pre-FEC BER 10^-3.0
    static FecThreshold sd();    // pre-FEC BER 10^-2.4
    static FecThreshold none();  // raw 10^-12
};

/// Pre-FEC bit error ratio of the coherent formats at a given linear
/// electrical SNR. OOK has no curve here and is rejected; its link budget is
/// carried by a constant receiver sensitivity instead.
double ber(ModulationFormat format, double snr_linear);

/// SNR after the implementation penalty: snr / (1 + alpha_n + beta * snr).
double effective_snr(double snr_measured, const PenaltyModel& penalty);

/// Linear electrical SNR of a received power against the shot-noise floor.
double snr_from_power(double p_dbm, double shot_noise_dbm);

/// Measured-SNR equivalent of an optical OSNR figure; conversion helper, not
/// used by the link pipeline.
double snr_measured_from_osnr(double osnr_linear, double resolution_bw_hz, int polarizations,
                              double equivalent_bw_hz);

/// Smallest received power (dBm) that reaches the FEC input BER through the
/// penalty model, bisected to 0.01 dB. The shot-noise floor scales as
/// 10*log10(baud/10) from the 10 Gbaud reference.
double receiver_sensitivity_dbm(ModulationFormat format, const FecThreshold& fec,
                                const PenaltyModel& penalty, double baud_gbaud);

/// Classical channel power bookkeeping: end-of-fiber power needed to present
/// rx_sensitivity_dbm at the receiver behind the WDM losses, and the matching
/// launch power. Returns {p_out_dbm, p_in_dbm}.
std::pair<double, double> launch_and_output_power(double rx_sensitivity_dbm, double il_db,
                                                  double il_fbg_db, double alpha_db_per_km,
                                                  double length_km);

/// One classical WDM channel plan sharing the fiber with the quantum channel.
struct ClassicalChannelPlan {
    bool enabled = false;
    ModulationFormat format = ModulationFormat::PmQpsk;
    double baud_gbaud = 10.0;
    FecThreshold fec = FecThreshold::sd();
    PenaltyModel penalty = kMeasuredPenalty;
    int n_forward = 2;
    int n_backward = 2;
    std::optional<double> rx_sensitivity_dbm;  // explicit override; OOK defaults to -28
    double il_db = 1.95;
    double il_fbg_db = 0.0;
    double iso_adjacent_db = 59.0;
    double iso_nonadjacent_db = 82.0;

    /// Resolved receiver sensitivity: the override when present, the OOK
    /// constant for OOK, otherwise the computed model sensitivity.
    double resolved_rx_dbm() const;
};

inline constexpr double kOokRxSensitivityDbm = -28.0;  // 1 Gbaud direct detection

}  // namespace qkdwdm
