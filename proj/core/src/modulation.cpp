#include "qkdwdm/modulation.hpp"

#include <cmath>
#include <stdexcept>

namespace qkdwdm {

const char* to_string(ModulationFormat format) {
    switch (format) {
        case ModulationFormat::PmBpsk: return "pm-bpsk";
        case ModulationFormat::PmQpsk: return "pm-qpsk";
        case ModulationFormat::PmSp8Qam: return "pm-sp-8qam";
        case ModulationFormat::Pm16Qam: return "pm-16qam";
        case ModulationFormat::Ook: return "ook";
    }
    return "?";
}

std::optional<ModulationFormat> parse_modulation(const std::string& name) {
    if (name == "pm-bpsk" || name == "bpsk") return ModulationFormat::PmBpsk;
    if (name == "pm-qpsk" || name == "qpsk") return ModulationFormat::PmQpsk;
    if (name == "pm-sp-8qam" || name == "8qam") return ModulationFormat::PmSp8Qam;
    if (name == "pm-16qam" || name == "16qam") return ModulationFormat::Pm16Qam;
    if (name == "ook") return ModulationFormat::Ook;
    return std::nullopt;
}

int bits_per_symbol(ModulationFormat format) {
    switch (format) {
        case ModulationFormat::PmBpsk: return 2;
        case ModulationFormat::PmQpsk: return 4;
        case ModulationFormat::PmSp8Qam: return 6;
        case ModulationFormat::Pm16Qam: return 8;
        case ModulationFormat::Ook: return 1;
    }
    return 0;
}

double capacity_equivalent_qpsk_channels(ModulationFormat format, int n_channels) {
    return n_channels * bits_per_symbol(format) / static_cast<double>(bits_per_symbol(ModulationFormat::PmQpsk));
}

FecThreshold FecThreshold::hd() { return {FecKind::Hd, 1e-3}; }
FecThreshold FecThreshold::sd() { return {FecKind::Sd, std::pow(10.0, -2.4)}; }
FecThreshold FecThreshold::none() { return {FecKind::None, 1e-12}; }

double ber(ModulationFormat format, double snr_linear) {
    if (!(snr_linear > 0.0)) throw std::invalid_argument("ber: snr must be > 0 (linear)");
    switch (format) {
        case ModulationFormat::PmBpsk: return 0.5 * std::erfc(std::sqrt(snr_linear));
        case ModulationFormat::PmQpsk: return 0.5 * std::erfc(std::sqrt(snr_linear / 2.0));
        case ModulationFormat::PmSp8Qam: return 0.5 * std::erfc(std::sqrt(snr_linear / 5.0));
        case ModulationFormat::Pm16Qam: return 0.375 * std::erfc(std::sqrt(snr_linear / 10.0));
        case ModulationFormat::Ook:
            throw std::invalid_argument(
                "ber: OOK carries no SNR curve; use the constant receiver sensitivity path");
    }
    throw std::invalid_argument("ber: unknown format");
}

double effective_snr(double snr_measured, const PenaltyModel& penalty) {
    if (!(snr_measured > 0.0)) throw std::invalid_argument("effective_snr: snr must be > 0");
    return snr_measured / (1.0 + penalty.alpha_n + penalty.beta * snr_measured);
}

double snr_from_power(double p_dbm, double shot_noise_dbm) {
    return std::pow(10.0, (p_dbm - shot_noise_dbm) / 10.0);
}

double snr_measured_from_osnr(double osnr_linear, double resolution_bw_hz, int polarizations,
                              double equivalent_bw_hz) {
    return osnr_linear * 2.0 * resolution_bw_hz / (polarizations * equivalent_bw_hz);
}

double receiver_sensitivity_dbm(ModulationFormat format, const FecThreshold& fec,
                                const PenaltyModel& penalty, double baud_gbaud) {
    if (format == ModulationFormat::Ook)
        throw std::invalid_argument("receiver_sensitivity: OOK uses the constant sensitivity path");
    if (!(baud_gbaud > 0.0)) throw std::invalid_argument("receiver_sensitivity: baud must be > 0");

    if (penalty.beta > 0.0) {
        const double snr_ceiling = 1.0 / penalty.beta;
        if (ber(format, snr_ceiling) > fec.input_ber)
            throw std::runtime_error("receiver_sensitivity: target BER unreachable, penalty caps SNR at " +
                                     std::to_string(snr_ceiling));
    }

    const double shot_dbm = penalty.shot_noise_dbm + 10.0 * std::log10(baud_gbaud / 10.0);
    double lo = -90.0, hi = 30.0;
    while (hi - lo > 0.01) {
        const double p = 0.5 * (lo + hi);
        const double b = ber(format, effective_snr(snr_from_power(p, shot_dbm), penalty));
        if (b > fec.input_ber) lo = p;
        else hi = p;
    }
    return 0.5 * (lo + hi);
}

std::pair<double, double> launch_and_output_power(double rx_sensitivity_dbm, double il_db,
                                                  double il_fbg_db, double alpha_db_per_km,
                                                  double length_km) {
    const double p_out = rx_sensitivity_dbm + il_db + il_fbg_db;
    const double p_in = p_out + alpha_db_per_km * length_km;
    return {p_out, p_in};
}

double ClassicalChannelPlan::resolved_rx_dbm() const {
    if (rx_sensitivity_dbm) return *rx_sensitivity_dbm;
    if (format == ModulationFormat::Ook) return kOokRxSensitivityDbm;
    return receiver_sensitivity_dbm(format, fec, penalty, baud_gbaud);
}

}  // namespace qkdwdm
