#include "qkdwdm/scenario.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qkdwdm/textio.hpp"

namespace qkdwdm {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw std::invalid_argument(origin + ": " + what);
}

struct RawConfig {
    // section -> ordered key/value pairs
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;
};

RawConfig read_raw(std::istream& in, const std::string& origin) {
    RawConfig raw;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(origin, "line " + std::to_string(lineno) + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            raw.sections.try_emplace(section);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(origin, "line " + std::to_string(lineno) + ": expected key = value");
        raw.sections[section].emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return raw;
}

class SectionReader {
public:
    SectionReader(const std::string& origin, const std::string& section,
                  const std::vector<std::pair<std::string, std::string>>& pairs)
        : origin_(origin), section_(section) {
        for (const auto& [k, v] : pairs) {
            if (!values_.emplace(k, v).second)
                fail(origin_, "duplicate key '" + k + "' in " + where());
        }
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string str(const std::string& key, const std::string& fallback) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        used_.insert(key);
        return it->second;
    }

    double num(const std::string& key, double fallback) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        used_.insert(key);
        try {
            return parse_double(it->second);
        } catch (const std::exception&) {
            fail(origin_, "key '" + key + "' in " + where() + " is not a number: '" + it->second + "'");
        }
    }

    int integer(const std::string& key, int fallback) {
        const double v = num(key, fallback);
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            fail(origin_, "key '" + key + "' in " + where() + " must be an integer");
        return i;
    }

    bool boolean(const std::string& key, bool fallback) {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        used_.insert(key);
        if (it->second == "true") return true;
        if (it->second == "false") return false;
        fail(origin_, "key '" + key + "' in " + where() + " must be true or false");
    }

    void finish() const {
        for (const auto& [k, v] : values_)
            if (!used_.count(k)) fail(origin_, "unknown key '" + k + "' in " + where());
    }

private:
    std::string where() const { return section_.empty() ? "the top-level section" : "[" + section_ + "]"; }

    std::string origin_;
    std::string section_;
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;
};

const char* kMandatoryHint =
    "mandatory keys: [detector] eta, [detector] dark_rate_per_ns, [protocol] visibility";

}  // namespace

LinkScenario parse_scenario(std::istream& in, const std::string& origin) {
    RawConfig raw = read_raw(in, origin);
    if (raw.sections.empty()) fail(origin, std::string("empty scenario; ") + kMandatoryHint);

    static const std::vector<std::string> known_sections = {
        "",     "fiber", "pulse",    "classical", "noise",      "detector",
        "protocol", "frep",  "duty",     "receiver",  "sweep",      "thresholds"};
    for (const auto& [name, _] : raw.sections) {
        bool known = false;
        for (const auto& k : known_sections) known = known || k == name;
        if (!known) fail(origin, "unknown section [" + name + "]");
    }

    auto section = [&](const std::string& name) {
        static const std::vector<std::pair<std::string, std::string>> empty;
        auto it = raw.sections.find(name);
        return SectionReader(origin, name, it == raw.sections.end() ? empty : it->second);
    };

    LinkScenario s;

    {
        auto top = section("");
        s.name = top.str("name", "unnamed");
        top.finish();
    }
    {
        auto fib = section("fiber");
        if (fib.has("profile")) {
            const std::string label = fib.str("profile", "");
            const FiberProfile* p = find_profile(label);
            if (!p) fail(origin, "unknown fiber profile '" + label + "'");
            s.fiber = *p;
        }
        s.fiber.label = fib.str("label", s.fiber.label.empty() ? "custom" : s.fiber.label);
        s.fiber.alpha_db_per_km = fib.num("alpha_db_per_km", s.fiber.alpha_db_per_km);
        s.fiber.dispersion_ps_nm_km = fib.num("dispersion_ps_nm_km", s.fiber.dispersion_ps_nm_km);
        s.fiber.dispersion_slope_ps_nm2_km =
            fib.num("dispersion_slope_ps_nm2_km", s.fiber.dispersion_slope_ps_nm2_km);
        s.fiber.raman_cross_section_per_km_nm =
            fib.num("raman_cross_section_per_km_nm", s.fiber.raman_cross_section_per_km_nm);
        s.lambda_nm = fib.num("lambda_nm", s.lambda_nm);
        fib.finish();
    }
    {
        auto pul = section("pulse");
        s.pulse.tau_fraction = pul.num("tau_fraction", s.pulse.tau_fraction);
        s.pulse.gate_fraction = pul.num("gate_fraction", s.pulse.gate_fraction);
        s.pulse.chirp = pul.num("chirp", s.pulse.chirp);
        pul.finish();
    }
    {
        auto cls = section("classical");
        s.classical.enabled = cls.boolean("enabled", s.classical.enabled);
        const std::string fmt = cls.str("format", to_string(s.classical.format));
        const auto parsed = parse_modulation(fmt);
        if (!parsed) fail(origin, "unknown modulation format '" + fmt + "'");
        s.classical.format = *parsed;
        s.classical.baud_gbaud = cls.num("baud_gbaud", s.classical.baud_gbaud);
        const std::string fec = cls.str("fec", s.classical.fec.kind == FecKind::Hd   ? "hd"
                                               : s.classical.fec.kind == FecKind::Sd ? "sd"
                                                                                     : "none");
        if (fec == "hd") s.classical.fec = FecThreshold::hd();
        else if (fec == "sd") s.classical.fec = FecThreshold::sd();
        else if (fec == "none") s.classical.fec = FecThreshold::none();
        else fail(origin, "fec must be hd, sd or none, got '" + fec + "'");
        s.classical.penalty.alpha_n = cls.num("alpha_n", s.classical.penalty.alpha_n);
        s.classical.penalty.beta = cls.num("beta", s.classical.penalty.beta);
        s.classical.penalty.shot_noise_dbm = cls.num("shot_noise_dbm", s.classical.penalty.shot_noise_dbm);
        s.classical.n_forward = cls.integer("n_forward", s.classical.n_forward);
        s.classical.n_backward = cls.integer("n_backward", s.classical.n_backward);
        if (cls.has("rx_sensitivity_dbm"))
            s.classical.rx_sensitivity_dbm = cls.num("rx_sensitivity_dbm", 0.0);
        s.classical.il_db = cls.num("il_db", s.classical.il_db);
        s.classical.il_fbg_db = cls.num("il_fbg_db", s.classical.il_fbg_db);
        s.classical.iso_adjacent_db = cls.num("iso_adjacent_db", s.classical.iso_adjacent_db);
        s.classical.iso_nonadjacent_db = cls.num("iso_nonadjacent_db", s.classical.iso_nonadjacent_db);
        cls.finish();
    }
    {
        auto noi = section("noise");
        s.noise.rho_per_km_nm = noi.num("rho_per_km_nm", s.noise.rho_per_km_nm);
        s.noise.delta_lambda_nm = noi.num("delta_lambda_nm", s.noise.delta_lambda_nm);
        s.noise.quantum_isolation_db = noi.num("quantum_isolation_db", s.noise.quantum_isolation_db);
        s.noise.lcxt_enabled = noi.boolean("lcxt_enabled", s.noise.lcxt_enabled);
        noi.finish();
    }
    {
        auto det = section("detector");
        const std::string kind = det.str("kind", s.detector.kind == DetectorKind::Apd ? "apd" : "snspd");
        if (kind == "apd") s.detector.kind = DetectorKind::Apd;
        else if (kind == "snspd") s.detector.kind = DetectorKind::Snspd;
        else fail(origin, "detector kind must be apd or snspd, got '" + kind + "'");
        if (!det.has("eta")) fail(origin, std::string("missing [detector] eta; ") + kMandatoryHint);
        if (!det.has("dark_rate_per_ns"))
            fail(origin, std::string("missing [detector] dark_rate_per_ns; ") + kMandatoryHint);
        s.detector.eta = det.num("eta", 0.0);
        s.detector.dark_rate_per_ns = det.num("dark_rate_per_ns", 0.0);
        s.detector.dead_time_s = det.num("dead_time_s", s.detector.dead_time_s);
        s.detector.afterpulse_frac = det.num("afterpulse_frac", s.detector.afterpulse_frac);
        s.detector.n_detectors = det.integer("n_detectors", s.detector.n_detectors);
        if (det.has("gate_ns")) s.detector.gate_ns = det.num("gate_ns", 0.0);
        det.finish();
    }
    {
        auto pro = section("protocol");
        const std::string name = pro.str("name", to_string(s.protocol.protocol));
        const auto parsed = parse_protocol(name);
        if (!parsed) fail(origin, "unknown protocol '" + name + "'");
        s.protocol.protocol = *parsed;
        if (!pro.has("visibility"))
            fail(origin, std::string("missing [protocol] visibility; ") + kMandatoryHint);
        s.protocol.visibility = pro.num("visibility", 0.0);
        s.protocol.eta_ec = pro.num("eta_ec", s.protocol.eta_ec);
        const std::string policy = pro.str("mu_policy", s.protocol.mu_policy == MuPolicy::Fixed ? "fixed"
                                                        : s.protocol.mu_policy == MuPolicy::Optimized
                                                            ? "optimized"
                                                            : "analytic");
        if (policy == "fixed") s.protocol.mu_policy = MuPolicy::Fixed;
        else if (policy == "optimized") s.protocol.mu_policy = MuPolicy::Optimized;
        else if (policy == "analytic") s.protocol.mu_policy = MuPolicy::Analytic;
        else fail(origin, "mu_policy must be fixed, optimized or analytic, got '" + policy + "'");
        s.protocol.mu_fixed = pro.num("mu", s.protocol.mu_fixed);
        pro.finish();
    }
    {
        auto fr = section("frep");
        const std::string mode = fr.str("mode", s.frep.mode == FrepConfig::Mode::Fixed ? "fixed" : "ideal");
        if (mode == "fixed") s.frep.mode = FrepConfig::Mode::Fixed;
        else if (mode == "ideal") s.frep.mode = FrepConfig::Mode::Ideal;
        else fail(origin, "frep mode must be fixed or ideal, got '" + mode + "'");
        s.frep.value_ghz = fr.num("value_ghz", s.frep.value_ghz);
        s.frep.cap_ghz = fr.num("cap_ghz", s.frep.cap_ghz);
        s.frep.f_err_target = fr.num("f_err_target", s.frep.f_err_target);
        fr.finish();
    }
    {
        auto du = section("duty");
        const std::string mode =
            du.str("mode", s.duty.mode == DutyConfig::Mode::Constant ? "constant" : "plug_and_play");
        if (mode == "constant") s.duty.mode = DutyConfig::Mode::Constant;
        else if (mode == "plug_and_play") s.duty.mode = DutyConfig::Mode::PlugAndPlay;
        else fail(origin, "duty mode must be constant or plug_and_play, got '" + mode + "'");
        s.duty.constant = du.num("value", s.duty.constant);
        s.duty.l_a_km = du.num("l_a_km", s.duty.l_a_km);
        du.finish();
    }
    {
        auto rx = section("receiver");
        s.t_b_db = rx.num("t_b_db", s.t_b_db);
        rx.finish();
    }
    {
        auto sw = section("sweep");
        s.sweep.l_min_km = sw.num("l_min_km", s.sweep.l_min_km);
        s.sweep.l_max_km = sw.num("l_max_km", s.sweep.l_max_km);
        s.sweep.step_km = sw.num("step_km", s.sweep.step_km);
        sw.finish();
    }
    {
        auto th = section("thresholds");
        s.thresholds.qber = th.num("qber", s.thresholds.qber);
        s.thresholds.rsec_bps = th.num("rsec_bps", s.thresholds.rsec_bps);
        th.finish();
    }

    validate(s);
    return s;
}

LinkScenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open scenario file '" + path + "'");
    return parse_scenario(in, path);
}

void validate(const LinkScenario& s) {
    const std::string origin = "scenario '" + s.name + "'";
    validate(s.fiber);
    if (!(s.lambda_nm > 0.0)) fail(origin, "lambda_nm must be > 0");
    if (!(s.pulse.tau_fraction > 0.0)) fail(origin, "tau_fraction must be > 0");
    if (!(s.pulse.gate_fraction > 0.0 && s.pulse.gate_fraction <= 1.0))
        fail(origin, "gate_fraction must satisfy 0 < gate_fraction <= 1 (gate within the bit period)");
    if (s.classical.enabled) {
        if (s.classical.n_forward < 0 || s.classical.n_backward < 0)
            fail(origin, "classical channel counts must be >= 0");
        if (!(s.classical.baud_gbaud > 0.0)) fail(origin, "baud_gbaud must be > 0");
        if (!(s.classical.iso_adjacent_db > 0.0) || !(s.classical.iso_nonadjacent_db > 0.0))
            fail(origin, "channel isolations must be > 0 dB");
    }
    if (s.noise.rho_per_km_nm < 0.0) fail(origin, "rho_per_km_nm must be >= 0");
    if (s.noise.delta_lambda_nm < 0.0) fail(origin, "delta_lambda_nm must be >= 0");
    if (s.noise.quantum_isolation_db < 0.0) fail(origin, "quantum_isolation_db must be >= 0");
    validate(s.detector);
    validate(s.protocol);
    if (!(s.frep.value_ghz > 0.0)) fail(origin, "frep value_ghz must be > 0");
    if (!(s.frep.cap_ghz > 0.0)) fail(origin, "frep cap_ghz must be > 0");
    if (!(s.frep.f_err_target > 0.0 && s.frep.f_err_target < 0.5))
        fail(origin, "f_err_target must be in (0, 0.5)");
    if (s.duty.mode == DutyConfig::Mode::Constant && !(s.duty.constant > 0.0 && s.duty.constant <= 1.0))
        fail(origin, "duty value must satisfy 0 < value <= 1");
    if (!(s.duty.l_a_km > 0.0)) fail(origin, "l_a_km must be > 0");
    if (s.t_b_db < 0.0) fail(origin, "t_b_db must be >= 0");
    if (!(s.sweep.step_km > 0.0)) fail(origin, "sweep step_km must be > 0");
    if (!(s.sweep.l_min_km > 0.0) || !(s.sweep.l_min_km < s.sweep.l_max_km))
        fail(origin, "sweep grid must satisfy 0 < l_min_km < l_max_km");
    if (!(s.thresholds.qber > 0.0)) fail(origin, "qber threshold must be > 0");
    if (!(s.thresholds.rsec_bps > 0.0)) fail(origin, "rsec threshold must be > 0");
}

std::string serialize_scenario(const LinkScenario& s) {
    std::ostringstream out;
    auto num = [](double v) { return shortest_double(v); };
    out << "name = " << s.name << "\n\n";
    out << "[fiber]\n";
    out << "label = " << s.fiber.label << "\n";
    out << "alpha_db_per_km = " << num(s.fiber.alpha_db_per_km) << "\n";
    out << "dispersion_ps_nm_km = " << num(s.fiber.dispersion_ps_nm_km) << "\n";
    out << "dispersion_slope_ps_nm2_km = " << num(s.fiber.dispersion_slope_ps_nm2_km) << "\n";
    out << "raman_cross_section_per_km_nm = " << num(s.fiber.raman_cross_section_per_km_nm) << "\n";
    out << "lambda_nm = " << num(s.lambda_nm) << "\n\n";
    out << "[pulse]\n";
    out << "tau_fraction = " << num(s.pulse.tau_fraction) << "\n";
    out << "gate_fraction = " << num(s.pulse.gate_fraction) << "\n";
    out << "chirp = " << num(s.pulse.chirp) << "\n\n";
    out << "[classical]\n";
    out << "enabled = " << (s.classical.enabled ? "true" : "false") << "\n";
    out << "format = " << to_string(s.classical.format) << "\n";
    out << "baud_gbaud = " << num(s.classical.baud_gbaud) << "\n";
    out << "fec = "
        << (s.classical.fec.kind == FecKind::Hd ? "hd" : s.classical.fec.kind == FecKind::Sd ? "sd" : "none")
        << "\n";
    out << "alpha_n = " << num(s.classical.penalty.alpha_n) << "\n";
    out << "beta = " << num(s.classical.penalty.beta) << "\n";
    out << "shot_noise_dbm = " << num(s.classical.penalty.shot_noise_dbm) << "\n";
    out << "n_forward = " << s.classical.n_forward << "\n";
    out << "n_backward = " << s.classical.n_backward << "\n";
    if (s.classical.rx_sensitivity_dbm)
        out << "rx_sensitivity_dbm = " << num(*s.classical.rx_sensitivity_dbm) << "\n";
    out << "il_db = " << num(s.classical.il_db) << "\n";
    out << "il_fbg_db = " << num(s.classical.il_fbg_db) << "\n";
    out << "iso_adjacent_db = " << num(s.classical.iso_adjacent_db) << "\n";
    out << "iso_nonadjacent_db = " << num(s.classical.iso_nonadjacent_db) << "\n\n";
    out << "[noise]\n";
    out << "rho_per_km_nm = " << num(s.noise.rho_per_km_nm) << "\n";
    out << "delta_lambda_nm = " << num(s.noise.delta_lambda_nm) << "\n";
    out << "quantum_isolation_db = " << num(s.noise.quantum_isolation_db) << "\n";
    out << "lcxt_enabled = " << (s.noise.lcxt_enabled ? "true" : "false") << "\n\n";
    out << "[detector]\n";
    out << "kind = " << (s.detector.kind == DetectorKind::Apd ? "apd" : "snspd") << "\n";
    out << "eta = " << num(s.detector.eta) << "\n";
    out << "dark_rate_per_ns = " << num(s.detector.dark_rate_per_ns) << "\n";
    out << "dead_time_s = " << num(s.detector.dead_time_s) << "\n";
    out << "afterpulse_frac = " << num(s.detector.afterpulse_frac) << "\n";
    out << "n_detectors = " << s.detector.n_detectors << "\n";
    if (s.detector.gate_ns) out << "gate_ns = " << num(*s.detector.gate_ns) << "\n";
    out << "\n[protocol]\n";
    out << "name = " << to_string(s.protocol.protocol) << "\n";
    out << "visibility = " << num(s.protocol.visibility) << "\n";
    out << "eta_ec = " << num(s.protocol.eta_ec) << "\n";
    out << "mu_policy = "
        << (s.protocol.mu_policy == MuPolicy::Fixed       ? "fixed"
            : s.protocol.mu_policy == MuPolicy::Optimized ? "optimized"
                                                          : "analytic")
        << "\n";
    out << "mu = " << num(s.protocol.mu_fixed) << "\n\n";
    out << "[frep]\n";
    out << "mode = " << (s.frep.mode == FrepConfig::Mode::Fixed ? "fixed" : "ideal") << "\n";
    out << "value_ghz = " << num(s.frep.value_ghz) << "\n";
    out << "cap_ghz = " << num(s.frep.cap_ghz) << "\n";
    out << "f_err_target = " << num(s.frep.f_err_target) << "\n\n";
    out << "[duty]\n";
    out << "mode = " << (s.duty.mode == DutyConfig::Mode::Constant ? "constant" : "plug_and_play") << "\n";
    out << "value = " << num(s.duty.constant) << "\n";
    out << "l_a_km = " << num(s.duty.l_a_km) << "\n\n";
    out << "[receiver]\n";
    out << "t_b_db = " << num(s.t_b_db) << "\n\n";
    out << "[sweep]\n";
    out << "l_min_km = " << num(s.sweep.l_min_km) << "\n";
    out << "l_max_km = " << num(s.sweep.l_max_km) << "\n";
    out << "step_km = " << num(s.sweep.step_km) << "\n\n";
    out << "[thresholds]\n";
    out << "qber = " << num(s.thresholds.qber) << "\n";
    out << "rsec_bps = " << num(s.thresholds.rsec_bps) << "\n";
    return out.str();
}

bool operator==(const LinkScenario& a, const LinkScenario& b) {
    return serialize_scenario(a) == serialize_scenario(b);
}

}  // namespace qkdwdm
