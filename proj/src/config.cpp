#include "uavnet/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace uavnet {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

bool is_integer_valued(double x) { return std::isfinite(x) && x == std::floor(x); }

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

void validate(const Config& cfg) {
    const auto& net = cfg.net;
    require(net.lambda_c > 0.0, "invariant violation: lambda_c must be > 0");
    require(net.ratio > 0.0, "invariant violation: ratio must be > 0");
    require(net.lambda_u == net.ratio * net.lambda_c,
            "invariant violation: lambda_u must equal ratio * lambda_c");
    require(net.capacity_c >= 1, "invariant violation: capacity_c must be >= 1");
    require(net.pv_fit_a > 0.0, "invariant violation: pv_fit_a must be > 0");
    require(net.pv_fit_b > 0.0, "invariant violation: pv_fit_b must be > 0");
    require(net.r_c > 0.0, "invariant violation: r_c must be > 0");
    require(net.h > 0.0, "invariant violation: h must be > 0");

    const auto& en = cfg.energy;
    require(en.b_max > 0.0, "invariant violation: b_max must be > 0");
    require(en.p_m > 0.0, "invariant violation: p_m must be > 0");
    require(en.p_s > 0.0, "invariant violation: p_s must be > 0");
    require(en.e_l >= 0.0, "invariant violation: e_l must be >= 0");
    require(en.v > 0.0, "invariant violation: v must be > 0");
    require(en.a_ave > 0.0, "invariant violation: a_ave must be > 0");
    require(en.t_ch > 0.0, "invariant violation: t_ch must be > 0");
    require(en.b_max > 2.0 * en.e_l,
            "invariant violation: b_max must exceed 2*e_l or no service time exists");
    if (en.rotor) {
        const auto& r = *en.rotor;
        require(r.p_0 >= 0.0 && r.p_i >= 0.0 && r.u_tip > 0.0 && r.v_0 >= 0.0 &&
                    r.d_0 >= 0.0 && r.rho_air > 0.0 && r.rotor_solidity_s > 0.0 &&
                    r.rotor_area_A > 0.0,
                "invariant violation: rotor parameters must be positive");
    }

    const auto& ch = cfg.channel;
    require(ch.env_A > 0.0, "invariant violation: env_A must be > 0");
    require(ch.env_B > 0.0, "invariant violation: env_B must be > 0");
    require(ch.eta_l > 0.0, "invariant violation: eta_l must be > 0");
    require(ch.eta_n > 0.0, "invariant violation: eta_n must be > 0");
    require(ch.alpha_l > 2.0, "invariant violation: alpha_l must be > 2");
    require(ch.alpha_n > 2.0, "invariant violation: alpha_n must be > 2");
    require(ch.alpha_t > 2.0, "invariant violation: alpha_t must be > 2");
    require(ch.m_l >= 1, "invariant violation: m_l must be a positive integer");
    require(ch.m_n >= 1, "invariant violation: m_n must be a positive integer");
    require(ch.rho_u > 0.0, "invariant violation: rho_u must be > 0");
    require(ch.theta > 0.0, "invariant violation: theta must be > 0");
    require(ch.sigma2 >= 0.0, "invariant violation: sigma2 must be >= 0");
}

Config default_config() {
    Config cfg;
    cfg.net.lambda_c = 5e-7;
    cfg.net.ratio = 10.0;
    cfg.net.lambda_u = cfg.net.ratio * cfg.net.lambda_c;
    cfg.net.capacity_c = 3;
    cfg.net.pv_fit_a = 3.5;
    cfg.net.pv_fit_b = 3.5;
    cfg.net.r_c = 120.0;
    cfg.net.h = 60.0;

    cfg.energy.b_max = 88.8 * 3600.0;  // 88.8 W*h
    cfg.energy.p_m = 161.8;
    cfg.energy.p_s = 177.5;
    cfg.energy.e_l = 2184.0;
    cfg.energy.v = 18.46;
    cfg.energy.a_ave = 3.24;
    cfg.energy.t_ch = 5.0 * 60.0;  // 5 min

    cfg.channel.env_A = 25.27;
    cfg.channel.env_B = 0.5;
    cfg.channel.eta_l = 1.0;                       // 0 dB
    cfg.channel.eta_n = std::pow(10.0, 20.0 / 10.0);  // 20 dB
    cfg.channel.alpha_l = 2.1;
    cfg.channel.alpha_n = 4.0;
    cfg.channel.alpha_t = 4.0;
    cfg.channel.m_l = 3;
    cfg.channel.m_n = 1;
    cfg.channel.rho_u = 0.2;
    cfg.channel.theta = 1.0;  // 0 dB
    cfg.channel.sigma2 = 1e-9;
    validate(cfg);
    return cfg;
}

namespace {

struct Entry {
    double value;
    int line;
};

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "lambda_c", "ratio", "capacity_c", "pv_fit_a", "pv_fit_b", "r_c", "h",
        "b_max", "b_max_wh", "p_m", "p_s", "e_l", "v", "a_ave", "t_ch", "t_ch_min",
        "env_A", "env_B", "eta_l", "eta_l_db", "eta_n", "eta_n_db",
        "alpha_l", "alpha_n", "alpha_t", "m_l", "m_n", "rho_u",
        "theta", "theta_db", "sigma2",
        "p_0", "p_i", "u_tip", "v_0", "d_0", "rho_air", "rotor_solidity_s", "rotor_area_A"};
    return keys;
}

class KeyMap {
  public:
    void insert(const std::string& key, double value, int line) {
        if (!known_keys().count(key)) {
            throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
        if (entries_.count(key)) {
            throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
        }
        entries_[key] = Entry{value, line};
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    double get(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw ConfigError("missing required key '" + key + "'");
        used_.insert(key);
        return it->second.value;
    }

    // Plain key or its unit-suffixed variant; exactly one must be present.
    double get_converted(const std::string& key, const std::string& suffix, double factor_kind) const {
        const std::string alt = key + suffix;
        const bool hp = has(key);
        const bool ha = has(alt);
        if (hp && ha) throw ConfigError("keys '" + key + "' and '" + alt + "' both present");
        if (ha) {
            const double raw = get(alt);
            if (suffix == "_db") return std::pow(10.0, raw / 10.0);
            return raw * factor_kind;
        }
        return get(key);
    }

    int get_int(const std::string& key) const {
        const double raw = get(key);
        if (!is_integer_valued(raw)) {
            throw ConfigError("key '" + key + "' must be an integer, got " + fmt(raw));
        }
        return static_cast<int>(raw);
    }

  private:
    std::map<std::string, Entry> entries_;
    mutable std::set<std::string> used_;
};

}  // namespace

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);

    KeyMap kv;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        double value = 0.0;
        std::size_t consumed = 0;
        try {
            value = std::stod(val, &consumed);
        } catch (const std::exception&) {
            throw ConfigError("line " + std::to_string(lineno) + ": cannot parse value '" + val + "'");
        }
        if (consumed != val.size()) {
            throw ConfigError("line " + std::to_string(lineno) + ": trailing text after value '" + val + "'");
        }
        kv.insert(key, value, lineno);
    }

    Config cfg;
    cfg.net.lambda_c = kv.get("lambda_c");
    cfg.net.ratio = kv.get("ratio");
    cfg.net.lambda_u = cfg.net.ratio * cfg.net.lambda_c;
    cfg.net.capacity_c = kv.get_int("capacity_c");
    cfg.net.pv_fit_a = kv.get("pv_fit_a");
    cfg.net.pv_fit_b = kv.get("pv_fit_b");
    cfg.net.r_c = kv.get("r_c");
    cfg.net.h = kv.get("h");

    cfg.energy.b_max = kv.get_converted("b_max", "_wh", 3600.0);
    cfg.energy.p_m = kv.get("p_m");
    cfg.energy.p_s = kv.get("p_s");
    cfg.energy.e_l = kv.get("e_l");
    cfg.energy.v = kv.get("v");
    cfg.energy.a_ave = kv.get("a_ave");
    cfg.energy.t_ch = kv.get_converted("t_ch", "_min", 60.0);

    cfg.channel.env_A = kv.get("env_A");
    cfg.channel.env_B = kv.get("env_B");
    cfg.channel.eta_l = kv.get_converted("eta_l", "_db", 0.0);
    cfg.channel.eta_n = kv.get_converted("eta_n", "_db", 0.0);
    cfg.channel.alpha_l = kv.get("alpha_l");
    cfg.channel.alpha_n = kv.get("alpha_n");
    cfg.channel.alpha_t = kv.get("alpha_t");
    cfg.channel.m_l = kv.get_int("m_l");
    cfg.channel.m_n = kv.get_int("m_n");
    cfg.channel.rho_u = kv.get("rho_u");
    cfg.channel.theta = kv.get_converted("theta", "_db", 0.0);
    cfg.channel.sigma2 = kv.get("sigma2");

    const char* rotor_keys[8] = {"p_0", "p_i", "u_tip", "v_0", "d_0",
                                 "rho_air", "rotor_solidity_s", "rotor_area_A"};
    int present = 0;
    for (const char* k : rotor_keys) present += kv.has(k) ? 1 : 0;
    if (present == 8) {
        RotorParams r;
        r.p_0 = kv.get("p_0");
        r.p_i = kv.get("p_i");
        r.u_tip = kv.get("u_tip");
        r.v_0 = kv.get("v_0");
        r.d_0 = kv.get("d_0");
        r.rho_air = kv.get("rho_air");
        r.rotor_solidity_s = kv.get("rotor_solidity_s");
        r.rotor_area_A = kv.get("rotor_area_A");
        cfg.energy.rotor = r;
    } else if (present != 0) {
        throw ConfigError("rotor parameters must be given all together (8 keys) or not at all");
    }

    validate(cfg);
    return cfg;
}

void save_config(const Config& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file: " + path);
    out << "# uavnet configuration (SI units)\n";
    out << "lambda_c = " << fmt(cfg.net.lambda_c) << "\n";
    out << "ratio = " << fmt(cfg.net.ratio) << "\n";
    out << "capacity_c = " << cfg.net.capacity_c << "\n";
    out << "pv_fit_a = " << fmt(cfg.net.pv_fit_a) << "\n";
    out << "pv_fit_b = " << fmt(cfg.net.pv_fit_b) << "\n";
    out << "r_c = " << fmt(cfg.net.r_c) << "\n";
    out << "h = " << fmt(cfg.net.h) << "\n";
    out << "b_max = " << fmt(cfg.energy.b_max) << "\n";
    out << "p_m = " << fmt(cfg.energy.p_m) << "\n";
    out << "p_s = " << fmt(cfg.energy.p_s) << "\n";
    out << "e_l = " << fmt(cfg.energy.e_l) << "\n";
    out << "v = " << fmt(cfg.energy.v) << "\n";
    out << "a_ave = " << fmt(cfg.energy.a_ave) << "\n";
    out << "t_ch = " << fmt(cfg.energy.t_ch) << "\n";
    out << "env_A = " << fmt(cfg.channel.env_A) << "\n";
    out << "env_B = " << fmt(cfg.channel.env_B) << "\n";
    out << "eta_l = " << fmt(cfg.channel.eta_l) << "\n";
    out << "eta_n = " << fmt(cfg.channel.eta_n) << "\n";
    out << "alpha_l = " << fmt(cfg.channel.alpha_l) << "\n";
    out << "alpha_n = " << fmt(cfg.channel.alpha_n) << "\n";
    out << "alpha_t = " << fmt(cfg.channel.alpha_t) << "\n";
    out << "m_l = " << cfg.channel.m_l << "\n";
    out << "m_n = " << cfg.channel.m_n << "\n";
    out << "rho_u = " << fmt(cfg.channel.rho_u) << "\n";
    out << "theta = " << fmt(cfg.channel.theta) << "\n";
    out << "sigma2 = " << fmt(cfg.channel.sigma2) << "\n";
    if (cfg.energy.rotor) {
        const auto& r = *cfg.energy.rotor;
        out << "p_0 = " << fmt(r.p_0) << "\n";
        out << "p_i = " << fmt(r.p_i) << "\n";
        out << "u_tip = " << fmt(r.u_tip) << "\n";
        out << "v_0 = " << fmt(r.v_0) << "\n";
        out << "d_0 = " << fmt(r.d_0) << "\n";
        out << "rho_air = " << fmt(r.rho_air) << "\n";
        out << "rotor_solidity_s = " << fmt(r.rotor_solidity_s) << "\n";
        out << "rotor_area_A = " << fmt(r.rotor_area_A) << "\n";
    }
}

}  // namespace uavnet
