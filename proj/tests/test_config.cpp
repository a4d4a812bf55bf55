#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "uavnet/config.hpp"

using namespace uavnet;

namespace {

std::string write_temp(const std::string& body) {
    static int counter = 0;
    std::string path = "cfg_test_" + std::to_string(counter++) + ".tmp";
    std::ofstream out(path);
    out << body;
    return path;
}

std::string full_config_body() {
    return "# test config\n"
           "lambda_c = 5e-7\n"
           "ratio = 10\n"
           "capacity_c = 3\n"
           "pv_fit_a = 3.5\n"
           "pv_fit_b = 3.5\n"
           "r_c = 120\n"
           "h = 60\n"
           "b_max_wh = 88.8\n"
           "p_m = 161.8\n"
           "p_s = 177.5\n"
           "e_l = 2184\n"
           "v = 18.46\n"
           "a_ave = 3.24\n"
           "t_ch_min = 5\n"
           "env_A = 25.27\n"
           "env_B = 0.5\n"
           "eta_l_db = 0\n"
           "eta_n_db = 20\n"
           "alpha_l = 2.1\n"
           "alpha_n = 4\n"
           "alpha_t = 4\n"
           "m_l = 3\n"
           "m_n = 1\n"
           "rho_u = 0.2\n"
           "theta_db = 0\n"
           "sigma2 = 1e-9\n";
}

std::string replace_line(std::string body, const std::string& key, const std::string& line) {
    const auto pos = body.find(key);
    const auto end = body.find('\n', pos);
    body.replace(pos, end - pos, line);
    return body;
}

}  // namespace

TEST_CASE("default config carries the experiment values") {
    const Config cfg = default_config();
    CHECK(cfg.net.lambda_c == 5e-7);
    CHECK(cfg.net.pv_fit_a == 3.5);
    CHECK(cfg.energy.e_l == 2184.0);
    CHECK(cfg.energy.b_max == doctest::Approx(319680.0));  // 88.8 Wh -> J
    CHECK(cfg.energy.p_m == 161.8);
    CHECK(cfg.energy.p_s == 177.5);
    CHECK(cfg.energy.t_ch == 300.0);
    CHECK(cfg.energy.v == 18.46);
    CHECK(cfg.energy.a_ave == 3.24);
    CHECK(cfg.net.h == 60.0);
    CHECK(cfg.net.r_c == 120.0);
    CHECK(cfg.channel.env_A == 25.27);
    CHECK(cfg.channel.env_B == 0.5);
    CHECK(cfg.channel.eta_n == doctest::Approx(100.0).epsilon(1e-12));  // 20 dB
    CHECK(cfg.channel.eta_l == doctest::Approx(1.0));
    CHECK(cfg.channel.theta == doctest::Approx(1.0));  // 0 dB
    CHECK(cfg.channel.alpha_l == 2.1);
    CHECK(cfg.channel.alpha_n == 4.0);
    CHECK(cfg.channel.alpha_t == 4.0);
    CHECK(cfg.channel.m_l == 3);
    CHECK(cfg.channel.m_n == 1);
    CHECK(cfg.channel.rho_u == 0.2);
    CHECK(cfg.channel.sigma2 == 1e-9);
    CHECK(cfg.net.lambda_u == cfg.net.ratio * cfg.net.lambda_c);
}

TEST_CASE("load echoes values and applies unit conversions") {
    const std::string path = write_temp(full_config_body());
    const Config cfg = load_config(path);
    CHECK(cfg.net.lambda_c == 5e-7);
    CHECK(cfg.net.ratio == 10.0);
    CHECK(cfg.net.capacity_c == 3);
    CHECK(cfg.channel.theta == doctest::Approx(1.0));
    CHECK(cfg.channel.eta_n == doctest::Approx(100.0));
    CHECK(cfg.energy.t_ch == 300.0);
    CHECK(cfg.energy.b_max == doctest::Approx(319680.0));
    CHECK(!cfg.energy.rotor.has_value());
    std::remove(path.c_str());
}

TEST_CASE("invariant violations name the offending field") {
    const std::string path =
        write_temp(replace_line(full_config_body(), "capacity_c", "capacity_c = 0"));
    bool threw = false;
    try {
        load_config(path);
    } catch (const ConfigError& e) {
        threw = true;
        CHECK(std::string(e.what()).find("capacity_c") != std::string::npos);
    }
    CHECK(threw);
    std::remove(path.c_str());
}

TEST_CASE("unknown, duplicate and malformed keys are rejected with line numbers") {
    {
        const std::string path = write_temp(full_config_body() + "bogus_key = 1\n");
        CHECK_THROWS_AS(load_config(path), ConfigError);
        std::remove(path.c_str());
    }
    {
        const std::string path = write_temp(full_config_body() + "ratio = 11\n");
        bool threw = false;
        try {
            load_config(path);
        } catch (const ConfigError& e) {
            threw = true;
            CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
        }
        CHECK(threw);
        std::remove(path.c_str());
    }
    {
        const std::string path = write_temp(full_config_body() + "h 61\n");
        CHECK_THROWS_AS(load_config(path), ConfigError);
        std::remove(path.c_str());
    }
    {
        // Conflicting plain and suffixed keys.
        const std::string path = write_temp(full_config_body() + "t_ch = 300\n");
        CHECK_THROWS_AS(load_config(path), ConfigError);
        std::remove(path.c_str());
    }
}

TEST_CASE("battery smaller than two landings is rejected") {
    const std::string body = replace_line(
        replace_line(full_config_body(), "b_max_wh", "b_max = 4000"), "e_l", "e_l = 2100");
    const std::string path = write_temp(body);
    CHECK_THROWS_AS(load_config(path), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("rotor parameters load all-or-nothing") {
    {
        const std::string path = write_temp(full_config_body() +
                                            "p_0 = 79.86\np_i = 88.63\nu_tip = 120\nv_0 = 4.03\n"
                                            "d_0 = 0.6\nrho_air = 1.225\nrotor_solidity_s = 0.05\n"
                                            "rotor_area_A = 0.503\n");
        const Config cfg = load_config(path);
        REQUIRE(cfg.energy.rotor.has_value());
        CHECK(cfg.energy.rotor->u_tip == 120.0);
        std::remove(path.c_str());
    }
    {
        const std::string path = write_temp(full_config_body() + "p_0 = 79.86\n");
        CHECK_THROWS_AS(load_config(path), ConfigError);
        std::remove(path.c_str());
    }
}

TEST_CASE("save-load round trip is bit identical") {
    const std::string path = write_temp(full_config_body());
    const Config cfg = load_config(path);
    save_config(cfg, "cfg_roundtrip.tmp");
    const Config cfg2 = load_config("cfg_roundtrip.tmp");
    CHECK(cfg2.net.lambda_c == cfg.net.lambda_c);
    CHECK(cfg2.net.ratio == cfg.net.ratio);
    CHECK(cfg2.net.lambda_u == cfg.net.lambda_u);
    CHECK(cfg2.energy.b_max == cfg.energy.b_max);
    CHECK(cfg2.energy.v == cfg.energy.v);
    CHECK(cfg2.channel.eta_n == cfg.channel.eta_n);
    CHECK(cfg2.channel.theta == cfg.channel.theta);
    CHECK(cfg2.channel.alpha_l == cfg.channel.alpha_l);
    CHECK(cfg2.channel.sigma2 == cfg.channel.sigma2);
    std::remove(path.c_str());
    std::remove("cfg_roundtrip.tmp");
}
