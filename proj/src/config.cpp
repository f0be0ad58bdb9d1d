#include "uwb/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "uwb/rng.hpp"

namespace uwb {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw std::runtime_error("config error (" + origin + "): " + what);
}

double num(const json& j, const char* key, const std::string& origin) {
    if (!j.contains(key)) fail(origin, std::string("missing field '") + key + "'");
    if (!j[key].is_number()) fail(origin, std::string("field '") + key + "' must be a number");
    return j[key].get<double>();
}

double num_or(const json& j, const char* key, double fallback) {
    return j.contains(key) ? j[key].get<double>() : fallback;
}

}  // namespace

SimConfig parse_config(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(origin, e.what());
    }

    SimConfig cfg;
    const double fs = num(j, "sample_rate_ghz", origin) * 1e9;

    if (!j.contains("pulse")) fail(origin, "missing 'pulse' table");
    const json& jp = j["pulse"];
    cfg.pulse.tau = num(jp, "tau_ns", origin + "/pulse") * 1e-9;
    cfg.pulse.sample_rate = fs;
    cfg.pulse.support_half_width =
        num_or(jp, "support_half_width_ns", 2.0 * cfg.pulse.tau * 1e9) * 1e-9;

    if (!j.contains("frame")) fail(origin, "missing 'frame' table");
    const json& jf = j["frame"];
    cfg.frame.frame_duration = num(jf, "duration_ns", origin + "/frame") * 1e-9;
    cfg.frame.chip_duration = num(jf, "chip_ns", origin + "/frame") * 1e-9;
    cfg.frame.th_cardinality = static_cast<int>(num(jf, "cardinality", origin + "/frame"));
    cfg.frame.sample_rate = fs;
    cfg.frame.frames_per_symbol =
        static_cast<int>(num_or(jf, "frames_per_symbol", 1));

    if (!j.contains("channel")) fail(origin, "missing 'channel' table");
    const json& jc = j["channel"];
    const std::string type = jc.value("type", "");
    if (type == "awgn") {
        cfg.channel = ChannelKind::awgn;
    } else if (type == "sv") {
        cfg.channel = ChannelKind::sv;
        cfg.sv.cluster_arrival_rate = num_or(jc, "cluster_rate_per_ns", cfg.sv.cluster_arrival_rate);
        cfg.sv.ray_arrival_rate = num_or(jc, "ray_rate_per_ns", cfg.sv.ray_arrival_rate);
        cfg.sv.cluster_decay = num_or(jc, "cluster_decay_ns", cfg.sv.cluster_decay);
        cfg.sv.ray_decay = num_or(jc, "ray_decay_ns", cfg.sv.ray_decay);
        cfg.sv.max_excess_delay = num_or(jc, "max_excess_delay_ns", cfg.sv.max_excess_delay);
        cfg.sv.sample_rate = fs;
    } else {
        fail(origin + "/channel", "type must be 'awgn' or 'sv'");
    }

    if (!j.contains("noise")) fail(origin, "missing 'noise' table");
    cfg.sinr_db = num(j["noise"], "sinr_db", origin + "/noise");
    cfg.p = num(j["noise"], "p", origin + "/noise");

    if (!j.contains("sweep") || !j["sweep"].contains("snr_db"))
        fail(origin, "missing 'sweep.snr_db'");
    for (const auto& v : j["sweep"]["snr_db"]) {
        if (!v.is_number()) fail(origin + "/sweep", "snr_db entries must be numbers");
        cfg.snr_grid_db.push_back(v.get<double>());
    }

    if (!j.contains("receivers") || !j["receivers"].is_array() || j["receivers"].empty())
        fail(origin, "missing or empty 'receivers' array");
    for (const auto& jr : j["receivers"]) {
        const std::string rtype = jr.value("type", "");
        if (rtype == "conventional") {
            cfg.receivers.push_back(ReceiverSpec::conventional());
        } else if (rtype == "blanking") {
            if (jr.value("optimal", false)) {
                cfg.receivers.push_back(ReceiverSpec::blanking_opt());
            } else {
                if (!jr.contains("threshold"))
                    fail(origin + "/receivers", "blanking needs 'threshold' or 'optimal'");
                cfg.receivers.push_back(
                    ReceiverSpec::blanking_fixed(jr["threshold"].get<double>()));
            }
        } else if (rtype == "cda") {
            if (jr.contains("mu")) {
                cfg.receivers.push_back(ReceiverSpec::cda_mu(jr["mu"].get<double>()));
            } else if (jr.contains("kappa")) {
                cfg.receivers.push_back(ReceiverSpec::cda_kappa(jr["kappa"].get<double>()));
            } else {
                fail(origin + "/receivers", "cda needs 'mu' or 'kappa'");
            }
        } else {
            fail(origin + "/receivers", "unknown receiver type '" + rtype + "'");
        }
        if (jr.contains("label"))
            cfg.receivers.back().label = jr["label"].get<std::string>();
    }

    if (j.contains("run")) {
        const json& jrun = j["run"];
        cfg.max_bits = static_cast<std::uint64_t>(num_or(jrun, "max_bits", 1e6));
        cfg.min_errors = static_cast<std::uint64_t>(num_or(jrun, "min_errors", 100));
        cfg.master_seed = static_cast<std::uint64_t>(num_or(jrun, "master_seed", 1));
    }
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config error: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

std::string canonical_config(const SimConfig& cfg) {
    json j;
    const double fs_ghz = cfg.pulse.sample_rate / 1e9;
    j["sample_rate_ghz"] = fs_ghz;
    j["pulse"] = {{"tau_ns", cfg.pulse.tau * 1e9},
                  {"support_half_width_ns",
                   cfg.pulse.support_half_width * 1e9}};
    j["frame"] = {{"duration_ns", cfg.frame.frame_duration * 1e9},
                  {"chip_ns", cfg.frame.chip_duration * 1e9},
                  {"cardinality", cfg.frame.th_cardinality},
                  {"frames_per_symbol", cfg.frame.frames_per_symbol}};
    if (cfg.channel == ChannelKind::awgn) {
        j["channel"] = {{"type", "awgn"}};
    } else {
        j["channel"] = {{"type", "sv"},
                        {"cluster_rate_per_ns", cfg.sv.cluster_arrival_rate},
                        {"ray_rate_per_ns", cfg.sv.ray_arrival_rate},
                        {"cluster_decay_ns", cfg.sv.cluster_decay},
                        {"ray_decay_ns", cfg.sv.ray_decay},
                        {"max_excess_delay_ns", cfg.sv.max_excess_delay}};
    }
    j["noise"] = {{"sinr_db", cfg.sinr_db},
                  {"p", cfg.p}};
    json grid = json::array();
    for (double v : cfg.snr_grid_db) grid.push_back(v);
    j["sweep"] = {{"snr_db", grid}};
    json rxs = json::array();
    for (const auto& r : cfg.receivers) {
        json jr;
        switch (r.kind) {
            case ReceiverKind::conventional:
                jr["type"] = "conventional";
                break;
            case ReceiverKind::blanking:
                jr["type"] = "blanking";
                if (r.optimal_threshold)
                    jr["optimal"] = true;
                else
                    jr["threshold"] = r.threshold;
                break;
            case ReceiverKind::cda:
                jr["type"] = "cda";
                if (r.mu > 0.0)
                    jr["mu"] = r.mu;
                else
                    jr["kappa"] = r.kappa;
                break;
        }
        jr["label"] = r.label;
        rxs.push_back(jr);
    }
    j["receivers"] = rxs;
    j["run"] = {{"max_bits", cfg.max_bits},
                {"min_errors", cfg.min_errors},
                {"master_seed", cfg.master_seed}};
    return j.dump(2);
}

std::string config_hash(const SimConfig& cfg) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical_config(cfg))));
    return buf;
}

std::vector<ReceiverSpec> parse_receiver_list(const std::string& text) {
    std::vector<ReceiverSpec> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto colon = item.find(':');
        const std::string head = item.substr(0, colon);
        const std::string arg = colon == std::string::npos ? "" : item.substr(colon + 1);
        if (head == "conventional") {
            out.push_back(ReceiverSpec::conventional());
        } else if (head == "blanking") {
            if (arg == "topt") {
                out.push_back(ReceiverSpec::blanking_opt());
            } else {
                const auto eq = arg.find('=');
                const std::string val = eq == std::string::npos ? arg : arg.substr(eq + 1);
                if (val.empty())
                    throw std::runtime_error("blanking receiver needs ':T=<value>' or ':topt'");
                out.push_back(ReceiverSpec::blanking_fixed(std::stod(val)));
            }
        } else if (head == "cda") {
            const auto eq = arg.find('=');
            const std::string key = eq == std::string::npos ? "" : arg.substr(0, eq);
            const std::string val = eq == std::string::npos ? "" : arg.substr(eq + 1);
            if (key == "mu") {
                out.push_back(ReceiverSpec::cda_mu(std::stod(val)));
            } else if (key == "kappa") {
                out.push_back(ReceiverSpec::cda_kappa(std::stod(val)));
            } else {
                throw std::runtime_error("cda receiver needs ':mu=<v>' or ':kappa=<v>'");
            }
        } else {
            throw std::runtime_error("unknown receiver '" + head + "'");
        }
    }
    if (out.empty()) throw std::runtime_error("empty receiver list");
    return out;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double start, step, stop;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &step, &stop) != 3 ||
            step <= 0)
            throw std::runtime_error("grid must be start:step:stop with step > 0");
        for (double v = start; v <= stop + 1e-12; v += step) out.push_back(v);
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::runtime_error("empty grid '" + text + "'");
    return out;
}

}  // namespace uwb
