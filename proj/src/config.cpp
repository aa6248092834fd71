#include "omega/config.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <toml.hpp>

#include "omega/error.hpp"

namespace omega {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ConfigError, what); }

json toml_to_json(const toml::node& node) {
    if (const auto* t = node.as_table()) {
        json out = json::object();
        for (const auto& [k, v] : *t) out[std::string(k.str())] = toml_to_json(v);
        return out;
    }
    if (const auto* a = node.as_array()) {
        json out = json::array();
        for (const auto& v : *a) out.push_back(toml_to_json(v));
        return out;
    }
    if (const auto* v = node.as_floating_point()) return v->get();
    if (const auto* v = node.as_integer()) return static_cast<double>(v->get());
    if (const auto* v = node.as_boolean()) return v->get();
    if (const auto* v = node.as_string()) return v->get();
    fail("unsupported TOML value type");
}

double number(const json& doc, const char* key) {
    if (!doc.contains(key)) fail(std::string("missing key: ") + key);
    const auto& v = doc.at(key);
    if (!v.is_number()) fail(std::string("key is not a number: ") + key);
    return v.get<double>();
}

double parse_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) fail("override " + key + " is not a number: " + text);
    return v;
}

const char* const kScalarKeys[] = {"gamma", "sigma", "lambda", "r", "q", "strike_K", "level_y"};

}  // namespace

LevyModel ModelConfig::model() const { return LevyModel(gamma, sigma, HyperExpJumps{lambda, phases}); }

std::vector<std::pair<std::string, std::string>> parse_overrides(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) fail("bad override: " + item);
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return out;
}

ModelConfig config_from_json(json doc, const std::vector<std::pair<std::string, std::string>>& overrides) {
    if (!doc.is_object()) fail("config root must be a table/object");
    for (const auto& [k, v] : overrides) {
        if (std::find(std::begin(kScalarKeys), std::end(kScalarKeys), k) == std::end(kScalarKeys))
            fail("unknown override key: " + k);
        doc[k] = parse_double(k, v);
    }
    ModelConfig c;
    c.gamma = number(doc, "gamma");
    c.sigma = number(doc, "sigma");
    c.lambda = number(doc, "lambda");
    c.r = number(doc, "r");
    c.q = number(doc, "q");
    c.strike_K = number(doc, "strike_K");
    if (doc.contains("level_y")) c.level_y = number(doc, "level_y");
    if (!doc.contains("phases") || !doc.at("phases").is_array()) fail("phases must be an array of {p, eta}");
    for (const auto& ph : doc.at("phases")) {
        if (!ph.is_object()) fail("each phase must be a table with p and eta");
        c.phases.push_back({number(ph, "p"), number(ph, "eta")});
    }
    for (const auto& item : doc.items()) {
        const auto& k = item.key();
        if (k != "phases" && std::find(std::begin(kScalarKeys), std::end(kScalarKeys), k) == std::end(kScalarKeys))
            fail("unknown config key: " + k);
    }
    try {
        (void)c.model();
    } catch (const Error& e) {
        fail(std::string("invalid model: ") + e.what());
    }
    if (!(c.r >= 0.0) || !(c.q > 0.0) || !(c.strike_K > 0.0)) fail("need r >= 0, q > 0, strike_K > 0");
    return c;
}

ModelConfig load_config(const std::string& path, const std::vector<std::pair<std::string, std::string>>& overrides) {
    const auto ext = std::filesystem::path(path).extension().string();
    json doc;
    if (ext == ".toml") {
        try {
            doc = toml_to_json(toml::parse_file(path));
        } catch (const toml::parse_error& e) {
            fail(std::string("TOML parse error in ") + path + ": " + std::string(e.description()));
        }
    } else if (ext == ".json") {
        std::ifstream in(path);
        if (!in) fail("cannot open config: " + path);
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            fail(std::string("JSON parse error in ") + path + ": " + e.what());
        }
    } else {
        fail("config must end in .toml or .json: " + path);
    }
    return config_from_json(std::move(doc), overrides);
}

json to_json(const ModelConfig& cfg) {
    json phases = json::array();
    for (const auto& ph : cfg.phases) phases.push_back({{"p", ph.p}, {"eta", ph.eta}});
    json out = {{"gamma", cfg.gamma}, {"sigma", cfg.sigma}, {"lambda", cfg.lambda}, {"phases", phases},
                {"r", cfg.r},         {"q", cfg.q},         {"strike_K", cfg.strike_K}};
    out["level_y"] = cfg.level_y ? json(*cfg.level_y) : json(nullptr);
    return out;
}

}  // namespace omega
