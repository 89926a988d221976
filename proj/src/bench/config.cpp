#include "sketchkit/bench/config.hpp"

#include "sketchkit/core/errors.hpp"
#include "sketchkit/sketch/distributions.hpp"
#include "sketchkit/sketch/transforms.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sketchkit {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_int(const std::string& s, std::int64_t& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    const char* first = t.data();
    if (*first == '+') ++first;
    const auto res = std::from_chars(first, t.data() + t.size(), out);
    return res.ec == std::errc() && res.ptr == t.data() + t.size();
}

bool parse_real(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    std::istringstream in(t);
    in >> out;
    return in && in.peek() == std::char_traits<char>::eof() && std::isfinite(out);
}

bool valid(KeyType type, const std::string& v) {
    std::int64_t i;
    double x;
    switch (type) {
        case KeyType::Int:
            return parse_int(v, i);
        case KeyType::Real:
            return parse_real(v, x);
        case KeyType::String:
            return true;
        case KeyType::IntList:
            for (const auto& e : split_list(v))
                if (!parse_int(e, i)) return false;
            return true;
        case KeyType::RealList:
            for (const auto& e : split_list(v))
                if (!parse_real(e, x)) return false;
            return true;
        case KeyType::StringList:
            return true;
    }
    return false;
}

const char* type_name(KeyType t) {
    switch (t) {
        case KeyType::Int:
            return "an integer";
        case KeyType::Real:
            return "a real number";
        case KeyType::String:
            return "a string";
        case KeyType::IntList:
            return "a comma-separated list of integers";
        case KeyType::RealList:
            return "a comma-separated list of reals";
        case KeyType::StringList:
            return "a comma-separated list";
    }
    return "";
}

}  // namespace

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

ExperimentConfig::ExperimentConfig(std::string command, std::vector<KeySpec> keys)
    : command_(std::move(command)), keys_(std::move(keys)) {
    for (const auto& k : keys_) values_[k.name] = k.default_value;
}

bool ExperimentConfig::has_key(const std::string& key) const { return values_.count(key) > 0; }

const KeySpec& ExperimentConfig::spec(const std::string& key) const {
    for (const auto& k : keys_)
        if (k.name == key) return k;
    throw ConfigError("unknown key '" + key + "' for command " + command_);
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    const KeySpec& s = spec(key);
    if (!valid(s.type, value)) throw ConfigError("key '" + key + "' expects " + type_name(s.type) + ", got '" + value + "'");
    values_[key] = trim(value);
    explicit_[key] = true;
}

void ExperimentConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::string key, value;
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
            key = trim(line.substr(0, eq));
            value = trim(line.substr(eq + 1));
        } else {
            const auto sp = line.find_first_of(" \t");
            key = trim(line.substr(0, sp));
            value = sp == std::string::npos ? "" : trim(line.substr(sp));
        }
        try {
            set(key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

std::int64_t ExperimentConfig::get_int(const std::string& key) const {
    std::int64_t v = 0;
    if (spec(key).type != KeyType::Int || !parse_int(values_.at(key), v))
        throw ConfigError("key '" + key + "' is not an integer");
    return v;
}

double ExperimentConfig::get_real(const std::string& key) const {
    double v = 0;
    const KeyType t = spec(key).type;
    if ((t != KeyType::Real && t != KeyType::Int) || !parse_real(values_.at(key), v))
        throw ConfigError("key '" + key + "' is not a real number");
    return v;
}

const std::string& ExperimentConfig::get_string(const std::string& key) const {
    spec(key);
    return values_.at(key);
}

std::vector<std::int64_t> ExperimentConfig::get_int_list(const std::string& key) const {
    std::vector<std::int64_t> out;
    for (const auto& e : split_list(get_string(key))) {
        std::int64_t v;
        if (!parse_int(e, v)) throw ConfigError("key '" + key + "' has a non-integer entry '" + e + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<double> ExperimentConfig::get_real_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& e : split_list(get_string(key))) {
        double v;
        if (!parse_real(e, v)) throw ConfigError("key '" + key + "' has a non-numeric entry '" + e + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<std::string> ExperimentConfig::get_string_list(const std::string& key) const {
    return split_list(get_string(key));
}

std::vector<KeySpec> family_keys(const std::string& default_family) {
    return {
        {"family", KeyType::String, default_family,
         "gaussian, sparsestack, sparseuniform, sparseiid, sparsecol, sparsertt, khatrirao"},
        {"zeta", KeyType::Real, "4", "row sparsity (sparsestack, sparseuniform, sparseiid)"},
        {"xi", KeyType::Int, "0", "column sparsity (sparsecol, sparsertt); 0 picks ceil(1.5 log k)"},
        {"transform", KeyType::String, "auto", "wht, dct, dft or auto (sparsertt)"},
        {"dist", KeyType::String, "auto", "entry, diagonal or base distribution"},
        {"d0", KeyType::Int, "2", "base dimension (khatrirao)"},
        {"ell", KeyType::Int, "0", "tensor order (khatrirao); 0 derives it from the dimension"},
        {"field", KeyType::String, "real", "real or complex"},
    };
}

SketchSpec sketch_spec_from(const ExperimentConfig& cfg) {
    SketchSpec s;
    try {
        s.family = parse_family(cfg.get_string("family"));
    } catch (const Error&) {
        throw ConfigError("key 'family' has unknown value '" + cfg.get_string("family") + "'");
    }
    if (s.family == Family::Explicit) throw ConfigError("key 'family' cannot be explicit here");
    s.zeta = cfg.get_real("zeta");
    if (!(s.zeta > 0)) throw ConfigError("key 'zeta' must be positive");
    s.xi = cfg.get_int("xi");
    if (s.xi < 0) throw ConfigError("key 'xi' must be nonnegative");
    const std::string& t = cfg.get_string("transform");
    if (t != "auto") {
        try {
            s.transform = int(parse_transform(t));
        } catch (const Error&) {
            throw ConfigError("key 'transform' has unknown value '" + t + "'");
        }
    }
    const std::string& dist = cfg.get_string("dist");
    if (dist != "auto") {
        try {
            s.dist = int(parse_entry_dist(dist));
        } catch (const Error&) {
            throw ConfigError("key 'dist' has unknown value '" + dist + "'");
        }
    }
    s.d0 = cfg.get_int("d0");
    if (s.d0 < 1) throw ConfigError("key 'd0' must be positive");
    s.ell = cfg.get_int("ell");
    if (s.ell < 0) throw ConfigError("key 'ell' must be nonnegative");
    const std::string& field = cfg.get_string("field");
    if (field != "real" && field != "complex") throw ConfigError("key 'field' must be real or complex");
    if (field == "real" && s.dist >= 0 && is_complex_dist(EntryDist(s.dist)))
        throw ConfigError("key 'dist' is a complex law but field is real");
    return s;
}

}  // namespace sketchkit
