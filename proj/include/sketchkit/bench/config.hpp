#pragma once

#include "sketchkit/sketch/test_matrix.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sketchkit {

enum class KeyType { Int, Real, String, IntList, RealList, StringList };

struct KeySpec {
    std::string name;
    KeyType type;
    std::string default_value;
    std::string help;
};

// Flat key-value description of one benchmark run. Every key belongs to the
// command's table; values are type-checked when set.
class ExperimentConfig {
  public:
    ExperimentConfig(std::string command, std::vector<KeySpec> keys);

    const std::string& command() const { return command_; }
    const std::vector<KeySpec>& keys() const { return keys_; }
    bool has_key(const std::string& key) const;

    // Throws ConfigError naming the key when it is unknown or the value does
    // not parse as the declared type.
    void set(const std::string& key, const std::string& value);
    // "key = value" or "key value" per line; '#' starts a comment.
    void load_file(const std::string& path);
    bool was_set(const std::string& key) const { return explicit_.count(key) > 0; }

    std::int64_t get_int(const std::string& key) const;
    double get_real(const std::string& key) const;
    const std::string& get_string(const std::string& key) const;
    std::vector<std::int64_t> get_int_list(const std::string& key) const;
    std::vector<double> get_real_list(const std::string& key) const;
    std::vector<std::string> get_string_list(const std::string& key) const;
    std::uint64_t seed() const { return std::uint64_t(get_int("seed")); }

  private:
    const KeySpec& spec(const std::string& key) const;

    std::string command_;
    std::vector<KeySpec> keys_;
    std::map<std::string, std::string> values_;
    std::map<std::string, bool> explicit_;
};

std::vector<std::string> split_list(const std::string& s);

// Key table shared by commands that take a test-matrix family.
std::vector<KeySpec> family_keys(const std::string& default_family = "gaussian");
// Builds and validates a SketchSpec from the family keys.
SketchSpec sketch_spec_from(const ExperimentConfig& cfg);

}  // namespace sketchkit
