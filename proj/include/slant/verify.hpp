#pragma once

/**
 * @file verify.hpp
 * @brief Seeded property harness re-checking the decimation calculus, the
 *        model-space machinery and every characterization identity.
 *
 * Each property is run `trials` times on every applicable menu entry. A
 * report is a pure function of the configuration.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slant/json_io.hpp"
#include "slant/model_space.hpp"

namespace slant {

struct MenuEntry {
    InnerFunction alpha;
    InnerFunction beta;
    int k = 1;
    std::string label() const;
};

/// (z^4, z^3, 2), (z^4, z^3, 5), (z^3, z^3, 2), (blaschke{0.5, -0.3}, z^3, 2).
std::vector<MenuEntry> default_menu();

struct SuiteConfig {
    std::uint64_t seed = 0;
    int trials = 50;
    std::vector<MenuEntry> menu = default_menu();
    /// When nonempty, only these properties run.
    std::vector<std::string> only;
    /// Property name -> tolerance replacing the built-in one.
    std::map<std::string, double> tolerance_overrides;
    /// When > 0, the characterization property perturbs its operator by this
    /// amount before testing membership (negative-control injection).
    double fault_injection = 0.0;

    /// Throws InvalidInput.
    void validate() const;
};

struct PropertyResult {
    std::string name;
    std::string anchor;
    int trials = 0;
    int passes = 0;
    int fails = 0;
    double worst_residual = 0.0;
    std::optional<Json> counterexample;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    int trials_per_entry = 0;
    std::vector<std::string> menu;
    std::vector<PropertyResult> properties;

    bool all_passed() const;
    const PropertyResult* find(const std::string& name) const;
    Json to_json() const;
    std::string to_text() const;
};

SuiteReport run_suite(const SuiteConfig& config);

/// Names of all registered properties, and the identities they cover.
std::vector<std::string> registered_properties();
std::vector<std::string> registered_anchors();
/// Identities the registry must cover.
std::vector<std::string> required_anchors();
/// Required anchors with no registered property.
std::vector<std::string> missing_anchors();

}  // namespace slant
