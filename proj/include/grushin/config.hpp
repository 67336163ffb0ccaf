#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace grushin {

/// Sectioned key=value config ([domain], [solver], [pme], [constants],
/// [identity], [run]); '#' starts a comment. Unknown keys are rejected by
/// name when the consumer enumerates its section.
class RunConfig {
public:
    RunConfig() = default;
    static RunConfig from_file(const std::string& path);
    static RunConfig from_string(const std::string& text);

    void set(const std::string& section, const std::string& key, const std::string& value);
    bool has(const std::string& section, const std::string& key) const;
    std::optional<std::string> get(const std::string& section, const std::string& key) const;

    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& section, const std::string& key,
                                        const std::vector<double>& fallback) const;
    std::vector<std::string> get_string_list(const std::string& section, const std::string& key,
                                             const std::vector<std::string>& fallback) const;

    /// Throws std::invalid_argument naming the first key of `section` that is
    /// not in `known`.
    void reject_unknown(const std::string& section, const std::vector<std::string>& known) const;
    std::vector<std::string> sections() const;

private:
    std::map<std::string, std::map<std::string, std::string>> data_;
};

} // namespace grushin
