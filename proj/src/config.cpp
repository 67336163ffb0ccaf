#include "grushin/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace grushin {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

RunConfig RunConfig::from_string(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config: malformed section header at line " +
                                            std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key=value at line " +
                                        std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: empty key at line " + std::to_string(lineno));
        cfg.set(section, key, value);
    }
    return cfg;
}

void RunConfig::set(const std::string& section, const std::string& key, const std::string& value) {
    data_[section][key] = value;
}

bool RunConfig::has(const std::string& section, const std::string& key) const {
    const auto s = data_.find(section);
    return s != data_.end() && s->second.count(key) > 0;
}

std::optional<std::string> RunConfig::get(const std::string& section, const std::string& key) const {
    const auto s = data_.find(section);
    if (s == data_.end()) return std::nullopt;
    const auto it = s->second.find(key);
    if (it == s->second.end()) return std::nullopt;
    return it->second;
}

double RunConfig::get_double(const std::string& section, const std::string& key,
                             double fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    try {
        std::size_t pos = 0;
        const double d = std::stod(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw std::invalid_argument("config: [" + section + "] " + key +
                                    " is not a number: " + *v);
    }
}

int RunConfig::get_int(const std::string& section, const std::string& key, int fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    try {
        std::size_t pos = 0;
        const int d = std::stoi(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw std::invalid_argument("config: [" + section + "] " + key +
                                    " is not an integer: " + *v);
    }
}

std::string RunConfig::get_string(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
    const auto v = get(section, key);
    return v ? *v : fallback;
}

bool RunConfig::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw std::invalid_argument("config: [" + section + "] " + key + " is not a boolean: " + *v);
}

std::vector<double> RunConfig::get_double_list(const std::string& section, const std::string& key,
                                               const std::vector<double>& fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    std::vector<double> out;
    std::istringstream ss(*v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw std::invalid_argument("config: [" + section + "] " + key +
                                        " has a bad list entry: " + tok);
        }
    }
    return out;
}

std::vector<std::string> RunConfig::get_string_list(const std::string& section,
                                                    const std::string& key,
                                                    const std::vector<std::string>& fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    std::vector<std::string> out;
    std::istringstream ss(*v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

void RunConfig::reject_unknown(const std::string& section,
                               const std::vector<std::string>& known) const {
    const auto s = data_.find(section);
    if (s == data_.end()) return;
    for (const auto& [key, value] : s->second) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument("config: unknown key '" + key + "' in section [" +
                                        section + "]");
    }
}

std::vector<std::string> RunConfig::sections() const {
    std::vector<std::string> out;
    for (const auto& [name, kv] : data_) out.push_back(name);
    return out;
}

} // namespace grushin
