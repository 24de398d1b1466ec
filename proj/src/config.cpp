#include "oment/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "oment/errors.hpp"

namespace oment {

namespace {

double parse_number(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw InvalidParams("config key '" + key + "' expects a number, got '" + value + "'");
    }
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void RunConfig::apply(const std::string& key, const std::string& value) {
    double* slot = nullptr;
    if (key == "gamma") slot = &system.gamma;
    else if (key == "kappa1") slot = &system.kappa1;
    else if (key == "kappa2") slot = &system.kappa2;
    else if (key == "g1") slot = &system.g1;
    else if (key == "g2") slot = &system.g2;
    else if (key == "nm") slot = &system.nm;
    else if (key == "n1") slot = &system.n1;
    else if (key == "n2") slot = &system.n2;
    else if (key == "omega") slot = &filter.center;
    else if (key == "sigma") slot = &filter.bandwidth;
    else if (key == "tau1") slot = &filter.tau1;
    else if (key == "tau2") slot = &filter.tau2;
    if (slot) {
        *slot = parse_number(key, value);
        return;
    }
    options[key] = value;
}

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "config line " << lineno << " is not key=value: '" << line << "'";
            throw InvalidParams(os.str());
        }
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidParams("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace oment
