#include "ecoepi/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ecoepi/error.hpp"

namespace ecoepi {

IntegratorConfig ScenarioConfig::integrator() const {
    IntegratorConfig cfg;
    cfg.t_end = t_end;
    cfg.rtol = rtol;
    cfg.atol = atol;
    cfg.output_stride = output_stride;
    return cfg;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw Error(ErrorKind::Config, "line " + std::to_string(line) + ": " + msg);
}

double parse_number(std::string_view text, int line, std::string_view key) {
    double v = 0.0;
    // from_chars rejects a leading '+'
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
        fail(line, "malformed number '" + std::string(text) + "' for key '" + std::string(key) + "'");
    return v;
}

bool parse_bool(std::string_view text, int line) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (lower == "true" || lower == "1" || lower == "yes") return true;
    if (lower == "false" || lower == "0" || lower == "no") return false;
    fail(line, "malformed boolean '" + std::string(text) + "' for key 'disease_free'");
}

const std::set<std::string_view>& run_keys() {
    static const std::set<std::string_view> keys{"s0", "i0", "v0", "p0", "t_end", "rtol", "atol",
                                                 "output_stride", "disease_free", "label"};
    return keys;
}

std::string format_exact(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
    ScenarioConfig cfg;
    std::set<std::string> seen;
    int line_no = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));

        const bool model_key = get_param(cfg.params, key).has_value();
        if (!model_key && !run_keys().count(key)) fail(line_no, "unknown key '" + key + "'");
        if (!seen.insert(key).second) fail(line_no, "duplicate key '" + key + "'");

        if (key == "label") {
            cfg.label = std::string(value);
            continue;
        }
        if (key == "disease_free") {
            cfg.disease_free = parse_bool(value, line_no);
            continue;
        }
        const double v = parse_number(value, line_no, key);
        if (v < 0.0) fail(line_no, "negative value for '" + key + "'");
        if (model_key) {
            set_param(cfg.params, key, v);
        } else if (key == "s0") {
            cfg.initial.S = v;
        } else if (key == "i0") {
            cfg.initial.I = v;
        } else if (key == "v0") {
            cfg.initial.V = v;
        } else if (key == "p0") {
            cfg.initial.P = v;
        } else if (key == "t_end") {
            cfg.t_end = v;
        } else if (key == "rtol" || key == "atol") {
            if (v == 0.0) fail(line_no, "'" + key + "' must be positive");
            (key == "rtol" ? cfg.rtol : cfg.atol) = v;
        } else if (key == "output_stride") {
            cfg.output_stride = v;
        }
    }

    std::string missing;
    for (auto key : param_keys())
        if (!seen.count(std::string(key))) missing += (missing.empty() ? "" : ", ") + std::string(key);
    if (!missing.empty()) throw Error(ErrorKind::Config, "missing required keys: " + missing);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
    std::ostringstream os;
    if (!cfg.label.empty()) os << "label = " << cfg.label << '\n';
    os << "disease_free = " << (cfg.disease_free ? "true" : "false") << '\n';
    for (auto key : param_keys()) os << key << " = " << format_exact(*get_param(cfg.params, key)) << '\n';
    os << "s0 = " << format_exact(cfg.initial.S) << '\n'
       << "i0 = " << format_exact(cfg.initial.I) << '\n'
       << "v0 = " << format_exact(cfg.initial.V) << '\n'
       << "p0 = " << format_exact(cfg.initial.P) << '\n'
       << "t_end = " << format_exact(cfg.t_end) << '\n'
       << "rtol = " << format_exact(cfg.rtol) << '\n'
       << "atol = " << format_exact(cfg.atol) << '\n'
       << "output_stride = " << format_exact(cfg.output_stride) << '\n';
    return os.str();
}

}  // namespace ecoepi
