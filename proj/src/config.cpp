#include "lscd/config.hpp"

#include <fstream>

#include "lscd/error.hpp"
#include "lscd/io.hpp"

namespace lscd {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

Config Config::from_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::string section;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view line(text.data() + start,
                              (nl == std::string::npos ? text.size() : nl) - start);
        start = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3) {
                throw UsageError(origin + ":" + std::to_string(line_no) + ": malformed section");
            }
            section = trim(std::string_view(t).substr(1, t.size() - 2));
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw UsageError(origin + ":" + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(std::string_view(t).substr(0, eq));
        std::string value = trim(std::string_view(t).substr(eq + 1));
        if (key.empty()) {
            throw UsageError(origin + ":" + std::to_string(line_no) + ": empty key");
        }
        cfg.values_[section + "." + key] = value;
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open config file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_string(text, path.string());
}

bool Config::has(const std::string& section, const std::string& key) const {
    return values_.count(section + "." + key) > 0;
}

std::string Config::require(const std::string& section, const std::string& key) const {
    auto it = values_.find(section + "." + key);
    if (it == values_.end()) {
        throw UsageError(origin_ + ": missing required key '" + key + "' in section [" + section +
                         "]");
    }
    return it->second;
}

std::string Config::get(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
    auto it = values_.find(section + "." + key);
    return it == values_.end() ? fallback : it->second;
}

std::int64_t Config::get_int(const std::string& section, const std::string& key,
                             std::int64_t fallback) const {
    if (!has(section, key)) return fallback;
    try {
        return std::stoll(require(section, key));
    } catch (const std::exception&) {
        throw UsageError(origin_ + ": [" + section + "] " + key + " must be an integer");
    }
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    if (!has(section, key)) return fallback;
    try {
        return std::stod(require(section, key));
    } catch (const std::exception&) {
        throw UsageError(origin_ + ": [" + section + "] " + key + " must be a number");
    }
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    std::string v = require(section, key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw UsageError(origin_ + ": [" + section + "] " + key + " must be a boolean");
}

std::vector<std::string> Config::get_list(const std::string& section,
                                          const std::string& key) const {
    std::vector<std::string> out;
    if (!has(section, key)) return out;
    for (const auto& part : split_char(require(section, key), ',')) {
        std::string t = trim(part);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

std::string to_string(ModelKind m) {
    switch (m) {
        case ModelKind::sgns_al: return "sgns_al";
        case ModelKind::sgns_tr: return "sgns_tr";
        case ModelKind::ppmi_al: return "ppmi_al";
        case ModelKind::ppmi_tr: return "ppmi_tr";
    }
    return "sgns_tr";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "sgns_al") return ModelKind::sgns_al;
    if (s == "sgns_tr") return ModelKind::sgns_tr;
    if (s == "ppmi_al") return ModelKind::ppmi_al;
    if (s == "ppmi_tr") return ModelKind::ppmi_tr;
    throw UsageError("unknown model: " + s +
                     " (expected sgns_al, sgns_tr, ppmi_al, or ppmi_tr)");
}

bool model_is_tr(ModelKind m) { return m == ModelKind::sgns_tr || m == ModelKind::ppmi_tr; }

bool model_is_sgns(ModelKind m) { return m == ModelKind::sgns_al || m == ModelKind::sgns_tr; }

ExperimentConfig ExperimentConfig::parse(const Config& cfg) {
    ExperimentConfig ec;
    ec.corpus_dir = cfg.get("corpus", "dir", "");
    ec.bin_labels = cfg.get_list("corpus", "bins");
    ec.n_bins = static_cast<int>(cfg.get_int("corpus", "n_bins", 7));

    if (cfg.has("run", "models")) {
        ec.models.clear();
        for (const auto& m : cfg.get_list("run", "models")) {
            ec.models.push_back(model_kind_from_string(m));
        }
        if (ec.models.empty()) throw UsageError("[run] models must not be empty");
    }

    ec.preprocess.min_count = static_cast<int>(cfg.get_int("preprocess", "min_count", 100));
    ec.preprocess.allow_hyphens = cfg.get_bool("preprocess", "allow_hyphens", true);
    ec.preprocess.lowercase = cfg.get_bool("preprocess", "lowercase", true);
    if (ec.preprocess.min_count < 1) throw UsageError("[preprocess] min_count must be >= 1");

    ec.extraction.window = static_cast<int>(cfg.get_int("extraction", "window", 5));
    ec.extraction.filter_after_windowing =
        cfg.get_bool("extraction", "filter_after_windowing", false);
    if (ec.extraction.window < 1) throw UsageError("[extraction] window must be >= 1");

    ec.sgns.dim = static_cast<int>(cfg.get_int("sgns", "dim", 300));
    ec.sgns.negatives_k = static_cast<int>(cfg.get_int("sgns", "negatives", 5));
    ec.sgns.cds_alpha = cfg.get_double("sgns", "cds_alpha", 0.75);
    ec.sgns.epochs = static_cast<int>(cfg.get_int("sgns", "epochs", 1));
    ec.sgns.lr_initial = cfg.get_double("sgns", "lr_initial", 0.025);
    ec.sgns.lr_floor = cfg.get_double("sgns", "lr_floor", 1e-4);

    ec.ppmi.cds_alpha = cfg.get_double("ppmi", "cds_alpha", 0.75);
    ec.ppmi.shift_k = cfg.get_double("ppmi", "shift_k", 5.0);

    ec.pairs_file = cfg.get("injection", "pairs_file", "");
    if (cfg.has("injection", "schedule")) {
        ec.schedule = schedule_from_string(cfg.require("injection", "schedule"));
    }
    ec.auto_controls = cfg.get("injection", "controls", "file") == "frequency_matched";

    ec.wsc_file = cfg.get("exp3", "wsc_file", "");
    ec.wsc_window_start = static_cast<int>(cfg.get_int("exp3", "window_start", 1920));
    ec.wsc_window_end = static_cast<int>(cfg.get_int("exp3", "window_end", 1970));
    ec.neighbors_n = static_cast<int>(cfg.get_int("exp3", "neighbors_n", 10));

    // Seeds are explicit: no wall-clock defaults anywhere.
    if (cfg.has("run", "seeds")) {
        ec.seeds.clear();
        for (const auto& s : cfg.get_list("run", "seeds")) {
            ec.seeds.push_back(std::stoull(s));
        }
        if (ec.seeds.empty()) throw UsageError("[run] seeds must not be empty");
    }
    ec.threads = static_cast<int>(cfg.get_int("run", "threads", 1));
    ec.out_dir = cfg.get("run", "out", "");
    return ec;
}

namespace {

void check_corpus_and_out(const ExperimentConfig& ec) {
    if (ec.corpus_dir.empty()) throw UsageError("[corpus] dir is required");
    if (!std::filesystem::is_directory(ec.corpus_dir)) {
        throw UsageError("[corpus] dir does not exist: " + ec.corpus_dir.string());
    }
    if (ec.out_dir.empty()) throw UsageError("[run] out is required");
    if (ec.threads < 1) throw UsageError("[run] threads must be >= 1");
}

}  // namespace

void ExperimentConfig::validate_exp1() const {
    check_corpus_and_out(*this);
    if (seeds.size() != 1) {
        throw UsageError("exp1 uses exactly one seed ([run] seeds = <n>)");
    }
}

void ExperimentConfig::validate_exp2() const {
    check_corpus_and_out(*this);
    if (pairs_file.empty()) throw UsageError("[injection] pairs_file is required for exp2");
    if (!std::filesystem::exists(pairs_file)) {
        throw UsageError("[injection] pairs_file does not exist: " + pairs_file.string());
    }
    if (n_bins < 2) throw UsageError("[corpus] n_bins must be >= 2");
    schedule.validate(static_cast<std::size_t>(n_bins));
}

void ExperimentConfig::validate_exp3() const {
    check_corpus_and_out(*this);
    if (wsc_file.empty()) throw UsageError("[exp3] wsc_file is required");
    if (!std::filesystem::exists(wsc_file)) {
        throw UsageError("[exp3] wsc_file does not exist: " + wsc_file.string());
    }
    if (seeds.size() != 1) throw UsageError("exp3 uses exactly one seed");
}

}  // namespace lscd
