// SPDX-License-Identifier: MIT
#include "roughfunc/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "roughfunc/rng.hpp"

namespace roughfunc {

using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 20260917;
constexpr std::uint64_t kPathStream = 0x70617468;  // "path"

const std::vector<std::string> kSubcommands = {"verify-algebra",  "taylor-bv",    "remainder-scaling",
                                               "rough-integral", "ito-residual", "report"};

json poly(std::vector<double> c) { return {{"kind", "poly"}, {"coeffs", std::move(c)}}; }

json f1_json(std::vector<double> coeffs, int dim) {
    return {{"name", "F1"}, {"f", poly(std::move(coeffs))}, {"direction", std::vector<double>(dim, 1.0)}};
}

json defaults_for(std::string_view experiment) {
    json j = {{"seed", kDefaultSeed}};
    if (experiment == "verify-algebra") {
        j.update({{"paths", 50}, {"oracle_paths", 20}, {"subdivisions", 10000}, {"chen_probes", 100},
                  {"depth", 5}, {"max_dim", 3}});
    } else if (experiment == "taylor-bv") {
        j["path"] = {{"kind", "smooth_bv"}, {"dim", 2}, {"steps", 256}, {"horizon", 1.0}};
        j["functional"] = f1_json({0.0, 1.0, -0.5, 1.0}, 2);
        j.update({{"n", 3}, {"intervals", 20}, {"quadrature", 64}, {"tolerance", 1e-8}});
    } else if (experiment == "remainder-scaling") {
        j["path"] = {{"kind", "weierstrass"}, {"dim", 1}, {"steps", 16384}, {"horizon", 1.0}};
        j["functional"] = f1_json({0.0, 1.0, -0.5, 1.0}, 1);
        j.update({{"alphas", {0.3, 0.5, 0.7}}, {"ls", {0, 1}}, {"ladder", {3, 9}}, {"anchors", 128},
                  {"quadrature", 16}});
    } else if (experiment == "rough-integral" || experiment == "ito-residual") {
        j["path"] = {{"kind", "brownian"}, {"dim", 1}, {"steps", 16384}, {"horizon", 1.0}};
        j["functional"] = f1_json({0.0, 0.0, 0.0, 0.0, 1.0}, 1);
        j.update({{"n", 2}, {"levels", 12}, {"nominal_alpha", 0.45}});
        if (experiment == "rough-integral")
            j["probes"] = 100;
        else
            j.update({{"n_tilde", 4}, {"quadrature", 16}});
    } else if (experiment != "report") {
        throw ConfigError("unknown subcommand '" + std::string(experiment) + "'");
    }
    return j;
}

class Reader {
public:
    Reader(std::string_view text, std::string_view source) : text_(text), source_(source) {}

    [[noreturn]] void fail(const std::string& key, const std::string& message) const {
        std::ostringstream os;
        os << source_;
        if (const int line = line_of_key(key); line > 0) os << ':' << line;
        os << ": " << message;
        throw ConfigError(os.str());
    }

    [[noreturn]] void fail_at_byte(std::size_t byte, const std::string& message) const {
        const std::size_t end = std::min(byte, text_.size());
        const auto line = 1 + std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(end), '\n');
        throw ConfigError(std::string(source_) + ':' + std::to_string(line) + ": " + message);
    }

    void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) const {
        if (!obj.is_object()) fail(where, "'" + where + "' must be an object");
        const std::set<std::string> ok(allowed.begin(), allowed.end());
        for (const auto& [key, value] : obj.items())
            if (!ok.contains(key)) fail(key, "unknown key '" + key + "'" + (where.empty() ? "" : " in '" + where + "'"));
    }

    double number(const json& obj, const char* key) const {
        const json& v = obj.at(key);
        if (!v.is_number()) fail(key, std::string("'") + key + "' must be a number");
        return v.get<double>();
    }

    double positive(const json& obj, const char* key) const {
        const double v = number(obj, key);
        if (!(v > 0.0)) fail(key, std::string("'") + key + "' must be positive");
        return v;
    }

    long long integer(const json& obj, const char* key, long long lo, long long hi) const {
        const json& v = obj.at(key);
        if (!v.is_number_integer()) fail(key, std::string("'") + key + "' must be an integer");
        const auto x = v.get<long long>();
        if (x < lo || x > hi)
            fail(key, std::string("'") + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return x;
    }

    std::vector<double> numbers(const json& obj, const char* key, std::size_t min_size) const {
        const json& v = obj.at(key);
        if (!v.is_array()) fail(key, std::string("'") + key + "' must be an array of numbers");
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) fail(key, std::string("'") + key + "' must contain only numbers");
            out.push_back(e.get<double>());
        }
        if (out.size() < min_size)
            fail(key, std::string("'") + key + "' needs at least " + std::to_string(min_size) + " entries");
        return out;
    }

    std::string string(const json& obj, const char* key) const {
        const json& v = obj.at(key);
        if (!v.is_string()) fail(key, std::string("'") + key + "' must be a string");
        return v.get<std::string>();
    }

    Profile profile(const json& obj, const char* key) const {
        const json& p = obj.at(key);
        only_keys(p, key, {"kind", "coeffs", "freq", "phase"});
        if (!p.contains("kind")) fail(key, std::string("profile '") + key + "' needs a 'kind'");
        const std::string kind = string(p, "kind");
        if (kind == "poly") {
            if (!p.contains("coeffs")) fail(key, std::string("profile '") + key + "' needs 'coeffs'");
            return Profile::polynomial(numbers(p, "coeffs", 1));
        }
        if (kind == "sin") {
            const double freq = p.contains("freq") ? number(p, "freq") : 1.0;
            const double phase = p.contains("phase") ? number(p, "phase") : 0.0;
            return Profile::sine(freq, phase);
        }
        fail("kind", "profile kind must be 'poly' or 'sin', got '" + kind + "'");
    }

private:
    int line_of_key(const std::string& key) const {
        if (key.empty()) return 0;
        const std::string quoted = '"' + key + '"';
        const auto pos = text_.find(quoted);
        if (pos == std::string_view::npos) return 0;
        return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
    }

    std::string_view text_;
    std::string_view source_;
};

FunctionalSpec read_functional(const Reader& r, const json& j, int path_dim) {
    r.only_keys(j, "functional", {"name", "f", "g", "f1", "f2", "direction", "weight_direction", "w", "max_order"});
    if (!j.contains("name")) r.fail("functional", "'functional' needs a 'name' (F1, F2 or F3)");
    FunctionalSpec spec;
    spec.name = r.string(j, "name");
    auto need = [&](const char* key) {
        if (!j.contains(key)) r.fail("functional", spec.name + " needs '" + key + "'");
    };
    auto forbid = [&](std::initializer_list<const char*> keys) {
        for (const char* key : keys)
            if (j.contains(key)) r.fail(key, "'" + std::string(key) + "' does not apply to " + spec.name);
    };
    if (spec.name == "F1") {
        need("f");
        forbid({"g", "f1", "f2", "weight_direction", "w"});
        spec.primary = r.profile(j, "f");
    } else if (spec.name == "F2") {
        need("g");
        forbid({"f", "f1", "f2", "weight_direction", "w"});
        spec.primary = r.profile(j, "g");
    } else if (spec.name == "F3") {
        need("f1");
        need("f2");
        forbid({"f", "g"});
        spec.primary = r.profile(j, "f1");
        spec.secondary = r.profile(j, "f2");
        spec.weight_direction =
            j.contains("weight_direction") ? r.numbers(j, "weight_direction", 1) : std::vector<double>(path_dim, 1.0);
        if (j.contains("w")) {
            const auto w = r.numbers(j, "w", 2);
            if (w.size() != 2) r.fail("w", "'w' must be [w0, w1]");
            spec.w0 = w[0];
            spec.w1 = w[1];
        }
    } else {
        r.fail("name", "functional name must be F1, F2 or F3, got '" + spec.name + "'");
    }
    spec.direction = j.contains("direction") ? r.numbers(j, "direction", 1) : std::vector<double>(path_dim, 1.0);
    if (j.contains("max_order")) spec.max_order = static_cast<int>(r.integer(j, "max_order", 1, 8));
    if (static_cast<int>(spec.direction.size()) != path_dim)
        r.fail("direction", "'direction' has " + std::to_string(spec.direction.size()) + " entries, path dim is " +
                                std::to_string(path_dim));
    if (spec.name != "F3") spec.weight_direction.assign(static_cast<std::size_t>(path_dim), 1.0);
    if (static_cast<int>(spec.weight_direction.size()) != path_dim)
        r.fail("weight_direction", "'weight_direction' must have one entry per path dimension");
    return spec;
}

GeneratorSpec read_path(const Reader& r, const json& j, bool& seed_explicit) {
    r.only_keys(j, "path", {"kind", "dim", "steps", "horizon", "alpha", "hurst", "base", "terms", "seed"});
    GeneratorSpec g;
    if (j.contains("kind")) {
        try {
            g.kind = parse_path_kind(r.string(j, "kind"));
        } catch (const std::invalid_argument& e) {
            r.fail("kind", e.what());
        }
    }
    if (j.contains("dim")) g.dim = static_cast<int>(r.integer(j, "dim", 1, 6));
    if (j.contains("steps")) {
        g.steps = static_cast<std::size_t>(r.integer(j, "steps", 1, std::int64_t{1} << 24));
        if ((g.steps & (g.steps - 1)) != 0) r.fail("steps", "'steps' must be a power of two");
        if ((g.kind == PathKind::fbm || g.kind == PathKind::brownian) && g.steps > kMaxGaussianSteps)
            r.fail("steps", "'steps' exceeds 16384 for Gaussian paths");
    }
    if (j.contains("horizon")) g.horizon = r.positive(j, "horizon");
    if (j.contains("alpha")) {
        g.alpha = r.number(j, "alpha");
        if (!(g.alpha > 0.0 && g.alpha < 1.0)) r.fail("alpha", "'alpha' must lie in (0, 1)");
    }
    if (j.contains("hurst")) {
        g.hurst = r.number(j, "hurst");
        if (!(g.hurst > 0.0 && g.hurst < 1.0)) r.fail("hurst", "'hurst' must lie in (0, 1)");
    }
    if (j.contains("base")) {
        g.weierstrass_base = r.number(j, "base");
        if (!(g.weierstrass_base > 1.0)) r.fail("base", "'base' must exceed 1");
    }
    if (j.contains("terms")) g.weierstrass_terms = static_cast<int>(r.integer(j, "terms", 0, 60));
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) r.fail("seed", "'seed' must be a non-negative integer");
        g.seed = j.at("seed").get<std::uint64_t>();
        seed_explicit = true;
    }
    return g;
}

ExperimentConfig build(const Reader& r, const json& merged, std::string_view experiment) {
    r.only_keys(merged, "",
                {"experiment", "seed", "path", "functional", "n", "l", "n_tilde", "levels", "ladder", "anchors",
                 "quadrature", "intervals", "probes", "paths", "oracle_paths", "subdivisions", "chen_probes",
                 "pair_budget", "depth", "max_dim", "tolerance", "nominal_alpha", "alphas", "ls"});
    ExperimentConfig cfg;
    cfg.experiment = std::string(experiment);
    if (merged.contains("experiment")) {
        const std::string named = r.string(merged, "experiment");
        if (named != experiment)
            r.fail("experiment", "config is for '" + named + "' but subcommand is '" + std::string(experiment) + "'");
    }
    if (!merged.at("seed").is_number_unsigned()) r.fail("seed", "'seed' must be a non-negative integer");
    cfg.seed = merged.at("seed").get<std::uint64_t>();

    if (merged.contains("path")) cfg.path = read_path(r, merged.at("path"), cfg.path_seed_explicit);
    if (!cfg.path_seed_explicit) cfg.path.seed = derive_seed(cfg.seed, kPathStream);
    if (merged.contains("functional")) cfg.functional = read_functional(r, merged.at("functional"), cfg.path.dim);

    auto count = [&](const char* key, std::size_t& out, long long lo, long long hi) {
        if (merged.contains(key)) out = static_cast<std::size_t>(r.integer(merged, key, lo, hi));
    };
    if (merged.contains("n")) cfg.n = static_cast<int>(r.integer(merged, "n", 1, 6));
    if (merged.contains("l")) cfg.l = static_cast<int>(r.integer(merged, "l", 0, 5));
    if (merged.contains("n_tilde")) cfg.n_tilde = static_cast<int>(r.integer(merged, "n_tilde", 1, 8));
    if (merged.contains("levels")) cfg.levels = static_cast<int>(r.integer(merged, "levels", 0, 22));
    if (merged.contains("depth")) cfg.depth = static_cast<int>(r.integer(merged, "depth", 1, 6));
    if (merged.contains("max_dim")) cfg.max_dim = static_cast<int>(r.integer(merged, "max_dim", 1, 4));
    count("anchors", cfg.anchors, 1, 100000);
    count("quadrature", cfg.quadrature, 1, 1024);
    count("intervals", cfg.intervals, 1, 100000);
    count("probes", cfg.probes, 1, 1000000);
    count("paths", cfg.paths, 1, 100000);
    count("oracle_paths", cfg.oracle_paths, 1, 10000);
    count("subdivisions", cfg.subdivisions, 10, 10000000);
    count("chen_probes", cfg.chen_probes, 1, 1000000);
    count("pair_budget", cfg.pair_budget, 1, 100000000);
    if (merged.contains("ladder")) {
        const auto& v = merged.at("ladder");
        if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
            r.fail("ladder", "'ladder' must be [from, to] exponents of 2^-k");
        cfg.ladder_from = v[0].get<int>();
        cfg.ladder_to = v[1].get<int>();
        if (cfg.ladder_from < 0 || cfg.ladder_to - cfg.ladder_from < 3)
            r.fail("ladder", "'ladder' needs 0 <= from and at least 4 rungs");
    }
    if (merged.contains("tolerance")) cfg.tolerance = r.positive(merged, "tolerance");
    if (merged.contains("nominal_alpha")) {
        cfg.nominal_alpha = r.number(merged, "nominal_alpha");
        if (!(*cfg.nominal_alpha > 0.0 && *cfg.nominal_alpha <= 1.0))
            r.fail("nominal_alpha", "'nominal_alpha' must lie in (0, 1]");
    }
    if (merged.contains("alphas")) {
        cfg.alphas = r.numbers(merged, "alphas", 1);
        for (double a : cfg.alphas)
            if (!(a > 0.0 && a < 1.0)) r.fail("alphas", "'alphas' entries must lie in (0, 1)");
    }
    if (merged.contains("ls")) {
        for (double v : r.numbers(merged, "ls", 1)) {
            if (v != std::floor(v) || v < 0 || v > 5) r.fail("ls", "'ls' entries must be integers in [0, 5]");
            cfg.ls.push_back(static_cast<int>(v));
        }
    }
    if (cfg.n && cfg.functional.max_order < *cfg.n)
        r.fail("n", "'n' exceeds the functional's max_order");
    cfg.echo = merged;
    cfg.echo["seed"] = cfg.seed;
    return cfg;
}

}  // namespace

std::unique_ptr<CausalFunctional> make_functional(const FunctionalSpec& spec) {
    if (spec.name == "F1") return std::make_unique<PointFunctional>(spec.primary, spec.direction, spec.max_order);
    if (spec.name == "F2")
        return std::make_unique<RunningIntegralFunctional>(spec.primary, spec.direction, spec.max_order);
    if (spec.name == "F3")
        return std::make_unique<PathIntegralFunctional>(spec.primary, spec.secondary, spec.direction,
                                                        spec.weight_direction, spec.w0, spec.w1, spec.max_order);
    throw std::invalid_argument("make_functional: unknown functional '" + spec.name + "'");
}

const std::vector<std::string>& subcommands() { return kSubcommands; }

ExperimentConfig default_config(std::string_view experiment) { return parse_config("{}", experiment, "<defaults>"); }

ExperimentConfig parse_config(std::string_view text, std::string_view experiment, std::string_view source) {
    const Reader r(text, source);
    json user;
    try {
        user = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        r.fail_at_byte(e.byte == 0 ? 0 : e.byte - 1, std::string("malformed JSON: ") + e.what());
    }
    if (!user.is_object()) r.fail("", "top level must be a JSON object");

    json merged = defaults_for(experiment);
    for (const auto& [key, value] : user.items()) {
        if (key == "path" && value.is_object() && merged.contains("path"))
            merged["path"].update(value);
        else
            merged[key] = value;
    }
    try {
        return build(r, merged, experiment);
    } catch (const json::exception& e) {
        r.fail("", std::string("invalid value: ") + e.what());
    } catch (const std::invalid_argument& e) {
        r.fail("", e.what());
    }
}

ExperimentConfig load_config(const std::filesystem::path& path, std::string_view experiment) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), experiment, path.string());
}

void override_seed(ExperimentConfig& cfg, std::uint64_t seed) {
    cfg.seed = seed;
    cfg.echo["seed"] = seed;
    if (!cfg.path_seed_explicit) cfg.path.seed = derive_seed(seed, kPathStream);
}

double nominal_alpha(const ExperimentConfig& cfg) {
    return cfg.nominal_alpha ? *cfg.nominal_alpha : nominal_exponent(cfg.path);
}

}  // namespace roughfunc
