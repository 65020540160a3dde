#include "ia/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ia {

namespace {

using nlohmann::json;

ChangingPattern pattern_from(const json& j, int n) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "full") return ChangingPattern::full(n);
        if (s == "constant") return ChangingPattern::constant(n);
        throw InputError("pattern must be a list, \"full\" or \"constant\"");
    }
    if (!j.is_array()) throw InputError("pattern must be a list of slot indices");
    return ChangingPattern::from_indices(n, j.get<std::vector<int>>());
}

template <class T, class F>
std::vector<std::vector<T>> square(const json& j, int K, const char* what, F&& make) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(K)) {
        throw InputError(std::string(what) + " must be a K x K array");
    }
    std::vector<std::vector<T>> out(K);
    for (int p = 0; p < K; ++p) {
        const json& row = j[p];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(K)) {
            throw InputError(std::string(what) + " must be a K x K array");
        }
        for (int q = 0; q < K; ++q) out[p].push_back(make(row[q]));
    }
    return out;
}

std::optional<int> opt_int(const json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    return j.at(key).get<int>();
}

}  // namespace

ConfigFile parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        ConfigFile c;
        NetworkConfig& net = c.net;
        net.K = j.at("K").get<int>();
        net.n = j.at("n").get<int>();
        if (net.K < 1 || net.n < 1) throw InputError("K and n must be positive");
        net.gains.lo = j.value("h_min", 0.5);
        net.gains.hi = j.value("h_max", 2.0);
        const int n = net.n;
        if (j.contains("patterns")) {
            net.patterns = square<ChangingPattern>(j["patterns"], net.K, "patterns",
                                                   [n](const json& e) { return pattern_from(e, n); });
        } else {
            net.patterns.assign(net.K, std::vector<ChangingPattern>(net.K, ChangingPattern::full(n)));
        }
        if (j.contains("unknown")) {
            net.unknown = square<UnknownSet>(j["unknown"], net.K, "unknown", [n](const json& e) {
                return UnknownSet(n, e.get<std::vector<int>>());
            });
        } else {
            net.unknown.assign(net.K, std::vector<UnknownSet>(net.K, UnknownSet(n, {})));
        }
        net.direct_kind = parse_direct_kind(j.value("direct_kind", std::string("identity")));
        net.memory_distance = j.value("memory_distance", 1);
        net.seed = j.value("seed", std::uint64_t{1});
        net.validate();

        c.rho = opt_int(j, "rho");
        c.r = opt_int(j, "r");
        c.epsilon = opt_int(j, "epsilon");
        c.n_star = opt_int(j, "n_star");
        c.trials = opt_int(j, "trials");
        if (j.contains("tolerance")) {
            c.tolerance = j.at("tolerance").get<double>();
            if (!(*c.tolerance > 0 && *c.tolerance < 1)) throw InputError("tolerance must lie in (0, 1)");
        }
        c.construction = j.value("construction", std::string());
        return c;
    } catch (const json::exception& e) {
        throw InputError(std::string("bad config field: ") + e.what());
    }
}

ConfigFile load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace ia
