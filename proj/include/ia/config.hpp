#pragma once

#include <optional>
#include <string>

#include "ia/channel.hpp"

namespace ia {

// A configuration file: the network plus whatever scheme parameters the
// regime needs. Unset parameters stay empty; each regime checks its own.
struct ConfigFile {
    NetworkConfig net;
    std::optional<int> rho;
    std::optional<int> r;
    std::optional<int> epsilon;
    std::optional<int> n_star;
    std::optional<int> trials;
    std::optional<double> tolerance;  // relative rank threshold
    std::string construction;  // shared regime: "", "example2" or "example3"
};

ConfigFile parse_config(const std::string& json_text);
ConfigFile load_config(const std::string& path);

}  // namespace ia
