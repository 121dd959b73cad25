#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mcwf::bench {

struct Preset {
    std::string name;
    std::string anchor;      // what the preset reproduces
    std::string desk_delta;  // how the desk variant is scaled, empty for full-size presets
    std::vector<std::pair<std::string, std::string>> entries;
};

const std::vector<Preset>& presets();
const Preset& find_preset(const std::string& name);

}  // namespace mcwf::bench
