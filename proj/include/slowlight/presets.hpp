// presets.hpp - bundled scenario files.

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace slowlight {

struct Preset {
    std::string name;
    std::string summary;
    std::string text;  // scenario file contents
};

const std::vector<Preset>& presets();
std::optional<std::string> preset_text(const std::string& name);

}  // namespace slowlight
