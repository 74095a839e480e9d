#pragma once

// Device numbers and measurement scenes, kept in one place. Keys are the
// dotted parameter names accepted by the CLI; frequencies and rates carry an
// _hz suffix and are cyclic (Hz), everything else is SI.

#include <map>
#include <string>
#include <vector>

#include "ppcircuit/param_doc.hpp"

namespace ppc {

/// Every key with its device value. Unknown keys elsewhere are rejected
/// against this set plus optional_parameter_keys().
ParamDoc default_parameters();

/// Keys that are valid but absent unless supplied.
std::vector<std::string> optional_parameter_keys();

std::vector<std::string> preset_names();

/// Only the keys a preset changes relative to the defaults.
ParamDoc preset_overrides(const std::string& name);

/// Defaults merged with the preset's overrides.
ParamDoc resolve_preset(const std::string& name);

/// All presets, resolved.
std::map<std::string, ParamDoc> experiment_presets();

}  // namespace ppc
