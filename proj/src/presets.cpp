#include "quasifit/ingest.hpp"
#include "quasifit/presets_data.hpp"

namespace quasifit {

const std::vector<WindowSpec>& builtin_presets() {
    static const std::vector<WindowSpec> presets = parse_presets(detail::kBuiltinPresetsCsv);
    return presets;
}

}  // namespace quasifit
