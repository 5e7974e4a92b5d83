#pragma once

#include <optional>
#include <string_view>

#include "twmr/result_table.hpp"

namespace twmr::figures {

// Preset sweeps bundling the device parameters of each published data set.
enum class FigureId { fig2b, fig2c, fig2d, fig3b, fig3c, fig3d, fig4bcd, fig5 };

std::optional<FigureId> parse_figure_id(std::string_view name);
const char* figure_name(FigureId id);

io::ResultTable replicate(FigureId id);

} // namespace twmr::figures
