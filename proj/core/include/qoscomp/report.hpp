#pragma once

#include <map>
#include <string>
#include <string_view>

#include "qoscomp/engine.hpp"

namespace qoscomp {

/// JSON report of a composition run: primary composite, first alternative
/// (or null), per-task queues and classification summary. Field order and
/// number formatting are fixed, so equal inputs give byte-identical text.
std::string render_compose_report(const ComposeResult& result);

/// JSON report of a replacement: the failed service and both composites.
std::string render_replacement_report(const CompositeService& before,
                                      const CompositeService& after,
                                      std::string_view failed_task,
                                      std::string_view failed_service);

/// task -> service of the primary composite stored in a compose report.
std::map<std::string, std::string> read_primary_assignment(std::string_view report_json);

}  // namespace qoscomp
