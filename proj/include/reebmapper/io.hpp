#pragma once

#include <string>

#include "reebmapper/cover.hpp"
#include "reebmapper/interleave.hpp"
#include "reebmapper/mapper.hpp"
#include "reebmapper/preimage.hpp"
#include "reebmapper/reeb.hpp"

namespace reebmapper {

/// Shortest representation that round-trips, capped at 12 significant
/// digits; report outputs (CSV, DOT, report JSON) use this so runs are
/// byte-identical and diffable.
std::string format_double(double x);

std::string cover_to_json(const Cover& c);
Cover cover_from_json(const std::string& text);

std::string component_set_to_json(const ComponentSet& cs);

std::string mapper_to_json(const MapperNerve& mn);
std::string mapper_to_dot(const MapperNerve& mn);

std::string reeb_to_json(const ReebGraph& g);
std::string reeb_to_dot(const ReebGraph& g);

std::string diagram_report_to_json(const DiagramReport& report);
std::string equivalence_report_to_json(const EquivalenceReport& report);

void write_file(const std::string& path, const std::string& content);

}  // namespace reebmapper
