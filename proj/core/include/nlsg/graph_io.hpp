#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "nlsg/graph.hpp"

namespace nlsg {

/// Parses the JSON graph format. Unknown keys and malformed records throw ParseError.
GraphSpec parse_graph_spec(std::string_view json_text);

MetricGraph parse_graph(std::string_view json_text);

/// Throws IoNotFound if the file is missing.
MetricGraph read_graph_file(const std::filesystem::path& path);

std::string graph_to_json(const MetricGraph& g, int indent = 1);

void write_graph_file(const MetricGraph& g, const std::filesystem::path& path);

/// Whole-file read helper shared by the readers.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace nlsg
