#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oa2net/netmodel.hpp"

namespace oa2net::pajek {

/// Shortest decimal that reads back to the same double.
std::string format_number(double value);

/// `*Vertices n`, quoted labels, then `*Edges` or `*Arcs` with explicit
/// weights. Links are sorted by (source, target); output is LF-terminated.
std::string format_network(const WeightedNetwork& net);
/// `*Vertices n n1` header; links written as `*Edges`.
std::string format_network(const TwoModeNetwork& net);
/// Directed skeleton where mutual arc pairs may be merged into `*Edges`.
std::string format_skeleton(const WeightedNetwork& skeleton, bool merge_mutual);

using AnyNetwork = std::variant<WeightedNetwork, TwoModeNetwork>;

/// Parses the subset of Pajek this library writes. Tolerates CRLF, `%`
/// comments and missing weights (default 1). Errors carry `origin:line`.
AnyNetwork parse_network(std::string_view text, std::string_view origin = "<input>");
AnyNetwork read_network(const std::filesystem::path& path);
/// Like read_network but rejects two-mode files.
WeightedNetwork read_one_mode(const std::filesystem::path& path);

void write_network(const WeightedNetwork& net, const std::filesystem::path& path);
void write_network(const TwoModeNetwork& net, const std::filesystem::path& path);

std::string format_partition(const NodePartition& partition);
std::string format_vector(const NodeVector& vector);
NodePartition parse_partition(std::string_view text, std::string_view origin = "<input>");
NodeVector parse_vector(std::string_view text, std::string_view origin = "<input>");

void write_partition(const NodePartition& partition, const std::filesystem::path& path);
void write_vector(const NodeVector& vector, const std::filesystem::path& path);
NodePartition read_partition(const std::filesystem::path& path);
NodeVector read_vector(const std::filesystem::path& path);

template <typename T>
struct Named {
  std::string name;
  T value;
};

/// Pajek project (.paj): one network followed by named partitions and
/// vectors, each sized to the network.
std::string format_project(const Named<WeightedNetwork>& network,
                           const std::vector<Named<NodePartition>>& partitions,
                           const std::vector<Named<NodeVector>>& vectors);

/// Shared file helpers.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace oa2net::pajek
