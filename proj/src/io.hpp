#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lipkit/certify.hpp"
#include "lipkit/partition_of_unity.hpp"

namespace lipkit::io {

using Json = nlohmann::ordered_json;

/// Space from a file. A "matrix:", "points:", "graph:" or "grid:" prefix
/// forces the format; otherwise .csv files with an "id" header are point
/// clouds, other .csv files distance matrices, and .json files graphs or
/// grids depending on their keys.
SpacePtr read_space(const std::string& spec);

/// JSON array of point ids.
Subset read_subset(const std::string& path, std::size_t host_size);

/// CSV rows "id,value[,...]"; extra columns are ignored and an optional
/// header line is skipped.
std::vector<std::pair<PointId, double>> read_pairs(const std::string& path);

/// Values aligned with the members of A, looked up from an id,value CSV.
std::vector<double> values_on(const std::string& path, const Subset& A);

/// Field from an id,value CSV covering every point, or a JSON expression tree.
Field read_field(const std::string& path, const SpacePtr& host);
Field parse_expression(const Json& node, const SpacePtr& host, const std::string& where);

/// JSON [{"p": id, "delta": r, "K": k}, ...].
LocalWitness read_witness(const std::string& path);

/// JSON list of sets: {"balls": [{"center", "radius"}], "slope", "cap"},
/// {"values": [...]} or {"field": expression}.
CozeroCover read_cover(const std::string& path, const SpacePtr& host);

/// Finite numbers as numbers, the rest as "inf", "-inf" or "nan".
Json number(double v);
Json to_json(const Certificate& c);

/// %.17g
std::string format_double(double v);

}  // namespace lipkit::io
