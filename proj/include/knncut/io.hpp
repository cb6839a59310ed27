#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "knncut/continuum.hpp"
#include "knncut/cut_solvers.hpp"
#include "knncut/domain.hpp"
#include "knncut/functionals.hpp"
#include "knncut/knn_graph.hpp"
#include "knncut/transport.hpp"

namespace knncut {

using Json = nlohmann::ordered_json;

/// Compact domain specs:
///   square | cube | box:L1,...,Ld | disk:R | ball:d,R | dumbbell:L1,...,Ld,neck_length,neck_width
Domain parse_domain(const std::string& spec);
std::string domain_spec(const Domain& domain);
/// uniform | bump:a
Density parse_density(const Domain& domain, const std::string& spec);
std::string density_spec(const Density& density);

/// Accepts a spec string or an object {"shape": ..., ...}.
Domain domain_from_json(const Json& j);
Json domain_to_json(const Domain& domain);
Density density_from_json(const Domain& domain, const Json& j);

// Files. Every writer creates parent directories; readers throw FormatError
// on malformed content and on missing files.

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& content);
/// Sidecar manifest path: "<path>.json".
std::string manifest_path(const std::string& path);

/// CSV with header x1,...,xd; doubles written with 17 significant digits.
std::string cloud_csv(const PointCloud& cloud);
Json cloud_manifest(const PointCloud& cloud);
void write_cloud(const std::string& path, const PointCloud& cloud);
/// Reads the CSV and its manifest (domain, density, n, seed).
PointCloud read_cloud(const std::string& path);

/// Header for a graph file: {"n", "dim", "k" or "eps", "eps_bar"}.
std::string edges_csv(const Graph& graph);
Json knn_graph_header(const KnnGraph& graph);
Json eps_graph_header(const EpsGraph& graph, int dim);
void write_graph(const std::string& path, const Graph& graph, const Json& header);
/// Reads a k-NN graph; ArgumentError when the header describes an eps-graph.
KnnGraph read_knn_graph(const std::string& path);

std::string base64_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

/// Members are listed explicitly up to this size.
inline constexpr int kPartitionListLimit = 4096;

/// {"n", "count", "mask": base64 of the bitset (vertex i is bit i % 8 of byte i / 8),
///  "members": [...] when n <= kPartitionListLimit}.
Json partition_to_json(const Partition& part);
/// Accepts a partition object, or any object holding one under "partition".
Partition partition_from_json(const Json& j);

Json cut_result_to_json(const CutResult& result);
Json solver_report_to_json(const SolverReport& report);

Json continuum_cut_to_json(const ContinuumCut& cut);
ContinuumCut continuum_cut_from_json(const Json& j);
Json continuum_report_to_json(const ContinuumReport& report, const Domain& domain, const Density& density);
std::string scan_csv(const ContinuumReport& report);
/// A single cut object, or a report whose co-minimizers are returned.
std::vector<ContinuumCut> continuum_cuts_from_json(const Json& j);

/// src,dst,mass,displacement
std::string plan_csv(const TransportPlan& plan, const DiscreteMeasure& mu1, const DiscreteMeasure& mu2);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

}  // namespace knncut
