#include "knncut/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "knncut/errors.hpp"

namespace knncut {

namespace {

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const char* b = item.data();
    const char* e = item.data() + item.size();
    while (b < e && *b == ' ') ++b;
    const auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e) throw ArgumentError("bad number '" + item + "' in " + what);
    out.push_back(v);
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

int as_int(double v, const std::string& what) {
  if (v != std::floor(v) || v < 1 || v > 1e9) throw ArgumentError(what + " must be a positive integer");
  return static_cast<int>(v);
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

Json parse_json(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

Domain parse_domain(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string shape = spec.substr(0, colon);
  const std::vector<double> args =
      colon == std::string::npos ? std::vector<double>{} : parse_numbers(spec.substr(colon + 1), "domain spec");
  if (shape == "square" && args.empty()) return Domain::unit_square();
  if (shape == "cube" && args.empty()) return Domain::box({1.0, 1.0, 1.0});
  if (shape == "box" && args.size() >= 2) return Domain::box(args);
  if (shape == "disk" && args.size() == 1) return Domain::ball(2, args[0]);
  if (shape == "ball" && args.size() == 2) return Domain::ball(as_int(args[0], "ball dimension"), args[1]);
  if (shape == "dumbbell" && args.size() >= 4) {
    return Domain::dumbbell({args.begin(), args.end() - 2}, args[args.size() - 2], args.back());
  }
  throw ArgumentError("unknown domain spec '" + spec +
                      "' (square | cube | box:L1,...,Ld | disk:R | ball:d,R | dumbbell:L1,...,Ld,neck_length,neck_width)");
}

std::string domain_spec(const Domain& domain) {
  switch (domain.shape()) {
    case Shape::box:
      return "box:" + join(domain.lengths());
    case Shape::ball:
      return "ball:" + std::to_string(domain.dim()) + "," + format_double(domain.radius());
    case Shape::dumbbell: {
      std::vector<double> v = domain.lengths();
      v.push_back(domain.neck_length());
      v.push_back(domain.neck_width());
      return "dumbbell:" + join(v);
    }
  }
  return {};
}

Density parse_density(const Domain& domain, const std::string& spec) {
  if (spec == "uniform") return Density::uniform(domain);
  if (spec.rfind("bump:", 0) == 0) {
    const auto a = parse_numbers(spec.substr(5), "density spec");
    if (a.size() == 1) return Density::bump(domain, a[0]);
  }
  throw ArgumentError("unknown density spec '" + spec + "' (uniform | bump:a)");
}

std::string density_spec(const Density& density) {
  return density.kind() == DensityKind::uniform ? "uniform" : "bump:" + format_double(density.amplitude());
}

Domain domain_from_json(const Json& j) {
  if (j.is_string()) return parse_domain(j.get<std::string>());
  if (!j.is_object()) throw FormatError("domain must be a spec string or an object");
  const auto shape = field<std::string>(j, "shape");
  if (shape == "box") return Domain::box(field<std::vector<double>>(j, "lengths"));
  if (shape == "ball") return Domain::ball(field<int>(j, "dim"), field<double>(j, "radius"));
  if (shape == "dumbbell") {
    return Domain::dumbbell(field<std::vector<double>>(j, "lobe"), field<double>(j, "neck_length"),
                            field<double>(j, "neck_width"));
  }
  throw FormatError("unknown domain shape '" + shape + "'");
}

Json domain_to_json(const Domain& domain) { return domain_spec(domain); }

Density density_from_json(const Domain& domain, const Json& j) {
  if (j.is_string()) return parse_density(domain, j.get<std::string>());
  if (!j.is_object()) throw FormatError("density must be a spec string or an object");
  const auto kind = field<std::string>(j, "kind");
  if (kind == "uniform") return Density::uniform(domain);
  if (kind == "bump") return Density::bump(domain, field<double>(j, "amplitude"));
  throw FormatError("unknown density kind '" + kind + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << content;
  if (!out) throw FormatError("write failed for " + path);
}

std::string manifest_path(const std::string& path) { return path + ".json"; }

std::string cloud_csv(const PointCloud& cloud) {
  std::string s;
  for (int a = 0; a < cloud.dim; ++a) s += (a ? ",x" : "x") + std::to_string(a + 1);
  s += '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (int a = 0; a < cloud.dim; ++a) s += (a ? "," : "") + format_double(cloud.point(i)[a]);
    s += '\n';
  }
  return s;
}

Json cloud_manifest(const PointCloud& cloud) {
  Json j;
  j["domain"] = domain_spec(cloud.domain);
  j["density"] = density_spec(cloud.density);
  j["dim"] = cloud.dim;
  j["n"] = cloud.size();
  j["seed"] = cloud.seed;
  return j;
}

void write_cloud(const std::string& path, const PointCloud& cloud) {
  write_text(path, cloud_csv(cloud));
  write_text(manifest_path(path), cloud_manifest(cloud).dump(2) + "\n");
}

PointCloud read_cloud(const std::string& path) {
  const Json m = parse_json(read_text(manifest_path(path)), manifest_path(path));
  const Domain domain = domain_from_json(field<Json>(m, "domain"));
  const Density density = density_from_json(domain, field<Json>(m, "density"));
  const int dim = field<int>(m, "dim");
  std::stringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path + ": empty file");
  std::vector<double> coords;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<double> v;
    try {
      v = parse_numbers(line, path);
    } catch (const ArgumentError& e) {
      throw FormatError(path + ":" + std::to_string(row) + ": " + e.what());
    }
    if (static_cast<int>(v.size()) != dim) throw FormatError(path + ":" + std::to_string(row) + ": wrong column count");
    coords.insert(coords.end(), v.begin(), v.end());
  }
  if (coords.size() / dim != field<std::size_t>(m, "n")) throw FormatError(path + ": row count differs from manifest");
  return make_cloud(domain, density, dim, std::move(coords), field<std::uint64_t>(m, "seed"));
}

std::string edges_csv(const Graph& graph) {
  std::string s = "i,j\n";
  for (auto [i, j] : graph.edges()) s += std::to_string(i) + "," + std::to_string(j) + "\n";
  return s;
}

Json knn_graph_header(const KnnGraph& graph) {
  Json j;
  j["n"] = graph.size();
  j["dim"] = graph.dim();
  j["k"] = graph.k();
  j["eps_bar"] = graph.eps_bar();
  j["edges"] = graph.graph().edge_count();
  return j;
}

Json eps_graph_header(const EpsGraph& graph, int dim) {
  Json j;
  j["n"] = graph.graph.size();
  j["dim"] = dim;
  j["eps"] = graph.eps;
  j["eps_bar"] = graph.eps;
  j["edges"] = graph.graph.edge_count();
  return j;
}

void write_graph(const std::string& path, const Graph& graph, const Json& header) {
  write_text(path, edges_csv(graph));
  write_text(manifest_path(path), header.dump(2) + "\n");
}

KnnGraph read_knn_graph(const std::string& path) {
  const Json h = parse_json(read_text(manifest_path(path)), manifest_path(path));
  if (!h.contains("k")) throw ArgumentError(path + " is not a k-NN graph (no k in header)");
  const int n = field<int>(h, "n");
  std::stringstream in(read_text(path));
  std::string line;
  std::getline(in, line);
  if (line != "i,j") throw FormatError(path + ": expected header i,j");
  std::vector<Edge> edges;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    int i = -1, j = -1;
    const auto comma = line.find(',');
    const char* end = line.data() + line.size();
    bool ok = comma != std::string::npos;
    if (ok) {
      auto r1 = std::from_chars(line.data(), line.data() + comma, i);
      auto r2 = std::from_chars(line.data() + comma + 1, end, j);
      ok = r1.ec == std::errc() && r1.ptr == line.data() + comma && r2.ec == std::errc() && r2.ptr == end;
    }
    if (!ok || i < 0 || j < 0 || i >= n || j >= n || i == j) {
      throw FormatError(path + ":" + std::to_string(row) + ": bad edge '" + line + "'");
    }
    edges.emplace_back(i, j);
  }
  return KnnGraph(Graph(n, edges), field<int>(h, "k"), field<int>(h, "dim"));
}

namespace {
constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    const std::size_t left = std::min<std::size_t>(3, bytes.size() - i);
    std::uint32_t v = bytes[i] << 16;
    if (left > 1) v |= bytes[i + 1] << 8;
    if (left > 2) v |= bytes[i + 2];
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += left > 1 ? kAlphabet[(v >> 6) & 63] : '=';
    out += left > 2 ? kAlphabet[v & 63] : '=';
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  if (text.size() % 4 != 0) throw FormatError("base64 length is not a multiple of 4");
  auto value = [](char c) -> int {
    const char* p = std::char_traits<char>::find(kAlphabet, 64, c);
    if (p == nullptr) throw FormatError(std::string("invalid base64 character '") + c + "'");
    return static_cast<int>(p - kAlphabet);
  };
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < text.size(); i += 4) {
    const int pad = (text[i + 3] == '=') + (text[i + 2] == '=');
    if (pad > 0 && i + 4 != text.size()) throw FormatError("base64 padding before the end");
    std::uint32_t v = (value(text[i]) << 18) | (value(text[i + 1]) << 12);
    if (pad < 2) v |= value(text[i + 2]) << 6;
    if (pad < 1) v |= value(text[i + 3]);
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    if (pad < 2) out.push_back(static_cast<std::uint8_t>(v >> 8));
    if (pad < 1) out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

Json partition_to_json(const Partition& part) {
  std::vector<std::uint8_t> bits((part.size() + 7) / 8, 0);
  for (int i = 0; i < part.size(); ++i)
    if (part.contains(i)) bits[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  Json j;
  j["n"] = part.size();
  j["count"] = part.count();
  j["mask"] = base64_encode(bits);
  if (part.size() <= kPartitionListLimit) j["members"] = part.members();
  return j;
}

Partition partition_from_json(const Json& j) {
  if (j.contains("partition")) return partition_from_json(j.at("partition"));
  const int n = field<int>(j, "n");
  std::vector<std::uint8_t> mask(n, 0);
  if (j.contains("mask")) {
    const auto bits = base64_decode(field<std::string>(j, "mask"));
    if (bits.size() != static_cast<std::size_t>((n + 7) / 8)) throw FormatError("partition mask has the wrong length");
    for (int i = 0; i < n; ++i) mask[i] = (bits[i / 8] >> (i % 8)) & 1u;
  } else {
    for (int i : field<std::vector<int>>(j, "members")) {
      if (i < 0 || i >= n) throw FormatError("partition member out of range");
      mask[i] = 1;
    }
  }
  Partition part(std::move(mask));
  if (j.contains("members") && part.members() != field<std::vector<int>>(j, "members")) {
    throw FormatError("partition mask and member list disagree");
  }
  return part;
}

Json cut_result_to_json(const CutResult& result) {
  Json j;
  j["gtv"] = result.gtv;
  j["balance"] = result.balance;
  j["cheeger_value"] = result.cheeger_value;
  j["raw_edge_cut"] = result.raw_edge_cut;
  return j;
}

Json solver_report_to_json(const SolverReport& report) {
  Json j;
  j["method"] = to_string(report.method);
  j["result"] = cut_result_to_json(report.best_result);
  j["iterations"] = report.iterations;
  j["eigen_residual"] = report.eigen_residual;
  j["partition"] = partition_to_json(report.best);
  return j;
}

Json continuum_cut_to_json(const ContinuumCut& cut) {
  Json j;
  j["family"] = to_string(cut.family);
  j["theta"] = cut.theta;
  j["offset"] = cut.offset;
  j["weighted_tv"] = cut.weighted_tv;
  j["nu_A"] = cut.nu_A;
  j["nu_Ac"] = cut.nu_Ac;
  j["a_is_lower"] = cut.a_is_lower;
  j["valid"] = cut.valid;
  j["value"] = cut.valid ? Json(cut.value) : Json(nullptr);
  return j;
}

ContinuumCut continuum_cut_from_json(const Json& j) {
  ContinuumCut cut;
  cut.family = parse_cut_family(field<std::string>(j, "family"));
  cut.theta = field<double>(j, "theta");
  cut.offset = field<double>(j, "offset");
  cut.weighted_tv = j.value("weighted_tv", 0.0);
  cut.nu_A = j.value("nu_A", 0.0);
  cut.nu_Ac = j.value("nu_Ac", 0.0);
  cut.a_is_lower = field<bool>(j, "a_is_lower");
  cut.valid = j.value("valid", true);
  cut.value = j.contains("value") && j.at("value").is_number() ? j.at("value").get<double>()
                                                               : std::numeric_limits<double>::infinity();
  if (!(cut.theta >= 0.0 && cut.theta < std::numbers::pi)) throw FormatError("cut angle outside [0, pi)");
  return cut;
}

Json continuum_report_to_json(const ContinuumReport& report, const Domain& domain, const Density& density) {
  Json j;
  j["domain"] = domain_spec(domain);
  j["density"] = density_spec(density);
  j["dim"] = report.dim;
  j["best"] = continuum_cut_to_json(report.best);
  Json co = Json::array();
  for (const ContinuumCut& c : report.co_minimizers) co.push_back(continuum_cut_to_json(c));
  j["co_minimizers"] = co;
  j["rescaled_target"] = report.rescaled_target;
  j["scan_points"] = report.scan.size();
  j["note"] = report.note;
  return j;
}

std::string scan_csv(const ContinuumReport& report) {
  std::string s = "theta,offset,value\n";
  for (const ScanPoint& p : report.scan) {
    s += format_double(p.theta) + "," + format_double(p.offset) + "," + format_double(p.value) + "\n";
  }
  return s;
}

std::vector<ContinuumCut> continuum_cuts_from_json(const Json& j) {
  std::vector<ContinuumCut> cuts;
  if (j.contains("co_minimizers")) {
    for (const Json& c : j.at("co_minimizers")) cuts.push_back(continuum_cut_from_json(c));
  } else if (j.contains("best")) {
    cuts.push_back(continuum_cut_from_json(j.at("best")));
  } else {
    cuts.push_back(continuum_cut_from_json(j));
  }
  if (cuts.empty()) throw FormatError("no continuum cut in input");
  return cuts;
}

std::string plan_csv(const TransportPlan& plan, const DiscreteMeasure& mu1, const DiscreteMeasure& mu2) {
  std::string s = "src,dst,mass,displacement\n";
  for (const PlanEntry& e : plan.pairs) {
    s += std::to_string(e.source) + "," + std::to_string(e.target) + "," + format_double(e.mass) + "," +
         format_double(std::sqrt(squared_distance(mu1.point(e.source), mu2.point(e.target)))) + "\n";
  }
  return s;
}

}  // namespace knncut
