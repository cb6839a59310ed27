#include <filesystem>

#include "doctest.h"
#include "knncut/errors.hpp"
#include "knncut/io.hpp"
#include "knncut/rng.hpp"

using namespace knncut;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("knncut_io_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("domain and density specs round-trip") {
  for (const char* spec : {"square", "cube", "box:2,1", "box:1,0.5,0.25", "disk:0.5", "ball:3,1",
                           "dumbbell:1,1,0.5,0.25", "dumbbell:1,1,1,0.5,0.25"}) {
    const Domain d = parse_domain(spec);
    CHECK(parse_domain(domain_spec(d)) == d);
    CHECK(domain_from_json(domain_to_json(d)) == d);
  }
  CHECK(parse_domain("square") == Domain::unit_square());
  CHECK(parse_domain("disk:0.5") == Domain::ball(2, 0.5));
  CHECK(parse_domain("dumbbell:1,1,0.5,0.25") == Domain::dumbbell({1, 1}, 0.5, 0.25));
  for (const char* bad : {"", "triangle", "box:1", "box:1,x", "ball:2", "square:1", "dumbbell:1,1,0.5"}) {
    CHECK_THROWS_AS(parse_domain(bad), ArgumentError);
  }
  const Domain sq = Domain::unit_square();
  CHECK(parse_density(sq, "uniform") == Density::uniform(sq));
  CHECK(parse_density(sq, density_spec(Density::bump(sq, 0.3))) == Density::bump(sq, 0.3));
  CHECK_THROWS_AS(parse_density(sq, "gauss"), ArgumentError);
  CHECK_THROWS_AS(parse_density(sq, "bump:1.5"), ConfigurationError);
  CHECK(domain_from_json(Json::parse(R"({"shape":"dumbbell","lobe":[1,1],"neck_length":0.5,"neck_width":0.25})")) ==
        Domain::dumbbell({1, 1}, 0.5, 0.25));
  CHECK(density_from_json(sq, Json::parse(R"({"kind":"bump","amplitude":0.2})")) == Density::bump(sq, 0.2));
  CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"shape":"torus"})")), FormatError);
}

TEST_CASE("doubles print in round-trip form") {
  Philox4x32 rng(4, 4);
  for (int i = 0; i < 1000; ++i) {
    const double x = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<int>(rng.uniform() * 20) - 10);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("point clouds round-trip through CSV and manifest") {
  const auto dir = scratch("cloud");
  const Domain d = Domain::dumbbell({1, 1}, 0.5, 0.25);
  const PointCloud c = sample(d, Density::bump(d, 0.4), 57, 99);
  const std::string path = (dir / "sub" / "c.csv").string();
  write_cloud(path, c);
  const PointCloud back = read_cloud(path);
  CHECK(back.coords == c.coords);
  CHECK(back.dim == 2);
  CHECK(back.seed == 99);
  CHECK(back.domain == d);
  CHECK(back.density == c.density);
  CHECK(read_text(path).substr(0, 6) == "x1,x2\n");

  write_text((dir / "bad.csv").string(), "x1,x2\n0.1,0.2\n0.3\n");
  write_text(manifest_path((dir / "bad.csv").string()), cloud_manifest(c).dump());
  CHECK_THROWS_AS(read_cloud((dir / "bad.csv").string()), FormatError);
  CHECK_THROWS_AS(read_cloud((dir / "missing.csv").string()), FormatError);
}

TEST_CASE("graphs round-trip; eps-graph headers are not k-NN graphs") {
  const auto dir = scratch("graph");
  const PointCloud c = sample(Domain::unit_square(), Density::uniform(Domain::unit_square()), 80, 3);
  const KnnGraph g = build_knn(c, 5);
  const std::string path = (dir / "g.csv").string();
  write_graph(path, g.graph(), knn_graph_header(g));
  const KnnGraph back = read_knn_graph(path);
  CHECK(back.graph() == g.graph());
  CHECK(back.k() == 5);
  CHECK(back.eps_bar() == doctest::Approx(g.eps_bar()).epsilon(1e-15));
  CHECK(read_text(path).substr(0, 4) == "i,j\n");

  const EpsGraph e = build_eps(c, 0.2);
  write_graph(path, e.graph, eps_graph_header(e, 2));
  CHECK_THROWS_AS(read_knn_graph(path), ArgumentError);

  write_graph(path, g.graph(), knn_graph_header(g));
  write_text(path, "i,j\n0,1\n2,200\n");
  CHECK_THROWS_AS(read_knn_graph(path), FormatError);
}

TEST_CASE("base64 test vectors") {
  auto enc = [](const std::string& s) {
    return base64_encode(std::vector<std::uint8_t>(s.begin(), s.end()));
  };
  CHECK(enc("") == "");
  CHECK(enc("f") == "Zg==");
  CHECK(enc("fo") == "Zm8=");
  CHECK(enc("foo") == "Zm9v");
  CHECK(enc("foob") == "Zm9vYg==");
  CHECK(enc("fooba") == "Zm9vYmE=");
  CHECK(enc("foobar") == "Zm9vYmFy");
  const auto dec = base64_decode("Zm9vYmE=");
  CHECK(std::string(dec.begin(), dec.end()) == "fooba");
  CHECK_THROWS_AS(base64_decode("Zm9"), FormatError);
  CHECK_THROWS_AS(base64_decode("Zm9*"), FormatError);
}

TEST_CASE("partition JSON") {
  const std::vector<int> members{0, 4, 7, 9};
  const Partition p = Partition::from_indices(12, members);
  const Json j = partition_to_json(p);
  // Bits 0, 4, 7 -> 0x91; bit 9 -> 0x02.
  CHECK(j.at("mask") == "kQI=");
  CHECK(j.at("members").get<std::vector<int>>() == members);
  CHECK(partition_from_json(j) == p);
  Json wrapped;
  wrapped["partition"] = j;
  CHECK(partition_from_json(wrapped) == p);

  std::vector<std::uint8_t> big(kPartitionListLimit + 10, 0);
  for (std::size_t i = 0; i < big.size(); i += 3) big[i] = 1;
  const Json jb = partition_to_json(Partition(big));
  CHECK_FALSE(jb.contains("members"));
  CHECK(partition_from_json(jb) == Partition(big));

  Json bad = j;
  bad["members"] = std::vector<int>{0, 4};
  CHECK_THROWS_AS(partition_from_json(bad), FormatError);
  Json only;
  only["n"] = 5;
  only["members"] = std::vector<int>{1, 3};
  CHECK(partition_from_json(only) == Partition::from_indices(5, std::vector<int>{1, 3}));
}

TEST_CASE("continuum cuts and reports") {
  const Domain sq = Domain::unit_square();
  const Density rho = Density::uniform(sq);
  const ContinuumCut c = evaluate_line_cut(sq, rho, 0.7, 0.4);
  const ContinuumCut back = continuum_cut_from_json(continuum_cut_to_json(c));
  CHECK(back.theta == c.theta);
  CHECK(back.offset == c.offset);
  CHECK(back.a_is_lower == c.a_is_lower);
  CHECK(back.value == c.value);
  const ContinuumReport rep = minimize_continuum(sq, rho, CutFamily::line, 16);
  const Json j = continuum_report_to_json(rep, sq, rho);
  CHECK(j.at("domain") == "box:1,1");
  CHECK(continuum_cuts_from_json(j).size() == rep.co_minimizers.size());
  CHECK(scan_csv(rep).substr(0, 19) == "theta,offset,value\n");
  Json bad = continuum_cut_to_json(c);
  bad["theta"] = 4.0;
  CHECK_THROWS_AS(continuum_cut_from_json(bad), FormatError);
}

TEST_CASE("plan CSV") {
  const DiscreteMeasure a = DiscreteMeasure::uniform(2, {0, 0});
  const DiscreteMeasure b = DiscreteMeasure::uniform(2, {3, 4});
  const std::vector<double> u{0}, v{1};
  CHECK(plan_csv(tl1_distance(a, u, b, v), a, b) == "src,dst,mass,displacement\n0,0,1,5\n");
}
