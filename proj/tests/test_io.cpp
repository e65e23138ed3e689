#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "longmem/errors.hpp"
#include "longmem/io.hpp"

using namespace longmem;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* name) {
  const fs::path p = fs::temp_directory_path() / (std::string("longmem_io_") + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(1e-300) == "1e-300");
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(gen) * std::pow(10.0, static_cast<int>(gen() % 40) - 20);
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("model JSON") {
  const auto fi = LongMemoryModel::fi(0.3, 1.5);
  CHECK(model_from_json(model_to_json(fi)) == fi);
  const auto fm = LongMemoryModel::farima(0.123456789, {0.5, -0.25}, {0.3}, 0.7);
  CHECK(model_from_json(model_to_json(fm)) == fm);

  const auto d = model_from_json(R"({"kind": "FI", "d": 0.2})");
  CHECK(d.kind() == ModelKind::FI);
  CHECK(d.sigma2() == 1.0);
  CHECK(d.ar().empty());
  const auto f = model_from_json(R"({"kind": "FARIMA", "d": 0.2, "ar": [0.4]})");
  CHECK(f.kind() == ModelKind::FARIMA);
  CHECK(f.ar() == std::vector<double>{0.4});

  CHECK_THROWS_AS(model_from_json("{"), IoError);
  CHECK_THROWS_AS(model_from_json(R"({"kind": "ARMA", "d": 0.2})"), IoError);
  CHECK_THROWS_AS(model_from_json(R"({"kind": "FI"})"), IoError);
  CHECK_THROWS_AS(model_from_json(R"({"kind": "FI", "d": 0.7})"), DomainError);
}

TEST_CASE("CSV tables") {
  CsvTable t;
  t.comments = {"longmem test", "seed: 3"};
  t.header = {"k", "value"};
  t.rows = {{1, 0.25}, {2, -1e-17}, {3, 12345.678}};
  const std::string text = to_csv(t);
  CHECK(text.rfind("# longmem test\n# seed: 3\nk,value\n1,0.25\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  const CsvTable back = parse_csv(text);
  CHECK(back.comments == t.comments);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(back.column("value") == 1);
  CHECK_THROWS_AS(back.column("missing"), IoError);

  CHECK(parse_csv("a,b\r\n1,2\r\n").rows == std::vector<std::vector<double>>{{1, 2}});
  CHECK_THROWS_AS(parse_csv("a,b\n1,x\n"), IoError);
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), IoError);

  const CsvTable iv = index_value_table(std::vector<double>{0.5, 0.25});
  CHECK(iv.header == std::vector<std::string>{"index", "value"});
  CHECK(iv.rows == std::vector<std::vector<double>>{{0, 0.5}, {1, 0.25}});
}

TEST_CASE("files") {
  const fs::path dir = scratch_dir("files");
  const fs::path p = dir / "out.csv";
  write_file_atomic(p, "first\n");
  write_file_atomic(p, "index,value\n0,1.5\n1,-2\n");
  CHECK(read_file(p) == "index,value\n0,1.5\n1,-2\n");
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator()) == 1);
  CHECK(read_series_csv(p) == std::vector<double>{1.5, -2});
  write_file_atomic(dir / "bad.csv", "index,x\n0,1\n");
  CHECK_THROWS_AS(read_series_csv(dir / "bad.csv"), IoError);
  CHECK_THROWS_AS(read_file(dir / "absent.csv"), IoError);
  CHECK_THROWS_AS(write_file_atomic(dir / "no" / "such" / "dir.csv", "x"), IoError);
}

TEST_CASE("AR(k) model files") {
  const fs::path dir = scratch_dir("ark");
  ArkModel m{3, {0.1, -0.2, 1.0 / 3.0}, 1.0625, {0.3, -0.1, 1.0 / 3.0}};
  write_ark_model(dir / "ark.csv", m);
  CHECK(fs::exists(dir / "ark.csv.json"));
  const ArkModel back = read_ark_model(dir / "ark.csv");
  CHECK(back.k == 3);
  CHECK(back.phi == m.phi);
  CHECK(back.v == m.v);
  CHECK(back.partials == m.partials);
}

TEST_CASE("FNV-1a") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}
