#include "support.hpp"

#include <filesystem>
#include <limits>

#include "c0model/corona.hpp"
#include "c0model/equivalence.hpp"
#include "c0model/io.hpp"
#include "c0model/sampling.hpp"

using namespace c0;
using c0::test::simple;
namespace io = c0::io;

TEST_SUITE("io") {

TEST_CASE("scalars and matrices") {
  const Complex z(0.1, -1.0 / 3.0);
  CHECK(io::complex_from_json(io::to_json(z)) == z);
  CHECK(io::number(std::numeric_limits<double>::quiet_NaN()).is_null());
  CHECK(std::isnan(io::number_from_json(nullptr)));
  auto rng = sampling::stream(37, 0, 0);
  const Matrix m = sampling::normal_matrix(rng, 3, 3);
  CHECK(io::matrix_from_json(io::matrix_to_json(m)) == m);
  const Matrix rect = sampling::normal_matrix(rng, 2, 4);
  CHECK(io::rect_from_json(io::rect_to_json(rect)) == rect);
  const Vector v = sampling::normal_vector(rng, 5);
  CHECK(io::vector_from_json(io::to_json(v)) == v);
  CHECK_THROWS_CODE(io::matrix_from_json(io::Json::parse(R"({"n": 2, "data": [[1, 0]]})")), Errc::InvalidInput);
}

TEST_CASE("inner functions") {
  const BlaschkeProduct theta({{Complex(0.3, 0.2), 2}, {-0.1, 1}}, Complex(0.0, 1.0));
  const io::Json j = io::to_json(theta);
  const BlaschkeProduct back = io::blaschke_from_json(j);
  CHECK(io::to_json(back) == j);
  CHECK(back.constant() == theta.constant());
  const RationalFunction u({1.0, Complex(0.5, 0.25)}, {1.0, -0.2});
  const io::Json ju = io::to_json(u);
  CHECK(io::to_json(io::rational_from_json(ju)) == ju);
  // A symbol file may hold either encoding.
  const RationalFunction as_symbol = io::symbol_from_json(j);
  CHECK(std::abs(as_symbol(0.3) - theta(0.3)) < 1e-14);
  CHECK_THROWS_CODE(io::blaschke_from_json(io::Json::parse(R"({"zeros": [{"re": 1.5, "im": 0, "mult": 1}]})")),
                    Errc::InvalidInput);
  const JordanModel model({BlaschkeProduct({{0.2, 2}}), simple({0.2})});
  const io::Json jm = io::to_json(model);
  CHECK(io::to_json(io::jordan_model_from_json(jm)) == jm);
}

TEST_CASE("results") {
  const auto t1 = simple({0.0});
  const auto t2 = BlaschkeProduct::factor(0.5);
  const io::Json jc = io::to_json(bezout_solve(t1, t2));
  CHECK(io::to_json(io::corona_from_json(jc)) == jc);

  const std::vector<Complex> pts = {0.0, 0.04, 0.08, 0.9};
  const io::Json js = io::to_json(cluster_split(pts, 0.8));
  CHECK(io::to_json(io::cluster_split_from_json(js)) == js);
  CHECK(js["k"] == 2);

  const auto theta = simple({0.1, Complex(-0.3, 0.5), 0.6, -0.7});
  const ContractionOperator s(jordan_block(theta));
  const io::Json jr = io::to_json(maximality_report(s));
  CHECK(io::to_json(io::maximality_from_json(jr)) == jr);

  const SimilarityCertificate cert = similarity_synthesize(s, s, 0.9995, 0.9998);
  const io::Json jcert = io::to_json(cert);
  CHECK(io::to_json(io::certificate_from_json(jcert)) == jcert);
  CHECK(jcert.contains("trace"));
  CHECK((jcert["trace"]["kind"] == "split" || jcert["trace"]["kind"] == "base"));
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "c0m_io_test";
  std::filesystem::create_directories(dir);
  const io::Json j = {{"a", 1.5}, {"b", {1, 2}}};
  io::write_file(dir / "x.json", j);
  CHECK(io::read_file(dir / "x.json") == j);
  CHECK_THROWS_CODE(io::read_file(dir / "missing.json"), Errc::InvalidInput);
  io::write_text(dir / "bad.json", "{not json");
  CHECK_THROWS_CODE(io::read_file(dir / "bad.json"), Errc::InvalidInput);
  std::filesystem::remove_all(dir);
}

}
