#include "support.hpp"

#include <sstream>

#include "c0model/verify.hpp"

using namespace c0;
namespace verify = c0::verify;

namespace {

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) n += ch == '\n' ? 1 : 0;
  return n;
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("empty report") {
  verify::SuiteReport empty;
  const io::Json j = verify::report_json(empty);
  CHECK(j["results"].is_array());
  CHECK(j["results"].empty());
  CHECK(verify::sweep_csv(empty) == "N,beta,betaPrime,normX,normXinv,residual\n");
  CHECK_FALSE(verify::report_table(empty).empty());
}

TEST_CASE("sweep CSV") {
  verify::SuiteReport report;
  verify::PropertyResult r;
  r.id = "C7";
  r.cases = 3;
  for (int k = 0; k < 3; ++k) r.sweep.push_back({k + 2, 0.5, 0.7, 2.0, 3.0, 1e-15});
  report.results.push_back(r);
  const std::string csv = verify::sweep_csv(report);
  CHECK(count_lines(csv) == 4);
  CHECK(csv.rfind("N,beta,betaPrime,normX,normXinv,residual\n2,", 0) == 0);
}

TEST_CASE("ASCII table") {
  verify::ExperimentConfig config;
  config.trials = 2;
  const auto report = verify::run_suite(config, {"C1", "P5"});
  const std::string table = verify::report_table(report);
  for (unsigned char ch : table) CHECK(ch < 128);
  std::istringstream lines(table);
  std::string line;
  std::size_t width = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || (line[0] != '|' && line[0] != '+')) continue;
    if (width == 0) width = line.size();
    CHECK(line.size() == width);
  }
}

TEST_CASE("determinism") {
  verify::ExperimentConfig config;
  config.trials = 3;
  config.seed = 9;
  const std::vector<std::string> ids = {"C1", "C4", "C7", "C10"};
  const std::string a = verify::report_json(verify::run_suite(config, ids)).dump(2);
  config.threads = 3;
  const std::string b = verify::report_json(verify::run_suite(config, ids)).dump(2);
  CHECK(a == b);
}

TEST_CASE("tolerance overrides and failure capture") {
  verify::ExperimentConfig config;
  config.trials = 2;
  config.tolerances["C1.annihilation"] = 0.0;
  const auto r = verify::run_property("C1", config);
  CHECK_FALSE(r.passed());
  REQUIRE(r.first_failure.has_value());
  CHECK(r.first_failure->detail.contains("theta"));
  CHECK(r.first_failure->message.find("annihilation") != std::string::npos);
  CHECK_THROWS_CODE(verify::run_property("C99", config), Errc::InvalidInput);
}

TEST_CASE("ids") {
  const auto criteria = verify::criterion_ids();
  REQUIRE(criteria.size() == 11);
  CHECK(criteria.front() == "C1");
  CHECK(criteria.back() == "C11");
  CHECK(verify::property_ids().size() > criteria.size());
}

}
