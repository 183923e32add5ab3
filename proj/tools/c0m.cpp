// c0m: command-line front end for the c0model library.
//
// Exit codes: 0 success, 1 property violation, 2 invalid input or library error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "c0model/corona.hpp"
#include "c0model/equivalence.hpp"
#include "c0model/io.hpp"
#include "c0model/verify.hpp"

namespace {

using c0::io::Json;

constexpr int kViolation = 1;
constexpr int kInvalid = 2;

void emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    c0::io::write_file(out, j);
  }
}

std::string fixed(double x, int digits = 12) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string maximality_table(const c0::MaximalityReport& r) {
  std::string out = "lambda                            norm             sigma2           cyclic\n";
  for (const auto& e : r.entries) {
    char line[160];
    std::snprintf(line, sizeof line, "(%+.6f, %+.6f)   %-16s %-16.3e %s\n", e.lambda.real(), e.lambda.imag(),
                  fixed(e.norm).c_str(), e.sigma2, e.cyclic ? "yes" : "no");
    out += line;
  }
  return out;
}

struct Args {
  std::string theta, theta1, theta2, symbol, op, op1, op2, out, output;
  bool oracle = false;
  bool json = false;
  bool no_hypothesis = false;
  double beta = 0.0, beta_prime = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t verify_seed = 42;
  int trials = 100;
  int max_degree = 12;
  int threads = 0;
  std::vector<std::string> tolerances;
  std::vector<std::string> only;
};

int run_verify(const Args& a) {
  c0::verify::ExperimentConfig config;
  config.seed = a.verify_seed;
  config.trials = a.trials;
  config.max_degree = a.max_degree;
  config.output = a.output;
  config.threads = a.threads > 0 ? a.threads : c0::verify::threads_from_env();
  for (const auto& entry : a.tolerances) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw c0::Error(c0::Errc::InvalidInput, "--tol expects NAME=VALUE, got " + entry);
    try {
      config.tolerances[entry.substr(0, eq)] = std::stod(entry.substr(eq + 1));
    } catch (const std::exception&) {
      throw c0::Error(c0::Errc::InvalidInput, "bad tolerance value in " + entry);
    }
  }
  const auto report = c0::verify::run_suite(config, a.only);
  if (!config.output.empty()) c0::verify::emit_report(report, config.output);
  std::cout << c0::verify::report_table(report);
  if (report.passed()) return 0;
  for (const auto& r : report.results) {
    if (!r.first_failure) continue;
    std::cerr << "first failure of " << r.id << " (trial " << r.first_failure->trial
              << "): " << r.first_failure->message << "\n"
              << r.first_failure->detail.dump(2) << "\n";
    break;
  }
  return kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"c0m: model operators, similarity and unitary equivalence for finite Blaschke products"};
  app.require_subcommand(1);
  Args a;

  auto* jb = app.add_subcommand("jordan-block", "S(theta) in the Takenaka-Malmquist basis");
  jb->add_option("--theta", a.theta, "Blaschke product JSON")->required();
  jb->add_option("--out", a.out, "output file (stdout when omitted)");

  auto* model = app.add_subcommand("model", "Jordan model of a matrix");
  model->add_option("--op", a.op, "matrix JSON")->required();
  model->add_option("--out", a.out);

  auto* sarason = app.add_subcommand("sarason", "norm of u(S(theta)), the distance from u to theta H^inf");
  sarason->add_option("--theta", a.theta)->required();
  sarason->add_option("--symbol", a.symbol, "rational or Blaschke JSON")->required();
  sarason->add_flag("--oracle", a.oracle, "also print the Hankel estimate");

  auto* bezout = app.add_subcommand("bezout", "solve theta1 u1 + theta2 u2 = 1");
  bezout->add_option("--theta1", a.theta1)->required();
  bezout->add_option("--theta2", a.theta2)->required();
  bezout->add_option("--out", a.out);

  auto* maximality = app.add_subcommand("maximality", "big-divisor norms of a contraction");
  maximality->add_option("--op", a.op)->required();
  maximality->add_flag("--json", a.json, "print JSON instead of a table");

  auto* unitary = app.add_subcommand("unitary", "unitary W with W T = S(theta) W");
  unitary->add_option("--op", a.op)->required();
  unitary->add_option("--out", a.out);

  auto* similarity = app.add_subcommand("similarity", "similarity X with X T1 = T2 X");
  similarity->add_option("--op1", a.op1)->required();
  similarity->add_option("--op2", a.op2)->required();
  similarity->add_option("--beta", a.beta)->required();
  similarity->add_option("--beta-prime", a.beta_prime)->required();
  similarity->add_option("--seed", a.seed);
  similarity->add_flag("--no-hypothesis", a.no_hypothesis, "skip the beta-chain hypothesis check");
  similarity->add_option("--out", a.out);

  auto* irreducible = app.add_subcommand("irreducible", "irreducibility of the commutant");
  irreducible->add_option("--op", a.op)->required();
  irreducible->add_option("--seed", a.seed);

  auto* verify = app.add_subcommand("verify", "run the randomized property suite");
  verify->add_option("--seed", a.verify_seed);
  verify->add_option("--trials", a.trials)->check(CLI::PositiveNumber);
  verify->add_option("--max-degree", a.max_degree)->check(CLI::PositiveNumber);
  verify->add_option("--output", a.output, "directory for report.json, report.txt, similarity_sweep.csv");
  verify->add_option("--tol", a.tolerances, "tolerance override, e.g. C1.annihilation=1e-8");
  verify->add_option("--only", a.only, "property ids to run");
  verify->add_option("--threads", a.threads, "worker threads (default: C0M_THREADS or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalid;
  }

  try {
    if (*jb) {
      emit(c0::io::matrix_to_json(c0::jordan_block(c0::io::blaschke_from_json(c0::io::read_file(a.theta)))), a.out);
    } else if (*model) {
      emit(c0::io::to_json(c0::jordan_model(c0::io::matrix_from_json(c0::io::read_file(a.op)))), a.out);
    } else if (*sarason) {
      const auto theta = c0::io::blaschke_from_json(c0::io::read_file(a.theta));
      const auto u = c0::io::symbol_from_json(c0::io::read_file(a.symbol));
      std::cout << Json(c0::sarason_norm(u, theta)).dump() << "\n";
      if (a.oracle) std::cout << Json(c0::hankel_distance(u, theta).value).dump() << "\n";
    } else if (*bezout) {
      const auto t1 = c0::io::blaschke_from_json(c0::io::read_file(a.theta1));
      const auto t2 = c0::io::blaschke_from_json(c0::io::read_file(a.theta2));
      emit(c0::io::to_json(c0::bezout_solve(t1, t2)), a.out);
    } else if (*maximality) {
      const c0::ContractionOperator t(c0::io::matrix_from_json(c0::io::read_file(a.op)));
      const auto report = c0::maximality_report(t);
      if (a.json) {
        std::cout << c0::io::to_json(report).dump(2) << "\n";
      } else {
        std::cout << maximality_table(report);
      }
    } else if (*unitary) {
      const c0::ContractionOperator t(c0::io::matrix_from_json(c0::io::read_file(a.op)));
      emit(c0::io::to_json(c0::unitary_from_maximality(t)), a.out);
    } else if (*similarity) {
      const c0::ContractionOperator t1(c0::io::matrix_from_json(c0::io::read_file(a.op1)));
      const c0::ContractionOperator t2(c0::io::matrix_from_json(c0::io::read_file(a.op2)));
      c0::SimilarityOptions options;
      options.enforce_hypotheses = !a.no_hypothesis;
      options.seed = a.seed;
      emit(c0::io::to_json(c0::similarity_synthesize(t1, t2, a.beta, a.beta_prime, options)), a.out);
    } else if (*irreducible) {
      const auto m = c0::io::matrix_from_json(c0::io::read_file(a.op));
      std::cout << c0::io::to_json(c0::irreducibility_check(m, a.seed)).dump(2) << "\n";
    } else if (*verify) {
      return run_verify(a);
    }
  } catch (const c0::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return 0;
}
