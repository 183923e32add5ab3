#include "c0model/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace c0::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(Errc::InvalidInput, std::string(what) + ": " + e.what());
  }
}

Json poly_to_json(const poly::Poly& p) {
  Json out = Json::array();
  for (Complex c : p) out.push_back(to_json(c));
  return out;
}

poly::Poly poly_from_json(const Json& j) {
  poly::Poly p;
  for (const Json& c : j) p.push_back(complex_from_json(c));
  return p;
}

Json complex_list(std::span<const Complex> zs) {
  Json out = Json::array();
  for (Complex z : zs) out.push_back(to_json(z));
  return out;
}

std::vector<Complex> complex_list_from_json(const Json& j) {
  std::vector<Complex> out;
  for (const Json& z : j) out.push_back(complex_from_json(z));
  return out;
}

}  // namespace

Json to_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Complex complex_from_json(const Json& j) {
  return guarded("complex", [&] {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2) throw Error(Errc::InvalidInput, "complex must be [re, im]");
    return Complex(number_from_json(j.at(0)), number_from_json(j.at(1)));
  });
}

Json number(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw Error(Errc::InvalidInput, "expected a number");
  return j.get<double>();
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Vector vector_from_json(const Json& j) {
  return guarded("vector", [&] {
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j.at(i));
    return v;
  });
}

Json matrix_to_json(const Matrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) data.push_back(to_json(m(i, k)));
  }
  return {{"n", m.rows()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    const auto n = j.at("n").get<Eigen::Index>();
    const Json& data = j.at("data");
    if (n < 0 || data.size() != static_cast<std::size_t>(n * n)) {
      throw Error(Errc::InvalidInput, "matrix data must hold n*n entries");
    }
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index k = 0; k < n; ++k) m(i, k) = complex_from_json(data.at(static_cast<std::size_t>(i * n + k)));
    }
    return m;
  });
}

Json rect_to_json(const Matrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) data.push_back(to_json(m(i, k)));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix rect_from_json(const Json& j) {
  return guarded("matrix", [&] {
    const auto r = j.at("rows").get<Eigen::Index>();
    const auto c = j.at("cols").get<Eigen::Index>();
    const Json& data = j.at("data");
    if (r < 0 || c < 0 || data.size() != static_cast<std::size_t>(r * c)) {
      throw Error(Errc::InvalidInput, "matrix data must hold rows*cols entries");
    }
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index k = 0; k < c; ++k) m(i, k) = complex_from_json(data.at(static_cast<std::size_t>(i * c + k)));
    }
    return m;
  });
}

Json to_json(const BlaschkeProduct& b) {
  Json zeros = Json::array();
  for (const Zero& z : b.zeros()) {
    zeros.push_back({{"re", z.location.real()}, {"im", z.location.imag()}, {"mult", z.multiplicity}});
  }
  return {{"constant", to_json(b.constant())}, {"zeros", std::move(zeros)}};
}

BlaschkeProduct blaschke_from_json(const Json& j) {
  return guarded("Blaschke product", [&] {
    std::vector<Zero> zeros;
    if (j.contains("zeros")) {
      for (const Json& z : j.at("zeros")) {
        zeros.push_back({Complex(z.at("re").get<double>(), z.value("im", 0.0)), z.value("mult", 1)});
      }
    }
    const Complex constant = j.contains("constant") ? complex_from_json(j.at("constant")) : Complex(1.0);
    return BlaschkeProduct(std::move(zeros), constant);
  });
}

Json to_json(const RationalFunction& u) {
  return {{"num", poly_to_json(u.numerator())}, {"den", poly_to_json(u.denominator())}};
}

RationalFunction rational_from_json(const Json& j) {
  return guarded("rational function", [&] {
    return RationalFunction(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
  });
}

RationalFunction symbol_from_json(const Json& j) {
  if (j.contains("num")) return rational_from_json(j);
  return blaschke_from_json(j).to_rational();
}

Json to_json(const JordanModel& m) {
  Json blocks = Json::array();
  for (const auto& b : m.blocks()) blocks.push_back(to_json(b));
  return {{"blocks", std::move(blocks)}};
}

JordanModel jordan_model_from_json(const Json& j) {
  return guarded("Jordan model", [&] {
    std::vector<BlaschkeProduct> blocks;
    for (const Json& b : j.at("blocks")) blocks.push_back(blaschke_from_json(b));
    return JordanModel(std::move(blocks));
  });
}

Json to_json(const CoronaSolution& s) {
  return {{"u1", to_json(s.u1)},          {"u2", to_json(s.u2)},
          {"residual", number(s.residual)}, {"norm1", number(s.norm1)},
          {"norm2", number(s.norm2)},       {"delta", number(s.delta)},
          {"remainder", number(s.remainder)}};
}

CoronaSolution corona_from_json(const Json& j) {
  return guarded("corona solution", [&] {
    CoronaSolution s;
    s.u1 = rational_from_json(j.at("u1"));
    s.u2 = rational_from_json(j.at("u2"));
    s.residual = number_from_json(j.at("residual"));
    s.norm1 = number_from_json(j.at("norm1"));
    s.norm2 = number_from_json(j.at("norm2"));
    s.delta = number_from_json(j.at("delta"));
    s.remainder = number_from_json(j.value("remainder", Json(0.0)));
    return s;
  });
}

Json to_json(const ClusterSplit& s) {
  return {{"k", s.k},
          {"threshold", number(s.threshold)},
          {"E", complex_list(s.e)},
          {"F", complex_list(s.f)},
          {"degenerate", s.degenerate}};
}

ClusterSplit cluster_split_from_json(const Json& j) {
  return guarded("cluster split", [&] {
    ClusterSplit s;
    s.k = j.at("k").get<int>();
    s.threshold = number_from_json(j.at("threshold"));
    s.e = complex_list_from_json(j.at("E"));
    s.f = complex_list_from_json(j.at("F"));
    s.degenerate = j.at("degenerate").get<bool>();
    return s;
  });
}

Json to_json(const TraceNode& node) {
  Json j = {{"kind", node.base ? "base" : "split"},
            {"zeros", complex_list(node.zeros)},
            {"normX", number(node.norm_x)},
            {"normXinv", number(node.norm_x_inv)}};
  if (node.base) {
    j["xi1"] = to_json(node.xi1);
    j["xi2"] = to_json(node.xi2);
    j["psiNorm1"] = number(node.psi_norm1);
    j["psiNorm2"] = number(node.psi_norm2);
    j["basisCond1"] = number(node.basis_cond1);
    j["basisCond2"] = number(node.basis_cond2);
    j["retries"] = node.retries;
  } else {
    j["split"] = to_json(node.split);
    j["coronaNorm1"] = number(node.corona_norm1);
    j["coronaNorm2"] = number(node.corona_norm2);
    j["coronaResidual"] = number(node.corona_residual);
    j["delta"] = number(node.delta);
    j["separationBound"] = number(node.separation_bound);
    j["y1Norm"] = number(node.y1_norm);
    j["y1InvNorm"] = number(node.y1_inv_norm);
    j["y2Norm"] = number(node.y2_norm);
    j["y2InvNorm"] = number(node.y2_inv_norm);
    j["splitResidual"] = number(node.split_residual);
    Json children = Json::array();
    for (const auto& c : node.children) children.push_back(to_json(c));
    j["children"] = std::move(children);
  }
  return j;
}

TraceNode trace_from_json(const Json& j) {
  return guarded("trace", [&] {
    TraceNode node;
    node.base = j.at("kind").get<std::string>() == "base";
    node.zeros = complex_list_from_json(j.at("zeros"));
    node.norm_x = number_from_json(j.at("normX"));
    node.norm_x_inv = number_from_json(j.at("normXinv"));
    if (node.base) {
      node.xi1 = vector_from_json(j.at("xi1"));
      node.xi2 = vector_from_json(j.at("xi2"));
      node.psi_norm1 = number_from_json(j.at("psiNorm1"));
      node.psi_norm2 = number_from_json(j.at("psiNorm2"));
      node.basis_cond1 = number_from_json(j.at("basisCond1"));
      node.basis_cond2 = number_from_json(j.at("basisCond2"));
      node.retries = j.at("retries").get<int>();
    } else {
      node.split = cluster_split_from_json(j.at("split"));
      node.corona_norm1 = number_from_json(j.at("coronaNorm1"));
      node.corona_norm2 = number_from_json(j.at("coronaNorm2"));
      node.corona_residual = number_from_json(j.at("coronaResidual"));
      node.delta = number_from_json(j.at("delta"));
      node.separation_bound = number_from_json(j.at("separationBound"));
      node.y1_norm = number_from_json(j.at("y1Norm"));
      node.y1_inv_norm = number_from_json(j.at("y1InvNorm"));
      node.y2_norm = number_from_json(j.at("y2Norm"));
      node.y2_inv_norm = number_from_json(j.at("y2InvNorm"));
      node.split_residual = number_from_json(j.at("splitResidual"));
      for (const Json& c : j.at("children")) node.children.push_back(trace_from_json(c));
    }
    return node;
  });
}

Json to_json(const SimilarityCertificate& c) {
  return {{"X", matrix_to_json(c.x)},
          {"residual", number(c.residual)},
          {"normX", number(c.norm_x)},
          {"normXinv", number(c.norm_x_inv)},
          {"beta", number(c.beta)},
          {"betaPrime", number(c.beta_prime)},
          {"mu", number(c.mu)},
          {"radius", number(c.radius)},
          {"hypothesis1", number(c.hypothesis1)},
          {"hypothesis2", number(c.hypothesis2)},
          {"trace", to_json(c.trace)}};
}

SimilarityCertificate certificate_from_json(const Json& j) {
  return guarded("similarity certificate", [&] {
    SimilarityCertificate c;
    c.x = matrix_from_json(j.at("X"));
    c.residual = number_from_json(j.at("residual"));
    c.norm_x = number_from_json(j.at("normX"));
    c.norm_x_inv = number_from_json(j.at("normXinv"));
    c.beta = number_from_json(j.at("beta"));
    c.beta_prime = number_from_json(j.at("betaPrime"));
    c.mu = number_from_json(j.at("mu"));
    c.radius = number_from_json(j.at("radius"));
    c.hypothesis1 = number_from_json(j.at("hypothesis1"));
    c.hypothesis2 = number_from_json(j.at("hypothesis2"));
    c.trace = trace_from_json(j.at("trace"));
    return c;
  });
}

Json to_json(const MaximalityReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"psi", to_json(e.psi)},
                       {"lambda", to_json(e.lambda)},
                       {"norm", number(e.norm)},
                       {"sigma2", number(e.sigma2)},
                       {"xi", to_json(e.xi)},
                       {"cyclic", e.cyclic},
                       {"margin", number(e.margin)}});
  }
  return {{"theta", to_json(r.theta)}, {"entries", std::move(entries)}};
}

MaximalityReport maximality_from_json(const Json& j) {
  return guarded("maximality report", [&] {
    MaximalityReport r;
    r.theta = blaschke_from_json(j.at("theta"));
    for (const Json& e : j.at("entries")) {
      MaximalityEntry entry;
      entry.psi = blaschke_from_json(e.at("psi"));
      entry.lambda = complex_from_json(e.at("lambda"));
      entry.norm = number_from_json(e.at("norm"));
      entry.sigma2 = number_from_json(e.at("sigma2"));
      entry.xi = vector_from_json(e.at("xi"));
      entry.cyclic = e.at("cyclic").get<bool>();
      entry.margin = number_from_json(e.at("margin"));
      r.entries.push_back(std::move(entry));
    }
    return r;
  });
}

Json to_json(const UnitaryRecovery& r) {
  return {{"W", matrix_to_json(r.w)},
          {"theta", to_json(r.theta)},
          {"psi", to_json(r.psi)},
          {"lambda", to_json(r.lambda)},
          {"xi", to_json(r.xi)},
          {"psiNorm", number(r.psi_norm)},
          {"sigma2", number(r.sigma2)},
          {"unitarityResidual", number(r.unitarity_residual)},
          {"intertwiningResidual", number(r.intertwining_residual)}};
}

Json to_json(const IrreducibilityResult& r) {
  Json j = {{"irreducible", r.irreducible},
            {"commutantDimension", r.commutant_dimension},
            {"reducingDimension", r.reducing_dimension},
            {"doubleCommutantDimension", r.double_commutant_dimension},
            {"hasIdempotent", r.has_idempotent}};
  j["witness"] = r.witness ? matrix_to_json(*r.witness) : Json(nullptr);
  j["witnessResidual"] = number(r.witness_residual);
  j["idempotent"] = r.idempotent ? matrix_to_json(*r.idempotent) : Json(nullptr);
  j["idempotentResidual"] = number(r.idempotent_residual);
  return j;
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw Error(Errc::InvalidInput, path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidInput, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::InvalidInput, "write failed for " + path.string());
}

void write_file(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace c0::io
