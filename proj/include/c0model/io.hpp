#pragma once

// JSON encodings. Complex numbers are [re, im]; matrices are row-major
// {"n": N, "data": [[re, im], ...]}; NaN is written as null.

#include <filesystem>

#include <json.hpp>

#include "c0model/corona.hpp"
#include "c0model/equivalence.hpp"
#include "c0model/modelspace.hpp"

namespace c0::io {

using Json = nlohmann::json;

Json to_json(Complex z);
Complex complex_from_json(const Json& j);

/// Number or null (NaN).
Json number(double x);
double number_from_json(const Json& j);

Json to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
/// Square matrices only. Throws InvalidInput.
Matrix matrix_from_json(const Json& j);

/// Rectangular matrices: {"rows": r, "cols": c, "data": [...]} row-major.
Json rect_to_json(const Matrix& m);
Matrix rect_from_json(const Json& j);

Json to_json(const BlaschkeProduct& b);
BlaschkeProduct blaschke_from_json(const Json& j);

Json to_json(const RationalFunction& u);
RationalFunction rational_from_json(const Json& j);

/// Either encoding; a Blaschke product is converted with to_rational().
RationalFunction symbol_from_json(const Json& j);

Json to_json(const JordanModel& m);
JordanModel jordan_model_from_json(const Json& j);

Json to_json(const CoronaSolution& s);
CoronaSolution corona_from_json(const Json& j);

Json to_json(const ClusterSplit& s);
ClusterSplit cluster_split_from_json(const Json& j);

Json to_json(const TraceNode& node);
TraceNode trace_from_json(const Json& j);

Json to_json(const SimilarityCertificate& c);
SimilarityCertificate certificate_from_json(const Json& j);

Json to_json(const MaximalityReport& r);
MaximalityReport maximality_from_json(const Json& j);

Json to_json(const UnitaryRecovery& r);

Json to_json(const IrreducibilityResult& r);

/// Throws InvalidInput with the path on failure.
Json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace c0::io
