#pragma once

#include <nlohmann/json.hpp>

#include "intertwine/fusion.hpp"
#include "intertwine/kz.hpp"
#include "intertwine/lie_algebra.hpp"
#include "intertwine/matrix.hpp"
#include "intertwine/pbw.hpp"

namespace intertwine {

/// Version tag carried by every JSON report.
inline constexpr const char* kReportSchema = "intertwine-report/1";

nlohmann::json export_json(const Scalar& s);
nlohmann::json export_json(const Vector& v);
/// Row-major list of rows.
nlohmann::json export_json(const Matrix& m);

/// [{"monomial": [["f",-1],...], "base": "v0", "coeff": "p/q"}, ...] in basis-key order.
nlohmann::json export_json(const GradedVector& v, const SimpleLieAlgebra& alg);
GradedVector import_graded_vector(const nlohmann::json& doc, const SimpleLieAlgebra& alg);

nlohmann::json export_json(const ObstructionReport& r);
nlohmann::json export_json(const CheckReport& r);
nlohmann::json export_json(const CandidateDiagnostics& d);
nlohmann::json export_json(const FusionResult& r);

/// Header data, obstruction report and one matrix per degree and weight block.
/// Rows are the PBW basis keys that occur, columns the tensor basis of the block.
nlohmann::json export_json(const IntertwinerPrefix& p);

}  // namespace intertwine
