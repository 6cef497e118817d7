#pragma once

#include "relkit/family.hpp"
#include "relkit/models.hpp"

#include <json.hpp>

#include <string>

namespace relkit {

using nlohmann::json;

// Matrices travel as {"rows":n,"cols":m,"re":[...],"im":[...]}, row-major.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json subspace_to_json(const Subspace& s);

json relation_to_json(const LinearRelation& r);
LinearRelation relation_from_json(const json& j, const ToleranceContext& tol = {});

json system_to_json(const PassiveSystem& sys);
PassiveSystem system_from_json(const json& j);

json moments_to_json(const MomentSequence& m);
MomentSequence moments_from_json(const json& j);

/// Tagged union over the serializable family backends (system-backed,
/// relation-backed, and the closed forms).
json family_to_json(const OperatorFamily& fam);
OperatorFamily family_from_json(const json& j, const ToleranceContext& tol = {});

json grid_to_json(const std::vector<Complex>& grid);
std::vector<Complex> grid_from_json(const json& j);

json flags_to_json(const ClassificationFlags& fl);
json verdict_to_json(const FamilyVerdict& v);
json verification_to_json(const VerificationReport& rep);
json model_rows_to_json(const std::vector<ModelCheckRow>& rows);

std::string representation_tag_name(RepresentationTag tag);
RepresentationTag representation_tag_from_name(const std::string& name);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

} // namespace relkit
