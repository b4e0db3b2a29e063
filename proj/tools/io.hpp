#pragma once

// JSON exchange formats.
//
//   operator:     { "local_dim": d, "entries":    [[re, im], ...] }  d^4 entries, row-major
//   pure state:   { "local_dim": d, "amplitudes": [[re, im], ...] }  d^2 entries
//   normal form:  { "local_dim": d, "unitary": [[re, im], ...], "coefficients": [...],
//                   "residual": x }
//   p^PPT result: see to_json(const PpptResult&, ...)
//   certificate:  { "schema_version": 1, ... }

#include <string>
#include <variant>

#include "json.hpp"

#include "schmidt_forge/certify.hpp"
#include "schmidt_forge/ppt_sdp.hpp"
#include "schmidt_forge/schmidt.hpp"
#include "schmidt_forge/tensor_core.hpp"

namespace schmidt_forge::io {

using Json = nlohmann::json;

Json to_json(const BipartiteOperator& op);
Json to_json(const PureState& state);
Json to_json(const NormalFormResult& nf);
Json to_json(const SchmidtCertificate& cert);
Json to_json(const VerificationReport& report);
Json to_json(const PpptResult& result, const std::string& input_digest = {});

BipartiteOperator operator_from_json(const Json& j);
PureState state_from_json(const Json& j);

using StateInput = std::variant<BipartiteOperator, PureState>;
StateInput state_input_from_json(const Json& j);

/// The density operator described by either variant.
BipartiteOperator as_density(const StateInput& input);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Canonical serialization used for every emitted document.
std::string dump(const Json& j);

}  // namespace schmidt_forge::io
