#pragma once

// JSON encodings of fields, rationals, point maps, bound and correction
// reports.  Rationals are {"num": ..., "den": ...}; each component is a JSON
// integer when it fits in 64 bits and a decimal string otherwise.  Readers
// accept both.

#include <string>

#include <json.hpp>

#include "projcorrect/bounds.hpp"
#include "projcorrect/corrector.hpp"
#include "projcorrect/field.hpp"
#include "projcorrect/pointmap.hpp"

namespace projcorrect::io {

using Json = nlohmann::ordered_json;

Json to_json(const FieldSpec& spec);
FieldSpec field_spec_from_json(const Json& j);

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const BoundReport& report);

/// {"field", "n_domain", "n_codomain", "table"}
Json to_json(const PointMap& f);
PointMap point_map_from_json(const Json& j);

/// {"sigma_exponent", "matrix"} with entries as element codes.
Json to_json(const SemilinearMap& m);
SemilinearMap semilinear_from_json(const Json& j, const Field& field);

Json to_json(const CorrectionOutcome& outcome);

/// elapsed_seconds is written only when include_timing is set, so reports of
/// identical runs compare byte for byte.
Json to_json(const CorrectionReport& report, bool include_timing);

/// Throws IoError when the file cannot be read or is not JSON.
Json read_json(const std::string& path);

/// Pretty-printed with a trailing newline; "-" writes to stdout.
void write_json(const std::string& path, const Json& j);

void write_text(const std::string& path, const std::string& text);

}  // namespace projcorrect::io
