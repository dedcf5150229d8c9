#pragma once

#include "json.hpp"

#include "lucas8/elementary.hpp"
#include "lucas8/pipeline.hpp"

namespace lucas8 {

using json = nlohmann::json;

// Reals are written with this many significant digits.
inline constexpr int kJsonDigits = 30;

json to_json(const Rat& q);
json to_json(const FieldElement& x);
json to_json(const CurvePoint& p);
json to_json(const LucasParams& pq);
json to_json(const Real& r);
json to_json(const CandidateShape& s);
json to_json(const HeightCertificate& c);
json to_json(const SearchReport& r);
json to_json(const TheoremCertificate& c);
json to_json(const SmallNWitness& w);
json to_json(const CurveInstance& e);

Rat rat_from_json(const json& j);
FieldElement field_element_from_json(const json& j);
CurvePoint point_from_json(const json& j);
LucasParams params_from_json(const json& j);
Real real_from_json(const json& j);
HeightCertificate height_certificate_from_json(const json& j);
SearchReport search_report_from_json(const json& j);
TheoremCertificate theorem_certificate_from_json(const json& j);

}  // namespace lucas8
