#pragma once

#include "padicpose/pipeline.hpp"

#include <json.hpp>

#include <iosfwd>
#include <vector>

namespace padicpose {

// JSON-lines correspondences: {"u":[..],"v":[..],"m":M} or
// {"px":[x,y],"px2":[x2,y2],"n":N}, with an optional {"ground_truth":[[9]],"m":M} header.
// Throws InputError on malformed or inconsistent lines.
CorrespondenceSet read_correspondences(std::istream& in);
void write_correspondences(std::ostream& out, const CorrespondenceSet& x);

// Matrix lines {"E":[9 ints],"m":M} with optional "slot".
std::vector<PooledCandidate> read_candidates(std::istream& in, int* prec);

nlohmann::json matrix_json(const Mat3& m);
nlohmann::json candidate_json(const CandidateEssential& c);
nlohmann::json report_json(const RankedResult& r);

}  // namespace padicpose
