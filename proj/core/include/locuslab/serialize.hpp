#pragma once

// JSON documents for the CLI. Output is deterministic: fixed key order and
// shortest round-trip formatting of doubles.

#include <string>
#include <vector>

#include "locuslab/core_ifs.hpp"
#include "locuslab/hull.hpp"
#include "locuslab/screen.hpp"
#include "locuslab/traps.hpp"

namespace locuslab {

std::string attractor_json(const Params& params, const AttractorSample& sample);
std::string hull_json(const Params& params, const HullVertexList& hull);
std::string hull_json(const Params& params, const std::vector<PlanePoint>& numeric);
std::string certify_json(const Params& params0, const CertifyResult& result);
std::string screen_json(int m_max, Tail tail, const std::vector<OutlierCandidate>& candidates,
                        const std::vector<ConstraintVerdict>& verdicts);

}  // namespace locuslab
