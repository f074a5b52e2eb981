#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nlsg/critical.hpp"
#include "nlsg/minimize.hpp"
#include "nlsg/surgery.hpp"
#include "nlsg/topology.hpp"

namespace nlsg {

std::string to_json(const TopologyReport& r, int indent = 2);
/// Scalar fields, run trace and the level-pinching verdict (null for p outside (2, 6)).
std::string to_json(const GroundStateResult& r, double p, double mu, int indent = 2);
std::string to_json(const CriticalReport& r, int indent = 2);
std::string to_json(const Competitor& c, int indent = 2);
std::string to_json(const PhaseTransition& t, int indent = 2);

/// Columns param,energy,omega,status,iterations.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
/// Columns mu,energy,status,regime,iterations,energy_half_h.
void write_profile_csv(const std::vector<ProfileRow>& rows, std::ostream& out);

}  // namespace nlsg
