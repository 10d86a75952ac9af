#pragma once

// CSV readers and writers. Numbers are written with 9 significant digits
// ("%.9g") so output files are byte-reproducible.
//
//   trajectory  t,aix,icc,ttp,compute,energy   (compute/energy empty when decoupled)
//   boundary    aix,icc
//   grid        aix,icc,regime
//   domains in  name,d,e,r,m,e_p,d_p,p_p
//   domains out name,aix,icc,ttp,stage,above_boundary
//   series      t,value
//   sweep       value,t_cross                  (t_cross empty: no crossing;
//                                              "error:<Kind>" on failure)

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "anai/calibration.hpp"
#include "anai/dynamics.hpp"
#include "anai/indices.hpp"
#include "anai/phase_space.hpp"

namespace anai {

std::string format_number(double v);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
// Crossing information is not part of the file; the result has none.
Trajectory read_trajectory_csv(std::istream& in);

void write_boundary_csv(std::ostream& out, const BoundaryCurve& curve);
void write_grid_csv(std::ostream& out, const RegimeGrid& grid);
void write_positioned_domains_csv(std::ostream& out, const std::vector<PositionedDomain>& domains);
void write_sweep_csv(std::ostream& out, const std::vector<SweepEntry>& entries);

ObservedSeries read_series_csv(std::istream& in, std::string label = {});
std::vector<DomainAssessment> read_domains_csv(std::istream& in);

}  // namespace anai
