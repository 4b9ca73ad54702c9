#pragma once

#include <string>
#include <vector>

#include "pursuitlab/engine.h"
#include "pursuitlab/solver.h"

namespace pursuitlab {

// Fixed-point decimal with nine fractional digits, the precision of every
// CSV cell.
std::string decimal9(double v);

// One row per sample time (union of both paths' samples). Columns:
//   t,lx,ly,mx,my,dist        2-d coordinate spaces
//   t,lx,mx,dist              intervals
//   t,l_edge,l_off,m_edge,m_off,dist   graphs
// l-infinity sums flatten each component with its index (t,l0x,l0y,l1,...).
std::string play_csv(const PlayRecord& record);

// eps,delta,states - one row per sweep entry.
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Trajectory plot in a unit-square viewBox: lion red, man blue, capture
// point marked. 2-d coordinate spaces only.
std::string play_svg(const PlayRecord& record);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace pursuitlab
