#pragma once

#include <string>
#include <vector>

#include "pursuitlab/engine.h"

namespace pursuitlab {

// An eps-discrete pursuit game restricted to a finite position grid: graph
// spaces use the nodes plus a point every `cell` along each edge, coordinate
// spaces a square lattice of pitch `cell`. Move budgets must be whole
// multiples of the cell and the starts must lie on the grid. Asymmetric
// budgets exist for monotonicity diagnostics; plays need symmetric ones.
struct DiscreteGameSpec {
  Space space;
  double eps_lion = 0.1;
  double eps_man = 0.1;
  double cell = 0.1;
  long rounds = 1;
  MoveOrder order = MoveOrder::LionFirst;
  Point lion_start;
  Point man_start;
};

// Value and optimal move tables of a DiscreteGameSpec from backward
// induction: delta is the closest round-boundary separation under optimal
// play (lion minimizing, man maximizing), where a move whose graph route
// passes through the opponent counts as distance 0. Ties pick the smallest
// position id, so results are deterministic.
struct ValueResult {
  double delta = 0.0;
  long rounds = 0;
  MoveOrder order = MoveOrder::LionFirst;
  double eps_lion = 0.0;
  double eps_man = 0.0;
  int position_count = 0;
  int lion_start_id = -1;
  int man_start_id = -1;
  std::vector<Point> positions;  // id -> grid point
  // first_move[k*P*P + a*P + b]: round k's best move for the first mover at
  // a against the second mover at b. second_move is indexed by the first
  // mover's landing position and the second mover's current one.
  std::vector<int> first_move;
  std::vector<int> second_move;
  long states = 0;  // value-table entries, the budget currency
};

ValueResult solve(const DiscreteGameSpec& spec, long state_budget = 10'000'000);

// Replays the tabulated optimal moves through play_discrete with capture
// only at exact distance 0; the record's boundary minimum reproduces delta
// bit-for-bit. Needs symmetric move budgets and at least one round.
PlayRecord replay(const ValueResult& result, const DiscreteGameSpec& spec);

struct SweepRow {
  double eps = 0.0;
  double delta = 0.0;
  long states = 0;
};

// Solves the same game at several move budgets, keeping the total duration
// rounds * eps and the eps : cell ratio of `base` fixed.
std::vector<SweepRow> delta_sweep(const DiscreteGameSpec& base, const std::vector<double>& eps_list,
                                  long state_budget = 10'000'000);

// Byte layout: magic "PLSV", u32 version 1, then the ValueResult fields and
// arrays as fixed-width little-endian values (see the README for the exact
// order). load_value rejects bad magic, versions, and truncated files.
void save_value(const ValueResult& result, const std::string& path);
ValueResult load_value(const std::string& path);

}  // namespace pursuitlab
