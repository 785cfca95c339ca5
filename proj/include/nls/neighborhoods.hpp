#pragma once

#include <array>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "nls/instance.hpp"
#include "nls/solution.hpp"

namespace nls {

/// Neighborhood operators and the perturbation operator, in action order.
enum class OperatorId { ct = 0, cet = 1, ecet = 2, cei = 3, perturb = 4 };

inline constexpr int kOperatorCount = 5;
inline constexpr std::array<OperatorId, 4> kNeighborhoodOperators{
    OperatorId::ct, OperatorId::cet, OperatorId::ecet, OperatorId::cei};

std::string_view to_string(OperatorId op);
OperatorId parse_operator(std::string_view name);

enum class MoveKind {
  swap_adjacent,       // swap positions from and to = from + 1
  shift_within_block,  // remove the job at from, reinsert it at to
  swap_block_ends,     // swap (from, from + 1) and (to - 1, to) atomically
};

struct Move {
  MoveKind kind = MoveKind::swap_adjacent;
  int machine = 0;
  int from = 0;
  int to = 0;

  bool operator==(const Move&) const = default;
};

MachineSequence apply_move(const MachineSequence& seq, const Move& move);

/// Every adjacent pair inside every critical block.
std::vector<Move> ct_moves(const Instance& instance, const Solution& solution);

/// First and last adjacent pair of each block with at least two ops.
std::vector<Move> cet_moves(const Instance& instance, const Solution& solution);

/// Start and end swaps of a block applied together. Blocks of two ops give
/// their one swap, blocks of three give both (overlapping) end swaps, and a
/// cyclic compound falls back to whichever end swaps stay feasible.
std::vector<Move> ecet_moves(const Instance& instance, const Solution& solution);

/// Each block op reinserted at every other position of its block. Shifts by
/// one position coincide with adjacent swaps and are reported as such.
std::vector<Move> cei_moves(const Instance& instance, const Solution& solution);

/// Dispatches to the operator's move generator. Throws std::invalid_argument
/// for OperatorId::perturb.
std::vector<Move> neighborhood_moves(const Instance& instance,
                                     const Solution& solution, OperatorId op);

struct NeighborResult {
  Solution solution;
  std::optional<Move> move;  // empty when the neighborhood was empty
  std::size_t evaluated = 0;

  bool no_op() const { return !move.has_value(); }
};

/// Steepest step: the feasible neighbor of minimal makespan, even if it is
/// worse than the input; the first in enumeration order wins ties.
NeighborResult best_neighbor(const Instance& instance, const Solution& solution,
                             OperatorId op);

/// `strength` random adjacent transpositions on random machines, each
/// rejection-sampled up to 50 times for feasibility.
Solution perturb(const Instance& instance, const Solution& solution,
                 int strength, std::mt19937_64& rng);

}  // namespace nls
