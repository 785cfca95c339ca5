#include "nls/neighborhoods.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace nls {

namespace {

constexpr int kPerturbAttempts = 50;

Move swap_at(int machine, int position) {
  return Move{MoveKind::swap_adjacent, machine, position, position + 1};
}

// Collects unique feasible moves in insertion order.
class MoveSet {
 public:
  MoveSet(const Instance& instance, const Solution& solution)
      : instance_(instance), solution_(solution) {}

  bool feasible(const Move& move) const {
    return is_feasible(instance_, apply_move(solution_.machine_seq, move));
  }

  void add(Move move) {
    if (move.kind == MoveKind::shift_within_block &&
        std::abs(move.from - move.to) == 1)
      move = swap_at(move.machine, std::min(move.from, move.to));
    if (std::find(moves_.begin(), moves_.end(), move) != moves_.end()) return;
    if (feasible(move)) moves_.push_back(move);
  }

  std::vector<Move> take() { return std::move(moves_); }

 private:
  const Instance& instance_;
  const Solution& solution_;
  std::vector<Move> moves_;
};

std::vector<CriticalBlock> blocks_of(const Instance& instance,
                                     const Solution& solution) {
  auto path = critical_path(instance, solution);
  return critical_blocks(instance, solution, path);
}

}  // namespace

std::string_view to_string(OperatorId op) {
  switch (op) {
    case OperatorId::ct: return "CT";
    case OperatorId::cet: return "CET";
    case OperatorId::ecet: return "ECET";
    case OperatorId::cei: return "CEI";
    case OperatorId::perturb: return "PERTURB";
  }
  return "?";
}

OperatorId parse_operator(std::string_view name) {
  for (int i = 0; i < kOperatorCount; ++i) {
    auto op = static_cast<OperatorId>(i);
    if (to_string(op) == name) return op;
  }
  throw std::invalid_argument("unknown operator '" + std::string(name) + "'");
}

MachineSequence apply_move(const MachineSequence& seq, const Move& move) {
  MachineSequence out = seq;
  auto& row = out.at(move.machine);
  const int n = static_cast<int>(row.size());
  if (move.from < 0 || move.to < 0 || move.from >= n || move.to >= n ||
      move.from == move.to)
    throw std::out_of_range("move positions out of range");
  auto at = [&](int p) { return row.begin() + p; };
  switch (move.kind) {
    case MoveKind::swap_adjacent:
      std::swap(row[move.from], row[move.to]);
      break;
    case MoveKind::shift_within_block:
      if (move.from < move.to)
        std::rotate(at(move.from), at(move.from + 1), at(move.to + 1));
      else
        std::rotate(at(move.to), at(move.from), at(move.from + 1));
      break;
    case MoveKind::swap_block_ends:
      if (move.to - move.from < 3)
        throw std::out_of_range("block-end swaps overlap");
      std::swap(row[move.from], row[move.from + 1]);
      std::swap(row[move.to - 1], row[move.to]);
      break;
  }
  return out;
}

std::vector<Move> ct_moves(const Instance& instance, const Solution& solution) {
  MoveSet moves(instance, solution);
  for (const auto& block : blocks_of(instance, solution))
    for (int i = 0; i + 1 < block.size(); ++i)
      moves.add(swap_at(block.machine, block.first_position + i));
  return moves.take();
}

std::vector<Move> cet_moves(const Instance& instance, const Solution& solution) {
  MoveSet moves(instance, solution);
  for (const auto& block : blocks_of(instance, solution)) {
    if (block.size() < 2) continue;
    moves.add(swap_at(block.machine, block.first_position));
    moves.add(swap_at(block.machine, block.first_position + block.size() - 2));
  }
  return moves.take();
}

std::vector<Move> ecet_moves(const Instance& instance, const Solution& solution) {
  MoveSet moves(instance, solution);
  for (const auto& block : blocks_of(instance, solution)) {
    const int first = block.first_position;
    const int last = first + block.size() - 1;
    if (block.size() < 2) continue;
    if (block.size() <= 3) {
      moves.add(swap_at(block.machine, first));
      moves.add(swap_at(block.machine, last - 1));
      continue;
    }
    Move compound{MoveKind::swap_block_ends, block.machine, first, last};
    if (moves.feasible(compound)) {
      moves.add(compound);
    } else {
      moves.add(swap_at(block.machine, first));
      moves.add(swap_at(block.machine, last - 1));
    }
  }
  return moves.take();
}

std::vector<Move> cei_moves(const Instance& instance, const Solution& solution) {
  MoveSet moves(instance, solution);
  for (const auto& block : blocks_of(instance, solution))
    for (int i = 0; i < block.size(); ++i)
      for (int k = 0; k < block.size(); ++k)
        if (i != k)
          moves.add(Move{MoveKind::shift_within_block, block.machine,
                         block.first_position + i, block.first_position + k});
  return moves.take();
}

std::vector<Move> neighborhood_moves(const Instance& instance,
                                     const Solution& solution, OperatorId op) {
  switch (op) {
    case OperatorId::ct: return ct_moves(instance, solution);
    case OperatorId::cet: return cet_moves(instance, solution);
    case OperatorId::ecet: return ecet_moves(instance, solution);
    case OperatorId::cei: return cei_moves(instance, solution);
    case OperatorId::perturb: break;
  }
  throw std::invalid_argument("perturbation is not a neighborhood operator");
}

NeighborResult best_neighbor(const Instance& instance, const Solution& solution,
                             OperatorId op) {
  const auto moves = neighborhood_moves(instance, solution, op);
  NeighborResult result{solution, std::nullopt, 0};
  for (const Move& move : moves) {
    auto candidate = try_evaluate(instance, apply_move(solution.machine_seq, move));
    if (!candidate) continue;
    ++result.evaluated;
    if (!result.move || candidate->makespan < result.solution.makespan) {
      result.solution = *std::move(candidate);
      result.move = move;
    }
  }
  return result;
}

Solution perturb(const Instance& instance, const Solution& solution,
                 int strength, std::mt19937_64& rng) {
  if (strength < 1) throw std::invalid_argument("perturbation strength must be >= 1");
  if (instance.num_jobs() < 2) return solution;

  std::uniform_int_distribution<int> pick_machine(0, instance.num_machines() - 1);
  std::uniform_int_distribution<int> pick_position(0, instance.num_jobs() - 2);
  MachineSequence seq = solution.machine_seq;
  bool changed = false;
  for (int s = 0; s < strength; ++s) {
    for (int attempt = 0; attempt < kPerturbAttempts; ++attempt) {
      const int machine = pick_machine(rng);
      const int position = pick_position(rng);
      std::swap(seq[machine][position], seq[machine][position + 1]);
      if (is_feasible(instance, seq)) {
        changed = true;
        break;
      }
      std::swap(seq[machine][position], seq[machine][position + 1]);
    }
  }
  if (!changed) return solution;
  return evaluate(instance, std::move(seq));
}

}  // namespace nls
