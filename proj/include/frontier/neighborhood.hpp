#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "frontier/model.hpp"
#include "frontier/rng.hpp"

namespace frontier {

enum class MoveKind { AssetReplacement, WeightTransfer };

/// Per-asset attribute a move leaves behind; tabu lists are keyed on these.
enum class Attribute { AssetIn, AssetOut, WeightUp, WeightDown };

struct AttributeTag {
  std::size_t asset = 0;
  Attribute attribute = Attribute::AssetIn;
};

/// One step in either neighborhood dimension.
///
/// AssetReplacement: `slot` loses `out` and gains `in` at the same weight.
/// WeightTransfer: `from` (slot `slot`) drops to `from_weight`, `to` (slot `other_slot`)
/// rises to `to_weight`; the pair sum is unchanged.
struct Move {
  MoveKind kind = MoveKind::AssetReplacement;
  std::size_t slot = 0;
  std::size_t other_slot = 0;
  std::size_t out = 0;
  std::size_t in = 0;
  std::size_t from = 0;
  std::size_t to = 0;
  double from_weight = 0.0;
  double to_weight = 0.0;
  double delta = 0.0;

  /// {asset-out, asset-in} for a replacement, {weight-down, weight-up} for a transfer.
  std::array<AttributeTag, 2> tags() const;
};

std::optional<Move> propose_replacement(const Portfolio& p, const ProblemSpec& spec, RngStream& rng);

/// Moves weight between the holdings in `slot_i` and `slot_j` so that slot_i ends at
/// new_weight_i. Donor/receiver roles follow from the direction of the change.
Move make_transfer(const Portfolio& p, std::size_t slot_i, std::size_t slot_j, double new_weight_i);

/// Picks two distinct held assets with combined weight above 2l (at most K(K-1)/2 draws)
/// and redistributes their weight uniformly. nullopt when no such pair was found or K < 2.
std::optional<Move> propose_weight_change(const Portfolio& p, const ProblemSpec& spec, RngStream& rng);

void apply_move(Portfolio& p, const Move& move);

/// Convenience forms returning the moved portfolio; nullopt means the dimension is empty.
std::optional<std::pair<Portfolio, Move>> replace_asset(const Portfolio& p, const ProblemSpec& spec,
                                                        RngStream& rng);
std::optional<std::pair<Portfolio, Move>> change_weights(const Portfolio& p, const ProblemSpec& spec,
                                                         RngStream& rng);

/// w' = l + (w - l) c with c = (1 - m l) / sum(w - l); the largest holding absorbs rounding so the
/// sum is 1. With no free mass above l the weights become equal (1/m).
std::vector<Holding> scale_weights(std::vector<Holding> raw, double min_weight);

/// Uniform crossover: shared assets take either parent's weight, single-parent assets survive
/// with probability 1/2. The child is then trimmed (lowest weight first, ties to lower index)
/// or padded (random unheld assets at weight l) to exactly K, and rescaled.
Portfolio crossover(const Portfolio& p1, const Portfolio& p2, const ProblemSpec& spec, RngStream& rng);

struct MutationOutcome {
  Portfolio portfolio;
  bool replaced = false;
  bool reweighted = false;
};

/// Independently applies a replacement with p_replace and a weight change with p_weights.
MutationOutcome mutate(const Portfolio& p, const ProblemSpec& spec, RngStream& rng,
                       double p_replace = 0.1, double p_weights = 0.1);

}  // namespace frontier
