#include "frontier/neighborhood.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace frontier {

namespace {

/// The rank-th smallest asset index in [0, n) that `held` does not contain.
/// Least fixed point of x = rank + #{h in held : h <= x}; no sorting or allocation.
template <typename HeldRange, typename AssetOf>
std::size_t nth_unheld(std::size_t rank, const HeldRange& held, AssetOf asset_of) {
  std::size_t x = rank;
  for (;;) {
    std::size_t below = 0;
    for (const auto& h : held) below += asset_of(h) <= x ? 1 : 0;
    const std::size_t next = rank + below;
    if (next == x) return x;
    x = next;
  }
}

std::size_t random_unheld(const std::vector<Holding>& held, std::size_t n, RngStream& rng) {
  return nth_unheld(rng.below(n - held.size()), held, [](const Holding& h) { return h.asset; });
}

}  // namespace

std::array<AttributeTag, 2> Move::tags() const {
  if (kind == MoveKind::AssetReplacement) {
    return {AttributeTag{out, Attribute::AssetOut}, AttributeTag{in, Attribute::AssetIn}};
  }
  return {AttributeTag{from, Attribute::WeightDown}, AttributeTag{to, Attribute::WeightUp}};
}

std::optional<Move> propose_replacement(const Portfolio& p, const ProblemSpec& spec, RngStream& rng) {
  const std::size_t n = spec.asset_count();
  if (p.size() == 0 || p.size() >= n) return std::nullopt;
  Move m;
  m.kind = MoveKind::AssetReplacement;
  m.slot = rng.below(p.size());
  m.other_slot = m.slot;
  m.out = p[m.slot].asset;
  m.in = random_unheld(p.holdings(), n, rng);
  m.from_weight = m.to_weight = p[m.slot].weight;
  return m;
}

Move make_transfer(const Portfolio& p, std::size_t slot_i, std::size_t slot_j, double new_weight_i) {
  const double wi = p[slot_i].weight;
  const double wj = p[slot_j].weight;
  const double pair_sum = wi + wj;
  const double new_weight_j = pair_sum - new_weight_i;
  Move m;
  m.kind = MoveKind::WeightTransfer;
  if (new_weight_i <= wi) {
    m.slot = slot_i;
    m.other_slot = slot_j;
    m.from_weight = new_weight_i;
    m.to_weight = new_weight_j;
    m.delta = wi - new_weight_i;
  } else {
    m.slot = slot_j;
    m.other_slot = slot_i;
    m.from_weight = new_weight_j;
    m.to_weight = new_weight_i;
    m.delta = wj - new_weight_j;
  }
  m.from = p[m.slot].asset;
  m.to = p[m.other_slot].asset;
  return m;
}

std::optional<Move> propose_weight_change(const Portfolio& p, const ProblemSpec& spec, RngStream& rng) {
  const std::size_t k = p.size();
  if (k < 2) return std::nullopt;
  const double l = spec.min_weight();
  const std::size_t attempts = k * (k - 1) / 2;
  for (std::size_t t = 0; t < attempts; ++t) {
    const std::size_t i = rng.below(k);
    std::size_t j = rng.below(k - 1);
    if (j >= i) ++j;
    const double pair_sum = p[i].weight + p[j].weight;
    if (!(pair_sum > 2.0 * l)) continue;
    return make_transfer(p, i, j, rng.uniform(l, pair_sum - l));
  }
  return std::nullopt;
}

void apply_move(Portfolio& p, const Move& move) {
  if (move.kind == MoveKind::AssetReplacement) {
    p[move.slot].asset = move.in;
  } else {
    p[move.slot].weight = move.from_weight;
    p[move.other_slot].weight = move.to_weight;
  }
}

std::optional<std::pair<Portfolio, Move>> replace_asset(const Portfolio& p, const ProblemSpec& spec,
                                                        RngStream& rng) {
  auto move = propose_replacement(p, spec, rng);
  if (!move) return std::nullopt;
  Portfolio out = p;
  apply_move(out, *move);
  return std::make_pair(std::move(out), *move);
}

std::optional<std::pair<Portfolio, Move>> change_weights(const Portfolio& p, const ProblemSpec& spec,
                                                         RngStream& rng) {
  auto move = propose_weight_change(p, spec, rng);
  if (!move) return std::nullopt;
  Portfolio out = p;
  apply_move(out, *move);
  return std::make_pair(std::move(out), *move);
}

std::vector<Holding> scale_weights(std::vector<Holding> raw, double min_weight) {
  if (raw.empty()) return raw;
  const double m = static_cast<double>(raw.size());
  for (const auto& h : raw) {
    if (h.weight < min_weight - kMinWeightSlack) {
      throw std::invalid_argument("scale_weights: raw weight below the minimum");
    }
  }
  const double free_mass = 1.0 - m * min_weight;
  if (free_mass <= 1e-15) {
    for (auto& h : raw) h.weight = min_weight;
    return raw;
  }
  // Holdings a rounding error below l count as exactly l; scaling their deficit by c would
  // let it grow from one generation to the next.
  double excess = 0.0;
  std::size_t largest = 0;
  for (std::size_t s = 0; s < raw.size(); ++s) {
    excess += std::max(0.0, raw[s].weight - min_weight);
    if (raw[s].weight > raw[largest].weight) largest = s;
  }
  if (!(excess > 0.0)) {
    for (auto& h : raw) h.weight = 1.0 / m;
    return raw;
  }
  const double c = free_mass / excess;
  double assigned = 0.0;
  for (std::size_t s = 0; s < raw.size(); ++s) {
    if (s == largest) continue;
    raw[s].weight = min_weight + std::max(0.0, raw[s].weight - min_weight) * c;
    assigned += raw[s].weight;
  }
  raw[largest].weight = 1.0 - assigned;
  return raw;
}

Portfolio crossover(const Portfolio& p1, const Portfolio& p2, const ProblemSpec& spec, RngStream& rng) {
  const std::size_t k = spec.k();
  std::vector<Holding> child;
  child.reserve(p1.size() + p2.size());
  for (const auto& h : p1.holdings()) {
    const std::size_t s2 = p2.slot_of(h.asset);
    if (s2 != p2.size()) {
      child.push_back({h.asset, rng.bernoulli(0.5) ? h.weight : p2[s2].weight});
    } else if (rng.bernoulli(0.5)) {
      child.push_back(h);
    }
  }
  for (const auto& h : p2.holdings()) {
    if (!p1.contains(h.asset) && rng.bernoulli(0.5)) child.push_back(h);
  }

  if (child.size() > k) {
    std::vector<std::size_t> order(child.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (child[a].weight != child[b].weight) return child[a].weight < child[b].weight;
      return child[a].asset < child[b].asset;
    });
    std::vector<char> drop(child.size(), 0);
    for (std::size_t r = 0; r < child.size() - k; ++r) drop[order[r]] = 1;
    std::vector<Holding> kept;
    kept.reserve(k);
    for (std::size_t s = 0; s < child.size(); ++s) {
      if (!drop[s]) kept.push_back(child[s]);
    }
    child = std::move(kept);
  }
  if (child.size() < k && k > spec.asset_count()) {
    throw std::logic_error("crossover: universe smaller than cardinality");
  }
  while (child.size() < k) {
    child.push_back({random_unheld(child, spec.asset_count(), rng), spec.min_weight()});
  }
  return Portfolio(scale_weights(std::move(child), spec.min_weight()));
}

MutationOutcome mutate(const Portfolio& p, const ProblemSpec& spec, RngStream& rng, double p_replace,
                       double p_weights) {
  const bool do_replace = rng.bernoulli(p_replace);
  const bool do_weights = rng.bernoulli(p_weights);
  MutationOutcome out{p, false, false};
  if (do_replace) {
    if (auto m = propose_replacement(out.portfolio, spec, rng)) {
      apply_move(out.portfolio, *m);
      out.replaced = true;
    }
  }
  if (do_weights) {
    if (auto m = propose_weight_change(out.portfolio, spec, rng)) {
      apply_move(out.portfolio, *m);
      out.reweighted = true;
    }
  }
  return out;
}

}  // namespace frontier
