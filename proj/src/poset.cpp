#include "cbn/poset.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_map>

#include "cbn/errors.hpp"

namespace cbn {

namespace {

constexpr std::uint64_t bit(int e) { return std::uint64_t{1} << e; }

std::uint64_t count_ideals_rec(std::uint64_t mask, const std::vector<std::uint64_t>& below,
                               const std::vector<std::uint64_t>& above,
                               std::unordered_map<std::uint64_t, std::uint64_t>& memo) {
  if (mask == 0) return 1;
  if (auto it = memo.find(mask); it != memo.end()) return it->second;

  // Pick the minimal element of the sub-poset with the largest up-set; that
  // branch shrinks fastest.
  int pick = -1;
  int best = -1;
  for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
    const int e = std::countr_zero(rest);
    if ((below[e] & mask) != 0) continue;
    const int up = std::popcount(above[e] & mask);
    if (up > best) {
      best = up;
      pick = e;
    }
  }
  const std::uint64_t without_pick = mask & ~bit(pick);
  const std::uint64_t without_up = without_pick & ~above[pick];
  const std::uint64_t total = count_ideals_rec(without_pick, below, above, memo) +
                              count_ideals_rec(without_up, below, above, memo);
  memo.emplace(mask, total);
  return total;
}

}  // namespace

std::vector<int> Genotype::events() const {
  std::vector<int> out;
  for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) out.push_back(std::countr_zero(rest));
  return out;
}

std::string to_bitstring(Genotype g, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int e = 0; e < n; ++e)
    if (g.contains(e)) s[static_cast<std::size_t>(e)] = '1';
  return s;
}

std::string to_label(Genotype g, int n) {
  if (g.empty()) return "\xE2\x88\x85";  // U+2205
  std::string s;
  for (int e : g.events()) {
    if (n > 9 && !s.empty()) s += ',';
    s += std::to_string(e + 1);
  }
  return s;
}

Poset Poset::from_relations(int n, std::span<const Relation> pairs, std::vector<std::string> labels) {
  if (n < 1 || n > kMaxEvents)
    throw IndexError("event count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxEvents) + "]");
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw DimensionMismatch("expected " + std::to_string(n) + " labels, got " + std::to_string(labels.size()));

  Poset p;
  p.n_ = n;
  p.labels_ = std::move(labels);
  p.below_.assign(static_cast<std::size_t>(n), 0);
  for (const auto& r : pairs) {
    if (r.lower < 0 || r.lower >= n || r.upper < 0 || r.upper >= n)
      throw IndexError("relation " + std::to_string(r.lower) + "<" + std::to_string(r.upper) +
                       " references an event outside [0, " + std::to_string(n) + ")");
    if (r.lower == r.upper) throw CycleError("reflexive relation on event " + std::to_string(r.lower));
    p.below_[static_cast<std::size_t>(r.upper)] |= bit(r.lower);
  }
  // Warshall closure on below-sets.
  for (int k = 0; k < n; ++k)
    for (int f = 0; f < n; ++f)
      if ((p.below_[static_cast<std::size_t>(f)] >> k) & 1U) p.below_[static_cast<std::size_t>(f)] |= p.below_[static_cast<std::size_t>(k)];
  for (int e = 0; e < n; ++e)
    if (p.below_[static_cast<std::size_t>(e)] & bit(e))
      throw CycleError("relations contain a cycle through event " + std::to_string(e));

  p.above_.assign(static_cast<std::size_t>(n), 0);
  for (int f = 0; f < n; ++f)
    for (int e : Genotype(p.below_[static_cast<std::size_t>(f)]).events()) p.above_[static_cast<std::size_t>(e)] |= bit(f);
  return p;
}

Poset Poset::chain(int n) {
  std::vector<Relation> pairs;
  for (int e = 0; e + 1 < n; ++e) pairs.push_back({e, e + 1});
  return from_relations(n, pairs);
}

void Poset::check_event(int e) const {
  if (e < 0 || e >= n_) throw IndexError("event " + std::to_string(e) + " outside [0, " + std::to_string(n_) + ")");
}

bool Poset::less(int e, int f) const {
  check_event(e);
  check_event(f);
  return (below_[static_cast<std::size_t>(f)] >> e) & 1U;
}

Genotype Poset::below(int e) const {
  check_event(e);
  return Genotype(below_[static_cast<std::size_t>(e)]);
}

Genotype Poset::above(int e) const {
  check_event(e);
  return Genotype(above_[static_cast<std::size_t>(e)]);
}

std::vector<Relation> Poset::relations() const {
  std::vector<Relation> out;
  for (int e = 0; e < n_; ++e)
    for (int f : Genotype(above_[static_cast<std::size_t>(e)]).events()) out.push_back({e, f});
  return out;
}

std::size_t Poset::relation_count() const {
  std::size_t total = 0;
  for (auto b : below_) total += static_cast<std::size_t>(std::popcount(b));
  return total;
}

std::vector<Relation> Poset::cover_relations() const {
  std::vector<Relation> out;
  for (int e = 0; e < n_; ++e) {
    for (int f : Genotype(above_[static_cast<std::size_t>(e)]).events()) {
      // e is covered by f unless something sits strictly between them.
      if ((above_[static_cast<std::size_t>(e)] & below_[static_cast<std::size_t>(f)]) == 0) out.push_back({e, f});
    }
  }
  return out;
}

bool Poset::is_order_ideal(Genotype g) const {
  if (!g.fits_width(n_)) throw DimensionMismatch("genotype wider than " + std::to_string(n_) + " events");
  for (std::uint64_t rest = g.bits(); rest != 0; rest &= rest - 1) {
    const int e = std::countr_zero(rest);
    if ((below_[static_cast<std::size_t>(e)] & ~g.bits()) != 0) return false;
  }
  return true;
}

Genotype Poset::min_complement(Genotype g) const {
  if (!is_order_ideal(g)) throw NotIdealError("genotype " + to_bitstring(g, n_) + " is not an order ideal");
  std::uint64_t out = 0;
  for (int e = 0; e < n_; ++e)
    if (!g.contains(e) && (below_[static_cast<std::size_t>(e)] & ~g.bits()) == 0) out |= bit(e);
  return Genotype(out);
}

std::vector<int> Poset::linear_extension() const {
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n_));
  std::uint64_t placed = 0;
  while (static_cast<int>(order.size()) < n_) {
    for (int e = 0; e < n_; ++e) {
      if ((placed & bit(e)) == 0 && (below_[static_cast<std::size_t>(e)] & ~placed) == 0) {
        order.push_back(e);
        placed |= bit(e);
        break;
      }
    }
  }
  return order;
}

Poset Poset::with_relation(int e, int f) const {
  auto pairs = relations();
  pairs.push_back({e, f});
  return from_relations(n_, pairs, labels_);
}

std::string Poset::label(int e) const {
  check_event(e);
  return labels_.empty() ? std::to_string(e + 1) : labels_[static_cast<std::size_t>(e)];
}

bool is_refinement(const Poset& p1, const Poset& p2) {
  if (p1.size() != p2.size())
    throw DimensionMismatch("posets have " + std::to_string(p1.size()) + " and " + std::to_string(p2.size()) + " events");
  for (int e = 0; e < p1.size(); ++e)
    if (!p1.below(e).subset_of(p2.below(e))) return false;
  return true;
}

LatticeLimits default_limits() {
  LatticeLimits limits;
  if (const char* env = std::getenv("CBN_MAX_N"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= kMaxEvents) {
      limits.max_events = static_cast<int>(v);
      limits.max_ideals = std::max(limits.max_ideals, std::uint64_t{1} << std::min<long>(v, 40));
    }
  }
  return limits;
}

std::uint64_t count_order_ideals(const Poset& p) {
  std::vector<std::uint64_t> below(static_cast<std::size_t>(p.size()));
  std::vector<std::uint64_t> above(static_cast<std::size_t>(p.size()));
  for (int e = 0; e < p.size(); ++e) {
    below[static_cast<std::size_t>(e)] = p.below(e).bits();
    above[static_cast<std::size_t>(e)] = p.above(e).bits();
  }
  std::unordered_map<std::uint64_t, std::uint64_t> memo;
  return count_ideals_rec(Genotype::full(p.size()).bits(), below, above, memo);
}

GenotypeLattice::GenotypeLattice(Poset poset, std::vector<Genotype> ideals)
    : poset_(std::move(poset)), ideals_(std::move(ideals)) {}

std::optional<std::size_t> GenotypeLattice::index_of(Genotype g) const {
  auto it = std::lower_bound(ideals_.begin(), ideals_.end(), g, CanonicalLess{});
  if (it == ideals_.end() || *it != g) return std::nullopt;
  return static_cast<std::size_t>(it - ideals_.begin());
}

std::size_t GenotypeLattice::require_index(Genotype g) const {
  if (auto i = index_of(g)) return *i;
  throw NotIdealError("genotype " + to_bitstring(g, events()) + " is not in the lattice");
}

GenotypeLattice enumerate_order_ideals(const Poset& p, const LatticeLimits& limits) {
  if (p.size() > limits.max_events)
    throw CapExceeded(std::to_string(p.size()) + " events exceed the enumeration cap of " +
                      std::to_string(limits.max_events) + " (set CBN_MAX_N to raise it)");
  const std::uint64_t count = count_order_ideals(p);
  if (count > limits.max_ideals)
    throw CapExceeded("lattice of " + std::to_string(count) + " ideals exceeds the cap of " +
                      std::to_string(limits.max_ideals));

  // Decide events in a linear extension; an event may join once its
  // predecessors (all decided earlier) are present.
  const auto order = p.linear_extension();
  std::vector<std::uint64_t> below(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) below[i] = p.below(order[i]).bits();

  std::vector<Genotype> ideals;
  ideals.reserve(static_cast<std::size_t>(count));
  std::vector<std::uint64_t> frontier{0};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::uint64_t b = bit(order[i]);
    const std::size_t current = frontier.size();
    for (std::size_t k = 0; k < current; ++k)
      if ((below[i] & ~frontier[k]) == 0) frontier.push_back(frontier[k] | b);
  }
  for (auto m : frontier) ideals.emplace_back(m);
  std::sort(ideals.begin(), ideals.end(), CanonicalLess{});
  return GenotypeLattice(p, std::move(ideals));
}

std::vector<std::pair<std::size_t, std::size_t>> incomparable_pairs(const GenotypeLattice& lattice) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto ideals = lattice.ideals();
  for (std::size_t i = 0; i < ideals.size(); ++i)
    for (std::size_t j = i + 1; j < ideals.size(); ++j)
      if (!ideals[i].subset_of(ideals[j]) && !ideals[j].subset_of(ideals[i])) out.emplace_back(i, j);
  return out;
}

}  // namespace cbn
