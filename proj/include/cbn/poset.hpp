#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cbn {

/// Hard ceiling on the number of events; genotypes are 64-bit masks and
/// 2^n must stay representable.
inline constexpr int kMaxEvents = 63;

/// A subset of events stored as a bit mask (bit e set iff event e occurred).
class Genotype {
 public:
  constexpr Genotype() = default;
  constexpr explicit Genotype(std::uint64_t bits) : bits_(bits) {}

  static Genotype of(std::initializer_list<int> events) {
    std::uint64_t bits = 0;
    for (int e : events) bits |= std::uint64_t{1} << e;
    return Genotype(bits);
  }
  static constexpr Genotype full(int n) {
    return Genotype(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(int e) const { return (bits_ >> e) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool subset_of(Genotype other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr Genotype with(int e) const { return Genotype(bits_ | (std::uint64_t{1} << e)); }
  constexpr Genotype without(int e) const { return Genotype(bits_ & ~(std::uint64_t{1} << e)); }
  constexpr bool fits_width(int n) const { return subset_of(full(n)); }

  friend constexpr Genotype operator|(Genotype a, Genotype b) { return Genotype(a.bits_ | b.bits_); }
  friend constexpr Genotype operator&(Genotype a, Genotype b) { return Genotype(a.bits_ & b.bits_); }
  friend constexpr bool operator==(Genotype, Genotype) = default;

  std::vector<int> events() const;

 private:
  std::uint64_t bits_ = 0;
};

/// Canonical genotype order: by cardinality, then by mask value.
struct CanonicalLess {
  constexpr bool operator()(Genotype a, Genotype b) const {
    const int ca = a.size();
    const int cb = b.size();
    return ca != cb ? ca < cb : a.bits() < b.bits();
  }
};

/// Bit string with character i describing event i, e.g. "0110".
std::string to_bitstring(Genotype g, int n);
/// 1-based event indices concatenated ("123"); comma separated when n > 9.
std::string to_label(Genotype g, int n);

/// e < f
struct Relation {
  int lower = 0;
  int upper = 0;
  friend constexpr auto operator<=>(const Relation&, const Relation&) = default;
};

/// Strict partial order on events 0..n-1, stored transitively closed.
class Poset {
 public:
  Poset() = default;

  /// Transitive closure of `pairs`. Throws IndexError, CycleError.
  static Poset from_relations(int n, std::span<const Relation> pairs,
                              std::vector<std::string> labels = {});
  static Poset from_relations(int n, std::initializer_list<Relation> pairs) {
    return from_relations(n, std::span<const Relation>(pairs.begin(), pairs.size()));
  }
  static Poset antichain(int n) { return from_relations(n, std::span<const Relation>{}); }
  static Poset chain(int n);

  int size() const { return n_; }
  bool less(int e, int f) const;
  /// Events strictly below e.
  Genotype below(int e) const;
  /// Events strictly above e.
  Genotype above(int e) const;

  std::vector<Relation> relations() const;
  std::size_t relation_count() const;
  /// Transitive reduction.
  std::vector<Relation> cover_relations() const;

  bool is_order_ideal(Genotype g) const;
  /// Events outside g whose predecessors all lie in g. Throws NotIdealError.
  Genotype min_complement(Genotype g) const;

  /// Events in an order compatible with the relation (ascending index among
  /// available minimal events).
  std::vector<int> linear_extension() const;

  /// Copy with one extra relation e < f (closed). Throws CycleError.
  Poset with_relation(int e, int f) const;

  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int e) const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.n_ == b.n_ && a.below_ == b.below_;
  }

 private:
  void check_event(int e) const;

  int n_ = 0;
  std::vector<std::uint64_t> below_;
  std::vector<std::uint64_t> above_;
  std::vector<std::string> labels_;
};

/// Every relation of p1 holds in p2. Throws DimensionMismatch.
bool is_refinement(const Poset& p1, const Poset& p2);

/// Enumeration limits; counting is unaffected.
struct LatticeLimits {
  int max_events = 25;
  std::uint64_t max_ideals = std::uint64_t{1} << 25;
};

/// Defaults, with CBN_MAX_N overriding `max_events`.
LatticeLimits default_limits();

/// Number of order ideals, by memoized decomposition on a minimal element.
std::uint64_t count_order_ideals(const Poset& p);

/// The distributive lattice J(E) of order ideals in canonical order.
class GenotypeLattice {
 public:
  GenotypeLattice(Poset poset, std::vector<Genotype> ideals);

  const Poset& poset() const { return poset_; }
  int events() const { return poset_.size(); }
  std::size_t size() const { return ideals_.size(); }
  std::span<const Genotype> ideals() const { return ideals_; }
  Genotype operator[](std::size_t i) const { return ideals_[i]; }

  std::optional<std::size_t> index_of(Genotype g) const;
  /// Throws NotIdealError if g is not a member.
  std::size_t require_index(Genotype g) const;

 private:
  Poset poset_;
  std::vector<Genotype> ideals_;
};

/// Throws CapExceeded when the poset or its lattice is larger than `limits`.
GenotypeLattice enumerate_order_ideals(const Poset& p, const LatticeLimits& limits = default_limits());

/// Unordered incomparable pairs (i, j), i < j, as lattice indices.
std::vector<std::pair<std::size_t, std::size_t>> incomparable_pairs(const GenotypeLattice& lattice);

}  // namespace cbn
