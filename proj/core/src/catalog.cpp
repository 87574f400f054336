#include "graphlift/catalog.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace graphlift {

bool mask_connected(AdjMask mask, int k) {
  if (k <= 1) return true;
  std::array<std::uint8_t, kMaxGraphletSize> rows{};
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (mask_has_edge(mask, i, j, k)) {
        rows[i] |= static_cast<std::uint8_t>(1u << j);
        rows[j] |= static_cast<std::uint8_t>(1u << i);
      }
    }
  }
  unsigned reach = 1;
  const unsigned full = (1u << k) - 1;
  for (;;) {
    unsigned grow = reach;
    unsigned frontier = reach;
    while (frontier) {
      const int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      grow |= rows[v];
    }
    grow &= full;
    if (grow == reach) return reach == full;
    reach = grow;
  }
}

std::uint64_t count_compatible_orderings(AdjMask mask, int k) {
  if (k < 1 || k > kMaxGraphletSize) throw std::invalid_argument("k out of range");
  if (!mask_connected(mask, k)) throw std::invalid_argument("disconnected graphlet");
  std::array<std::uint8_t, kMaxGraphletSize> rows{};
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (mask_has_edge(mask, i, j, k)) {
        rows[i] |= static_cast<std::uint8_t>(1u << j);
        rows[j] |= static_cast<std::uint8_t>(1u << i);
      }
    }
  }
  const unsigned full = (1u << k) - 1;
  std::vector<std::uint64_t> ways(full + 1, 0);
  std::vector<bool> connected(full + 1, false);
  for (unsigned sub = 1; sub <= full; ++sub) {
    unsigned reach = sub & (0u - sub);
    for (;;) {
      unsigned grow = reach;
      unsigned frontier = reach;
      while (frontier) {
        const int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        grow |= rows[v] & sub;
      }
      if (grow == reach) break;
      reach = grow;
    }
    connected[sub] = (reach == sub);
  }
  for (int v = 0; v < k; ++v) ways[1u << v] = 1;
  for (unsigned sub = 1; sub <= full; ++sub) {
    if (!connected[sub] || std::popcount(sub) < 2) continue;
    std::uint64_t acc = 0;
    unsigned rest = sub;
    while (rest) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      const unsigned prev = sub & ~(1u << v);
      if (connected[prev]) acc += ways[prev];
    }
    ways[sub] = acc;
  }
  return ways[full];
}

InducedSubgraph InducedSubgraph::from_host(const Graph& g,
                                           std::span<const VertexId> verts) {
  if (verts.empty() || verts.size() > kMaxGraphletSize) {
    throw std::invalid_argument("subgraph size out of range");
  }
  InducedSubgraph s;
  s.k = static_cast<int>(verts.size());
  for (int i = 0; i < s.k; ++i) {
    for (int j = 0; j < i; ++j) {
      if (verts[i] == verts[j]) throw std::invalid_argument("repeated vertex");
    }
    s.vertices[i] = verts[i];
    s.host_degrees[i] = g.degree(verts[i]);
  }
  for (int i = 0; i < s.k; ++i) {
    for (int j = i + 1; j < s.k; ++j) {
      if (g.has_edge(verts[i], verts[j])) s.mask |= pair_bit(i, j, s.k);
    }
  }
  return s;
}

namespace {

// Named type tables. Indices within k = 3 and k = 4 follow the documented
// name order; the two 3-edge and the two 4-edge classes on four vertices are
// therefore not in plain (edges, mask) order.
struct PinnedType {
  AdjMask mask;
  const char* name;
};

constexpr PinnedType kPinned3[] = {
    {0b011, "wedge"},
    {0b111, "triangle"},
};
constexpr PinnedType kPinned4[] = {
    {0b001011, "3-star"},
    {0b001101, "4-path"},
    {0b011110, "4-cycle"},
    {0b001111, "4-tailedtriangle"},
    {0b011111, "4-chordalcycle"},
    {0b111111, "4-clique"},
};

AdjMask path_mask(int k) {
  AdjMask m = 0;
  for (int i = 0; i + 1 < k; ++i) m |= pair_bit(i, i + 1, k);
  return m;
}
AdjMask cycle_mask(int k) {
  AdjMask m = path_mask(k);
  return m | pair_bit(0, k - 1, k);
}
AdjMask star_mask(int k) {
  AdjMask m = 0;
  for (int i = 1; i < k; ++i) m |= pair_bit(0, i, k);
  return m;
}
AdjMask clique_mask(int k) { return (AdjMask{1} << pair_count(k)) - 1; }

}  // namespace

Catalog::Catalog(int k) : k_(k), bits_(pair_count(k)) {
  if (k < 1 || k > kMaxGraphletSize) {
    throw std::invalid_argument("graphlet size must be between 1 and 7");
  }
  std::array<std::uint8_t, kMaxGraphletSize> p{};
  std::iota(p.begin(), p.begin() + k, std::uint8_t{0});
  do {
    perms_.push_back(p);
  } while (std::next_permutation(p.begin(), p.begin() + k));

  bit_maps_.resize(perms_.size());
  for (std::size_t pi = 0; pi < perms_.size(); ++pi) {
    const auto& perm = perms_[pi];
    auto& map = bit_maps_[pi];
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        const int src = bits_ - 1 - pair_rank(i, j, k);
        const int a = std::min(perm[i], perm[j]);
        const int b = std::max(perm[i], perm[j]);
        map[src] = static_cast<std::uint8_t>(bits_ - 1 - pair_rank(a, b, k));
      }
    }
  }
  build_types();
  memo_ = std::vector<std::atomic<std::uint32_t>>(std::size_t{1} << bits_);
  for (auto& slot : memo_) slot.store(0, std::memory_order_relaxed);
}

AdjMask Catalog::permute_mask(AdjMask mask, std::uint16_t perm) const {
  const auto& map = bit_maps_[perm];
  AdjMask out = 0;
  while (mask) {
    const int b = std::countr_zero(mask);
    mask &= mask - 1;
    out |= AdjMask{1} << map[b];
  }
  return out;
}

AdjMask Catalog::canonicalize(AdjMask mask, std::uint16_t* best_perm) const {
  AdjMask best = mask;
  std::uint16_t arg = 0;
  for (std::uint16_t p = 1; p < perms_.size(); ++p) {
    const AdjMask image = permute_mask(mask, p);
    if (image < best) {
      best = image;
      arg = p;
    }
  }
  if (best_perm) *best_perm = arg;
  return best;
}

void Catalog::build_types() {
  // Every connected mask that is its own minimum over relabelings is the
  // canonical representative of one isomorphism class.
  std::vector<AdjMask> canon;
  const AdjMask limit = AdjMask{1} << bits_;
  for (AdjMask mask = 0; mask < limit; ++mask) {
    if (std::popcount(mask) < k_ - 1) continue;
    if (!mask_connected(mask, k_)) continue;
    bool canonical = true;
    for (std::uint16_t p = 1; p < perms_.size() && canonical; ++p) {
      canonical = permute_mask(mask, p) >= mask;
    }
    if (canonical) canon.push_back(mask);
  }
  std::sort(canon.begin(), canon.end(), [](AdjMask a, AdjMask b) {
    const int ea = std::popcount(a);
    const int eb = std::popcount(b);
    return ea != eb ? ea < eb : a < b;
  });

  std::vector<PinnedType> pinned;
  if (k_ == 3) pinned.assign(std::begin(kPinned3), std::end(kPinned3));
  if (k_ == 4) pinned.assign(std::begin(kPinned4), std::end(kPinned4));
  if (!pinned.empty()) {
    if (pinned.size() != canon.size()) {
      throw std::logic_error("pinned type table size mismatch");
    }
    for (const auto& t : pinned) {
      if (std::find(canon.begin(), canon.end(), t.mask) == canon.end()) {
        throw std::logic_error("pinned mask is not canonical");
      }
    }
    canon.clear();
    for (const auto& t : pinned) canon.push_back(t.mask);
  }

  types_.reserve(canon.size());
  for (std::size_t i = 0; i < canon.size(); ++i) {
    GraphletType t;
    t.k = k_;
    t.index = static_cast<int>(i + 1);
    t.canonical_mask = canon[i];
    t.edge_count = std::popcount(canon[i]);
    t.ordering_count = count_compatible_orderings(canon[i], k_);
    if (!pinned.empty()) t.name = pinned[i].name;
    types_.push_back(std::move(t));
  }
  for (const GraphletType& t : types_) {
    canonical_index_[t.canonical_mask] = t.index;
    if (!t.name.empty()) name_index_[t.name] = t.index;
  }
  // Generic aliases for the common shapes at every size.
  const std::string prefix = std::to_string(k_) + "-";
  auto alias = [&](AdjMask mask, const std::string& name) {
    const AdjMask c = canonicalize(mask);
    const auto it = canonical_index_.find(c);
    if (it == canonical_index_.end()) return;
    name_index_.emplace(name, it->second);
    GraphletType& t = types_[static_cast<std::size_t>(it->second - 1)];
    if (t.name.empty()) t.name = name;
  };
  if (k_ >= 3) {
    alias(path_mask(k_), prefix + "path");
    alias(star_mask(k_), prefix + "star");
    alias(cycle_mask(k_), prefix + "cycle");
    alias(clique_mask(k_), prefix + "clique");
  }
}

const Catalog& Catalog::for_size(int k) {
  if (k < 1 || k > kMaxGraphletSize) {
    throw std::invalid_argument("graphlet size must be between 1 and 7");
  }
  static std::array<std::once_flag, kMaxGraphletSize + 1> flags;
  static std::array<std::unique_ptr<Catalog>, kMaxGraphletSize + 1> catalogs;
  std::call_once(flags[k], [k] { catalogs[k].reset(new Catalog(k)); });
  return *catalogs[k];
}

const GraphletType& Catalog::type(int index) const {
  if (index < 1 || index > type_count()) {
    throw std::invalid_argument("no type " + std::to_string(k_) + "-" +
                                std::to_string(index) + " (size " +
                                std::to_string(k_) + " has " +
                                std::to_string(type_count()) + " types)");
  }
  return types_[static_cast<std::size_t>(index - 1)];
}

const GraphletType* Catalog::find_name(std::string_view name) const {
  const auto it = name_index_.find(std::string(name));
  return it == name_index_.end() ? nullptr : &types_[static_cast<std::size_t>(it->second - 1)];
}

const GraphletType* Catalog::find_canonical(AdjMask canonical) const {
  const auto it = canonical_index_.find(canonical);
  return it == canonical_index_.end() ? nullptr : &types_[static_cast<std::size_t>(it->second - 1)];
}

Catalog::Classified Catalog::classify(AdjMask mask) const {
  if (static_cast<std::size_t>(mask) >= memo_.size()) {
    throw std::invalid_argument("adjacency mask out of range for this size");
  }
  std::atomic<std::uint32_t>& slot = memo_[mask];
  const std::uint32_t cached = slot.load(std::memory_order_relaxed);
  if (cached != 0) {
    return {&types_[(cached >> 16) - 1], static_cast<std::uint16_t>(cached & 0xFFFF)};
  }
  if (!mask_connected(mask, k_)) {
    throw std::invalid_argument("cannot classify a disconnected subgraph");
  }
  std::uint16_t perm = 0;
  const AdjMask canonical = canonicalize(mask, &perm);
  const auto it = canonical_index_.find(canonical);
  if (it == canonical_index_.end()) throw std::logic_error("missing canonical form");
  slot.store((static_cast<std::uint32_t>(it->second) << 16) | perm,
             std::memory_order_relaxed);
  return {&types_[static_cast<std::size_t>(it->second - 1)], perm};
}

std::array<std::uint32_t, kMaxGraphletSize> canonical_degrees(
    const InducedSubgraph& s, const Catalog& catalog, const Catalog::Classified& c) {
  std::array<std::uint32_t, kMaxGraphletSize> out{};
  const auto perm = catalog.permutation(c.perm);
  for (int i = 0; i < s.k; ++i) out[perm[i]] = s.host_degrees[i];
  return out;
}

LiftPlan::LiftPlan(int k, AdjMask mask) : k_(k) {
  detail::for_each_build_order(
      mask, k,
      [&](const auto& order, const auto& edges_added, const auto& internal_before) {
        Ordering o{};
        o.first = order[0];
        for (int r = 0; r + 1 < k; ++r) {
          o.steps[r] = Step{order[r + 1], edges_added[r], internal_before[r]};
        }
        orderings_.push_back(o);
      });
}

std::shared_ptr<const LiftPlan> LiftPlan::for_type(const GraphletType& type) {
  static std::mutex mutex;
  static std::map<std::pair<int, AdjMask>, std::shared_ptr<const LiftPlan>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{type.k, type.canonical_mask}];
  if (!slot) slot.reset(new LiftPlan(type.k, type.canonical_mask));
  return slot;
}

DegreeProbabilityFunction::DegreeProbabilityFunction(
    std::shared_ptr<const LiftPlan> plan, const StartDistribution& start,
    std::size_t capacity)
    : plan_(std::move(plan)), start_(&start), capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("cache capacity must be positive");
}

double DegreeProbabilityFunction::value(
    std::span<const std::uint32_t> canonical_degrees) {
  Key key{};
  std::copy(canonical_degrees.begin(), canonical_degrees.end(), key.begin());
  if (const auto it = entries_.find(key); it != entries_.end()) {
    ++hits_;
    order_.splice(order_.begin(), order_, it->second);
    return it->second->second;
  }
  ++misses_;
  const double value = plan_->eval<double>(canonical_degrees, *start_);
  order_.emplace_front(key, value);
  entries_[key] = order_.begin();
  if (entries_.size() > capacity_) {
    entries_.erase(order_.back().first);
    order_.pop_back();
  }
  return value;
}

}  // namespace graphlift
