#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monrep {

class QuiverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Arrow {
  std::size_t s = 0;  // source vertex, 1-based
  std::size_t e = 0;  // end vertex, 1-based
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// A path is a composable arrow sequence recorded in application order
/// (arrows[0] is applied first). Trivial paths have an empty arrow list.
struct Path {
  std::size_t start = 0, end = 0;
  std::vector<std::size_t> arrows;  // indices into Quiver::arrows()
  std::size_t length() const { return arrows.size(); }
  friend bool operator==(const Path&, const Path&) = default;
};

/// Finite quiver with vertices 1..n and a stable arrow order. The orientation
/// convention for the outer quiver of a representation is "descending": every
/// arrow satisfies s > e, so vertex n is always a source and arrows point
/// towards lower labels. relabel_topological converts any acyclic quiver into
/// this form.
class Quiver {
 public:
  Quiver() = default;
  Quiver(std::size_t n, std::vector<Arrow> arrows) : n_(n), arrows_(std::move(arrows)) {
    for (const Arrow& a : arrows_)
      if (a.s < 1 || a.s > n_ || a.e < 1 || a.e > n_)
        throw QuiverError("arrow endpoint out of range");
  }

  std::size_t num_vertices() const { return n_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(std::size_t k) const { return arrows_.at(k); }

  bool is_descending() const {
    for (const Arrow& a : arrows_)
      if (a.s <= a.e) return false;
    return true;
  }

  void require_descending() const {
    if (!is_descending())
      throw QuiverError("quiver is not in descending form (need s > e for every arrow)");
  }

  bool is_acyclic() const { return topo_order().has_value(); }

  /// Vertices with no incoming arrow, ascending.
  std::vector<std::size_t> sources() const {
    std::vector<bool> has_in(n_ + 1, false);
    for (const Arrow& a : arrows_) has_in[a.e] = true;
    std::vector<std::size_t> s;
    for (std::size_t v = 1; v <= n_; ++v)
      if (!has_in[v]) s.push_back(v);
    return s;
  }

  std::vector<std::size_t> arrows_into(std::size_t v) const {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < arrows_.size(); ++k)
      if (arrows_[k].e == v) idx.push_back(k);
    return idx;
  }

  std::vector<std::size_t> arrows_out_of(std::size_t v) const {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < arrows_.size(); ++k)
      if (arrows_[k].s == v) idx.push_back(k);
    return idx;
  }

  /// All paths of an acyclic quiver in the canonical order: by length, then
  /// lexicographically by visited vertex sequence, then by arrow index
  /// sequence (the last tiebreak matters only for parallel arrows).
  const std::vector<Path>& all_paths() const {
    ensure_paths();
    return cache_->paths;
  }

  /// Indices into all_paths() of the paths from i to j, in canonical order.
  const std::vector<std::size_t>& paths_from_to(std::size_t i, std::size_t j) const {
    ensure_paths();
    return cache_->by_pair[(i - 1) * n_ + (j - 1)];
  }

  std::size_t path_count(std::size_t i, std::size_t j) const { return paths_from_to(i, j).size(); }

  std::size_t longest_path_length() const {
    ensure_paths();
    std::size_t best = 0;
    for (const Path& p : cache_->paths) best = std::max(best, p.length());
    return best;
  }

  /// Composite "first earlier, then later"; endpoints must match.
  Path compose(const Path& later, const Path& earlier) const {
    if (earlier.end != later.start) throw QuiverError("paths are not composable");
    Path r;
    r.start = earlier.start;
    r.end = later.end;
    r.arrows = earlier.arrows;
    r.arrows.insert(r.arrows.end(), later.arrows.begin(), later.arrows.end());
    return r;
  }

  Path trivial_path(std::size_t v) const { return Path{v, v, {}}; }

  Path arrow_path(std::size_t k) const { return Path{arrows_[k].s, arrows_[k].e, {k}}; }

  /// Position of a path in the canonical all_paths order.
  std::size_t path_index(const Path& p) const {
    ensure_paths();
    for (std::size_t idx : cache_->by_pair[(p.start - 1) * n_ + (p.end - 1)])
      if (cache_->paths[idx] == p) return idx;
    throw QuiverError("path not found");
  }

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.n_ == b.n_ && a.arrows_ == b.arrows_;
  }

  std::optional<std::vector<std::size_t>> topo_order() const {
    // Kahn with smallest label first; returns vertices source-first.
    std::vector<std::size_t> indeg(n_ + 1, 0);
    for (const Arrow& a : arrows_) ++indeg[a.e];
    std::vector<std::size_t> order;
    std::vector<bool> used(n_ + 1, false);
    for (std::size_t step = 0; step < n_; ++step) {
      std::size_t pick = 0;
      for (std::size_t v = 1; v <= n_; ++v)
        if (!used[v] && indeg[v] == 0) {
          pick = v;
          break;
        }
      if (pick == 0) return std::nullopt;
      used[pick] = true;
      order.push_back(pick);
      for (const Arrow& a : arrows_)
        if (a.s == pick) --indeg[a.e];
    }
    return order;
  }

 private:
  struct PathCache {
    std::vector<Path> paths;
    std::vector<std::vector<std::size_t>> by_pair;  // (i-1)*n + (j-1) -> indices
  };

  std::vector<std::size_t> vertex_sequence(const Path& p) const {
    std::vector<std::size_t> seq{p.start};
    for (std::size_t k : p.arrows) seq.push_back(arrows_[k].e);
    return seq;
  }

  void ensure_paths() const {
    if (cache_) return;
    if (!is_acyclic()) throw QuiverError("path enumeration requires an acyclic quiver");
    auto cache = std::make_shared<PathCache>();
    std::vector<Path> frontier;
    for (std::size_t v = 1; v <= n_; ++v) frontier.push_back(trivial_path(v));
    std::vector<Path> all = frontier;
    while (!frontier.empty()) {
      std::vector<Path> next;
      for (const Path& p : frontier)
        for (std::size_t k = 0; k < arrows_.size(); ++k)
          if (arrows_[k].s == p.end) {
            Path q = p;
            q.arrows.push_back(k);
            q.end = arrows_[k].e;
            next.push_back(q);
          }
      all.insert(all.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
    std::sort(all.begin(), all.end(), [this](const Path& a, const Path& b) {
      if (a.length() != b.length()) return a.length() < b.length();
      auto va = vertex_sequence(a), vb = vertex_sequence(b);
      if (va != vb) return va < vb;
      return a.arrows < b.arrows;
    });
    cache->paths = std::move(all);
    cache->by_pair.assign(n_ * n_, {});
    for (std::size_t idx = 0; idx < cache->paths.size(); ++idx) {
      const Path& p = cache->paths[idx];
      cache->by_pair[(p.start - 1) * n_ + (p.end - 1)].push_back(idx);
    }
    cache_ = std::move(cache);
  }

  std::size_t n_ = 0;
  std::vector<Arrow> arrows_;
  mutable std::shared_ptr<const PathCache> cache_;
};

struct RelabelResult {
  Quiver quiver;
  std::vector<std::size_t> new_label;  // new_label[old] for old in 1..n (index 0 unused)
};

/// Relabel an acyclic quiver so that every arrow satisfies s > e. Sources get
/// the largest labels; ties are broken by smallest original label first, so
/// the result is deterministic.
inline RelabelResult relabel_topological(std::size_t n, const std::vector<Arrow>& arrows) {
  std::vector<std::size_t> indeg(n + 1, 0);
  for (const Arrow& a : arrows) {
    if (a.s < 1 || a.s > n || a.e < 1 || a.e > n) throw QuiverError("arrow endpoint out of range");
    ++indeg[a.e];
  }
  std::vector<std::size_t> new_label(n + 1, 0);
  std::vector<bool> used(n + 1, false);
  for (std::size_t next = n; next >= 1 && next <= n; --next) {
    std::size_t pick = 0;
    for (std::size_t v = 1; v <= n; ++v)
      if (!used[v] && indeg[v] == 0) {
        pick = v;
        break;
      }
    if (pick == 0) throw QuiverError("quiver has a cycle");
    used[pick] = true;
    new_label[pick] = next;
    for (const Arrow& a : arrows)
      if (a.s == pick) --indeg[a.e];
    if (next == 1) break;
  }
  std::vector<Arrow> relabeled;
  relabeled.reserve(arrows.size());
  for (const Arrow& a : arrows) relabeled.push_back(Arrow{new_label[a.s], new_label[a.e]});
  return RelabelResult{Quiver(n, std::move(relabeled)), std::move(new_label)};
}

struct SourceDeletion {
  Quiver sub;                            // retained vertices relabeled 1..m, order preserving
  std::vector<std::size_t> kept_vertex;  // kept_vertex[new-1] = original label
  std::vector<std::size_t> kept_arrow;   // original arrow indices retained, in order
};

/// Remove every source vertex (and the arrows leaving them). Order-preserving
/// relabeling keeps a descending quiver descending.
inline SourceDeletion delete_sources(const Quiver& q) {
  std::vector<bool> is_src(q.num_vertices() + 1, false);
  for (std::size_t v : q.sources()) is_src[v] = true;
  SourceDeletion r;
  std::vector<std::size_t> new_of(q.num_vertices() + 1, 0);
  for (std::size_t v = 1; v <= q.num_vertices(); ++v)
    if (!is_src[v]) {
      r.kept_vertex.push_back(v);
      new_of[v] = r.kept_vertex.size();
    }
  std::vector<Arrow> arrows;
  for (std::size_t k = 0; k < q.arrows().size(); ++k) {
    const Arrow& a = q.arrow(k);
    if (!is_src[a.s] && !is_src[a.e]) {
      arrows.push_back(Arrow{new_of[a.s], new_of[a.e]});
      r.kept_arrow.push_back(k);
    }
  }
  r.sub = Quiver(r.kept_vertex.size(), std::move(arrows));
  return r;
}

}  // namespace monrep
