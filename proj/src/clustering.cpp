#include "lbga/clustering.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace lbga {
namespace {

struct Neighbor {
  std::size_t id;
  double delta_sigma;
  double edges; // original edges between the two communities
};

struct Candidate {
  double delta_sigma;
  std::uint32_t a, b; // a < b

  friend bool operator>(const Candidate &x, const Candidate &y) {
    return std::tie(x.delta_sigma, x.a, x.b) >
           std::tie(y.delta_sigma, y.a, y.b);
  }
};

double squared_distance(const double *x, const double *y, std::size_t n) {
  double sum = 0.0;
#pragma omp simd reduction(+ : sum)
  for (std::size_t k = 0; k < n; ++k) {
    const double d = x[k] - y[k];
    sum += d * d;
  }
  return sum;
}

// Walk-probability rows scaled by D^{-1/2}: row s, column k holds
// P^t[s][k] / sqrt(d_k), with P = D^{-1} A. Isolated vertices get zero rows.
std::vector<double> scaled_walk_rows(const Graph &g, int walk_length) {
  const auto n = g.num_vertices();
  std::vector<double> inv_degree(n, 0.0);
  for (Vertex k = 0; k < n; ++k)
    if (g.degree(k) > 0)
      inv_degree[k] = 1.0 / static_cast<double>(g.degree(k));

  // cur holds P^t transposed: cur[k * n + s] = P^t[s][k]. One step is
  // next[k][:] = sum over j in N(k) of cur[j][:] / d_j.
  // The first step from the identity only touches the graph's nonzeros.
  std::vector<double> cur(n * n, 0.0), next(n * n);
  for (Vertex k = 0; k < n; ++k) {
    double *out = cur.data() + static_cast<std::size_t>(k) * n;
    for (Vertex j : g.neighbors(k))
      out[j] = inv_degree[j];
  }
  for (int step = 1; step < walk_length; ++step) {
    for (Vertex k = 0; k < n; ++k) {
      double *out = next.data() + static_cast<std::size_t>(k) * n;
      std::fill(out, out + n, 0.0);
      for (Vertex j : g.neighbors(k)) {
        const double *in = cur.data() + static_cast<std::size_t>(j) * n;
        const double wj = inv_degree[j];
        for (std::size_t s = 0; s < n; ++s)
          out[s] += in[s] * wj;
      }
    }
    cur.swap(next);
  }

  constexpr std::size_t kBlock = 64;
  auto &rows = next;
  for (std::size_t kb = 0; kb < n; kb += kBlock)
    for (std::size_t sb = 0; sb < n; sb += kBlock)
      for (std::size_t k = kb; k < std::min(n, kb + kBlock); ++k) {
        const double scale = std::sqrt(inv_degree[k]);
        for (std::size_t s = sb; s < std::min(n, sb + kBlock); ++s)
          rows[s * n + k] = cur[k * n + s] * scale;
      }
  return std::move(rows);
}

std::vector<Neighbor>::iterator find_neighbor(std::vector<Neighbor> &list,
                                              std::size_t id) {
  auto it = std::lower_bound(
      list.begin(), list.end(), id,
      [](const Neighbor &nb, std::size_t key) { return nb.id < key; });
  if (it == list.end() || it->id != id)
    throw std::logic_error("walktrap: community adjacency out of sync");
  return it;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

} // namespace

ClustererSpec ClustererSpec::from_name(std::string_view name,
                                       int walk_length) {
  const auto key = lower(name);
  ClustererSpec spec;
  spec.walk_length = walk_length;
  if (key == "walktrap")
    spec.kind = ClustererKind::Walktrap;
  else if (key == "components" || key == "cc" || key == "connectedcomponents")
    spec.kind = ClustererKind::ConnectedComponents;
  else if (key == "null" || key == "none")
    spec.kind = ClustererKind::Null;
  else
    throw std::invalid_argument("unknown clusterer '" + std::string(name) +
                                "'; expected walktrap, components or null");
  if (spec.kind == ClustererKind::Walktrap && walk_length < 1)
    throw std::invalid_argument("walk length must be at least 1");
  return spec;
}

std::string ClustererSpec::name() const {
  switch (kind) {
  case ClustererKind::Walktrap: return "walktrap";
  case ClustererKind::ConnectedComponents: return "components";
  case ClustererKind::Null: return "null";
  }
  return "?";
}

Clustering cluster(const ClustererSpec &spec, const Graph &g) {
  switch (spec.kind) {
  case ClustererKind::Walktrap:
    return walktrap(g, spec.walk_length);
  case ClustererKind::ConnectedComponents:
    return connected_components(g);
  case ClustererKind::Null:
    break;
  }
  throw std::logic_error("the null clusterer produces no clustering");
}

WalktrapDendrogram walktrap_dendrogram(const Graph &g, int walk_length) {
  if (walk_length < 1)
    throw std::invalid_argument("walk length must be at least 1");
  WalktrapDendrogram out;
  const auto n = g.num_vertices();
  const auto total_edges = static_cast<double>(g.num_edges());
  if (g.num_edges() == 0)
    return out;

  std::vector<double> rows = scaled_walk_rows(g, walk_length);

  const std::size_t max_ids = 2 * n;
  std::vector<std::size_t> size(max_ids, 0), slot(max_ids, 0);
  std::vector<double> internal(max_ids, 0.0), volume(max_ids, 0.0);
  std::vector<char> alive(max_ids, 0);
  // Neighbor lists stay sorted by id because new ids only grow. Entries for
  // merged (dead) communities are left in place and skipped.
  std::vector<std::vector<Neighbor>> adjacency(max_ids);
  // A pair's merge cost is fixed while both ids are alive, so queue entries
  // only go stale through a merge and are dropped when popped.
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> queue;
  const double inv_n = 1.0 / static_cast<double>(n);

  auto ward = [&](std::size_t a, std::size_t b, double r2) {
    const auto sa = static_cast<double>(size[a]);
    const auto sb = static_cast<double>(size[b]);
    return inv_n * sa * sb / (sa + sb) * r2;
  };
  auto row = [&](std::size_t id) { return rows.data() + slot[id] * n; };
  auto modularity_term = [&](std::size_t id) {
    const double a = volume[id] / (2.0 * total_edges);
    return internal[id] / total_edges - a * a;
  };

  double q = 0.0;
  for (Vertex u = 0; u < n; ++u) {
    size[u] = 1;
    slot[u] = u;
    alive[u] = 1;
    volume[u] = static_cast<double>(g.degree(u));
    q += modularity_term(u);
  }
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u)) {
      if (v < u) {
        // Already computed from the other endpoint.
        adjacency[u].push_back({v, find_neighbor(adjacency[v], u)->delta_sigma, 1.0});
        continue;
      }
      const double ds = ward(u, v, squared_distance(row(u), row(v), n));
      adjacency[u].push_back({v, ds, 1.0});
      queue.push({ds, u, v});
    }

  out.modularity.push_back(q);
  double best_q = q;
  std::size_t next_id = n;

  while (!queue.empty()) {
    const Candidate top = queue.top();
    queue.pop();
    if (!alive[top.a] || !alive[top.b])
      continue;
    const std::size_t a = top.a, b = top.b, c = next_id++;
    const double ds_ab = top.delta_sigma;
    const auto sa = static_cast<double>(size[a]);
    const auto sb = static_cast<double>(size[b]);

    size[c] = size[a] + size[b];
    slot[c] = slot[a];
    {
      double *xa = row(a);
      const double *xb = row(b);
      const double wa = sa / (sa + sb), wb = sb / (sa + sb);
      for (std::size_t k = 0; k < n; ++k)
        xa[k] = wa * xa[k] + wb * xb[k];
    }
    alive[a] = alive[b] = 0;
    alive[c] = 1;

    const double edges_ab = find_neighbor(adjacency[a], b)->edges;
    q -= modularity_term(a) + modularity_term(b);
    internal[c] = internal[a] + internal[b] + edges_ab;
    volume[c] = volume[a] + volume[b];
    q += modularity_term(c);

    // Merge the two sorted neighbor lists, keeping live communities only.
    auto &la = adjacency[a];
    auto &lb = adjacency[b];
    std::vector<Neighbor> merged;
    merged.reserve(la.size() + lb.size());
    auto ia = la.begin(), ib = lb.begin();
    const auto sc = static_cast<double>(size[c]);
    while (true) {
      while (ia != la.end() && !alive[ia->id]) ++ia;
      while (ib != lb.end() && !alive[ib->id]) ++ib;
      if (ia == la.end() && ib == lb.end())
        break;
      if (ia != la.end() && ib != lb.end() && ia->id == ib->id) {
        // Adjacent to both: Lance-Williams update for the Ward criterion.
        const auto sx = static_cast<double>(size[ia->id]);
        const double ds = ((sa + sx) * ia->delta_sigma + (sb + sx) * ib->delta_sigma -
                           sx * ds_ab) / (sc + sx);
        merged.push_back({ia->id, ds, ia->edges + ib->edges});
        ++ia;
        ++ib;
      } else if (ib == lb.end() || (ia != la.end() && ia->id < ib->id)) {
        merged.push_back({ia->id, -1.0, ia->edges});
        ++ia;
      } else {
        merged.push_back({ib->id, -1.0, ib->edges});
        ++ib;
      }
    }
    for (auto &nb : merged) {
      if (nb.delta_sigma < 0.0)
        nb.delta_sigma = ward(c, nb.id, squared_distance(row(c), row(nb.id), n));
      adjacency[nb.id].push_back({c, nb.delta_sigma, nb.edges});
      queue.push({nb.delta_sigma, static_cast<std::uint32_t>(nb.id),
                  static_cast<std::uint32_t>(c)});
    }
    adjacency[c] = std::move(merged);
    std::vector<Neighbor>().swap(la);
    std::vector<Neighbor>().swap(lb);

    out.merges.emplace_back(a, b);
    out.modularity.push_back(q);
    if (q > best_q) {
      best_q = q;
      out.best_level = out.merges.size();
    }
  }
  return out;
}

Clustering cut_dendrogram(const WalktrapDendrogram &d, std::size_t n,
                          std::size_t level) {
  if (level > d.merges.size())
    throw std::out_of_range("dendrogram level beyond the last merge");
  std::vector<std::size_t> parent(n + level);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t i = 0; i < level; ++i) {
    parent[d.merges[i].first] = n + i;
    parent[d.merges[i].second] = n + i;
  }
  std::vector<std::uint32_t> labels(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t r = v;
    while (parent[r] != r)
      r = parent[r];
    labels[v] = static_cast<std::uint32_t>(r);
  }
  return Clustering(labels);
}

Clustering walktrap(const Graph &g, int walk_length) {
  const auto d = walktrap_dendrogram(g, walk_length);
  return cut_dendrogram(d, g.num_vertices(), d.best_level);
}

Clustering connected_components(const Graph &g) {
  const auto n = g.num_vertices();
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> label(n, unset);
  std::vector<Vertex> stack;
  std::uint32_t next = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (label[s] != unset)
      continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u))
        if (label[w] == unset) {
          label[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return Clustering(label);
}

} // namespace lbga
