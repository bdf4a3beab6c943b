#include "apseq/apselect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apseq/error.hpp"

namespace apseq {

namespace {

using Labels = std::vector<std::size_t>;

double mean_of(const std::vector<double>& v, std::size_t begin, std::size_t end) {
  double s = 0.0;
  for (std::size_t i = begin; i < end; ++i) s += v[i];
  return s / static_cast<double>(end - begin);
}

double run_cost(const std::vector<double>& v, std::size_t begin, std::size_t end) {
  const double mu = mean_of(v, begin, end);
  double s = 0.0;
  for (std::size_t i = begin; i < end; ++i) s += std::abs(v[i] - mu);
  return s;
}

// Labels are non-decreasing along the sorted values; each cluster is a run.
std::vector<std::size_t> run_bounds(const Labels& labels, std::size_t k) {
  std::vector<std::size_t> bounds(k + 1, labels.size());
  bounds[0] = 0;
  for (std::size_t i = labels.size(); i-- > 0;) bounds[labels[i]] = i;
  return bounds;
}

double objective(const std::vector<double>& v, const Labels& labels, std::size_t k) {
  const auto b = run_bounds(labels, k);
  double j = 0.0;
  for (std::size_t c = 0; c < k; ++c) j += run_cost(v, b[c], b[c + 1]);
  return j;
}

// Nearest centroid; an exact tie goes to the stronger (lower index) centroid.
Labels assign(const std::vector<double>& v, const std::vector<double>& centroids) {
  Labels labels(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t best = 0;
    double best_d = std::abs(v[i] - centroids[0]);
    for (std::size_t c = 1; c < centroids.size(); ++c) {
      const double d = std::abs(v[i] - centroids[c]);
      if (d < best_d) {
        best = c;
        best_d = d;
      }
    }
    labels[i] = best;
  }
  return labels;
}

bool has_empty_cluster(const Labels& labels, std::size_t k) {
  std::vector<bool> seen(k, false);
  for (auto l : labels) seen[l] = true;
  return std::find(seen.begin(), seen.end(), false) != seen.end();
}

std::vector<double> means(const std::vector<double>& v, const Labels& labels, std::size_t k) {
  std::vector<double> sum(k, 0.0);
  std::vector<double> count(k, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    sum[labels[i]] += v[i];
    count[labels[i]] += 1.0;
  }
  for (std::size_t c = 0; c < k; ++c) sum[c] /= count[c];
  return sum;
}

// Minimum-objective partition of the sorted values into k contiguous runs,
// never splitting equal values. Dynamic programme over run end points.
Labels exact_partition(const std::vector<double>& v, std::size_t k) {
  const std::size_t n = v.size();
  std::vector<std::vector<double>> cost(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t e = b + 1; e <= n; ++e) cost[b][e] = run_cost(v, b, e);
  }
  auto can_cut = [&](std::size_t pos) { return pos == 0 || pos == n || v[pos - 1] != v[pos]; };

  constexpr double inf = std::numeric_limits<double>::infinity();
  // best[c][e]: optimum for the first e values split into c runs.
  std::vector<std::vector<double>> best(k + 1, std::vector<double>(n + 1, inf));
  std::vector<std::vector<std::size_t>> from(k + 1, std::vector<std::size_t>(n + 1, 0));
  best[0][0] = 0.0;
  for (std::size_t c = 1; c <= k; ++c) {
    for (std::size_t e = c; e <= n; ++e) {
      if (!can_cut(e)) continue;
      for (std::size_t b = c - 1; b < e; ++b) {
        if (best[c - 1][b] == inf || !can_cut(b)) continue;
        const double cand = best[c - 1][b] + cost[b][e];
        if (cand < best[c][e]) {
          best[c][e] = cand;
          from[c][e] = b;
        }
      }
    }
  }
  Labels labels(n, 0);
  std::size_t e = n;
  for (std::size_t c = k; c >= 1; --c) {
    const std::size_t b = from[c][e];
    for (std::size_t i = b; i < e; ++i) labels[i] = c - 1;
    e = b;
  }
  return labels;
}

}  // namespace

double clustering_objective(const Clustering& clustering) {
  double j = 0.0;
  for (const auto& cluster : clustering.clusters) {
    for (const auto& m : cluster.members) j += std::abs(m.rss_dbm - cluster.centroid);
  }
  return j;
}

Clustering kmeans_1d(const std::map<ApId, double>& values, std::size_t k,
                     const KMeansOptions& options, KMeansTrace* trace) {
  if (k == 0) throw Error("cluster count must be at least 1");
  std::vector<ClusterMember> sorted;
  sorted.reserve(values.size());
  for (const auto& [id, rss] : values) {
    if (rss == kUndetectedDbm) throw Error("undetected AP " + std::to_string(id) + " in clustering input");
    if (!std::isfinite(rss)) throw Error("non-finite RSS for AP " + std::to_string(id));
    sorted.push_back({id, rss});
  }
  std::sort(sorted.begin(), sorted.end(), [](const ClusterMember& a, const ClusterMember& b) {
    if (a.rss_dbm != b.rss_dbm) return a.rss_dbm > b.rss_dbm;
    return a.id < b.id;
  });
  std::vector<double> v;
  v.reserve(sorted.size());
  for (const auto& m : sorted) v.push_back(m.rss_dbm);

  std::vector<double> distinct;
  for (double x : v) {
    if (distinct.empty() || distinct.back() != x) distinct.push_back(x);
  }
  if (distinct.size() < k) throw DegenerateClusteringError(distinct.size());

  std::vector<double> seeds;
  if (options.seed_ranks.empty()) {
    seeds.assign(distinct.begin(), distinct.begin() + static_cast<std::ptrdiff_t>(k));
  } else {
    if (options.seed_ranks.size() != k) throw Error("seed rank count must equal the cluster count");
    for (auto rank : options.seed_ranks) {
      if (rank == 0 || rank > distinct.size()) {
        throw Error("seed rank " + std::to_string(rank) + " out of range");
      }
      seeds.push_back(distinct[rank - 1]);
    }
    std::sort(seeds.begin(), seeds.end(), std::greater<>());
    if (std::adjacent_find(seeds.begin(), seeds.end()) != seeds.end()) {
      throw Error("duplicate seed ranks");
    }
  }

  KMeansTrace local;
  KMeansTrace& t = trace != nullptr ? *trace : local;
  t = KMeansTrace{};

  Labels labels = assign(v, seeds);
  double current = objective(v, labels, k);
  t.objective.push_back(current);

  // Lloyd iterations. A step that would raise the objective (the mean is not
  // the L1 minimiser) or empty a cluster ends the loop instead.
  while (t.iterations < options.max_iterations) {
    ++t.iterations;
    Labels next = assign(v, means(v, labels, k));
    if (next == labels) {
      t.converged = true;
      break;
    }
    const bool emptied = has_empty_cluster(next, k);
    const double j = emptied ? current : objective(v, next, k);
    if (emptied || j > current) {
      t.converged = true;
      t.guard_stop = true;
      break;
    }
    labels = std::move(next);
    current = j;
    t.objective.push_back(current);
  }

  if (options.exact_refinement && k > 1) {
    Labels opt = exact_partition(v, k);
    const double j = objective(v, opt, k);
    if (j < current - 1e-12 * (1.0 + std::abs(current))) {
      labels = std::move(opt);
      current = j;
      t.objective.push_back(current);
      t.refined = true;
    }
  }

  Clustering out;
  out.clusters.resize(k);
  for (std::size_t i = 0; i < sorted.size(); ++i) out.clusters[labels[i]].members.push_back(sorted[i]);
  for (auto& cluster : out.clusters) {
    double s = 0.0;
    for (const auto& m : cluster.members) s += m.rss_dbm;
    cluster.centroid = s / static_cast<double>(cluster.members.size());
  }
  return out;
}

std::vector<CandidateSet> generate_candidate_sets(const Clustering& clustering) {
  const std::size_t k = clustering.size();
  if (k < 2) throw Error("candidate AP sets need at least 2 clusters");
  std::size_t total = 1;
  for (const auto& c : clustering.clusters) {
    if (c.members.empty()) throw Error("empty cluster");
    total *= c.members.size();
  }

  std::vector<CandidateSet> out;
  out.reserve(total);
  std::vector<std::size_t> rank(k, 0);
  while (true) {
    std::vector<ApId> picks(k);
    for (std::size_t c = 0; c < k; ++c) picks[c] = clustering.clusters[c].members[rank[c]].id;
    out.push_back({SubsetKey(picks), std::move(picks)});
    // Odometer over the ranks, last cluster fastest.
    std::size_t c = k;
    while (c > 0) {
      --c;
      if (++rank[c] < clustering.clusters[c].members.size()) break;
      rank[c] = 0;
      if (c == 0) return out;
    }
  }
}

}  // namespace apseq
