#pragma once

// Online AP selection: one-dimensional K-means over the measured RSS values,
// then one AP picked from each cluster to form candidate AP sets.

#include <cstddef>
#include <map>
#include <vector>

#include "apseq/model.hpp"

namespace apseq {

struct ClusterMember {
  ApId id = 0;
  double rss_dbm = 0.0;

  friend bool operator==(const ClusterMember&, const ClusterMember&) = default;
};

struct Cluster {
  std::vector<ClusterMember> members;  // RSS descending, ties by ascending id
  double centroid = 0.0;               // mean RSS of the members

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

// Clusters ordered strongest first. Each cluster is a contiguous run of the
// APs sorted by descending RSS.
struct Clustering {
  std::vector<Cluster> clusters;

  std::size_t size() const { return clusters.size(); }

  friend bool operator==(const Clustering&, const Clustering&) = default;
};

struct KMeansOptions {
  std::size_t max_iterations = 100;
  // After Lloyd iterations stop, replace the partition by the exact minimiser
  // of the objective over contiguous partitions when that is strictly better.
  bool exact_refinement = true;
  // 1-based ranks (among distinct RSS values, strongest = 1) used as initial
  // centroids. Empty selects the K largest values, i.e. ranks 1..K.
  std::vector<std::size_t> seed_ranks;
};

struct KMeansTrace {
  // Objective of the initial assignment followed by one entry per accepted
  // step (Lloyd update or refinement).
  std::vector<double> objective;
  std::size_t iterations = 0;  // Lloyd assignment passes executed
  bool converged = false;      // Lloyd loop stopped before the iteration cap
  bool guard_stop = false;     // stopped because the next step would empty a
                               // cluster or raise the objective
  bool refined = false;        // the exact refinement changed the partition
};

// Sum over clusters of |x - mean| for every member x.
double clustering_objective(const Clustering& clustering);

// Throws Error for undetected (sentinel) or non-finite values, k == 0 or
// invalid seed ranks, and DegenerateClusteringError when fewer than k
// distinct values exist.
Clustering kmeans_1d(const std::map<ApId, double>& values, std::size_t k,
                     const KMeansOptions& options = {}, KMeansTrace* trace = nullptr);

struct CandidateSet {
  SubsetKey subset;
  std::vector<ApId> picks;  // one AP per cluster, strongest cluster first

  friend bool operator==(const CandidateSet&, const CandidateSet&) = default;
};

// Cartesian product of one-AP-per-cluster choices. Choices are ranked within
// each cluster by RSS and the products are emitted in lexicographic rank
// order, so the first candidate takes the strongest AP of every cluster.
// Throws Error for fewer than two clusters.
std::vector<CandidateSet> generate_candidate_sets(const Clustering& clustering);

}  // namespace apseq
