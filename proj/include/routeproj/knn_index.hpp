#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "routeproj/geometry.hpp"

namespace routeproj {

/// k-d tree over a fixed point set answering "k nearest alive nodes" queries
/// while nodes are progressively removed.
///
/// Results are exact: ordered by squared Euclidean distance to the query with
/// ties broken by smaller node id. Removed nodes are tombstoned; once more than
/// half of the indexed slots are dead the tree is rebuilt from the survivors.
///
/// Queries are const and may run concurrently; remove() needs exclusive access.
class KnnIndex {
public:
    using NodeId = std::uint32_t;

    /// Throws std::invalid_argument on an empty point set.
    explicit KnnIndex(const CoordMatrix& points);

    std::size_t size() const noexcept { return xs_all_.size(); }
    std::size_t alive_count() const noexcept { return alive_total_; }
    bool alive(NodeId id) const noexcept { return id < alive_flag_.size() && alive_flag_[id] != 0; }
    Point point(NodeId id) const noexcept { return {xs_all_[id], ys_all_[id]}; }

    /// The min(k, available) alive ids not in `exclude`, nearest first.
    /// `exclude` need not be sorted. Returns an empty list when nothing is
    /// available.
    std::vector<NodeId> knn_unvisited(Point query, std::size_t k,
                                      std::span<const NodeId> exclude = {}) const;

    /// Throws std::invalid_argument("double removal") if `id` is already dead
    /// and std::out_of_range for an unknown id.
    void remove(NodeId id);

    /// Number of times the tree has been rebuilt after construction.
    std::size_t rebuild_count() const noexcept { return rebuilds_; }

private:
    struct Node {
        Box box;
        std::uint32_t begin = 0;  // slot range [begin, end)
        std::uint32_t end = 0;
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::int32_t parent = -1;
        std::uint32_t alive = 0;
    };

    static constexpr std::uint32_t kLeafSize = 16;

    void rebuild();
    std::int32_t build_node(std::uint32_t begin, std::uint32_t end, std::int32_t parent);

    // Full point set, indexed by node id.
    std::vector<double> xs_all_;
    std::vector<double> ys_all_;
    std::vector<std::uint8_t> alive_flag_;
    std::size_t alive_total_ = 0;

    // Tree slots: a permutation of the ids alive at the last (re)build.
    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<NodeId> ids_;
    std::vector<std::uint8_t> slot_alive_;
    std::vector<std::uint32_t> slot_of_;   // by id; UINT32_MAX when not in the tree
    std::vector<std::int32_t> leaf_of_;    // by slot
    std::vector<Node> nodes_;
    std::size_t dead_in_tree_ = 0;
    std::size_t rebuilds_ = 0;
};

}  // namespace routeproj
