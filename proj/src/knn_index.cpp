#include "routeproj/knn_index.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "routeproj/kernels.hpp"

namespace routeproj {

namespace {

constexpr std::uint32_t kNoSlot = std::numeric_limits<std::uint32_t>::max();

double box_sq_dist(const Box& b, Point q) noexcept {
    const double dx = q.x < b.min.x ? b.min.x - q.x : (q.x > b.max.x ? q.x - b.max.x : 0.0);
    const double dy = q.y < b.min.y ? b.min.y - q.y : (q.y > b.max.y ? q.y - b.max.y : 0.0);
    return dx * dx + dy * dy;
}

struct Candidate {
    double d2;
    KnnIndex::NodeId id;

    bool operator<(const Candidate& o) const noexcept {
        return d2 < o.d2 || (d2 == o.d2 && id < o.id);
    }
};

}  // namespace

KnnIndex::KnnIndex(const CoordMatrix& points) {
    if (points.empty()) throw std::invalid_argument("cannot build a KNN index over zero points");
    if (points.size() >= kNoSlot) throw std::invalid_argument("too many points for the KNN index");
    xs_all_.assign(points.xs().begin(), points.xs().end());
    ys_all_.assign(points.ys().begin(), points.ys().end());
    alive_flag_.assign(points.size(), 1);
    alive_total_ = points.size();
    rebuild();
    rebuilds_ = 0;
}

void KnnIndex::rebuild() {
    ids_.clear();
    for (NodeId id = 0; id < alive_flag_.size(); ++id) {
        if (alive_flag_[id]) ids_.push_back(id);
    }
    const auto n = static_cast<std::uint32_t>(ids_.size());
    xs_.resize(n);
    ys_.resize(n);
    slot_alive_.assign(n, 1);
    leaf_of_.assign(n, -1);
    nodes_.clear();
    nodes_.reserve(2 * (n / kLeafSize + 1) + 1);
    dead_in_tree_ = 0;
    ++rebuilds_;
    if (n > 0) build_node(0, n, -1);

    slot_of_.assign(xs_all_.size(), kNoSlot);
    for (std::uint32_t s = 0; s < n; ++s) {
        xs_[s] = xs_all_[ids_[s]];
        ys_[s] = ys_all_[ids_[s]];
        slot_of_[ids_[s]] = s;
    }
}

std::int32_t KnnIndex::build_node(std::uint32_t begin, std::uint32_t end, std::int32_t parent) {
    const auto index = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{});
    {
        Node& node = nodes_.back();
        node.begin = begin;
        node.end = end;
        node.parent = parent;
        node.alive = end - begin;
    }

    Box box{{xs_all_[ids_[begin]], ys_all_[ids_[begin]]}, {xs_all_[ids_[begin]], ys_all_[ids_[begin]]}};
    for (std::uint32_t s = begin + 1; s < end; ++s) {
        const double x = xs_all_[ids_[s]];
        const double y = ys_all_[ids_[s]];
        box.min.x = std::min(box.min.x, x);
        box.min.y = std::min(box.min.y, y);
        box.max.x = std::max(box.max.x, x);
        box.max.y = std::max(box.max.y, y);
    }
    nodes_[index].box = box;

    if (end - begin <= kLeafSize) {
        for (std::uint32_t s = begin; s < end; ++s) leaf_of_[s] = index;
        return index;
    }

    const bool split_x = box.range_x() >= box.range_y();
    const std::uint32_t mid = begin + (end - begin) / 2;
    const auto* coord = split_x ? xs_all_.data() : ys_all_.data();
    std::nth_element(ids_.begin() + begin, ids_.begin() + mid, ids_.begin() + end,
                     [coord](NodeId a, NodeId b) { return coord[a] < coord[b]; });

    const std::int32_t left = build_node(begin, mid, index);
    const std::int32_t right = build_node(mid, end, index);
    nodes_[index].left = left;
    nodes_[index].right = right;
    return index;
}

std::vector<KnnIndex::NodeId> KnnIndex::knn_unvisited(Point query, std::size_t k,
                                                      std::span<const NodeId> exclude) const {
    std::vector<NodeId> out;
    if (k == 0 || alive_total_ == 0 || nodes_.empty()) return out;

    std::vector<NodeId> excluded(exclude.begin(), exclude.end());
    std::sort(excluded.begin(), excluded.end());
    const auto is_excluded = [&excluded](NodeId id) {
        return !excluded.empty() && std::binary_search(excluded.begin(), excluded.end(), id);
    };

    // Max-heap on (d2, id): the front is the worst kept candidate.
    std::vector<Candidate> heap;
    heap.reserve(k + 1);
    std::array<double, kLeafSize> d2buf{};

    std::vector<std::int32_t> stack;
    stack.reserve(64);
    stack.push_back(0);
    while (!stack.empty()) {
        const Node& node = nodes_[static_cast<std::size_t>(stack.back())];
        stack.pop_back();
        if (node.alive == 0) continue;
        // Equal bound distance is not pruned: a tie with a smaller id may hide there.
        if (heap.size() == k && box_sq_dist(node.box, query) > heap.front().d2) continue;

        if (node.left < 0) {
            const std::uint32_t count = node.end - node.begin;
            kernels::sq_distances(query, std::span<const double>(xs_).subspan(node.begin, count),
                                  std::span<const double>(ys_).subspan(node.begin, count),
                                  std::span<double>(d2buf.data(), count));
            for (std::uint32_t i = 0; i < count; ++i) {
                const std::uint32_t slot = node.begin + i;
                if (!slot_alive_[slot]) continue;
                const Candidate c{d2buf[i], ids_[slot]};
                if (heap.size() == k && !(c < heap.front())) continue;
                if (is_excluded(c.id)) continue;
                if (heap.size() == k) {
                    std::pop_heap(heap.begin(), heap.end());
                    heap.back() = c;
                } else {
                    heap.push_back(c);
                }
                std::push_heap(heap.begin(), heap.end());
            }
            continue;
        }

        // Push the farther child first so the nearer one is explored next.
        const Node& l = nodes_[static_cast<std::size_t>(node.left)];
        const Node& r = nodes_[static_cast<std::size_t>(node.right)];
        const double dl = box_sq_dist(l.box, query);
        const double dr = box_sq_dist(r.box, query);
        if (dl <= dr) {
            stack.push_back(node.right);
            stack.push_back(node.left);
        } else {
            stack.push_back(node.left);
            stack.push_back(node.right);
        }
    }

    std::sort_heap(heap.begin(), heap.end());
    out.reserve(heap.size());
    for (const Candidate& c : heap) out.push_back(c.id);
    return out;
}

void KnnIndex::remove(NodeId id) {
    if (id >= alive_flag_.size()) throw std::out_of_range("node id out of range");
    if (!alive_flag_[id]) throw std::invalid_argument("double removal");
    alive_flag_[id] = 0;
    --alive_total_;

    const std::uint32_t slot = slot_of_[id];
    slot_alive_[slot] = 0;
    for (std::int32_t n = leaf_of_[slot]; n >= 0; n = nodes_[static_cast<std::size_t>(n)].parent) {
        --nodes_[static_cast<std::size_t>(n)].alive;
    }
    ++dead_in_tree_;
    if (2 * dead_in_tree_ > ids_.size()) rebuild();
}

}  // namespace routeproj
