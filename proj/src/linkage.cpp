#include "gapcluster/linkage.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "gapcluster/errors.hpp"

namespace gapcluster {

namespace {

// Ties are dissimilarities within this absolute band of the step minimum.
constexpr double kTieTolerance = 1e-12;

// Nearest active neighbor of `j` under the tie rule (smallest index among
// tied minima). `w` is the working inter-cluster distance matrix.
void recompute_nn(std::size_t j, const std::vector<int>& active, const std::vector<double>& w,
                  std::size_t n, std::vector<int>& nn, std::vector<double>& nnd) {
    double best_d = std::numeric_limits<double>::infinity();
    int best_i = -1;
    const double* row = w.data() + j * n;
    for (int i : active) {
        if (static_cast<std::size_t>(i) == j) continue;
        const double d = row[i];
        if (d < best_d - kTieTolerance) {
            best_d = d;
            best_i = i;
        } else if (d < best_d) {
            best_d = d; // tied: keep the earlier (smaller) index
        }
    }
    nn[j] = best_i;
    nnd[j] = best_d;
}

} // namespace

MergeTree average_linkage(const DistanceMatrix& dm) {
    const std::size_t n = dm.size();
    if (n < 2) throw InvalidConfig("average_linkage requires n >= 2");

    // Working copy; active clusters are keyed by their smallest member index,
    // so the merge of slots a < b lives on in slot a.
    std::vector<double> w(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w[i * n + j] = dm(i, j);

    std::vector<int> active(n);
    std::iota(active.begin(), active.end(), 0);
    std::vector<int> size(n, 1);
    std::vector<int> node_id(n);
    std::iota(node_id.begin(), node_id.end(), 0);
    std::vector<int> nn(n, -1);
    std::vector<double> nnd(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) recompute_nn(j, active, w, n, nn, nnd);

    MergeTree tree;
    tree.n_leaves = static_cast<int>(n);
    tree.merges.reserve(n - 1);

    for (std::size_t t = 0; t + 1 < n; ++t) {
        double min_d = std::numeric_limits<double>::infinity();
        for (int i : active) min_d = std::min(min_d, nnd[i]);

        // Among pairs tied with the minimum, lowest smaller index wins, then
        // lowest larger index.
        int a = -1, b = -1;
        for (int i : active) {
            if (nnd[i] > min_d + kTieTolerance) continue;
            const int lo = std::min(i, nn[i]);
            const int hi = std::max(i, nn[i]);
            if (a == -1 || lo < a || (lo == a && hi < b)) {
                a = lo;
                b = hi;
            }
        }

        const double height = w[static_cast<std::size_t>(a) * n + b];
        const int merged_size = size[a] + size[b];
        tree.merges.push_back({node_id[a], node_id[b], height, merged_size});

        // Exact group-average update: d(AuB, J) = (Na d(A,J) + Nb d(B,J)) / (Na+Nb).
        for (int j : active) {
            if (j == a || j == b) continue;
            const double d = (size[a] * w[static_cast<std::size_t>(a) * n + j]
                              + size[b] * w[static_cast<std::size_t>(b) * n + j])
                             / merged_size;
            w[static_cast<std::size_t>(a) * n + j] = d;
            w[static_cast<std::size_t>(j) * n + a] = d;
        }
        size[a] = merged_size;
        node_id[a] = static_cast<int>(n + t);
        active.erase(std::lower_bound(active.begin(), active.end(), b));

        // Merged distances are weighted averages, so they never undercut a
        // cached minimum that points elsewhere; only caches aimed at a or b
        // can go stale.
        for (int j : active) {
            if (j == a) continue;
            if (nn[j] == a || nn[j] == b) recompute_nn(j, active, w, n, nn, nnd);
        }
        if (active.size() > 1) recompute_nn(a, active, w, n, nn, nnd);
    }
    return tree;
}

Partition cut_tree(const MergeTree& tree, int k) {
    const int n = tree.n_leaves;
    if (k < 1 || k > n)
        throw InvalidK("k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");

    // Union-find over leaves; rep[node] maps tree node ids to a member leaf.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    std::vector<int> rep(static_cast<std::size_t>(2) * n - 1, -1);
    std::iota(rep.begin(), rep.begin() + n, 0);
    const int applied = n - k;
    for (int t = 0; t < applied; ++t) {
        const auto& m = tree.merges[t];
        const int ra = find(rep[m.left]);
        const int rb = find(rep[m.right]);
        parent[rb] = ra;
        rep[n + t] = ra;
    }

    Partition part;
    part.k = k;
    part.labels.assign(n, -1);
    std::vector<int> label_of_root(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const int root = find(i);
        if (label_of_root[root] == -1) label_of_root[root] = next++;
        part.labels[i] = label_of_root[root];
    }
    return part;
}

} // namespace gapcluster
