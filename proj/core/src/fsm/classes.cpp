#include "colstate/fsm/classes.hpp"

#include <algorithm>
#include <cmath>

namespace colstate::fsm {

namespace {

struct TarjanState {
    const std::vector<std::vector<int>>& adj;
    std::vector<int> index, lowlink;
    std::vector<char> on_stack;
    std::vector<int> stack;
    int counter = 0;
    std::vector<std::vector<int>> sccs;

    explicit TarjanState(const std::vector<std::vector<int>>& a)
        : adj(a),
          index(a.size(), -1),
          lowlink(a.size(), 0),
          on_stack(a.size(), 0) {}

    // Iterative DFS; digraphs here can be deep relative to machine size.
    void run(int root) {
        struct Frame {
            int v;
            std::size_t edge;
        };
        std::vector<Frame> frames{{root, 0}};
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < adj[f.v].size()) {
                const int w = adj[f.v][f.edge++];
                if (index[w] == -1) {
                    index[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[f.v] = std::min(lowlink[f.v], index[w]);
                }
            } else {
                if (lowlink[f.v] == index[f.v]) {
                    std::vector<int> scc;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        scc.push_back(w);
                    } while (w != f.v);
                    std::sort(scc.begin(), scc.end());
                    sccs.push_back(std::move(scc));
                }
                const int v = f.v;
                frames.pop_back();
                if (!frames.empty())
                    lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
            }
        }
    }
};

}  // namespace

std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& adjacency) {
    TarjanState t(adjacency);
    for (std::size_t v = 0; v < adjacency.size(); ++v) {
        if (t.index[v] == -1) t.run(static_cast<int>(v));
    }
    return t.sccs;
}

ClassDecomposition decompose_classes(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    std::vector<char> zero_row(static_cast<std::size_t>(n), 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (m(i, j) > 0.0) {
                adj[static_cast<std::size_t>(i)].push_back(j);
                zero_row[static_cast<std::size_t>(i)] = 0;
            }
        }
    }

    ClassDecomposition out;
    std::vector<int> class_of(static_cast<std::size_t>(n), -1);
    for (auto& scc : strongly_connected_components(adj)) {
        if (scc.size() == 1 && zero_row[static_cast<std::size_t>(scc[0])]) {
            out.nuisance_indices.push_back(scc[0]);
            continue;
        }
        const int id = static_cast<int>(out.classes.size());
        for (int v : scc) class_of[static_cast<std::size_t>(v)] = id;
        bool cyc = scc.size() > 1;
        if (!cyc) cyc = m(scc[0], scc[0]) > 0.0;
        out.cyclic.push_back(cyc);
        out.classes.push_back(std::move(scc));
    }
    std::sort(out.nuisance_indices.begin(), out.nuisance_indices.end());

    // Kind: essential iff no edge leaves the class, nuisance targets
    // included. DAG edges only connect proper classes.
    out.kinds.assign(out.classes.size(), ClassKind::essential);
    for (int i = 0; i < n; ++i) {
        const int ci = class_of[static_cast<std::size_t>(i)];
        if (ci < 0) continue;
        for (int j : adj[static_cast<std::size_t>(i)]) {
            const int cj = class_of[static_cast<std::size_t>(j)];
            if (cj == ci) continue;
            out.kinds[static_cast<std::size_t>(ci)] = ClassKind::inessential;
            if (cj >= 0) out.dag_edges.emplace_back(ci, cj);
        }
    }
    std::sort(out.dag_edges.begin(), out.dag_edges.end());
    out.dag_edges.erase(std::unique(out.dag_edges.begin(), out.dag_edges.end()),
                        out.dag_edges.end());
    return out;
}

bool has_trapped_repetition(const Eigen::MatrixXd& m, double tol) {
    const auto decomposition = decompose_classes(m);
    for (std::size_t c = 0; c < decomposition.classes.size(); ++c) {
        if (!decomposition.cyclic[c]) continue;
        bool trapped = true;
        for (int i : decomposition.classes[c]) {
            double in_class = 0.0;
            for (int j : decomposition.classes[c]) in_class += m(i, j);
            if (std::abs(in_class - 1.0) > tol) {
                trapped = false;
                break;
            }
        }
        if (trapped) return true;
    }
    return false;
}

}  // namespace colstate::fsm
