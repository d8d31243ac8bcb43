#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "compactor/graph.hpp"

namespace compactor {

struct TreeDecomposition {
    std::vector<vset> bags;
    std::vector<std::pair<int, int>> edges;  // tree edges over node ids 0..bags.size()-1
    std::optional<int> root;
};

// The three axioms: vertex coverage, edge coverage, connected occurrence sets.
// Also checks that the node graph is a tree.
bool validate(const TreeDecomposition& d, const Graph& g);

// max bag size - 1; throws on a decomposition with no bags
int width(const TreeDecomposition& d);

// Exact treewidth by elimination-order DP over vertex subsets. |V| <= 14.
// Empty graph has treewidth -1.
int exact_treewidth(const Graph& g);

struct NotBounded {
    bool proven;  // exhaustive search (true) vs min-fill heuristic failure (false)
};

// A valid decomposition of width <= t, or NotBounded. Exact for |V| <= 14.
std::variant<TreeDecomposition, NotBounded> decompose_bounded(const Graph& g, int t);

// Best-effort valid decomposition with no width promise (exact when |V| <= 14).
TreeDecomposition decompose_any(const Graph& g);

// Valid decomposition of g in which `bag` is contained in some node, obtained
// by decomposing g with a clique forced on `bag`. Suits make_nice rooting.
TreeDecomposition decompose_containing(const Graph& g, const vset& bag);

enum class NodeKind { Leaf, Introduce, Forget, Join };

struct NiceTreeDecomposition {
    struct Node {
        vset bag;
        int parent = -1;
        std::vector<int> children;
        NodeKind kind = NodeKind::Leaf;
        vertex_t special = -1;  // the introduced / forgotten vertex
    };
    std::vector<Node> nodes;
    int root = -1;

    TreeDecomposition to_tree_decomposition() const;
};

// Root the decomposition at a new bag `root_bag` (which must be contained in
// some existing bag) and rewrite it so every node is a leaf, introduce, forget
// or join node. Width grows to at most max(width(d), |root_bag| - 1).
NiceTreeDecomposition make_nice(const TreeDecomposition& d, const Graph& g, const vset& root_bag);

// structural predicate: two-child nodes have equal bags, one-child nodes differ
// by exactly one vertex, no node has more than two children
bool is_nice_form(const NiceTreeDecomposition& nd);

}  // namespace compactor
