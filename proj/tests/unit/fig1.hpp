#pragma once

#include "refnet/signed_graph.hpp"

// Four-vertex example: 1-2 -, 1-3 +, 1-4 -, 2-4 -, 3-4 + and - (0-based here).
inline refnet::SignedGraph fig1_graph() {
    using refnet::Sign;
    const std::vector<refnet::SignedEdge> edges{
        {0, 1, Sign::negative}, {0, 2, Sign::positive}, {0, 3, Sign::negative},
        {1, 3, Sign::negative}, {2, 3, Sign::positive}, {2, 3, Sign::negative},
    };
    return refnet::SignedGraph(4, edges);
}
