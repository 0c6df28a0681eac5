#pragma once

// Umbrella header: the whole library.

#include "treembed/rng.hpp"        // splittable counter-based randomness
#include "treembed/tree.hpp"       // trees, named families, bare-path decomposition
#include "treembed/graph.hpp"      // G(n,p), two-round exposure, bipartite graphs
#include "treembed/io.hpp"         // edge-list / embedding / two-round text formats
#include "treembed/matching.hpp"   // Hopcroft-Karp
#include "treembed/stars.hpp"      // star completion with Hall witnesses
#include "treembed/embed.hpp"      // greedy BFS forest embedding
#include "treembed/paths.hpp"      // layered disjoint-path insertion
#include "treembed/pipeline.hpp"   // the two-case spanning-tree pipeline
#include "treembed/lowerbound.hpp" // domination refutation + union bound
#include "treembed/harness.hpp"    // Monte Carlo experiments and thresholds
