#pragma once

#include "dac/graph.hpp"
#include "dac/random.hpp"

namespace dac::graphs {

// Directed cycle 1 -> 2 -> ... -> n -> 1, i.e. a_{i,i+1} = w.
Digraph directed_ring(int n, double weight = 1.0);

// Undirected complete graph with uniform weight.
Digraph complete(int n, double weight = 1.0);

// Undirected path 1 - 2 - ... - n.
Digraph undirected_path(int n, double weight = 1.0);

// The six-agent directed ring used in the reference experiments.
Digraph six_ring();

// The six-agent ring with the extra bidirectional links 1 <-> 5 and
// 3 <-> 5; node 5 then has in- and out-degree 3.
Digraph six_ring_with_chords();

// Random strongly connected, weight-balanced digraph: a Hamiltonian cycle
// through a random permutation plus up to `extra_cycles` random simple
// cycles, each with a uniform random weight. Superposing weighted cycles
// keeps every node balanced.
Digraph random_scwb(int n, Rng& rng, int extra_cycles = 2);

// Random connected undirected graph: random spanning tree plus extra
// symmetric edges with probability `density`.
Digraph random_connected_undirected(int n, Rng& rng, double density = 0.3);

}  // namespace dac::graphs
