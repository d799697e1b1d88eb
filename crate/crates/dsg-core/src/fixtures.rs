//! Small named graphs used by tests and the `fixture` CLI subcommand.

use crate::graph::Graph;

pub fn single_edge() -> Graph {
    Graph::from_edges(2, &[(0, 1)]).unwrap()
}

pub fn path3() -> Graph {
    Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
}

pub fn triangle() -> Graph {
    Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
}

/// Star K_{1,3}: center 0 with leaves 1..=3.
pub fn star3() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
}

pub fn complete(k: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push((u, v));
        }
    }
    Graph::from_edges(k, &edges).unwrap()
}

/// Triangle on {0,1,2} plus the disjoint edge {3,4}.
pub fn tri_plus_edge() -> Graph {
    Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (3, 4)]).unwrap()
}

/// Triangle on {0,1,2} with pendant vertex 3 hanging off vertex 2.
pub fn triangle_plus_pendant() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap()
}

/// K4 on {0,1,2,3} with pendant vertex 4 attached to vertex 3.
pub fn k4_plus_pendant() -> Graph {
    Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
}
