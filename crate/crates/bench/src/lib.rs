//! Fixtures shared by the benchmarks.

use hyperfactor::{BoolTensor, Hypergraph};

pub fn complete(n: usize, d: usize) -> Hypergraph {
    Hypergraph::complete(n, d).expect("valid complete hypergraph")
}

pub fn complete_tensor(n: usize, d: usize) -> BoolTensor {
    complete(n, d)
        .adjacency_tensor()
        .expect("simple hypergraph")
}
