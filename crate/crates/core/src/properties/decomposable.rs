//! Vertex decomposability (pure version).

use std::collections::HashMap;

use crate::complex::{deletion, link, Complex};
use crate::vertex_set::VertexSet;

/// A pure complex is vertex decomposable if it is a simplex (including
/// `{∅}`) or has a vertex whose link and deletion are both vertex
/// decomposable. Non-pure complexes are rejected outright.
pub fn is_vertex_decomposable(c: &Complex) -> bool {
    let mut memo = HashMap::new();
    decide(c, &mut memo)
}

/// A shedding vertex witnessing decomposability, if any.
pub fn shedding_vertex(c: &Complex) -> Option<usize> {
    if !c.is_pure() || c.is_simplex() {
        return None;
    }
    let mut memo = HashMap::new();
    c.covered_vertices().iter().find(|&x| splits(c, x, &mut memo))
}

fn splits(c: &Complex, x: usize, memo: &mut HashMap<Vec<u64>, bool>) -> bool {
    let del = deletion(c, x).expect("covered vertex");
    if !del.is_pure() {
        return false;
    }
    let lk = link(c, VertexSet::singleton(x)).expect("covered vertex");
    decide(&lk, memo) && decide(&del, memo)
}

fn decide(c: &Complex, memo: &mut HashMap<Vec<u64>, bool>) -> bool {
    if !c.is_pure() {
        return false;
    }
    if c.is_simplex() {
        return true;
    }
    let key = c.compressed_key();
    if let Some(&known) = memo.get(&key) {
        return known;
    }
    let answer = c.covered_vertices().iter().any(|x| splits(c, x, memo));
    memo.insert(key, answer);
    answer
}
