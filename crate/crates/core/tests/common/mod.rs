#![allow(dead_code)]

use quivmon_core::{DimVector, Quiver};

pub fn a2() -> Quiver {
    Quiver::new(&["i", "j"], &[("i", "j")]).unwrap()
}

pub fn a3_linear() -> Quiver {
    Quiver::new(&["i", "j", "k"], &[("i", "j"), ("j", "k")]).unwrap()
}

pub fn a3_sink() -> Quiver {
    Quiver::new(&["i", "j", "k"], &[("i", "j"), ("k", "j")]).unwrap()
}

pub fn free_pair() -> Quiver {
    Quiver::new::<&str>(&["i", "j"], &[]).unwrap()
}

pub fn double_chain() -> Quiver {
    Quiver::new(
        &["i", "j", "k"],
        &[("i", "j"), ("i", "j"), ("j", "k"), ("j", "k")],
    )
    .unwrap()
}

/// Four sources over one sink.
pub fn d4_affine() -> Quiver {
    Quiver::new(
        &["a", "b", "c", "d", "o"],
        &[("a", "o"), ("b", "o"), ("c", "o"), ("d", "o")],
    )
    .unwrap()
}

/// Vertices `1`, `2` with `n` arrows `1 -> 2`.
pub fn n_kronecker(n: usize) -> Quiver {
    Quiver::kronecker(n)
}

pub fn dim(q: &Quiver, coords: &[u32]) -> DimVector {
    q.dim_from_display(coords).unwrap()
}

/// Every nonzero vector with `|d| ≤ bound`, in grlex order.
pub fn vectors_up_to(q: &Quiver, bound: u32) -> Vec<DimVector> {
    (1..=bound).flat_map(|t| q.vectors_with_total(t)).collect()
}

/// Every word of length `1..=max_len`.
pub fn words_up_to(q: &Quiver, max_len: usize) -> Vec<quivmon_core::Word> {
    let n = q.vertex_count();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for v in 0..n {
                let mut x = w.clone();
                x.push(v);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned().map(quivmon_core::Word::new));
        layer = next;
    }
    out
}
