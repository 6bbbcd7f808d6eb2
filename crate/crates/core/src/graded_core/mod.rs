//! Graded generators, words and elements of free algebras, Koszul signs, and
//! graded-commutative polynomial algebras.

mod comm;
mod element;
mod free;

pub use comm::{CommAlgebra, CommElement, CommMonomial};
pub use element::{Element, Word};
pub use free::{format_terms, DSquaredReport, FreeDGAlgebra};

/// A homogeneous generator. Degrees are homological (differentials lower
/// them by one); the weight is an auxiliary grading preserved by everything.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    pub weight: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64, weight: u32) -> Self {
        Generator { name: name.into(), degree, weight }
    }
}

pub fn is_odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// `(-1)^parity` as an integer.
pub fn sign(parity: i64) -> i64 {
    if is_odd(parity) {
        -1
    } else {
        1
    }
}

/// Sign for moving the block `moved` past the block `past`.
pub fn koszul_sign(moved: &[i64], past: &[i64]) -> i64 {
    let a: i64 = moved.iter().sum();
    let b: i64 = past.iter().sum();
    sign(a * b)
}

/// Sign of reordering a sequence of homogeneous factors: `perm[k]` is the
/// original position of the factor placed at position `k`.
pub fn permutation_sign(degrees: &[i64], perm: &[usize]) -> i64 {
    let mut parity = 0i64;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] && is_odd(degrees[perm[i]]) && is_odd(degrees[perm[j]]) {
                parity += 1;
            }
        }
    }
    sign(parity)
}
