//! Trees with trivial reduced `Δ*`, and their counts.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::decoration::Decoration;
use crate::dual::{dual_oracle, reduced_dual, reduced_part};
use crate::enumerate::{distinct_labels, Enumerator};
use crate::error::{Error, Result};
use crate::tree::{Forest, RootedTree};

pub const SHAPE_GUARD: usize = 12;
pub const COALGEBRAIC_CHECK_MAX: usize = 7;

/// No vertex has exactly one child.
pub fn is_primitive(t: &RootedTree) -> bool {
    t.fertility() != 1 && t.children().iter().all(is_primitive)
}

pub fn is_primitive_forest(f: &Forest) -> Result<bool> {
    match f.trees() {
        [] => Err(Error::EmptyOperand("primitivity test")),
        [t] => Ok(is_primitive(t)),
        trees => Err(Error::NotATree(trees.len())),
    }
}

/// Every undecorated tree with `n` vertices, in canonical order.
pub fn enumerate_shapes(n: usize) -> Result<Vec<RootedTree>> {
    if n == 0 {
        return Err(Error::InvalidArgument("shape size must be positive".into()));
    }
    if n > SHAPE_GUARD {
        return Err(Error::GuardExceeded {
            what: "vertices for shape enumeration",
            limit: SHAPE_GUARD,
            got: n,
        });
    }
    Ok(Enumerator::new(vec![Decoration::unit()]).trees(n).to_vec())
}

/// Weakly decreasing `k`-tuples of positive integers summing to `n`.
pub fn integer_partitions(n: usize, k: usize) -> Result<Vec<Vec<usize>>> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    fn go(n: usize, k: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if n == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // The remaining k - 1 parts need at least one each.
        for part in (1..=max.min(n + 1 - k)).rev() {
            prefix.push(part);
            go(n - part, k - 1, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, n, &mut Vec::new(), &mut out);
    Ok(out)
}

/// `C(p + k − 1, k)`: multisets of size `k` drawn from `p` kinds.
fn multichoose(p: &BigUint, k: usize) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= p + BigUint::from(i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// `p_0, …, p_n` from the partition recursion.
pub fn primitive_counts(n: usize) -> Vec<BigUint> {
    let mut p: Vec<BigUint> = vec![BigUint::zero(), BigUint::one(), BigUint::zero()];
    while p.len() <= n {
        let m = p.len() - 1;
        let mut total = BigUint::zero();
        for k in 2..=m {
            for parts in integer_partitions(m, k).expect("2 <= k <= m") {
                let mut term = BigUint::one();
                let mut i = 0;
                while i < parts.len() {
                    let j = parts[i..].iter().take_while(|&&x| x == parts[i]).count();
                    term *= multichoose(&p[parts[i]], j);
                    i += j;
                }
                total += term;
            }
        }
        p.push(total);
    }
    p.truncate(n + 1);
    p
}

pub fn primitive_count_recursive(n: usize) -> BigUint {
    primitive_counts(n).pop().expect("nonempty")
}

#[derive(Clone, Debug)]
pub struct BruteCount {
    pub count: BigUint,
    pub shapes: usize,
    /// Shapes whose structural verdict was compared with the reduced `Δ*`.
    pub cross_checked: usize,
    pub mismatches: Vec<RootedTree>,
}

/// Counts primitive shapes by enumeration; for small `n` also compares each
/// verdict with the vanishing of the reduced `Δ*` on a distinctly labelled copy.
pub fn primitive_count_brute(n: usize) -> Result<BruteCount> {
    let shapes = enumerate_shapes(n)?;
    let mut out = BruteCount {
        count: BigUint::zero(),
        shapes: shapes.len(),
        cross_checked: 0,
        mismatches: Vec::new(),
    };
    for shape in &shapes {
        let structural = is_primitive(shape);
        if structural {
            out.count += 1u32;
        }
        if n <= COALGEBRAIC_CHECK_MAX {
            out.cross_checked += 1;
            if coalgebraic_verdicts(shape)? != (structural, structural) {
                out.mismatches.push(shape.clone());
            }
        }
    }
    Ok(out)
}

/// Vanishing of the reduced `Δ*` in the paper normalization and in the
/// oracle, for `shape` decorated with pairwise distinct atoms.
pub fn coalgebraic_verdicts(shape: &RootedTree) -> Result<(bool, bool)> {
    let t: Forest = distinct_labels(shape).into();
    let paper = reduced_dual(&t).is_zero();
    let oracle = reduced_part(&t, &dual_oracle(&t)?).is_zero();
    Ok((paper, oracle))
}
