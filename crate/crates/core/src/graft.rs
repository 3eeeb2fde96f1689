//! Grafting products on `∅` and trees: `◁` over every leaf, and `⊴`, which
//! only grafts onto trees with a single leaf.

use num_traits::One;

use crate::error::{Error, Result};
use crate::linear::{ForestComb, Q};
use crate::tree::{Forest, RootedTree, VertexRef};

fn tree_or_empty(f: &Forest) -> Result<Option<&RootedTree>> {
    match f.trees() {
        [] => Ok(None),
        [t] => Ok(Some(t)),
        trees => Err(Error::NotATree(trees.len())),
    }
}

pub fn leaves(t: &RootedTree) -> Vec<VertexRef> {
    t.vertices()
        .into_iter()
        .filter(|v| t.subtree(v).is_ok_and(RootedTree::is_leaf))
        .collect()
}

/// `T ◁ T′ = Σ_{l ∈ ℓ(T)} T ↶_l T′`, with `∅ ◁ T′ = T′`.
pub fn graft_leaves(t: &Forest, u: &Forest) -> Result<ForestComb> {
    let (t, u) = (tree_or_empty(t)?, tree_or_empty(u)?);
    let Some(t) = t else {
        return Ok(ForestComb::basis(u.map(Forest::from).unwrap_or_default()));
    };
    let mut out = ForestComb::zero();
    for leaf in leaves(t) {
        out.add_term(t.graft_at(&leaf, u)?.into(), Q::one());
    }
    Ok(out)
}

/// `T ⊴ T′`: zero when `T` has two or more leaves, `T ◁ T′` otherwise.
pub fn graft_linear(t: &Forest, u: &Forest) -> Result<ForestComb> {
    if tree_or_empty(t)?.is_some_and(|t| t.leaf_count() > 1) {
        tree_or_empty(u)?;
        return Ok(ForestComb::zero());
    }
    graft_leaves(t, u)
}

pub fn graft_leaves_lin(x: &ForestComb, y: &ForestComb) -> Result<ForestComb> {
    bilinear(x, y, graft_leaves)
}

pub fn graft_linear_lin(x: &ForestComb, y: &ForestComb) -> Result<ForestComb> {
    bilinear(x, y, graft_linear)
}

fn bilinear(
    x: &ForestComb,
    y: &ForestComb,
    op: fn(&Forest, &Forest) -> Result<ForestComb>,
) -> Result<ForestComb> {
    let mut out = ForestComb::zero();
    for (f, a) in x.iter() {
        for (g, b) in y.iter() {
            out.add_scaled(&op(f, g)?, &(a * b));
        }
    }
    Ok(out)
}

/// `(x·y)·z − x·(y·z)`.
pub fn associator(
    op: fn(&ForestComb, &ForestComb) -> Result<ForestComb>,
    x: &ForestComb,
    y: &ForestComb,
    z: &ForestComb,
) -> Result<ForestComb> {
    Ok(&op(&op(x, y)?, z)? - &op(x, &op(y, z)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::qi;
    use crate::parse::parse_forest;

    fn f(s: &str) -> Forest {
        parse_forest(s).unwrap()
    }

    fn comb(terms: &[&str]) -> ForestComb {
        terms.iter().map(|s| (f(s), qi(1))).collect()
    }

    #[test]
    fn leaf_grafting() {
        assert_eq!(
            graft_leaves(&Forest::empty(), &f("a")).unwrap(),
            comb(&["a"])
        );
        assert_eq!(graft_leaves(&f("a"), &f("b")).unwrap(), comb(&["a[b]"]));
        assert_eq!(
            graft_leaves(&f("a[b,c]"), &f("d")).unwrap(),
            comb(&["a[b[d],c]", "a[b,c[d]]"])
        );
        assert_eq!(
            graft_leaves(&f("a[b,b]"), &f("d"))
                .unwrap()
                .coefficient(&f("a[b,b[d]]")),
            qi(2)
        );
    }

    #[test]
    fn linear_grafting() {
        assert!(graft_linear(&f("a[b,c]"), &f("d")).unwrap().is_zero());
        assert_eq!(
            graft_linear(&f("a[b]"), &f("c")).unwrap(),
            comb(&["a[b[c]]"])
        );
        assert_eq!(
            graft_linear(&f("a"), &f("b[c,d]")).unwrap(),
            comb(&["a[b[c,d]]"])
        );
        assert_eq!(
            graft_linear(&f("a[b]"), &Forest::empty()).unwrap(),
            comb(&["a[b]"])
        );
        assert!(graft_linear(&f("a b"), &f("c")).is_err());
    }
}
