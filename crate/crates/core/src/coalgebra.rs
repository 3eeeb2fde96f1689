//! The trunk coproduct `Δ`, its counit and the right antipode.

use num_traits::One;

use crate::error::{Error, Result};
use crate::linear::{ForestComb, LinComb, TensorComb, Q};
use crate::tree::{b_plus, Forest, RootedTree};

/// `Δ` on a single tree: cuts below every vertex of the trunk.
pub fn delta_tree(t: &RootedTree) -> TensorComb {
    let whole = Forest::from(t);
    let mut out = TensorComb::basis((Forest::empty(), whole));
    match t.children() {
        [] => out.add_term((Forest::from(t), Forest::empty()), Q::one()),
        [child] => {
            let a = t.decoration();
            out += &delta_tree(child).map_basis(|(l, r)| (Forest::from(b_plus(a, l)), r.clone()));
        }
        _ => {}
    }
    out
}

/// `Δ` on `∅` or a tree; rejects forests with two or more components.
pub fn delta(f: &Forest) -> Result<TensorComb> {
    match f.trees() {
        [] => Ok(TensorComb::basis((Forest::empty(), Forest::empty()))),
        [t] => Ok(delta_tree(t)),
        trees => Err(Error::NotATree(trees.len())),
    }
}

pub fn delta_lin(x: &ForestComb) -> Result<TensorComb> {
    let mut out = TensorComb::zero();
    for (f, c) in x.iter() {
        out.add_scaled(&delta(f)?, c);
    }
    Ok(out)
}

/// Coefficient of `∅`.
pub fn counit(x: &ForestComb) -> Q {
    x.coefficient(&Forest::empty())
}

/// `(ε ⊗ Id)`.
pub fn counit_left(x: &TensorComb) -> ForestComb {
    x.filter(|(l, _)| l.is_empty())
        .map_basis(|(_, r)| r.clone())
}

/// `(Id ⊗ ε)`.
pub fn counit_right(x: &TensorComb) -> ForestComb {
    x.filter(|(_, r)| r.is_empty())
        .map_basis(|(l, _)| l.clone())
}

/// Reverses the vertex order of a linear tree.
pub fn reverse_linear(t: &RootedTree) -> Option<RootedTree> {
    if !t.is_linear() {
        return None;
    }
    let mut decs = t.decorations();
    decs.reverse();
    let mut acc: Option<RootedTree> = None;
    for d in decs.into_iter().rev() {
        acc = Some(RootedTree::new(d, acc.into_iter().collect()));
    }
    acc
}

/// The right antipode: `S(∅) = ∅`, `S(T) = (−1)^|T| T⁻¹` on linear trees and
/// `0` on trees with two or more leaves.
pub fn right_antipode(f: &Forest) -> Result<ForestComb> {
    let t = match f.trees() {
        [] => return Ok(ForestComb::basis(Forest::empty())),
        [t] => t,
        trees => return Err(Error::NotATree(trees.len())),
    };
    Ok(match reverse_linear(t) {
        None => ForestComb::zero(),
        Some(rev) => {
            let sign = if t.size() % 2 == 0 {
                Q::one()
            } else {
                -Q::one()
            };
            ForestComb::term(rev.into(), sign)
        }
    })
}

/// Applies `Δ` to the left leg of each term.
pub fn delta_on_left(x: &TensorComb) -> LinComb<(Forest, Forest, Forest)> {
    x.flat_map(|(l, r)| {
        delta(l)
            .expect("tensor legs produced by Δ are trees")
            .map_basis(|(a, b)| (a.clone(), b.clone(), r.clone()))
    })
}

/// Applies `Δ` to the right leg of each term.
pub fn delta_on_right(x: &TensorComb) -> LinComb<(Forest, Forest, Forest)> {
    x.flat_map(|(l, r)| {
        delta(r)
            .expect("tensor legs produced by Δ are trees")
            .map_basis(|(a, b)| (l.clone(), a.clone(), b.clone()))
    })
}

/// `⧢ ∘ (Id ⊗ S) ∘ Δ` at λ = 0; vanishes on nonempty trees.
pub fn antipode_convolution(f: &Forest, lambda: &Q) -> Result<ForestComb> {
    let mut out = ForestComb::zero();
    for ((l, r), c) in delta(f)?.iter() {
        let s = right_antipode(r)?;
        let prod = crate::shuffle::shuffle_lin(&ForestComb::basis(l.clone()), &s, lambda);
        out.add_scaled(&prod, c);
    }
    Ok(out)
}

/// `ε(F)·∅`.
pub fn unit_counit(f: &Forest) -> ForestComb {
    if f.is_empty() {
        ForestComb::basis(Forest::empty())
    } else {
        ForestComb::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::qi;
    use crate::parse::parse_forest;

    fn f(s: &str) -> Forest {
        parse_forest(s).unwrap()
    }

    fn tensor(terms: &[(&str, &str)]) -> TensorComb {
        terms.iter().map(|(l, r)| ((f(l), f(r)), qi(1))).collect()
    }

    #[test]
    fn small_coproducts() {
        assert_eq!(delta(&Forest::empty()).unwrap(), tensor(&[("()", "()")]));
        assert_eq!(delta(&f("a")).unwrap(), tensor(&[("a", "()"), ("()", "a")]));
        assert_eq!(
            delta(&f("a[b]")).unwrap(),
            tensor(&[("a[b]", "()"), ("a", "b"), ("()", "a[b]")])
        );
        assert_eq!(delta(&f("a[b,c]")).unwrap(), tensor(&[("()", "a[b,c]")]));
        assert_eq!(
            delta(&f("a[b[c,d]]")).unwrap(),
            tensor(&[("a", "b[c,d]"), ("()", "a[b[c,d]]")])
        );
        assert_eq!(delta(&f("a b")), Err(Error::NotATree(2)));
    }

    #[test]
    fn counit_reads_empty_coefficient() {
        let x: ForestComb = [(Forest::empty(), qi(3)), (f("a[b]"), qi(2))]
            .into_iter()
            .collect();
        assert_eq!(counit(&x), qi(3));
        assert_eq!(counit(&ForestComb::basis(f("a"))), qi(0));
    }

    #[test]
    fn antipode_values() {
        assert_eq!(
            right_antipode(&f("a")).unwrap(),
            ForestComb::term(f("a"), qi(-1))
        );
        assert_eq!(
            right_antipode(&f("a[b]")).unwrap(),
            ForestComb::basis(f("b[a]"))
        );
        assert_eq!(
            right_antipode(&f("a[b[c]]")).unwrap(),
            ForestComb::term(f("c[b[a]]"), qi(-1))
        );
        assert!(right_antipode(&f("a[b,c]")).unwrap().is_zero());
    }

    #[test]
    fn antipode_square_on_small_trees() {
        for s in [
            "a",
            "a[b]",
            "a[b[c]]",
            "a[b[c[d]]]",
            "a[b,c]",
            "a[b[c,d]]",
            "a[a[b]]",
        ] {
            assert!(
                antipode_convolution(&f(s), &qi(0)).unwrap().is_zero(),
                "{s}"
            );
        }
        assert_eq!(
            antipode_convolution(&Forest::empty(), &qi(0)).unwrap(),
            unit_counit(&Forest::empty())
        );
    }

    #[test]
    fn counit_dichotomy() {
        for s in ["a", "a[b]", "a[b[c]]", "a[b,c]", "a[b[c,d]]"] {
            let d = delta(&f(s)).unwrap();
            assert_eq!(counit_left(&d), ForestComb::basis(f(s)));
            let linear = f(s).as_tree().unwrap().is_linear();
            assert_eq!(counit_right(&d) == ForestComb::basis(f(s)), linear, "{s}");
        }
    }
}
