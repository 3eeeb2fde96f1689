//! λ-shuffle of rooted forests and the auxiliary products `∗_λ` and `◇_λ`.
//!
//! All three products are memoized per thread on `(left, right, λ)`. The
//! caches only store finished values, so they never change results.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::Zero;

use crate::decoration::Decoration;
use crate::error::{Error, Result};
use crate::linear::{ForestComb, LinComb, Q};
use crate::tree::{b_plus, Forest};

type Memo = RefCell<HashMap<(Forest, Forest, Q), ForestComb>>;

thread_local! {
    static SHUFFLE_MEMO: Memo = RefCell::new(HashMap::new());
    static STAR_MEMO: Memo = RefCell::new(HashMap::new());
    static DIAMOND_MEMO: Memo = RefCell::new(HashMap::new());
}

/// Drops the memo tables of the calling thread.
pub fn clear_caches() {
    for memo in [&SHUFFLE_MEMO, &STAR_MEMO, &DIAMOND_MEMO] {
        memo.with(|m| m.borrow_mut().clear());
    }
}

fn memoized(
    memo: &'static std::thread::LocalKey<Memo>,
    f: &Forest,
    g: &Forest,
    lambda: &Q,
    compute: impl FnOnce() -> ForestComb,
) -> ForestComb {
    let key = (f.clone(), g.clone(), lambda.clone());
    if let Some(hit) = memo.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    let value = compute();
    memo.with(|m| m.borrow_mut().insert(key, value.clone()));
    value
}

/// `B₊^a` extended linearly.
pub fn b_plus_lin(a: &Decoration, x: &ForestComb) -> ForestComb {
    x.map_basis(|f| Forest::from(b_plus(a, f)))
}

/// Multiplies every term by a fixed forest under concatenation.
pub fn concat_lin(x: &ForestComb, rest: &Forest) -> ForestComb {
    if rest.is_empty() {
        return x.clone();
    }
    x.map_basis(|f| f.concat(rest))
}

/// Positions of pairwise distinct trees with their multiplicities.
fn distinct_positions(f: &Forest) -> Vec<(usize, usize)> {
    let trees = f.trees();
    let mut out: Vec<(usize, usize)> = Vec::new();
    for i in 0..trees.len() {
        match out.last_mut() {
            Some((j, m)) if trees[*j] == trees[i] => *m += 1,
            _ => out.push((i, 1)),
        }
    }
    out
}

fn inv(n: usize) -> Q {
    Q::new(1.into(), (n as i64).into())
}

/// The λ-shuffle `F ⧢_λ F′`.
pub fn forest_shuffle(f: &Forest, g: &Forest, lambda: &Q) -> ForestComb {
    if f.is_empty() {
        return ForestComb::basis(g.clone());
    }
    if g.is_empty() {
        return ForestComb::basis(f.clone());
    }
    memoized(&SHUFFLE_MEMO, f, g, lambda, || {
        if let (Some(t), Some(u)) = (f.as_tree(), g.as_tree()) {
            let (ft, gu) = (t.branches(), u.branches());
            let mut out = b_plus_lin(t.decoration(), &forest_shuffle(&ft, g, lambda));
            out += &b_plus_lin(u.decoration(), &forest_shuffle(f, &gu, lambda));
            if !lambda.is_zero() {
                let ab = t.decoration() * u.decoration();
                out.add_scaled(&b_plus_lin(&ab, &forest_shuffle(&ft, &gu, lambda)), lambda);
            }
            return out;
        }
        let scale = inv(f.len() * g.len());
        let mut out = ForestComb::zero();
        for (i, mi) in distinct_positions(f) {
            let ti = Forest::from(&f.trees()[i]);
            let rest_f = f.without(i);
            for (j, mj) in distinct_positions(g) {
                let tj = Forest::from(&g.trees()[j]);
                let rest = rest_f.concat(&g.without(j));
                let c = &scale * Q::from_integer(((mi * mj) as i64).into());
                out.add_scaled(&concat_lin(&forest_shuffle(&ti, &tj, lambda), &rest), &c);
            }
        }
        out
    })
}

pub fn shuffle_lin(x: &ForestComb, y: &ForestComb, lambda: &Q) -> ForestComb {
    x.bilinear(y, |f, g| forest_shuffle(f, g, lambda))
}

/// The auxiliary product `F ∗_λ F′`.
pub fn star_product(f: &Forest, g: &Forest, lambda: &Q) -> ForestComb {
    if g.is_empty() {
        return ForestComb::basis(f.clone());
    }
    if f.is_empty() {
        return ForestComb::basis(g.clone());
    }
    memoized(&STAR_MEMO, f, g, lambda, || {
        let mut out = ForestComb::zero();
        let left = inv(f.len());
        for (i, m) in distinct_positions(f) {
            let t = &f.trees()[i];
            let grafted = b_plus_lin(t.decoration(), &star_product(&t.branches(), g, lambda));
            let c = &left * Q::from_integer((m as i64).into());
            out.add_scaled(&concat_lin(&grafted, &f.without(i)), &c);
        }
        let right = inv(g.len());
        for (j, m) in distinct_positions(g) {
            let t = &g.trees()[j];
            let grafted = b_plus_lin(t.decoration(), &star_product(f, &t.branches(), lambda));
            let c = &right * Q::from_integer((m as i64).into());
            out.add_scaled(&concat_lin(&grafted, &g.without(j)), &c);
        }
        if !lambda.is_zero() {
            out.add_scaled(&diamond_unchecked(f, g, lambda), lambda);
        }
        out
    })
}

/// The product `F ◇_λ F′` on nonempty forests.
pub fn diamond_product(f: &Forest, g: &Forest, lambda: &Q) -> Result<ForestComb> {
    if f.is_empty() || g.is_empty() {
        return Err(Error::EmptyOperand("diamond product"));
    }
    Ok(diamond_unchecked(f, g, lambda))
}

/// Bilinear `◇_λ`; fails if either side has an empty forest in its support.
pub fn diamond_lin(x: &ForestComb, y: &ForestComb, lambda: &Q) -> Result<ForestComb> {
    if x.support().chain(y.support()).any(Forest::is_empty) {
        return Err(Error::EmptyOperand("diamond product"));
    }
    Ok(x.bilinear(y, |f, g| diamond_unchecked(f, g, lambda)))
}

fn diamond_unchecked(f: &Forest, g: &Forest, lambda: &Q) -> ForestComb {
    memoized(&DIAMOND_MEMO, f, g, lambda, || {
        if let (Some(t), Some(u)) = (f.as_tree(), g.as_tree()) {
            let ab = t.decoration() * u.decoration();
            return b_plus_lin(&ab, &star_product(&t.branches(), &u.branches(), lambda));
        }
        let scale = inv(f.len() * g.len());
        let mut out = ForestComb::zero();
        for (i, mi) in distinct_positions(f) {
            let ti = Forest::from(&f.trees()[i]);
            let rest_f = f.without(i);
            for (j, mj) in distinct_positions(g) {
                let tj = Forest::from(&g.trees()[j]);
                let rest = rest_f.concat(&g.without(j));
                let c = &scale * Q::from_integer(((mi * mj) as i64).into());
                out.add_scaled(&concat_lin(&diamond_unchecked(&ti, &tj, lambda), &rest), &c);
            }
        }
        out
    })
}

/// Splits `x(λ)` into the parts `(x(0), x(1) − x(0))`, exact for results
/// that are affine in λ.
pub fn affine_parts(eval: impl Fn(&Q) -> ForestComb) -> (ForestComb, ForestComb) {
    let at0 = eval(&Q::zero());
    let at1 = eval(&Q::from_integer(1.into()));
    let slope = &at1 - &at0;
    (at0, slope)
}

pub type ShuffleResult = LinComb<Forest>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{q, qi};
    use crate::parse::parse_forest;

    fn f(s: &str) -> Forest {
        parse_forest(s).unwrap()
    }

    fn comb(terms: &[(&str, Q)]) -> ForestComb {
        terms.iter().map(|(s, c)| (f(s), c.clone())).collect()
    }

    #[test]
    fn single_vertices() {
        let expected = comb(&[("a[b]", qi(1)), ("b[a]", qi(1))]);
        assert_eq!(forest_shuffle(&f("a"), &f("b"), &qi(0)), expected);
    }

    #[test]
    fn two_vertices_against_one() {
        let lambda = q(3, 5);
        let got = forest_shuffle(&f("a b"), &f("c"), &lambda);
        let h = q(1, 2);
        let hl = &h * &lambda;
        let expected = comb(&[
            ("a[c] b", h.clone()),
            ("c[a] b", h.clone()),
            ("a b[c]", h.clone()),
            ("a c[b]", h.clone()),
            ("a*c b", hl.clone()),
            ("a b*c", hl),
        ]);
        assert_eq!(got, expected);
    }

    #[test]
    fn empty_forest_is_unit() {
        let x = f("a[b,c] d");
        assert_eq!(
            forest_shuffle(&Forest::empty(), &x, &qi(1)),
            ForestComb::basis(x.clone())
        );
        assert_eq!(
            star_product(&Forest::empty(), &x, &qi(1)),
            ForestComb::basis(x)
        );
    }

    #[test]
    fn star_one_unfolding() {
        let lambda = q(2, 7);
        let got = star_product(&f("b"), &f("d e"), &lambda);
        let h = q(1, 2);
        let hl = &h * &lambda;
        let expected = comb(&[
            ("b[d,e]", qi(1)),
            ("d[b] e", h.clone()),
            ("e[b] d", h),
            ("b*d e", hl.clone()),
            ("b*e d", hl),
        ]);
        assert_eq!(got, expected);
    }

    #[test]
    fn diamond_examples() {
        assert_eq!(
            diamond_product(&f("a"), &f("b"), &qi(0)).unwrap(),
            comb(&[("a*b", qi(1))])
        );
        for lambda in [qi(0), qi(1), q(-4, 3)] {
            assert_eq!(
                diamond_product(&f("a"), &f("b c"), &lambda).unwrap(),
                comb(&[("a*b c", q(1, 2)), ("a*c b", q(1, 2))])
            );
        }
        assert_eq!(
            diamond_product(&Forest::empty(), &f("a"), &qi(0)),
            Err(Error::EmptyOperand("diamond product"))
        );
    }

    #[test]
    fn diamond_of_two_trees() {
        let lambda = q(5, 2);
        let got = diamond_product(&f("a[b]"), &f("c[d,e]"), &lambda).unwrap();
        let h = q(1, 2);
        let hl = &h * &lambda;
        let expected = comb(&[
            ("a*c[b[d,e]]", qi(1)),
            ("a*c[d[b],e]", h.clone()),
            ("a*c[e[b],d]", h),
            ("a*c[b*d,e]", hl.clone()),
            ("a*c[b*e,d]", hl),
        ]);
        assert_eq!(got, expected);
    }

    #[test]
    fn star_differs_from_shuffle_on_branching_trees() {
        let x = f("a[b,c]");
        let y = f("d");
        assert_ne!(star_product(&x, &y, &qi(0)), forest_shuffle(&x, &y, &qi(0)));
        // Linear trees agree.
        let x = f("a[b]");
        let y = f("c[d]");
        assert_eq!(star_product(&x, &y, &qi(1)), forest_shuffle(&x, &y, &qi(1)));
    }

    #[test]
    fn affine_split() {
        let (c0, c1) = affine_parts(|l| forest_shuffle(&f("a"), &f("b"), l));
        assert_eq!(c0, comb(&[("a[b]", qi(1)), ("b[a]", qi(1))]));
        assert_eq!(c1, comb(&[("a*b", qi(1))]));
    }
}
