use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::shuffle_suites::all_words;
use super::{SuiteConfig, Tally};
use crate::coalgebra::{
    antipode_convolution, counit_left, counit_right, delta, delta_on_left, delta_on_right,
};
use crate::enumerate::{alphabet, random_tree, Enumerator};
use crate::error::Result;
use crate::linear::{qi, tau23, tensor, ForestComb, TensorComb, Q};
use crate::parse::parse_forest;
use crate::shuffle::forest_shuffle;
use crate::tree::{Forest, RootedTree};
use crate::word;

pub fn coassociativity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let mut e = Enumerator::new(alphabet(2));
    let mut inputs = e.trees_or_empty_up_to(cfg.degree(6));
    let letters = alphabet(3);
    for _ in 0..cfg.samples(300) {
        let n = rng.gen_range(7..=10);
        inputs.push(random_tree(rng, n, &letters).into());
    }
    for f in &inputs {
        let d = delta(f)?;
        t.expect_eq(|| f.to_string(), &delta_on_left(&d), &delta_on_right(&d));
    }
    Ok(())
}

pub fn counit(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let mut e = Enumerator::new(alphabet(2));
    for f in e.trees_or_empty_up_to(cfg.degree(6)) {
        let d = delta(&f)?;
        let identity = ForestComb::basis(f.clone());
        t.expect_eq(
            || format!("left counit on {f}"),
            &identity,
            &counit_left(&d),
        );
        let linear = f.as_tree().is_none_or(RootedTree::is_linear);
        let right = counit_right(&d) == identity;
        t.check(
            right == linear,
            || format!("right counit on {f}"),
            || (format!("holds={linear}"), format!("holds={right}")),
        );
    }
    let w = parse_forest("a[b,c]")?;
    t.note(format!(
        "(Id (x) eps) Delta(a[b,c]) = {}, so the right counit fails off linear trees",
        counit_right(&delta(&w)?)
    ));
    Ok(())
}

/// `(⧢ ⊗ ⧢) ∘ τ₂₃ ∘ (Δ ⊗ Δ)` applied to `x ⊗ y`.
fn shuffle_of_deltas(x: &Forest, y: &Forest, lambda: &Q) -> Result<TensorComb> {
    let four = tau23(
        &tensor(&delta(x)?, &delta(y)?)
            .map_basis(|((a, b), (c, d))| (a.clone(), b.clone(), c.clone(), d.clone())),
    );
    let mut out = TensorComb::zero();
    for ((a, c, b, d), coeff) in four.iter() {
        let left = forest_shuffle(a, c, lambda);
        let right = forest_shuffle(b, d, lambda);
        out.add_scaled(&tensor(&left, &right), coeff);
    }
    Ok(out)
}

fn delta_of_shuffle(x: &Forest, y: &Forest, lambda: &Q) -> Result<TensorComb> {
    let mut out = TensorComb::zero();
    for (h, c) in forest_shuffle(x, y, lambda).iter() {
        out.add_scaled(&delta(h)?, c);
    }
    Ok(out)
}

pub fn bialgebra(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let lambdas = [qi(0), qi(1), qi(-1)];
    let max = cfg.degree(5);
    let mut e = Enumerator::new(alphabet(2));
    let by_size: Vec<Vec<Forest>> = (0..=max)
        .map(|n| {
            if n == 0 {
                vec![Forest::empty()]
            } else {
                e.trees(n).iter().map(Forest::from).collect()
            }
        })
        .collect();
    let mut pairs = Vec::new();
    for a in 0..=max {
        for b in 0..=max - a {
            for x in &by_size[a] {
                for y in &by_size[b] {
                    pairs.push((x.clone(), y.clone()));
                }
            }
        }
    }
    let letters = alphabet(3);
    for _ in 0..cfg.samples(100) {
        let n = rng.gen_range(2..=7);
        let k = rng.gen_range(1..n);
        pairs.push((
            random_tree(rng, k, &letters).into(),
            random_tree(rng, n - k, &letters).into(),
        ));
    }
    for (x, y) in &pairs {
        for lambda in &lambdas {
            t.expect_eq(
                || format!("{x} | {y} at lambda={lambda}"),
                &shuffle_of_deltas(x, y, lambda)?,
                &delta_of_shuffle(x, y, lambda)?,
            );
        }
    }
    Ok(())
}

pub fn antipode(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let mut e = Enumerator::new(alphabet(2));
    let zero = Q::zero();
    for f in e.trees_or_empty_up_to(cfg.degree(5)) {
        let expected = if f.is_empty() {
            ForestComb::basis(Forest::empty())
        } else {
            ForestComb::zero()
        };
        t.expect_eq(
            || f.to_string(),
            &expected,
            &antipode_convolution(&f, &zero)?,
        );
    }
    t.note("convolution taken with the weight-zero shuffle");
    Ok(())
}

pub fn deconcatenation(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for words in all_words(2, cfg.degree(6)) {
        for w in words {
            let expected = word::deconcatenation(&w)
                .map_basis(|(u, v)| (u.to_linear_tree(), v.to_linear_tree()));
            t.expect_eq(|| format!("({w})"), &expected, &delta(&w.to_linear_tree())?);
        }
    }
    Ok(())
}
