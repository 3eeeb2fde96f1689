use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{lambda_samples, SuiteConfig, Tally};
use crate::decoration::Decoration;
use crate::enumerate::{alphabet, random_forest, random_tree, Enumerator};
use crate::error::Result;
use crate::linear::{qi, ForestComb, Q};
use crate::shuffle::{diamond_product, forest_shuffle, shuffle_lin, star_product};
use crate::tree::{Forest, RootedTree};
use crate::word::{word_shuffle, Word};

fn operand(rng: &mut ChaCha8Rng, max: usize, nonempty: bool) -> Forest {
    let n = rng.gen_range(usize::from(nonempty)..=max);
    if n == 0 {
        Forest::empty()
    } else {
        random_forest(rng, n, &alphabet(3))
    }
}

pub fn commutativity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let lambdas = lambda_samples();
    for _ in 0..cfg.samples(500) {
        let (f, g) = (operand(rng, 3, false), operand(rng, 3, false));
        for lambda in &lambdas {
            let input = || format!("{f} | {g} at lambda={lambda}");
            t.expect_eq(
                input,
                &forest_shuffle(&f, &g, lambda),
                &forest_shuffle(&g, &f, lambda),
            );
            t.expect_eq(
                input,
                &star_product(&f, &g, lambda),
                &star_product(&g, &f, lambda),
            );
            if !f.is_empty() && !g.is_empty() {
                t.expect_eq(
                    input,
                    &diamond_product(&f, &g, lambda)?,
                    &diamond_product(&g, &f, lambda)?,
                );
            }
        }
    }
    Ok(())
}

/// Scans triples by increasing total degree and reports the first triple
/// whose two bracketings differ.
pub fn nonassociativity(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let max = cfg.degree(4);
    let lambda = Q::zero();
    let mut e = Enumerator::new(alphabet(2));
    let by_size: Vec<Vec<Forest>> = (0..=max).map(|n| e.forests(n).to_vec()).collect();
    let mut witness = None;
    'search: for total in 0..=max {
        for a in 1..=total {
            for b in 1..=total - a {
                let c = total - a - b;
                if c == 0 {
                    continue;
                }
                for x in &by_size[a] {
                    for y in &by_size[b] {
                        let xy = forest_shuffle(x, y, &lambda);
                        for z in &by_size[c] {
                            let left = shuffle_lin(&xy, &ForestComb::basis(z.clone()), &lambda);
                            let right = shuffle_lin(
                                &ForestComb::basis(x.clone()),
                                &forest_shuffle(y, z, &lambda),
                                &lambda,
                            );
                            if left != right {
                                witness = Some((x.clone(), y.clone(), z.clone(), left, right));
                                break 'search;
                            }
                        }
                    }
                }
            }
        }
    }
    match &witness {
        Some((x, y, z, left, right)) => {
            t.note(format!(
                "witness ({x} | {y} | {z}): (x sh y) sh z = {left}; x sh (y sh z) = {right}"
            ));
        }
        None => t.note(format!("no witness up to total degree {max}")),
    }
    t.check(
        witness.is_some(),
        || format!("triples up to degree {max}"),
        || ("a non-associative triple".into(), "none found".into()),
    );
    Ok(())
}

pub fn unit(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let mut e = Enumerator::new(alphabet(2));
    let empty = Forest::empty();
    for f in e.forests_up_to(cfg.degree(5)) {
        for lambda in &lambda_samples() {
            let expected = ForestComb::basis(f.clone());
            let input = || format!("{f} at lambda={lambda}");
            t.expect_eq(input, &expected, &forest_shuffle(&empty, &f, lambda));
            t.expect_eq(input, &expected, &forest_shuffle(&f, &empty, lambda));
        }
    }
    Ok(())
}

fn words_up_to(letters: &[Decoration], max: usize) -> Vec<Vec<Word>> {
    let mut by_len = vec![vec![Word::empty()]];
    for _ in 0..max {
        let next = by_len
            .last()
            .expect("nonempty")
            .iter()
            .flat_map(|w| {
                letters
                    .iter()
                    .map(move |a| w.concat(&Word(vec![a.clone()])))
            })
            .collect();
        by_len.push(next);
    }
    by_len
}

pub(super) fn all_words(letters: usize, max: usize) -> Vec<Vec<Word>> {
    words_up_to(&alphabet(letters), max)
}

pub fn words(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let max = cfg.degree(5);
    let by_len = all_words(2, max);
    for a in 0..=max {
        for b in 0..=max - a {
            for w in &by_len[a] {
                for v in &by_len[b] {
                    for lambda in &lambda_samples() {
                        let expected = word_shuffle(w, v, lambda).map_basis(Word::to_linear_tree);
                        let actual =
                            forest_shuffle(&w.to_linear_tree(), &v.to_linear_tree(), lambda);
                        t.expect_eq(
                            || format!("({w}) | ({v}) at lambda={lambda}"),
                            &expected,
                            &actual,
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

/// Number of vertex merges needed to go from `expected_size` vertices down to
/// the size of `f`.
fn deficit(expected_size: usize, f: &Forest) -> i32 {
    (expected_size - f.size()) as i32
}

pub fn positivity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    type Product = fn(&Forest, &Forest, &Q) -> Result<ForestComb>;
    let products: [(&str, Product, bool); 3] = [
        ("shuffle", |f, g, l| Ok(forest_shuffle(f, g, l)), false),
        ("star", |f, g, l| Ok(star_product(f, g, l)), false),
        ("diamond", diamond_product, true),
    ];
    let two = qi(2);
    for _ in 0..cfg.samples(200) {
        for (name, op, nonempty) in &products {
            let (f, g) = (operand(rng, 3, *nonempty), operand(rng, 3, *nonempty));
            let size = f.size() + g.size();
            let at_one = op(&f, &g, &Q::one())?;
            let at_two = op(&f, &g, &two)?;
            let at_zero = op(&f, &g, &Q::zero())?;
            // Each merge of two vertices contributes one factor of λ.
            let merged = if *name == "diamond" { 1 } else { 0 };
            let predicted_two: ForestComb = at_one
                .iter()
                .map(|(h, c)| (h.clone(), c * two.pow(deficit(size, h) - merged)))
                .collect();
            let predicted_zero = at_one.filter(|h| deficit(size, h) == merged);
            t.check(
                at_one.all_positive() && predicted_two == at_two && predicted_zero == at_zero,
                || format!("{name}: {f} | {g}"),
                || (predicted_two.to_string(), at_two.to_string()),
            );
        }
    }
    Ok(())
}

fn has_fertility_one(t: &RootedTree) -> bool {
    t.fertility() == 1 || t.children().iter().any(has_fertility_one)
}

pub fn fertility_one(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let max = cfg.degree(6);
    let mut e = Enumerator::new(alphabet(2));
    let trees: Vec<Vec<RootedTree>> = (0..=max).map(|n| e.trees(n).to_vec()).collect();
    let zero = Q::zero();
    for a in 1..=max {
        for b in a..=max - a {
            for x in &trees[a] {
                for y in &trees[b] {
                    let s = forest_shuffle(&x.into(), &y.into(), &zero);
                    let bad: Vec<String> = s
                        .support()
                        .filter(|h| !h.as_tree().is_some_and(has_fertility_one))
                        .map(ToString::to_string)
                        .collect();
                    t.check(
                        bad.is_empty(),
                        || format!("{x} | {y}"),
                        || {
                            (
                                "every term has a fertility-one vertex".into(),
                                bad.join(", "),
                            )
                        },
                    );
                }
            }
        }
    }
    Ok(())
}

pub fn star_linear(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let max = cfg.degree(6);
    let by_len = all_words(2, max);
    for a in 1..=max {
        for b in 1..=max - a {
            for w in &by_len[a] {
                for v in &by_len[b] {
                    let (x, y) = (w.to_linear_tree(), v.to_linear_tree());
                    for lambda in &lambda_samples() {
                        t.expect_eq(
                            || format!("{x} | {y} at lambda={lambda}"),
                            &forest_shuffle(&x, &y, lambda),
                            &star_product(&x, &y, lambda),
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

/// The general claim `T ∗ T′ = T ⧢ T′` for trees, on random pairs.
pub fn star_trees(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let letters = alphabet(3);
    for _ in 0..cfg.samples(200) {
        let n = rng.gen_range(2..=7);
        let k = rng.gen_range(1..n);
        let x: Forest = random_tree(rng, k, &letters).into();
        let y: Forest = random_tree(rng, n - k, &letters).into();
        for lambda in [Q::zero(), Q::one()] {
            t.expect_eq(
                || format!("{x} | {y} at lambda={lambda}"),
                &forest_shuffle(&x, &y, &lambda),
                &star_product(&x, &y, &lambda),
            );
        }
    }
    if t.report.failed > 0 {
        t.note("star and shuffle differ on trees with branching; they agree on linear trees");
    }
    Ok(())
}
