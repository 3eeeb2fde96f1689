use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::shuffle_suites::all_words;
use super::{lambda_samples, SuiteConfig, Tally};
use crate::decoration::Decoration;
use crate::enumerate::{alphabet, random_forest, Enumerator};
use crate::error::Result;
use crate::linear::{qi, ForestComb, LinComb};
use crate::rota_baxter::{
    phi_bar, phi_bar_lin, word_diamond, word_diamond_lin, word_p, ForestRba, RbAlgebra, WordRba,
};
use crate::shuffle::diamond_product;
use crate::tree::{b_plus, Forest};
use crate::word::{Word, WordComb};

/// Nonempty pairs with at most `max` letters between them.
fn word_pairs(max: usize) -> Vec<(Word, Word)> {
    let by_len = all_words(2, max);
    let mut out = Vec::new();
    for a in 1..=max {
        for b in 1..=max - a {
            for w in &by_len[a] {
                for v in &by_len[b] {
                    out.push((w.clone(), v.clone()));
                }
            }
        }
    }
    out
}

fn random_word(rng: &mut ChaCha8Rng, n: usize) -> Word {
    let letters = alphabet(3);
    Word(
        (0..n)
            .map(|_| letters[rng.gen_range(0..letters.len())].clone())
            .collect(),
    )
}

/// Two sizes, each at least one, summing to at most `max`.
fn split_sizes(rng: &mut ChaCha8Rng, max: usize) -> (usize, usize) {
    let total = rng.gen_range(2..=max.max(2));
    let k = rng.gen_range(1..total);
    (k, total - k)
}

/// Nonempty forest pairs with at most `max` vertices between them.
fn forest_pairs(max: usize) -> Vec<(Forest, Forest)> {
    let mut e = Enumerator::new(alphabet(2));
    let by_size: Vec<Vec<Forest>> = (0..=max).map(|n| e.forests(n).to_vec()).collect();
    let mut out = Vec::new();
    for a in 1..=max {
        for b in 1..=max - a {
            for x in &by_size[a] {
                for y in &by_size[b] {
                    out.push((x.clone(), y.clone()));
                }
            }
        }
    }
    out
}

fn random_forest_pairs(rng: &mut ChaCha8Rng, count: usize, max: usize) -> Vec<(Forest, Forest)> {
    let letters = alphabet(3);
    (0..count)
        .map(|_| {
            let (a, b) = split_sizes(rng, max);
            (
                random_forest(rng, a, &letters),
                random_forest(rng, b, &letters),
            )
        })
        .collect()
}

fn check_identity<A: RbAlgebra>(
    t: &mut Tally,
    alg: &A,
    x: &LinComb<A::Basis>,
    y: &LinComb<A::Basis>,
) -> Result<()> {
    let r = alg.residual(x, y)?;
    t.check(
        r.is_zero(),
        || format!("{x} | {y} in {}", alg.name()),
        || ("0".into(), r.to_string()),
    );
    Ok(())
}

pub fn words(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let mut pairs = word_pairs(cfg.degree(4));
    for _ in 0..cfg.samples(200) {
        let (a, b) = split_sizes(rng, cfg.degree(7));
        pairs.push((random_word(rng, a), random_word(rng, b)));
    }
    for lambda in lambda_samples() {
        let alg = WordRba { lambda };
        for (w, v) in &pairs {
            check_identity(
                t,
                &alg,
                &WordComb::basis(w.clone()),
                &WordComb::basis(v.clone()),
            )?;
        }
    }
    Ok(())
}

pub fn forests(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let mut pairs = forest_pairs(cfg.degree(4));
    pairs.extend(random_forest_pairs(rng, cfg.samples(200), cfg.degree(7)));
    for lambda in lambda_samples() {
        let alg = ForestRba::new(lambda);
        for (x, y) in &pairs {
            check_identity(
                t,
                &alg,
                &ForestComb::basis(x.clone()),
                &ForestComb::basis(y.clone()),
            )?;
        }
    }
    Ok(())
}

/// With a decorated root the operator must fail the identity on every pair.
pub fn negative_control(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for lambda in [qi(0), qi(1)] {
        let alg = ForestRba {
            lambda,
            root: Decoration::atom("a"),
        };
        for (x, y) in forest_pairs(cfg.degree(3)) {
            let r = alg.residual(&ForestComb::basis(x.clone()), &ForestComb::basis(y.clone()))?;
            t.check(
                !r.is_zero(),
                || format!("{x} | {y} in {}", alg.name()),
                || ("a nonzero residual".into(), "0".into()),
            );
        }
    }
    Ok(())
}

pub fn commutativity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let words = word_pairs(cfg.degree(4));
    let forests = random_forest_pairs(rng, cfg.samples(200), cfg.degree(6));
    for lambda in &lambda_samples() {
        for (w, v) in &words {
            t.expect_eq(
                || format!("({w}) | ({v}) at lambda={lambda}"),
                &word_diamond(w, v, lambda)?,
                &word_diamond(v, w, lambda)?,
            );
        }
        for (x, y) in &forests {
            t.expect_eq(
                || format!("{x} | {y} at lambda={lambda}"),
                &diamond_product(x, y, lambda)?,
                &diamond_product(y, x, lambda)?,
            );
        }
    }
    Ok(())
}

pub fn phi_intertwining(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let unit = Decoration::unit();
    let mut e = Enumerator::new(alphabet(2));
    for f in e
        .forests_up_to(cfg.degree(5))
        .into_iter()
        .filter(|f| !f.is_empty())
    {
        for lambda in [qi(0), qi(1)] {
            let grown = phi_bar(&b_plus(&unit, &f).into(), &lambda)?;
            let expected = phi_bar(&f, &lambda)?.map_basis(word_p);
            t.expect_eq(|| format!("{f} at lambda={lambda}"), &expected, &grown);
        }
    }
    Ok(())
}

pub fn phi_multiplicative(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for (x, y) in random_forest_pairs(rng, cfg.samples(200), cfg.degree(6)) {
        for lambda in [qi(0), qi(1)] {
            let expected =
                word_diamond_lin(&phi_bar(&x, &lambda)?, &phi_bar(&y, &lambda)?, &lambda)?;
            let actual = phi_bar_lin(&diamond_product(&x, &y, &lambda)?, &lambda)?;
            t.expect_eq(
                || format!("{x} | {y} at lambda={lambda}"),
                &expected,
                &actual,
            );
        }
    }
    Ok(())
}

pub fn phi_concatenation(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for (x, y) in random_forest_pairs(rng, cfg.samples(200), cfg.degree(6)) {
        for lambda in [qi(0), qi(1)] {
            let expected =
                word_diamond_lin(&phi_bar(&x, &lambda)?, &phi_bar(&y, &lambda)?, &lambda)?;
            t.expect_eq(
                || format!("{x} | {y} at lambda={lambda}"),
                &expected,
                &phi_bar(&x.concat(&y), &lambda)?,
            );
        }
    }
    Ok(())
}
