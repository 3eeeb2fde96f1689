use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{SuiteConfig, Tally};
use crate::dual::reduced_dual;
use crate::enumerate::alphabet;
use crate::error::Result;
use crate::primitives::{
    coalgebraic_verdicts, enumerate_shapes, is_primitive, primitive_count_brute,
    primitive_count_recursive, primitive_counts,
};
use crate::tree::Forest;

/// Primitive tree counts for 0 to 23 vertices.
pub const EXPECTED_PRIMITIVE_COUNTS: [u64; 24] = [
    0, 1, 0, 1, 1, 2, 3, 6, 10, 19, 35, 67, 127, 248, 482, 952, 1885, 3765, 7546, 15221, 30802,
    62620, 127702, 261335,
];

pub fn counts(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for n in 1..=cfg.degree(9) {
        let brute = primitive_count_brute(n)?;
        t.expect_eq(
            || format!("n={n}"),
            &primitive_count_recursive(n),
            &brute.count,
        );
        t.check(
            brute.mismatches.is_empty(),
            || format!("coalgebraic cross-check, n={n}"),
            || {
                (
                    "no mismatches".into(),
                    brute
                        .mismatches
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", "),
                )
            },
        );
    }
    Ok(())
}

pub fn table(_: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let computed = primitive_counts(EXPECTED_PRIMITIVE_COUNTS.len() - 1);
    for (n, (expected, actual)) in EXPECTED_PRIMITIVE_COUNTS.iter().zip(&computed).enumerate() {
        t.expect_eq(|| format!("p_{n}"), &BigUint::from(*expected), actual);
    }
    Ok(())
}

pub fn coalgebraic(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for n in 1..=cfg.degree(7) {
        for shape in enumerate_shapes(n)? {
            let structural = is_primitive(&shape);
            let (ours, oracle) = coalgebraic_verdicts(&shape)?;
            t.check(
                ours == structural && oracle == structural,
                || shape.to_string(),
                || {
                    (
                        format!("primitive={structural}"),
                        format!("recursive={ours}, oracle={oracle}"),
                    )
                },
            );
        }
    }
    Ok(())
}

/// Random redecorations keep both the structural and the coalgebraic verdict.
pub fn decoration(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let letters = alphabet(3);
    let max = cfg.degree(7);
    for _ in 0..cfg.samples(200) {
        let shapes = enumerate_shapes(rng.gen_range(1..=max))?;
        let shape = &shapes[rng.gen_range(0..shapes.len())];
        let decorated =
            shape.map_decorations(&mut |_| letters[rng.gen_range(0..letters.len())].clone());
        let expected = is_primitive(shape);
        let structural = is_primitive(&decorated);
        let coalgebraic = reduced_dual(&Forest::from(&decorated)).is_zero();
        t.check(
            structural == expected && coalgebraic == expected,
            || format!("{decorated} (shape {shape})"),
            || {
                (
                    format!("primitive={expected}"),
                    format!("structural={structural}, coalgebraic={coalgebraic}"),
                )
            },
        );
    }
    Ok(())
}
