use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::shuffle_suites::all_words;
use super::{SuiteConfig, Tally};
use crate::admissible::{admissible_families, admissible_families_direct, AdmissibleFamily};
use crate::coalgebra::delta;
use crate::decoration::Decoration;
use crate::dual::{
    dual_combinatorial, dual_combinatorial_weighted, dual_oracle, dual_recursive, support_set,
    DualWeights,
};
use crate::enumerate::{alphabet, distinct_labels, random_tree, Enumerator};
use crate::error::Result;
use crate::graft::{graft_leaves_lin, graft_linear, graft_linear_lin, leaves};
use crate::linear::{flip, ForestComb};
use crate::tree::{b_plus, Forest, RootedTree};
use crate::word::{deshuffle, Word};

/// Forests over two atoms up to `two`, then every unlabelled forest shape up
/// to `distinct` with pairwise distinct atoms.
fn dual_inputs(two: usize, distinct: usize) -> Vec<Forest> {
    let mut out = Enumerator::new(alphabet(2)).forests_up_to(two);
    let mut shapes = Enumerator::new(vec![Decoration::unit()]);
    for f in shapes.forests_up_to(distinct) {
        out.push(distinct_labels(&b_plus(&Decoration::unit(), &f)).branches());
    }
    out
}

pub fn consistency(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for f in dual_inputs(cfg.degree(7), cfg.degree(7)) {
        t.expect_eq(
            || f.to_string(),
            &dual_recursive(&f),
            &dual_combinatorial(&f)?,
        );
    }
    Ok(())
}

pub fn cocommutativity(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for f in dual_inputs(cfg.degree(6), cfg.degree(6)) {
        let d = dual_recursive(&f);
        t.expect_eq(|| format!("recursive on {f}"), &d, &flip(&d));
        let o = dual_oracle(&f)?;
        t.expect_eq(|| format!("oracle on {f}"), &o, &flip(&o));
    }
    Ok(())
}

pub fn support(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for f in dual_inputs(cfg.degree(6), cfg.degree(6)) {
        let ours = support_set(&dual_recursive(&f));
        let oracle = support_set(&dual_oracle(&f)?);
        t.check(
            ours == oracle,
            || f.to_string(),
            || {
                let show = |s: &std::collections::BTreeSet<(Forest, Forest)>| {
                    s.iter()
                        .map(|(l, r)| format!("{l} (x) {r}"))
                        .collect::<Vec<_>>()
                        .join(" + ")
                };
                (show(&oracle), show(&ours))
            },
        );
    }
    Ok(())
}

fn distinct_decorations(f: &Forest) -> bool {
    let labels = f.decoration_multiset();
    labels.windows(2).all(|w| w[0] != w[1])
}

pub fn normalization(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let (mut paper_mismatch, mut distinct, mut distinct_ok) = (0usize, 0usize, 0usize);
    for f in dual_inputs(cfg.degree(6), cfg.degree(7)) {
        let oracle = dual_oracle(&f)?;
        if dual_combinatorial(&f)? != oracle {
            paper_mismatch += 1;
        }
        let inverse = dual_combinatorial_weighted(&f, DualWeights::Inverse)?;
        if distinct_decorations(&f) {
            distinct += 1;
            distinct_ok += usize::from(inverse == oracle);
        }
        t.expect_eq(|| f.to_string(), &oracle, &inverse);
    }
    t.note(format!(
        "the unweighted form differs from the oracle on {paper_mismatch} of {} inputs",
        t.report.cases
    ));
    t.note(format!(
        "inverse weights match the oracle on {distinct_ok} of {distinct} inputs with pairwise distinct decorations"
    ));
    Ok(())
}

pub fn linear(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for words in all_words(2, cfg.degree(6)) {
        for w in words {
            let lin = w.to_linear_tree();
            let expected = deshuffle(&w)
                .map_basis(|(u, v): &(Word, Word)| (u.to_linear_tree(), v.to_linear_tree()));
            t.expect_eq(|| format!("({w})"), &expected, &dual_recursive(&lin));
        }
    }
    Ok(())
}

/// `⟨T₁ ⊴ T₂, T⟩ = ⟨T₁ ⊗ T₂, Δ(T)⟩` for every pair, by comparing each
/// grafting with the transpose of `Δ`.
pub fn grafting(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let max = cfg.degree(6);
    let mut e = Enumerator::new(alphabet(2));
    let by_size: Vec<Vec<Forest>> = (0..=max)
        .map(|n| match n {
            0 => vec![Forest::empty()],
            n => e.trees(n).iter().map(Forest::from).collect(),
        })
        .collect();
    for n in 0..=max {
        let mut transpose: BTreeMap<(Forest, Forest), ForestComb> = BTreeMap::new();
        for target in &by_size[n] {
            for (pair, c) in delta(target)?.iter() {
                transpose
                    .entry(pair.clone())
                    .or_default()
                    .add_term(target.clone(), c.clone());
            }
        }
        for a in 0..=n {
            for x in &by_size[a] {
                for y in &by_size[n - a] {
                    let key = (x.clone(), y.clone());
                    let expected = transpose.remove(&key).unwrap_or_default();
                    t.expect_eq(|| format!("{x} | {y}"), &expected, &graft_linear(x, y)?);
                }
            }
        }
    }
    Ok(())
}

/// Three random trees with at most `max` vertices between them.
fn small_triple(rng: &mut ChaCha8Rng, max: usize) -> [ForestComb; 3] {
    let letters = alphabet(3);
    let largest = max.max(3) - 2;
    loop {
        let sizes: [usize; 3] = std::array::from_fn(|_| rng.gen_range(1..=largest));
        if sizes.iter().sum::<usize>() <= max.max(3) {
            return sizes.map(|n| ForestComb::basis(random_tree(rng, n, &letters).into()));
        }
    }
}

type Bilinear = fn(&ForestComb, &ForestComb) -> Result<ForestComb>;

fn assoc(op: Bilinear, x: &ForestComb, y: &ForestComb, z: &ForestComb) -> Result<ForestComb> {
    crate::graft::associator(op, x, y, z)
}

pub fn prelie(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let max = cfg.degree(5);
    for _ in 0..cfg.samples(300) {
        let [x, y, z] = small_triple(rng, max);
        let input = || format!("{x} | {y} | {z}");
        // (x,y,z) symmetric in x and y.
        t.expect_eq(
            || format!("linear grafting, swap of the first two: {}", input()),
            &assoc(graft_linear_lin, &x, &y, &z)?,
            &assoc(graft_linear_lin, &y, &x, &z)?,
        );
        // (x,y,z) symmetric in y and z.
        t.expect_eq(
            || format!("linear grafting, swap of the last two: {}", input()),
            &assoc(graft_linear_lin, &x, &y, &z)?,
            &assoc(graft_linear_lin, &x, &z, &y)?,
        );
        t.expect_eq(
            || format!("leaf grafting, swap of the last two: {}", input()),
            &assoc(graft_leaves_lin, &x, &y, &z)?,
            &assoc(graft_leaves_lin, &x, &z, &y)?,
        );
    }
    Ok(())
}

pub fn leaf_grafting(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let letters = alphabet(2);
    let max = cfg.degree(6).max(2);
    for _ in 0..cfg.samples(200) {
        let k = rng.gen_range(1..max);
        let base = random_tree(rng, k, &letters);
        let m = rng.gen_range(1..=max - k);
        let other = random_tree(rng, m, &letters);
        let spots = leaves(&base);
        let leaf = &spots[rng.gen_range(0..spots.len())];
        let grafted: Forest = base.graft_at(leaf, Some(&other))?.into();
        let pair = (Forest::from(&base), Forest::from(&other));
        let ours = dual_recursive(&grafted).coefficient(&pair);
        let oracle = dual_oracle(&grafted)?.coefficient(&pair);
        t.check(
            !ours.is_zero() && !oracle.is_zero(),
            || format!("{other} grafted on leaf {leaf} of {base}"),
            || {
                (
                    "nonzero coefficients".into(),
                    format!("recursive {ours}, oracle {oracle}"),
                )
            },
        );
    }
    Ok(())
}

fn complement_closed(tree: &RootedTree) -> Result<bool> {
    let fams = admissible_families(tree)?;
    let full = tree.layout().full();
    Ok(fams.iter().all(|f| {
        fams.iter()
            .any(|g| g.mask == full & !f.mask && g.c_gamma == f.c_gamma)
    }))
}

/// Families from the inductive description satisfy the definition, carry the
/// contracted fertility, and are closed under complement.
pub fn families(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let mut e = Enumerator::new(alphabet(2));
    for n in 1..=cfg.degree(6) {
        for tree in e.trees(n).to_vec() {
            let lemma = admissible_families(&tree)?;
            let direct = admissible_families_direct(&tree)?;
            let missing: Vec<&AdmissibleFamily> =
                lemma.iter().filter(|f| !direct.contains(f)).collect();
            t.check(
                missing.is_empty(),
                || format!("families of {tree}"),
                || {
                    (
                        "every family admissible with c from the contraction".into(),
                        render(&missing),
                    )
                },
            );
            t.check(
                complement_closed(&tree)?,
                || format!("complements of {tree}"),
                || {
                    (
                        "closed under complement".into(),
                        render(&lemma.iter().collect::<Vec<_>>()),
                    )
                },
            );
        }
    }
    Ok(())
}

fn render(fams: &[&AdmissibleFamily]) -> String {
    fams.iter()
        .map(|f| format!("{} (x) {} c={}", f.t_complement, f.t_gamma, f.c_gamma))
        .collect::<Vec<_>>()
        .join("; ")
}

/// The inductive description against the definition read literally.
pub fn families_definition(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let mut e = Enumerator::new(vec![Decoration::unit()]);
    let mut witness = None;
    for n in 1..=cfg.degree(7) {
        for shape in e.trees(n).to_vec() {
            let tree = distinct_labels(&shape);
            let lemma = admissible_families(&tree)?;
            let direct = admissible_families_direct(&tree)?;
            let extra: Vec<&AdmissibleFamily> =
                direct.iter().filter(|f| !lemma.contains(f)).collect();
            if witness.is_none() {
                if let Some(f) = extra.first() {
                    let gamma: Vec<String> = f.gamma.iter().map(ToString::to_string).collect();
                    witness = Some(format!(
                        "{tree}: gamma={{{}}} gives {} (x) {}, absent from the inductive list",
                        gamma.join(","),
                        f.t_complement,
                        f.t_gamma
                    ));
                }
            }
            t.check(
                lemma.len() == direct.len() && extra.is_empty(),
                || tree.to_string(),
                || {
                    (
                        "no families beyond the inductive list".into(),
                        render(&extra),
                    )
                },
            );
        }
    }
    if let Some(w) = witness {
        t.note(format!("smallest witness: {w}"));
    }
    Ok(())
}

/// Line-by-line comparison of the unweighted combinatorial `Δ*`, the
/// inverse-weighted one and the duality oracle on every input of the
/// normalization suite.
pub fn comparison_report(cfg: &SuiteConfig) -> Result<String> {
    let mut lines = Vec::new();
    let (mut total, mut paper_agree, mut inverse_agree) = (0usize, 0usize, 0usize);
    for f in dual_inputs(cfg.degree(6), cfg.degree(7)) {
        let oracle = dual_oracle(&f)?;
        let paper = dual_combinatorial(&f)?;
        let inverse = dual_combinatorial_weighted(&f, DualWeights::Inverse)?;
        total += 1;
        paper_agree += usize::from(paper == oracle);
        inverse_agree += usize::from(inverse == oracle);
        if paper != oracle || inverse != oracle {
            lines.push(format!("forest: {f}"));
            lines.push(format!("  oracle:   {oracle}"));
            lines.push(format!("  weights c_gamma, alpha:     {paper}"));
            lines.push(format!("  weights 1/c_gamma, 1/alpha: {inverse}"));
        }
    }
    let mut out = vec![
        "Duality oracle versus the admissible-family coproduct".to_string(),
        format!("inputs: {total}"),
        format!("agreement with weights c_gamma and alpha: {paper_agree}/{total}"),
        format!("agreement with weights 1/c_gamma and 1/alpha: {inverse_agree}/{total}"),
        format!(
            "inverse-weight conjecture: {}",
            if inverse_agree == total {
                "consistent on every input"
            } else {
                "refuted"
            }
        ),
        String::new(),
    ];
    out.extend(lines);
    Ok(out.join("\n") + "\n")
}
