use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{SuiteConfig, Tally};
use crate::decoration::Decoration;
use crate::enumerate::{alphabet, random_tree, Enumerator};
use crate::error::Result;
use crate::parse::parse_forest;
use crate::tree::{self, b_plus, Forest, RootedTree};

fn random_decoration(rng: &mut ChaCha8Rng) -> Decoration {
    let atoms = ["a", "b", "c"];
    let n = rng.gen_range(0..4);
    Decoration::from_atoms((0..n).map(|_| atoms[rng.gen_range(0..atoms.len())]))
}

pub fn decoration(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for _ in 0..cfg.samples(300) {
        let (x, y, z) = (
            random_decoration(rng),
            random_decoration(rng),
            random_decoration(rng),
        );
        let input = || format!("{x}, {y}, {z}");
        t.expect_eq(input, &(&x * &y), &(&y * &x));
        t.expect_eq(input, &(&(&x * &y) * &z), &(&x * &(&y * &z)));
        t.expect_eq(input, &(&x * &Decoration::unit()), &x);
    }
    Ok(())
}

pub fn roundtrip(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    for (letters, max) in [(2, cfg.degree(6)), (1, cfg.degree(8))] {
        let mut e = Enumerator::new(alphabet(letters));
        for f in e.forests_up_to(max) {
            let text = f.to_string();
            let back = parse_forest(&text)?;
            t.expect_eq(|| text.clone(), &f, &back);
        }
    }
    Ok(())
}

fn rebuild_shuffled(tree: &RootedTree, rng: &mut ChaCha8Rng) -> RootedTree {
    let mut kids: Vec<RootedTree> = tree
        .children()
        .iter()
        .map(|c| rebuild_shuffled(c, rng))
        .collect();
    kids.shuffle(rng);
    kids.reverse();
    RootedTree::new(tree.decoration().clone(), kids)
}

pub fn canonical(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let letters = alphabet(3);
    for _ in 0..cfg.samples(300) {
        let n = rng.gen_range(1..=12);
        let tree = random_tree(rng, n, &letters);
        let shuffled = rebuild_shuffled(&tree, rng);
        t.check(
            tree.canonical_key() == shuffled.canonical_key() && tree == shuffled,
            || tree.to_string(),
            || (tree.to_string(), shuffled.to_string()),
        );
    }
    Ok(())
}

pub fn concat(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let mut e = Enumerator::new(alphabet(2));
    let max = cfg.degree(5);
    let by_size: Vec<Vec<Forest>> = (0..=max).map(|n| e.forests(n).to_vec()).collect();
    for a in 0..=max {
        for x in &by_size[a] {
            t.expect_eq(|| x.to_string(), &tree::concat(&Forest::empty(), x), x);
            for b in 0..=max - a {
                for y in &by_size[b] {
                    let xy = tree::concat(x, y);
                    t.check(
                        xy == tree::concat(y, x) && xy.size() == x.size() + y.size(),
                        || format!("{x} | {y}"),
                        || (tree::concat(y, x).to_string(), xy.to_string()),
                    );
                    for z in by_size[..=max - a - b].iter().flatten() {
                        t.expect_eq(
                            || format!("{x} | {y} | {z}"),
                            &tree::concat(&xy, z),
                            &tree::concat(x, &tree::concat(y, z)),
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn structure(cfg: &SuiteConfig, _: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let mut e = Enumerator::new(alphabet(2));
    let a = Decoration::atom("a");
    for n in 1..=cfg.degree(6) {
        for tr in e.trees(n).to_vec() {
            let input = || tr.to_string();
            for v in tr.vertices() {
                t.expect_eq(input, &tr, &tr.graft_at(&v, None)?);
            }
            t.expect_eq(
                input,
                &Forest::from(&tr),
                &tr.induced_subtree(&tr.vertices())?,
            );
            t.expect_eq(input, &Forest::empty(), &tr.induced_subtree(&[])?);
            let grown = b_plus(&a, &tr.branches());
            t.check(grown.size() == tr.size(), input, || {
                (tr.size().to_string(), grown.size().to_string())
            });
        }
    }
    Ok(())
}
