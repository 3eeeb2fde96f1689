//! Exhaustive and random generation of decorated trees and forests.

use std::collections::BTreeSet;

use rand::Rng;

use crate::decoration::Decoration;
use crate::tree::{b_plus, Forest, RootedTree};

/// The first `k` atoms of `a, b, c, …`.
pub fn alphabet(k: usize) -> Vec<Decoration> {
    (0..k)
        .map(|i| Decoration::atom(&((b'a' + i as u8) as char).to_string()))
        .collect()
}

/// Trees and forests over a fixed alphabet, memoized by vertex count.
pub struct Enumerator {
    alphabet: Vec<Decoration>,
    trees: Vec<Vec<RootedTree>>,
    forests: Vec<Vec<Forest>>,
}

impl Enumerator {
    pub fn new(alphabet: Vec<Decoration>) -> Self {
        Enumerator {
            alphabet,
            trees: vec![Vec::new()],
            forests: vec![vec![Forest::empty()]],
        }
    }

    fn grow(&mut self, n: usize) {
        while self.trees.len() <= n {
            let m = self.trees.len();
            let mut trees = Vec::new();
            for f in &self.forests[m - 1] {
                for a in &self.alphabet {
                    trees.push(b_plus(a, f));
                }
            }
            trees.sort();
            self.trees.push(trees);
            // A forest of size m: its largest tree together with a forest
            // of smaller-or-equal trees.
            let mut forests = BTreeSet::new();
            for s in 1..=m {
                for t in &self.trees[s] {
                    for rest in &self.forests[m - s] {
                        if rest.trees().last().is_none_or(|u| u <= t) {
                            forests.insert(rest.push(t));
                        }
                    }
                }
            }
            self.forests.push(forests.into_iter().collect());
        }
    }

    /// All trees with exactly `n` vertices.
    pub fn trees(&mut self, n: usize) -> &[RootedTree] {
        self.grow(n);
        &self.trees[n]
    }

    /// All forests (including `∅` for `n = 0`) with exactly `n` vertices.
    pub fn forests(&mut self, n: usize) -> &[Forest] {
        self.grow(n);
        &self.forests[n]
    }

    /// `∅` followed by every tree with `1..=n` vertices.
    pub fn trees_or_empty_up_to(&mut self, n: usize) -> Vec<Forest> {
        let mut out = vec![Forest::empty()];
        for k in 1..=n {
            out.extend(self.trees(k).iter().map(Forest::from));
        }
        out
    }

    pub fn forests_up_to(&mut self, n: usize) -> Vec<Forest> {
        (0..=n).flat_map(|k| self.forests(k).to_vec()).collect()
    }
}

/// Every forest whose multiset of decorations is exactly `labels`.
pub fn forests_with_labels(labels: &[Decoration]) -> Vec<Forest> {
    let mut sorted = labels.to_vec();
    sorted.sort();
    forests_on(&sorted).into_iter().collect()
}

fn forests_on(labels: &[Decoration]) -> BTreeSet<Forest> {
    let mut out = BTreeSet::new();
    let Some((first, rest)) = labels.split_first() else {
        out.insert(Forest::empty());
        return out;
    };
    // The tree containing `first` uses `first` plus any sub-multiset of `rest`.
    let mut seen = BTreeSet::new();
    for mask in 0u64..(1 << rest.len()) {
        let (mut inside, mut outside) = (vec![first.clone()], Vec::new());
        for (i, l) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                inside.push(l.clone());
            } else {
                outside.push(l.clone());
            }
        }
        if !seen.insert(inside.clone()) {
            continue;
        }
        let others = forests_on(&outside);
        for t in trees_on(&inside) {
            for f in &others {
                out.insert(f.push(&t));
            }
        }
    }
    out
}

fn trees_on(labels: &[Decoration]) -> BTreeSet<RootedTree> {
    let mut out = BTreeSet::new();
    for i in 0..labels.len() {
        if i > 0 && labels[i] == labels[i - 1] {
            continue;
        }
        let mut rest = labels.to_vec();
        let root = rest.remove(i);
        for f in forests_on(&rest) {
            out.insert(b_plus(&root, &f));
        }
    }
    out
}

/// A random recursive tree: vertex `i` attaches to a uniform earlier vertex.
pub fn random_tree(rng: &mut impl Rng, n: usize, alphabet: &[Decoration]) -> RootedTree {
    assert!(n > 0 && !alphabet.is_empty());
    let parents: Vec<usize> = (1..n).map(|i| rng.gen_range(0..i)).collect();
    let labels: Vec<Decoration> = (0..n)
        .map(|_| alphabet[rng.gen_range(0..alphabet.len())].clone())
        .collect();
    build_from_parents(&parents, &labels, 0)
}

fn build_from_parents(parents: &[usize], labels: &[Decoration], v: usize) -> RootedTree {
    let children = (1..labels.len())
        .filter(|&w| parents[w - 1] == v)
        .map(|w| build_from_parents(parents, labels, w))
        .collect();
    RootedTree::new(labels[v].clone(), children)
}

/// A random forest with `n` vertices: the branches of a random tree of size `n + 1`.
pub fn random_forest(rng: &mut impl Rng, n: usize, alphabet: &[Decoration]) -> Forest {
    random_tree(rng, n + 1, alphabet).branches()
}

/// Relabels the vertices of `t` in preorder with `a, b, c, …`.
pub fn distinct_labels(t: &RootedTree) -> RootedTree {
    let mut next = 0usize;
    let labels = alphabet(t.size().min(26));
    t.map_decorations(&mut |_| {
        let d = labels[next % labels.len()].clone();
        next += 1;
        d
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unlabeled_counts() {
        let mut e = Enumerator::new(vec![Decoration::unit()]);
        let counts: Vec<usize> = (1..=9).map(|n| e.trees(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 9, 20, 48, 115, 286]);
        let forests: Vec<usize> = (0..=6).map(|n| e.forests(n).len()).collect();
        assert_eq!(forests, [1, 1, 2, 4, 9, 20, 48]);
    }

    #[test]
    fn two_colour_counts() {
        let mut e = Enumerator::new(alphabet(2));
        let counts: Vec<usize> = (1..=5).map(|n| e.trees(n).len()).collect();
        assert_eq!(counts, [2, 4, 14, 52, 214]);
    }

    #[test]
    fn labelled_forests() {
        // (n+1)^(n-1) labelled rooted forests on n distinct labels.
        for (n, count) in [(1, 1), (2, 3), (3, 16), (4, 125)] {
            assert_eq!(forests_with_labels(&alphabet(n)).len(), count);
        }
        let aa = vec![Decoration::atom("a"), Decoration::atom("a")];
        assert_eq!(forests_with_labels(&aa).len(), 2);
    }

    #[test]
    fn random_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..10 {
            assert_eq!(random_tree(&mut rng, n, &alphabet(3)).size(), n);
            assert_eq!(random_forest(&mut rng, n, &alphabet(3)).size(), n);
        }
    }
}
