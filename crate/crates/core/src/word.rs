//! Words over decorations and their λ-shuffle.

use std::fmt;

use crate::decoration::Decoration;
use crate::linear::{BasisDisplay, LinComb, Q};
use crate::tree::{Forest, RootedTree};

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Decoration>);

pub type WordComb = LinComb<Word>;

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_atoms(atoms: &[&str]) -> Self {
        Word(atoms.iter().map(|a| Decoration::atom(a)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Decoration] {
        &self.0
    }

    /// `a ⊔ w`.
    pub fn prepend(&self, a: &Decoration) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(a.clone());
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    fn split_first(&self) -> Option<(&Decoration, Word)> {
        self.0
            .split_first()
            .map(|(a, rest)| (a, Word(rest.to_vec())))
    }

    /// The linear tree whose root carries the first letter.
    pub fn to_linear_tree(&self) -> Forest {
        let mut acc = Forest::empty();
        for a in self.0.iter().rev() {
            acc = RootedTree::new(a.clone(), acc.into_trees()).into();
        }
        acc
    }

    /// Inverse of [`Word::to_linear_tree`]; `None` on non-linear forests.
    pub fn from_linear_forest(f: &Forest) -> Option<Word> {
        let mut letters = Vec::new();
        let mut cur = match f.trees() {
            [] => return Some(Word::empty()),
            [t] => t.clone(),
            _ => return None,
        };
        loop {
            letters.push(cur.decoration().clone());
            cur = match cur.children() {
                [] => return Some(Word(letters)),
                [c] => c.clone(),
                _ => return None,
            };
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl BasisDisplay for Word {
    fn fmt_basis(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The λ-shuffle of two words.
pub fn word_shuffle(w: &Word, v: &Word, lambda: &Q) -> WordComb {
    let (Some((a, w_tail)), Some((b, v_tail))) = (w.split_first(), v.split_first()) else {
        return WordComb::basis(if w.is_empty() { v.clone() } else { w.clone() });
    };
    let mut out = word_shuffle(&w_tail, v, lambda).map_basis(|x| x.prepend(a));
    out += &word_shuffle(w, &v_tail, lambda).map_basis(|x| x.prepend(b));
    if !num_traits::Zero::is_zero(lambda) {
        let ab = a * b;
        out.add_scaled(
            &word_shuffle(&w_tail, &v_tail, lambda).map_basis(|x| x.prepend(&ab)),
            lambda,
        );
    }
    out
}

pub fn word_shuffle_lin(x: &WordComb, y: &WordComb, lambda: &Q) -> WordComb {
    x.bilinear(y, |w, v| word_shuffle(w, v, lambda))
}

/// `Σ w[..i] ⊗ w[i..]`.
pub fn deconcatenation(w: &Word) -> LinComb<(Word, Word)> {
    (0..=w.len())
        .map(|i| {
            (
                (Word(w.0[..i].to_vec()), Word(w.0[i..].to_vec())),
                Q::from_integer(1.into()),
            )
        })
        .collect()
}

/// The coproduct dual to the 0-shuffle: `Σ_S w_S ⊗ w_{S^c}`.
pub fn deshuffle(w: &Word) -> LinComb<(Word, Word)> {
    let n = w.len();
    let mut out = LinComb::zero();
    for mask in 0u64..(1 << n) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (i, a) in w.0.iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.push(a.clone());
            } else {
                right.push(a.clone());
            }
        }
        out.add_term((Word(left), Word(right)), Q::from_integer(1.into()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{q, qi};

    fn w(s: &str) -> Word {
        Word(s.split_whitespace().map(Decoration::atom).collect())
    }

    #[test]
    fn empty_word_is_unit() {
        assert_eq!(
            word_shuffle(&Word::empty(), &w("a b"), &qi(3)),
            WordComb::basis(w("a b"))
        );
        assert_eq!(
            word_shuffle(&w("a b"), &Word::empty(), &qi(3)),
            WordComb::basis(w("a b"))
        );
    }

    /// Interleavings enumerated by choosing the positions of the first word.
    fn interleavings(x: &Word, y: &Word) -> WordComb {
        let n = x.len() + y.len();
        let mut out = WordComb::zero();
        for mask in 0u64..(1 << n) {
            if mask.count_ones() as usize != x.len() {
                continue;
            }
            let (mut i, mut j) = (0, 0);
            let mut letters = Vec::new();
            for p in 0..n {
                if mask >> p & 1 == 1 {
                    letters.push(x.0[i].clone());
                    i += 1;
                } else {
                    letters.push(y.0[j].clone());
                    j += 1;
                }
            }
            out.add_term(Word(letters), qi(1));
        }
        out
    }

    #[test]
    fn zero_shuffle_matches_interleavings() {
        assert_eq!(
            word_shuffle(&w("a b"), &w("c"), &qi(0)),
            interleavings(&w("a b"), &w("c"))
        );
        let expected: WordComb = [
            (w("a b c"), qi(1)),
            (w("a c b"), qi(1)),
            (w("c a b"), qi(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(word_shuffle(&w("a b"), &w("c"), &qi(0)), expected);
        for (x, y) in [("a b", "a b"), ("a a b", "b c"), ("x", "y z w")] {
            assert_eq!(
                word_shuffle(&w(x), &w(y), &qi(0)),
                interleavings(&w(x), &w(y))
            );
        }
    }

    #[test]
    fn one_letter_quasi_shuffle() {
        let lambda = q(2, 3);
        let got = word_shuffle(&w("a"), &w("b"), &lambda);
        let ab = Word(vec![Decoration::from_atoms(["a", "b"])]);
        let expected: WordComb = [(w("a b"), qi(1)), (w("b a"), qi(1)), (ab, lambda)]
            .into_iter()
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn linear_tree_round_trip() {
        let word = w("a b c");
        let tree = word.to_linear_tree();
        assert_eq!(tree.to_string(), "a[b[c]]");
        assert_eq!(Word::from_linear_forest(&tree), Some(word));
        assert_eq!(
            Word::from_linear_forest(&Forest::empty()),
            Some(Word::empty())
        );
    }

    #[test]
    fn deconcatenation_and_deshuffle_sizes() {
        assert_eq!(deconcatenation(&w("a b c")).len(), 4);
        let d = deshuffle(&w("a b"));
        assert_eq!(d.len(), 4);
        assert_eq!(deshuffle(&w("a a")).coefficient(&(w("a"), w("a"))), qi(2));
    }
}
