//! Rota-Baxter algebras of weight λ: words with the first-letter product,
//! forests under `◇_λ` with `B₊^1`, and the induced map `φ̄` between them.

use crate::decoration::Decoration;
use crate::error::{Error, Result};
use crate::linear::{BasisDisplay, ForestComb, LinComb, Q};
use crate::shuffle::{b_plus_lin, diamond_lin};
use crate::tree::{b_plus, Forest, RootedTree};
use crate::word::{word_shuffle, Word, WordComb};

/// A carrier with a bilinear product and a linear operator.
pub trait RbAlgebra {
    type Basis: Ord + Clone + BasisDisplay;

    fn name(&self) -> String;
    fn weight(&self) -> &Q;
    fn product(
        &self,
        x: &LinComb<Self::Basis>,
        y: &LinComb<Self::Basis>,
    ) -> Result<LinComb<Self::Basis>>;
    fn operator(&self, x: &LinComb<Self::Basis>) -> LinComb<Self::Basis>;

    /// `P(x)P(y) − P(xP(y)) − P(P(x)y) − λP(xy)`.
    fn residual(
        &self,
        x: &LinComb<Self::Basis>,
        y: &LinComb<Self::Basis>,
    ) -> Result<LinComb<Self::Basis>> {
        let (px, py) = (self.operator(x), self.operator(y));
        let mut r = self.product(&px, &py)?;
        r -= &self.operator(&self.product(x, &py)?);
        r -= &self.operator(&self.product(&px, y)?);
        r -= &self.operator(&self.product(x, y)?).scale(self.weight());
        Ok(r)
    }
}

/// `P(w) = (1) ⊔ w`.
pub fn word_p(w: &Word) -> Word {
    w.prepend(&Decoration::unit())
}

/// `w ◇_λ w′ = (w₀ · w′₀) ⊔ (w̃ ⧢_λ w̃′)` on nonempty words.
pub fn word_diamond(w: &Word, v: &Word, lambda: &Q) -> Result<WordComb> {
    let (Some((a, wt)), Some((b, vt))) = (w.letters().split_first(), v.letters().split_first())
    else {
        return Err(Error::EmptyOperand("word diamond product"));
    };
    let head = a * b;
    Ok(
        word_shuffle(&Word(wt.to_vec()), &Word(vt.to_vec()), lambda)
            .map_basis(|x| x.prepend(&head)),
    )
}

pub fn word_diamond_lin(x: &WordComb, y: &WordComb, lambda: &Q) -> Result<WordComb> {
    let mut out = WordComb::zero();
    for (w, a) in x.iter() {
        for (v, b) in y.iter() {
            out.add_scaled(&word_diamond(w, v, lambda)?, &(a * b));
        }
    }
    Ok(out)
}

/// `B₊^1`.
pub fn forest_rb_operator(f: &Forest) -> RootedTree {
    b_plus(&Decoration::unit(), f)
}

#[derive(Clone, Debug)]
pub struct WordRba {
    pub lambda: Q,
}

impl RbAlgebra for WordRba {
    type Basis = Word;

    fn name(&self) -> String {
        format!("words, lambda={}", self.lambda)
    }

    fn weight(&self) -> &Q {
        &self.lambda
    }

    fn product(&self, x: &WordComb, y: &WordComb) -> Result<WordComb> {
        word_diamond_lin(x, y, &self.lambda)
    }

    fn operator(&self, x: &WordComb) -> WordComb {
        x.map_basis(word_p)
    }
}

/// Nonempty forests under `◇_λ`; the operator grafts onto a new root with
/// decoration `root`, which is the unit for the genuine algebra.
#[derive(Clone, Debug)]
pub struct ForestRba {
    pub lambda: Q,
    pub root: Decoration,
}

impl ForestRba {
    pub fn new(lambda: Q) -> Self {
        ForestRba {
            lambda,
            root: Decoration::unit(),
        }
    }
}

impl RbAlgebra for ForestRba {
    type Basis = Forest;

    fn name(&self) -> String {
        format!("forests, root={}, lambda={}", self.root, self.lambda)
    }

    fn weight(&self) -> &Q {
        &self.lambda
    }

    fn product(&self, x: &ForestComb, y: &ForestComb) -> Result<ForestComb> {
        diamond_lin(x, y, &self.lambda)
    }

    fn operator(&self, x: &ForestComb) -> ForestComb {
        b_plus_lin(&self.root, x)
    }
}

#[derive(Clone, Debug)]
pub struct RbCase {
    pub x: String,
    pub y: String,
    pub residual: String,
    pub passed: bool,
}

pub type SamplePair<A> = (
    LinComb<<A as RbAlgebra>::Basis>,
    LinComb<<A as RbAlgebra>::Basis>,
);

/// Evaluates the Rota-Baxter identity on every sample pair.
pub fn rb_verify<A: RbAlgebra>(alg: &A, samples: &[SamplePair<A>]) -> Result<Vec<RbCase>> {
    samples
        .iter()
        .map(|(x, y)| {
            let r = alg.residual(x, y)?;
            Ok(RbCase {
                x: x.to_string(),
                y: y.to_string(),
                passed: r.is_zero(),
                residual: r.to_string(),
            })
        })
        .collect()
}

/// `φ(a)`: the one-letter word.
pub fn phi(a: &Decoration) -> Word {
    Word(vec![a.clone()])
}

/// `φ̄` into the word algebra, induced by `φ`.
pub fn phi_bar(f: &Forest, lambda: &Q) -> Result<WordComb> {
    let mut trees = f.trees().iter();
    let first = trees.next().ok_or(Error::EmptyOperand("phi_bar"))?;
    let mut acc = phi_bar_tree(first, lambda)?;
    for t in trees {
        acc = word_diamond_lin(&acc, &phi_bar_tree(t, lambda)?, lambda)?;
    }
    Ok(acc)
}

fn phi_bar_tree(t: &RootedTree, lambda: &Q) -> Result<WordComb> {
    let head = WordComb::basis(phi(t.decoration()));
    if t.is_leaf() {
        return Ok(head);
    }
    let inner = phi_bar(&t.branches(), lambda)?.map_basis(word_p);
    word_diamond_lin(&head, &inner, lambda)
}

pub fn phi_bar_lin(x: &ForestComb, lambda: &Q) -> Result<WordComb> {
    let mut out = WordComb::zero();
    for (f, c) in x.iter() {
        out.add_scaled(&phi_bar(f, lambda)?, c);
    }
    Ok(out)
}
