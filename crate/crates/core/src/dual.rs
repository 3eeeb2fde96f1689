//! The coproduct `Δ*` dual to the 0-shuffle, in three independent forms.
//!
//! * [`dual_recursive`] follows the recursive description on forests and on
//!   trees `B₊^a(F)`.
//! * [`dual_combinatorial`] sums over admissible families.
//! * [`dual_oracle`] reads coefficients straight off the shuffle:
//!   `Σ ⟨F, f₁ ⧢₀ f₂⟩ f₁ ⊗ f₂`.
//!
//! The first two share one normalization; the oracle carries the strict
//! duality one, and [`DualWeights::Inverse`] tests the conjectured link.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};

use crate::admissible::admissible_families;
use crate::decoration::Decoration;
use crate::enumerate::forests_with_labels;
use crate::error::{Error, Result};
use crate::linear::{tensor, ForestComb, TensorComb, Q};
use crate::tree::{b_plus, Forest, RootedTree, VertexMask};

pub const ORACLE_MAX_VERTICES: usize = 8;
pub const EXHAUSTIVE_ORACLE_MAX_VERTICES: usize = 6;

thread_local! {
    static DUAL_MEMO: RefCell<HashMap<Forest, TensorComb>> = RefCell::new(HashMap::new());
    static PAIRING_MEMO: RefCell<HashMap<(Forest, Forest, Forest), Q>> = RefCell::new(HashMap::new());
}

pub fn clear_caches() {
    DUAL_MEMO.with(|m| m.borrow_mut().clear());
    PAIRING_MEMO.with(|m| m.borrow_mut().clear());
}

fn qn(n: usize) -> Q {
    Q::from_integer((n as i64).into())
}

/// `α_{I,n} = (|I| + 1)(n − |I|)`.
pub fn alpha(i: usize, n: usize) -> Q {
    qn((i + 1) * (n - i))
}

fn trivial_terms(f: &Forest) -> TensorComb {
    let mut out = TensorComb::basis((f.clone(), Forest::empty()));
    out.add_term((Forest::empty(), f.clone()), Q::one());
    out
}

/// `Σ_{I ⊆ rest} w(|I|) F_I ⊗ F_{rest∖I}` for the forest `rest` of the
/// other `n − 1` trees.
fn weighted_splits(rest: &Forest, n: usize, weight: &impl Fn(usize, usize) -> Q) -> TensorComb {
    let mut out = TensorComb::zero();
    for mask in 0u64..(1 << rest.len()) {
        let left = rest.select(mask);
        let right = rest.select(!mask);
        out.add_term((left, right), weight(mask.count_ones() as usize, n));
    }
    out
}

/// `F ⊗ ∅ + ∅ ⊗ F + Σ_i (⊔⊗⊔) τ₂₃ (Δ̃(T_i) ⊗ Σ_I w F_I ⊗ F_{[n]_i∖I})`.
fn forest_formula(
    f: &Forest,
    reduced_tree: impl Fn(&RootedTree) -> TensorComb,
    weight: impl Fn(usize, usize) -> Q,
) -> TensorComb {
    let n = f.len();
    let mut out = trivial_terms(f);
    for (i, t) in f.trees().iter().enumerate() {
        let red = reduced_tree(t);
        if red.is_zero() {
            continue;
        }
        let splits = weighted_splits(&f.without(i), n, &weight);
        let product = tensor(&red, &splits);
        out += &product.map_basis(|((x, y), (l, r))| (x.concat(l), y.concat(r)));
    }
    out
}

/// Keeps terms whose selected leg is `∅` or a tree.
fn project(x: &TensorComb, left: bool) -> TensorComb {
    x.filter(|(l, r)| {
        if left {
            l.is_tree_or_empty()
        } else {
            r.is_tree_or_empty()
        }
    })
}

/// The recursive form of `Δ*`.
pub fn dual_recursive(f: &Forest) -> TensorComb {
    if f.is_empty() {
        return TensorComb::basis((Forest::empty(), Forest::empty()));
    }
    if let Some(hit) = DUAL_MEMO.with(|m| m.borrow().get(f).cloned()) {
        return hit;
    }
    let value = match f.as_tree() {
        Some(t) => {
            let inner = dual_recursive(&t.branches());
            let a = t.decoration();
            let mut out =
                project(&inner, false).map_basis(|(l, r)| (Forest::from(b_plus(a, l)), r.clone()));
            out +=
                &project(&inner, true).map_basis(|(l, r)| (l.clone(), Forest::from(b_plus(a, r))));
            out
        }
        None => forest_formula(f, |t| reduced_dual(&Forest::from(t)), alpha),
    };
    DUAL_MEMO.with(|m| m.borrow_mut().insert(f.clone(), value.clone()));
    value
}

/// `Δ*(F) − F ⊗ ∅ − ∅ ⊗ F`.
pub fn reduced_dual(f: &Forest) -> TensorComb {
    if f.is_empty() {
        return TensorComb::zero();
    }
    &dual_recursive(f) - &trivial_terms(f)
}

/// Coefficient conventions for the combinatorial form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualWeights {
    /// `c_Γ` and `α_{I,n}` as they stand.
    Paper,
    /// `1/c_Γ` and `1/α_{I,n}`.
    Inverse,
}

/// `Σ c_Γ T_{V∖Γ} ⊗ T_Γ` over proper nonempty admissible families.
fn reduced_tree_combinatorial(t: &RootedTree, weights: DualWeights) -> Result<TensorComb> {
    let mut out = TensorComb::zero();
    for fam in admissible_families(t)? {
        if fam.is_trivial() {
            continue;
        }
        let c = match weights {
            DualWeights::Paper => fam.c_gamma.clone(),
            DualWeights::Inverse => fam.c_gamma.recip(),
        };
        out.add_term((fam.t_complement, fam.t_gamma), c);
    }
    Ok(out)
}

/// The admissible-family form of `Δ*`.
pub fn dual_combinatorial(f: &Forest) -> Result<TensorComb> {
    dual_combinatorial_weighted(f, DualWeights::Paper)
}

pub fn dual_combinatorial_weighted(f: &Forest, weights: DualWeights) -> Result<TensorComb> {
    if f.is_empty() {
        return Ok(TensorComb::basis((Forest::empty(), Forest::empty())));
    }
    if let Some(t) = f.as_tree() {
        let mut out = reduced_tree_combinatorial(t, weights)?;
        out += &trivial_terms(f);
        return Ok(out);
    }
    let reduced: Vec<TensorComb> = f
        .trees()
        .iter()
        .map(|t| reduced_tree_combinatorial(t, weights))
        .collect::<Result<_>>()?;
    let weight = |i: usize, n: usize| match weights {
        DualWeights::Paper => alpha(i, n),
        DualWeights::Inverse => alpha(i, n).recip(),
    };
    let lookup = |t: &RootedTree| {
        let i = f.trees().iter().position(|u| u == t).expect("tree of f");
        reduced[i].clone()
    };
    Ok(forest_formula(f, lookup, weight))
}

/// `⟨F, f ⧢₀ g⟩`: the coefficient of `target` in the 0-shuffle of `f` and `g`,
/// computed by following only the branches of the shuffle recursion that can
/// still produce `target`.
pub fn shuffle_pairing(target: &Forest, f: &Forest, g: &Forest) -> Q {
    if f.is_empty() {
        return if target == g { Q::one() } else { Q::zero() };
    }
    if g.is_empty() {
        return if target == f { Q::one() } else { Q::zero() };
    }
    // Each term of f ⧢ g has |f| + |g| vertices and k + n − 1 components.
    if target.size() != f.size() + g.size() || target.len() + 1 != f.len() + g.len() {
        return Q::zero();
    }
    let key = (target.clone(), f.clone(), g.clone());
    if let Some(hit) = PAIRING_MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    let value = if let (Some(t), Some(u)) = (f.as_tree(), g.as_tree()) {
        let r = target.as_tree().expect("component count forces a tree");
        let h = r.branches();
        let mut acc = Q::zero();
        if r.decoration() == t.decoration() {
            acc += shuffle_pairing(&h, &t.branches(), g);
        }
        if r.decoration() == u.decoration() {
            acc += shuffle_pairing(&h, f, &u.branches());
        }
        acc
    } else {
        let mut acc = Q::zero();
        for (i, ti) in f.trees().iter().enumerate() {
            let rest_f = f.without(i);
            for (j, tj) in g.trees().iter().enumerate() {
                let rest = rest_f.concat(&g.without(j));
                if let Some(r) = target.difference(&rest) {
                    if r.len() == 1 {
                        acc += shuffle_pairing(&r, &Forest::from(ti), &Forest::from(tj));
                    }
                }
            }
        }
        acc / qn(f.len() * g.len())
    };
    PAIRING_MEMO.with(|m| m.borrow_mut().insert(key, value.clone()));
    value
}

/// The forest induced on the vertices of `f` selected by `mask`; bit `i`
/// is the `i`-th vertex of `f` in preorder.
fn induced_in_forest(layout: &crate::tree::Layout, mask: VertexMask) -> Forest {
    layout.induced(mask << 1)
}

/// `Σ ⟨F, f₁ ⧢₀ f₂⟩ f₁ ⊗ f₂`.
///
/// Every term `F` of `f₁ ⧢₀ f₂` restricts to `f₁` and `f₂` on the two vertex
/// classes it inherits, so the candidate pairs are `(F_S, F_{V∖S})`.
pub fn dual_oracle(f: &Forest) -> Result<TensorComb> {
    let n = f.size();
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::GuardExceeded {
            what: "vertices for the duality oracle",
            limit: ORACLE_MAX_VERTICES,
            got: n,
        });
    }
    let host = b_plus(&Decoration::unit(), f).layout();
    let full: VertexMask = (1 << n) - 1;
    let mut candidates = BTreeSet::new();
    for mask in 0..=full {
        candidates.insert((
            induced_in_forest(&host, mask),
            induced_in_forest(&host, full & !mask),
        ));
    }
    Ok(pair_candidates(f, candidates))
}

fn pair_candidates(f: &Forest, candidates: BTreeSet<(Forest, Forest)>) -> TensorComb {
    candidates
        .into_iter()
        .map(|(l, r)| {
            let c = shuffle_pairing(f, &l, &r);
            ((l, r), c)
        })
        .collect()
}

/// The oracle over every pair of forests on complementary decoration
/// multisets, without the restriction argument.
pub fn dual_oracle_exhaustive(f: &Forest) -> Result<TensorComb> {
    let n = f.size();
    if n > EXHAUSTIVE_ORACLE_MAX_VERTICES {
        return Err(Error::GuardExceeded {
            what: "vertices for the exhaustive duality oracle",
            limit: EXHAUSTIVE_ORACLE_MAX_VERTICES,
            got: n,
        });
    }
    let labels = f.decoration_multiset();
    let mut splits = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let (l, r): (Vec<_>, Vec<_>) = labels
            .iter()
            .enumerate()
            .partition(|(i, _)| mask >> i & 1 == 1);
        let strip = |v: Vec<(usize, &Decoration)>| {
            v.into_iter().map(|(_, d)| d.clone()).collect::<Vec<_>>()
        };
        splits.insert((strip(l), strip(r)));
    }
    let mut candidates = BTreeSet::new();
    for (l, r) in splits {
        let rights = forests_with_labels(&r);
        for x in forests_with_labels(&l) {
            for y in &rights {
                candidates.insert((x.clone(), y.clone()));
            }
        }
    }
    Ok(pair_candidates(f, candidates))
}

/// Drops the `F ⊗ ∅` and `∅ ⊗ F` terms.
pub fn reduced_part(f: &Forest, x: &TensorComb) -> TensorComb {
    x.filter(|(l, r)| !((l == f && r.is_empty()) || (l.is_empty() && r == f)))
}

/// `ForestComb` view of the support of a tensor for reporting.
pub fn support_set(x: &TensorComb) -> BTreeSet<(Forest, Forest)> {
    x.support().cloned().collect()
}

pub fn left_legs(x: &TensorComb) -> ForestComb {
    x.map_basis(|(l, _)| l.clone())
}
