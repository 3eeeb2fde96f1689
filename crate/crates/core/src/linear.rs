//! Exact rational free modules over forest, word and tensor bases.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::parse_forest;
use crate::tree::Forest;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Finite formal linear combination with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Q>,
}

pub type ForestComb = LinComb<Forest>;
pub type TensorComb = LinComb<(Forest, Forest)>;
pub type Tensor3Comb = LinComb<(Forest, Forest, Forest)>;
pub type Tensor4Comb = LinComb<(Forest, Forest, Forest, Forest)>;

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Q::one())
    }

    pub fn term(b: B, c: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn add_term(&mut self, b: B, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `c * other`.
    pub fn add_scaled(&mut self, other: &LinComb<B>, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect(),
        }
    }

    pub fn coefficient(&self, b: &B) -> Q {
        self.terms.get(b).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Q)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    /// Applies a basis-to-basis map and extends linearly.
    pub fn map_basis<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> C) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, x) in &self.terms {
            out.add_term(f(b), x.clone());
        }
        out
    }

    /// Applies a basis-to-combination map and extends linearly.
    pub fn flat_map<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, x) in &self.terms {
            out.add_scaled(&f(b), x);
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&B) -> bool) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(b))
                .map(|(b, x)| (b.clone(), x.clone()))
                .collect(),
        }
    }

    /// Bilinear extension of a product defined on basis pairs.
    pub fn bilinear<C: Ord + Clone, D: Ord + Clone>(
        &self,
        other: &LinComb<C>,
        mut f: impl FnMut(&B, &C) -> LinComb<D>,
    ) -> LinComb<D> {
        let mut out = LinComb::zero();
        for (b, x) in &self.terms {
            for (c, y) in &other.terms {
                out.add_scaled(&f(b, c), &(x * y));
            }
        }
        out
    }

    /// Whether every coefficient is strictly positive.
    pub fn all_positive(&self) -> bool {
        self.terms.values().all(Signed::is_positive)
    }
}

impl<B: Ord + Clone> FromIterator<(B, Q)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, Q)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<B: Ord + Clone> AddAssign<&LinComb<B>> for LinComb<B> {
    fn add_assign(&mut self, rhs: &LinComb<B>) {
        self.add_scaled(rhs, &Q::one());
    }
}

impl<B: Ord + Clone> SubAssign<&LinComb<B>> for LinComb<B> {
    fn sub_assign(&mut self, rhs: &LinComb<B>) {
        self.add_scaled(rhs, &-Q::one());
    }
}

impl<B: Ord + Clone> Add for &LinComb<B> {
    type Output = LinComb<B>;

    fn add(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<B: Ord + Clone> Sub for &LinComb<B> {
    type Output = LinComb<B>;

    fn sub(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<B: Ord + Clone> Neg for &LinComb<B> {
    type Output = LinComb<B>;

    fn neg(self) -> LinComb<B> {
        self.scale(&-Q::one())
    }
}

/// `⟨δ_b, x⟩`: the coefficient of a basis element.
pub fn coefficient_of<B: Ord + Clone>(x: &LinComb<B>, b: &B) -> Q {
    x.coefficient(b)
}

/// Bilinear pairing of two combinations in dual bases.
pub fn pairing<B: Ord + Clone>(x: &LinComb<B>, y: &LinComb<B>) -> Q {
    let mut acc = Q::zero();
    for (b, c) in x.iter() {
        if let Some(d) = y.terms.get(b) {
            acc += c * d;
        }
    }
    acc
}

pub fn lin_combine<B: Ord + Clone>(parts: &[(Q, &LinComb<B>)]) -> LinComb<B> {
    let mut out = LinComb::zero();
    for (c, x) in parts {
        out.add_scaled(x, c);
    }
    out
}

pub fn tensor<A: Ord + Clone, B: Ord + Clone>(x: &LinComb<A>, y: &LinComb<B>) -> LinComb<(A, B)> {
    x.bilinear(y, |a, b| LinComb::basis((a.clone(), b.clone())))
}

/// `a⊗b⊗c⊗d ↦ a⊗c⊗b⊗d`.
pub fn tau23<A, B, C, D>(x: &LinComb<(A, B, C, D)>) -> LinComb<(A, C, B, D)>
where
    A: Ord + Clone,
    B: Ord + Clone,
    C: Ord + Clone,
    D: Ord + Clone,
{
    x.map_basis(|(a, b, c, d)| (a.clone(), c.clone(), b.clone(), d.clone()))
}

pub fn flip<A: Ord + Clone, B: Ord + Clone>(x: &LinComb<(A, B)>) -> LinComb<(B, A)> {
    x.map_basis(|(a, b)| (b.clone(), a.clone()))
}

/// Basis elements that know how to print themselves inside a combination.
pub trait BasisDisplay {
    fn fmt_basis(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

impl BasisDisplay for Forest {
    fn fmt_basis(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<A: fmt::Display, B: fmt::Display> BasisDisplay for (A, B) {
    fn fmt_basis(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) (x) ({})", self.0, self.1)
    }
}

impl<A: fmt::Display, B: fmt::Display, C: fmt::Display> BasisDisplay for (A, B, C) {
    fn fmt_basis(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) (x) ({}) (x) ({})", self.0, self.1, self.2)
    }
}

impl<A: fmt::Display, B: fmt::Display, C: fmt::Display, D: fmt::Display> BasisDisplay
    for (A, B, C, D)
{
    fn fmt_basis(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) (x) ({}) (x) ({}) (x) ({})",
            self.0, self.1, self.2, self.3
        )
    }
}

impl<B: Ord + BasisDisplay> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("- ")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            write!(f, "{} ", c.abs())?;
            b.fmt_basis(f)?;
        }
        Ok(())
    }
}

impl<B: Ord + BasisDisplay> fmt::Debug for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct ForestTermJson {
    coeff: String,
    forest: String,
}

#[derive(Serialize, Deserialize)]
struct TensorTermJson {
    coeff: String,
    left: String,
    right: String,
}

#[derive(Serialize, Deserialize)]
struct TermsJson<T> {
    terms: Vec<T>,
}

fn rational_json(c: &Q) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

impl ForestComb {
    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .iter()
            .map(|(f, c)| ForestTermJson {
                coeff: rational_json(c),
                forest: f.to_string(),
            })
            .collect();
        serde_json::to_value(TermsJson { terms }).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parsed: TermsJson<ForestTermJson> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Json(e.to_string()))?;
        let mut out = LinComb::zero();
        for t in parsed.terms {
            out.add_term(parse_forest(&t.forest)?, parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

impl TensorComb {
    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .iter()
            .map(|((l, r), c)| TensorTermJson {
                coeff: rational_json(c),
                left: l.to_string(),
                right: r.to_string(),
            })
            .collect();
        serde_json::to_value(TermsJson { terms }).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parsed: TermsJson<TensorTermJson> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Json(e.to_string()))?;
        let mut out = LinComb::zero();
        for t in parsed.terms {
            out.add_term(
                (parse_forest(&t.left)?, parse_forest(&t.right)?),
                parse_rational(&t.coeff)?,
            );
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(s: &str) -> Forest {
        parse_forest(s).unwrap()
    }

    #[test]
    fn coefficient_extraction() {
        let x: ForestComb = [(f("a"), qi(2)), (f("b"), qi(3))].into_iter().collect();
        assert_eq!(coefficient_of(&x, &f("a")), qi(2));
        assert_eq!(coefficient_of(&x, &f("c")), qi(0));
    }

    #[test]
    fn delta_pairing_is_kronecker() {
        let a = ForestComb::basis(f("a[b]"));
        assert_eq!(pairing(&a, &ForestComb::basis(f("a[b]"))), qi(1));
        assert_eq!(pairing(&a, &ForestComb::basis(f("b[a]"))), qi(0));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut x = ForestComb::basis(f("a"));
        x.add_term(f("a"), qi(-1));
        assert!(x.is_zero());
        assert_eq!(x.to_string(), "0");
    }

    #[test]
    fn tau23_swaps_middle_legs() {
        let x = LinComb::basis((f("a"), f("b"), f("c"), f("d")));
        let y = tau23(&x);
        assert_eq!(y, LinComb::basis((f("a"), f("c"), f("b"), f("d"))));
    }

    #[test]
    fn text_format() {
        let x: ForestComb = [(f("a b"), q(1, 2)), (f("c"), q(-3, 1))]
            .into_iter()
            .collect();
        assert_eq!(x.to_string(), "1/2 a b - 3 c");
        let y = LinComb::term((f("a"), Forest::empty()), q(-1, 2));
        assert_eq!(y.to_string(), "- 1/2 (a) (x) (())");
    }

    #[test]
    fn json_shapes() {
        let y: TensorComb = LinComb::term((f("a"), f("b c")), q(2, 3));
        let v = y.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"terms":[{"coeff":"2/3","left":"a","right":"b c"}]}"#
        );
        assert_eq!(TensorComb::from_json(&v).unwrap(), y);
        let x: ForestComb = LinComb::term(f("a[b]"), qi(1));
        assert_eq!(
            x.to_json().to_string(),
            r#"{"terms":[{"coeff":"1/1","forest":"a[b]"}]}"#
        );
    }

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("2/3").unwrap(), q(2, 3));
        assert_eq!(parse_rational("-1").unwrap(), qi(-1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    proptest! {
        #[test]
        fn json_round_trip(coeffs in proptest::collection::vec((-20i64..20, 1i64..7), 0..5)) {
            let names = ["a", "b[c]", "a b", "()", "c[a,b]"];
            let x: ForestComb = coeffs
                .iter()
                .enumerate()
                .map(|(i, (n, d))| (f(names[i % names.len()]), q(*n, *d)))
                .collect();
            prop_assert_eq!(ForestComb::from_json(&x.to_json()).unwrap(), x);
        }
    }
}
