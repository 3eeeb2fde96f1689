//! Vertex decorations: monomials in the free commutative monoid on atom symbols.

use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

/// An element of the free commutative monoid on atoms, stored as a sorted
/// multiset. The empty multiset is the unit and renders as `1`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decoration {
    atoms: Vec<Arc<str>>,
}

impl Decoration {
    pub fn unit() -> Self {
        Decoration { atoms: Vec::new() }
    }

    /// Single-atom decoration. The atom `1` is the unit.
    pub fn atom(name: &str) -> Self {
        if name == "1" {
            return Decoration::unit();
        }
        Decoration {
            atoms: vec![Arc::from(name)],
        }
    }

    pub fn from_atoms<I, S>(atoms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut atoms: Vec<Arc<str>> = atoms
            .into_iter()
            .filter(|a| a.as_ref() != "1")
            .map(|a| Arc::from(a.as_ref()))
            .collect();
        atoms.sort();
        Decoration { atoms }
    }

    pub fn is_unit(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.atoms.iter().map(|a| &**a)
    }

    /// Number of atoms counted with multiplicity.
    pub fn degree(&self) -> usize {
        self.atoms.len()
    }

    /// Monoid product: multiset union.
    pub fn product(&self, other: &Decoration) -> Decoration {
        let mut atoms = Vec::with_capacity(self.atoms.len() + other.atoms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.atoms.len() && j < other.atoms.len() {
            if self.atoms[i] <= other.atoms[j] {
                atoms.push(self.atoms[i].clone());
                i += 1;
            } else {
                atoms.push(other.atoms[j].clone());
                j += 1;
            }
        }
        atoms.extend_from_slice(&self.atoms[i..]);
        atoms.extend_from_slice(&other.atoms[j..]);
        Decoration { atoms }
    }
}

impl Mul for &Decoration {
    type Output = Decoration;

    fn mul(self, rhs: &Decoration) -> Decoration {
        self.product(rhs)
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("1");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(a)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dec() -> impl Strategy<Value = Decoration> {
        proptest::collection::vec(prop_oneof!["a", "b", "c", "x1"], 0..4)
            .prop_map(Decoration::from_atoms)
    }

    #[test]
    fn unit_renders_as_one() {
        assert_eq!(Decoration::unit().to_string(), "1");
        assert_eq!(Decoration::atom("1"), Decoration::unit());
    }

    #[test]
    fn composite_rendering_is_sorted() {
        let d = Decoration::from_atoms(["c", "a", "b", "a"]);
        assert_eq!(d.to_string(), "a*a*b*c");
        assert_eq!(d.degree(), 4);
    }

    proptest! {
        #[test]
        fn product_is_commutative(x in dec(), y in dec()) {
            prop_assert_eq!(&x * &y, &y * &x);
        }

        #[test]
        fn product_is_associative(x in dec(), y in dec(), z in dec()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        }

        #[test]
        fn unit_is_neutral(x in dec()) {
            prop_assert_eq!(&x * &Decoration::unit(), x.clone());
            prop_assert_eq!(&Decoration::unit() * &x, x);
        }
    }
}
