//! Admissible vertex families of a rooted tree and their contracted fertility.

use num_traits::One;
use serde::Serialize;

use crate::decoration::Decoration;
use crate::error::{Error, Result};
use crate::linear::Q;
use crate::tree::{Forest, Layout, RootedTree, VertexMask, VertexRef, MAX_MASK_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleFamily {
    pub gamma: Vec<VertexRef>,
    pub t_gamma: Forest,
    pub t_complement: Forest,
    pub c_gamma: Q,
    pub(crate) mask: VertexMask,
}

#[derive(Serialize)]
struct FamilyJson {
    gamma: Vec<String>,
    t_gamma: String,
    t_complement: String,
    c_gamma: String,
}

impl AdmissibleFamily {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(FamilyJson {
            gamma: self.gamma.iter().map(ToString::to_string).collect(),
            t_gamma: self.t_gamma.to_string(),
            t_complement: self.t_complement.to_string(),
            c_gamma: format!("{}/{}", self.c_gamma.numer(), self.c_gamma.denom()),
        })
        .expect("family JSON is always serializable")
    }

    /// `Γ = ∅` or `Γ = V(T)`.
    pub fn is_trivial(&self) -> bool {
        self.t_gamma.is_empty() || self.t_complement.is_empty()
    }
}

fn check_size(t: &RootedTree) -> Result<()> {
    if t.size() > MAX_MASK_VERTICES {
        return Err(Error::GuardExceeded {
            what: "vertices for subset enumeration",
            limit: MAX_MASK_VERTICES,
            got: t.size(),
        });
    }
    Ok(())
}

/// All admissible families of `t`, with `c_Γ` from the inductive description.
///
/// Output is sorted by vertex mask in canonical preorder, so `∅` comes first.
pub fn admissible_families(t: &RootedTree) -> Result<Vec<AdmissibleFamily>> {
    check_size(t)?;
    let layout = t.layout();
    let mut raw = inductive(&layout, 0);
    raw.sort_by_key(|(mask, _)| *mask);
    Ok(raw
        .into_iter()
        .map(|(mask, c)| family(&layout, mask, Q::from_integer(c.into())))
        .collect())
}

fn family(layout: &Layout, mask: VertexMask, c_gamma: Q) -> AdmissibleFamily {
    AdmissibleFamily {
        gamma: layout.refs(mask),
        t_gamma: layout.induced(mask),
        t_complement: layout.induced(layout.full() & !mask),
        c_gamma,
        mask,
    }
}

/// Families of the subtree at `v` as `(mask, c)` pairs.
fn inductive(layout: &Layout, v: usize) -> Vec<(VertexMask, u64)> {
    let me: VertexMask = 1 << v;
    let all = layout.below[v];
    match layout.children[v].as_slice() {
        [] => vec![(0, 1), (me, 1)],
        &[child] => inductive(layout, child)
            .into_iter()
            .flat_map(|(g, c)| [(g, c), (g | me, c)])
            .collect(),
        children => {
            let n = children.len() as u64;
            let mut out = vec![(0, 1), (all, 1)];
            for &child in children {
                let child_all = layout.below[child];
                let others = all & !me & !child_all;
                for (g, c) in inductive(layout, child) {
                    if g != 0 && g != child_all {
                        out.push((g, n * c));
                        out.push((me | g | others, n * c));
                    }
                }
            }
            out
        }
    }
}

/// Number of maximal `mask` vertices strictly below `v`.
fn induced_fertility(layout: &Layout, v: usize, mask: VertexMask) -> usize {
    layout.children[v]
        .iter()
        .map(|&c| {
            if mask >> c & 1 == 1 {
                1
            } else {
                induced_fertility(layout, c, mask)
            }
        })
        .sum()
}

/// Direct check of the admissibility conditions for `gamma ⊆ V(t)`.
pub fn is_admissible(t: &RootedTree, gamma: &[VertexRef]) -> Result<bool> {
    check_size(t)?;
    let layout = t.layout();
    let mask = t.mask_of(gamma)?;
    Ok(is_admissible_mask(&layout, mask))
}

pub(crate) fn is_admissible_mask(layout: &Layout, mask: VertexMask) -> bool {
    let full = layout.full();
    let sides = [mask, full & !mask];
    if !sides.iter().all(|&s| layout.induced(s).is_tree_or_empty()) {
        return false;
    }
    (0..layout.len()).all(|v| {
        let fert = layout.children[v].len();
        let side = if mask >> v & 1 == 1 {
            sides[0]
        } else {
            sides[1]
        };
        fert < 2 || induced_fertility(layout, v, side) == fert
    })
}

/// Every admissible family found by testing all vertex subsets.
pub fn admissible_families_direct(t: &RootedTree) -> Result<Vec<AdmissibleFamily>> {
    check_size(t)?;
    let layout = t.layout();
    let mut out = Vec::new();
    for mask in 0..=layout.full() {
        if is_admissible_mask(&layout, mask) {
            let (_, c) = contraction_mask(&layout, mask);
            out.push(family(&layout, mask, c));
        }
    }
    Ok(out)
}

/// The contraction of `t` relative to `gamma` as an undecorated tree, and the
/// product of the fertilities of its internal vertices.
pub fn contraction_fertility(t: &RootedTree, gamma: &[VertexRef]) -> Result<(RootedTree, Q)> {
    check_size(t)?;
    let layout = t.layout();
    let mask = t.mask_of(gamma)?;
    Ok(contraction_mask(&layout, mask))
}

fn contraction_mask(layout: &Layout, mask: VertexMask) -> (RootedTree, Q) {
    // A vertex is contracted together with its descendants when they all lie
    // on the same side of the partition.
    let pure = |v: usize| {
        let below = layout.below[v];
        below & mask == below || below & mask == 0
    };
    fn build(layout: &Layout, v: usize, pure: &dyn Fn(usize) -> bool, c: &mut u64) -> RootedTree {
        if pure(v) {
            return RootedTree::leaf(Decoration::unit());
        }
        let kids = &layout.children[v];
        *c *= kids.len() as u64;
        RootedTree::new(
            Decoration::unit(),
            kids.iter().map(|&k| build(layout, k, pure, c)).collect(),
        )
    }
    let mut c = 1;
    let shape = build(layout, 0, &pure, &mut c);
    let c = if shape.size() <= 1 {
        Q::one()
    } else {
        Q::from_integer(c.into())
    };
    (shape, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::qi;
    use crate::parse::parse_tree;

    fn t(s: &str) -> RootedTree {
        parse_tree(s).unwrap()
    }

    fn labels(fam: &AdmissibleFamily, tree: &RootedTree) -> String {
        let mut out: Vec<String> = fam
            .gamma
            .iter()
            .map(|v| tree.subtree(v).unwrap().decoration().to_string())
            .collect();
        out.sort();
        out.concat()
    }

    #[test]
    fn leaf_and_edge() {
        let fams = admissible_families(&t("a")).unwrap();
        assert_eq!(fams.len(), 2);
        assert!(fams.iter().all(|f| f.c_gamma == qi(1)));
        let fams = admissible_families(&t("a[b]")).unwrap();
        assert_eq!(fams.len(), 4);
        assert!(fams.iter().all(|f| f.c_gamma == qi(1)));
    }

    #[test]
    fn four_vertex_example() {
        let tree = t("a[b[c],d]");
        let fams = admissible_families(&tree).unwrap();
        let mut got: Vec<(String, Q)> = fams
            .iter()
            .map(|f| (labels(f, &tree), f.c_gamma.clone()))
            .collect();
        got.sort();
        let mut expected = vec![
            (String::new(), qi(1)),
            ("abcd".into(), qi(1)),
            ("b".into(), qi(2)),
            ("c".into(), qi(2)),
            ("acd".into(), qi(2)),
            ("abd".into(), qi(2)),
        ];
        expected.sort();
        assert_eq!(got, expected);
        let direct = admissible_families_direct(&tree).unwrap();
        assert_eq!(direct, fams);
    }

    #[test]
    fn cherry_has_only_trivial_families() {
        let fams = admissible_families(&t("a[b,c]")).unwrap();
        assert!(fams.iter().all(AdmissibleFamily::is_trivial));
        assert_eq!(fams.len(), 2);
    }

    #[test]
    fn contraction_examples() {
        let tree = t("a[b[c],d]");
        let (shape, c) = contraction_fertility(&tree, &[VertexRef::new(vec![0, 0])]).unwrap();
        assert_eq!(shape.size(), 4);
        assert_eq!(shape.fertility(), 2);
        assert_eq!(c, qi(2));
        let (shape, c) = contraction_fertility(&tree, &[]).unwrap();
        assert_eq!((shape.size(), c), (1, qi(1)));
    }

    #[test]
    fn large_contraction_example() {
        let tree = t("a[b[c[d[g,h,i,j],e,f[k[l,m[n[o[r[s,t]],p,q]]]]]]]");
        let gamma: Vec<VertexRef> = tree
            .vertices()
            .into_iter()
            .filter(|v| {
                "acdeghijklmrst".contains(&tree.subtree(v).unwrap().decoration().to_string())
            })
            .collect();
        assert_eq!(gamma.len(), 14);
        assert!(is_admissible(&tree, &gamma).unwrap());
        let (shape, c) = contraction_fertility(&tree, &gamma).unwrap();
        assert_eq!(shape.to_string(), "1[1[1[1,1,1[1[1,1[1[1,1,1[1]]]]]]]]");
        assert_eq!(shape.size(), 14);
        assert_eq!(c, qi(18));
        let fam = admissible_families(&tree)
            .unwrap()
            .into_iter()
            .find(|f| f.gamma.len() == 14 && labels(f, &tree) == "acdeghijklmrst")
            .expect("the family is produced by the induction");
        assert_eq!(fam.c_gamma, qi(18));
        assert_eq!(fam.t_complement.to_string(), "b[f[n[o,p,q]]]");
        assert_eq!(fam.t_gamma.to_string(), "a[c[d[g,h,i,j],e,k[l,m[r[s,t]]]]]");
    }

    #[test]
    fn guard_rejects_huge_trees() {
        let mut tree = t("a");
        for _ in 0..30 {
            tree = RootedTree::new(Decoration::atom("a"), vec![tree]);
        }
        assert!(matches!(
            admissible_families(&tree),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
