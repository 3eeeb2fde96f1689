//! Canonical decorated non-planar rooted trees and forests.
//!
//! Every constructor sorts children (and the trees of a forest) so that two
//! values are equal exactly when they are isomorphic as decorated rooted
//! forests. Nodes are reference counted, so cloning is cheap and values can
//! be shared between threads.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::decoration::Decoration;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct RootedTree(Arc<Node>);

struct Node {
    decoration: Decoration,
    children: Vec<RootedTree>,
    size: usize,
    hash: u64,
}

impl RootedTree {
    pub fn new(decoration: Decoration, mut children: Vec<RootedTree>) -> Self {
        children.sort();
        let size = 1 + children.iter().map(RootedTree::size).sum::<usize>();
        let mut h = DefaultHasher::new();
        decoration.hash(&mut h);
        size.hash(&mut h);
        for c in &children {
            h.write_u64(c.0.hash);
        }
        RootedTree(Arc::new(Node {
            decoration,
            children,
            size,
            hash: h.finish(),
        }))
    }

    pub fn leaf(decoration: Decoration) -> Self {
        RootedTree::new(decoration, Vec::new())
    }

    pub fn decoration(&self) -> &Decoration {
        &self.0.decoration
    }

    /// Direct descendants of the root, in canonical order.
    pub fn children(&self) -> &[RootedTree] {
        &self.0.children
    }

    /// The forest obtained by removing the root.
    pub fn branches(&self) -> Forest {
        Forest {
            trees: self.0.children.clone(),
        }
    }

    /// Number of vertices.
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn fertility(&self) -> usize {
        self.0.children.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.0.children.is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children().iter().map(RootedTree::leaf_count).sum()
        }
    }

    /// A linear tree has no vertex with two or more children.
    pub fn is_linear(&self) -> bool {
        match self.children() {
            [] => true,
            [c] => c.is_linear(),
            _ => false,
        }
    }

    /// All vertices in canonical preorder.
    pub fn vertices(&self) -> Vec<VertexRef> {
        let mut out = Vec::with_capacity(self.size());
        let mut path = Vec::new();
        collect_vertices(self, &mut path, &mut out);
        out
    }

    /// The rooted subtree hanging at `v`.
    pub fn subtree(&self, v: &VertexRef) -> Result<&RootedTree> {
        let mut cur = self;
        for &i in &v.path {
            cur = cur
                .children()
                .get(i)
                .ok_or_else(|| Error::InvalidVertex(v.to_string()))?;
        }
        Ok(cur)
    }

    /// Number of direct descendants of every vertex.
    pub fn fertility_profile(&self) -> BTreeMap<VertexRef, usize> {
        self.vertices()
            .into_iter()
            .map(|v| {
                let f = self.subtree(&v).map(RootedTree::fertility).unwrap_or(0);
                (v, f)
            })
            .collect()
    }

    /// Grafts the root of `other` as a new child of `v`. Grafting the empty
    /// forest returns the tree unchanged.
    pub fn graft_at(&self, v: &VertexRef, other: Option<&RootedTree>) -> Result<RootedTree> {
        self.subtree(v)?;
        match other {
            None => Ok(self.clone()),
            Some(t) => Ok(graft_path(self, &v.path, t)),
        }
    }

    /// The forest induced on the vertex set `lambda`: `u` is a parent of `w`
    /// when `u` is a strict ancestor of `w` and no vertex of `lambda` lies
    /// strictly between them.
    pub fn induced_subtree(&self, lambda: &[VertexRef]) -> Result<Forest> {
        let mask = self.mask_of(lambda)?;
        Ok(self.layout().induced(mask))
    }

    pub(crate) fn mask_of(&self, set: &[VertexRef]) -> Result<VertexMask> {
        let layout = self.layout();
        let mut mask = 0;
        for v in set {
            let idx = layout
                .index_of(v)
                .ok_or_else(|| Error::InvalidVertex(v.to_string()))?;
            mask |= 1 << idx;
        }
        Ok(mask)
    }

    pub(crate) fn layout(&self) -> Layout {
        Layout::new(self)
    }

    pub fn canonical_key(&self) -> Vec<u8> {
        self.to_string().into_bytes()
    }

    /// Replaces every decoration through `f`, re-canonicalizing.
    pub fn map_decorations(&self, f: &mut impl FnMut(&Decoration) -> Decoration) -> RootedTree {
        let d = f(self.decoration());
        let children = self
            .children()
            .iter()
            .map(|c| c.map_decorations(f))
            .collect();
        RootedTree::new(d, children)
    }

    /// Decorations in canonical preorder.
    pub fn decorations(&self) -> Vec<Decoration> {
        let mut out = Vec::with_capacity(self.size());
        fn walk(t: &RootedTree, out: &mut Vec<Decoration>) {
            out.push(t.decoration().clone());
            for c in t.children() {
                walk(c, out);
            }
        }
        walk(self, &mut out);
        out
    }
}

fn collect_vertices(t: &RootedTree, path: &mut Vec<usize>, out: &mut Vec<VertexRef>) {
    out.push(VertexRef { path: path.clone() });
    for (i, c) in t.children().iter().enumerate() {
        path.push(i);
        collect_vertices(c, path, out);
        path.pop();
    }
}

fn graft_path(t: &RootedTree, path: &[usize], other: &RootedTree) -> RootedTree {
    let mut children = t.children().to_vec();
    match path.split_first() {
        None => children.push(other.clone()),
        Some((&i, rest)) => children[i] = graft_path(&children[i], rest, other),
    }
    RootedTree::new(t.decoration().clone(), children)
}

/// `B₊^a`: a new root decorated by `a` whose children are the trees of `forest`.
pub fn b_plus(a: &Decoration, forest: &Forest) -> RootedTree {
    RootedTree::new(a.clone(), forest.trees.clone())
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash
                && self.0.size == other.0.size
                && self.0.decoration == other.0.decoration
                && self.0.children == other.0.children)
    }
}

impl Eq for RootedTree {}

impl Hash for RootedTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl Ord for RootedTree {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0
            .decoration
            .cmp(&other.0.decoration)
            .then_with(|| self.0.children.cmp(&other.0.children))
    }
}

impl PartialOrd for RootedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.decoration())?;
        if !self.is_leaf() {
            f.write_str("[")?;
            for (i, c) in self.children().iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A multiset of rooted trees in canonical order; possibly empty.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Forest {
    trees: Vec<RootedTree>,
}

impl Forest {
    pub fn empty() -> Self {
        Forest { trees: Vec::new() }
    }

    pub fn from_trees(mut trees: Vec<RootedTree>) -> Self {
        trees.sort();
        Forest { trees }
    }

    pub fn trees(&self) -> &[RootedTree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<RootedTree> {
        self.trees
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Number of connected components.
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    /// Number of vertices.
    pub fn size(&self) -> usize {
        self.trees.iter().map(RootedTree::size).sum()
    }

    /// The single tree of a connected forest.
    pub fn as_tree(&self) -> Option<&RootedTree> {
        match self.trees.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    /// Whether the forest is empty or a single tree.
    pub fn is_tree_or_empty(&self) -> bool {
        self.trees.len() <= 1
    }

    /// Multiset union of the trees.
    pub fn concat(&self, other: &Forest) -> Forest {
        if other.is_empty() {
            return self.clone();
        }
        if self.is_empty() {
            return other.clone();
        }
        let mut trees = Vec::with_capacity(self.trees.len() + other.trees.len());
        let (mut i, mut j) = (0, 0);
        while i < self.trees.len() && j < other.trees.len() {
            if self.trees[i] <= other.trees[j] {
                trees.push(self.trees[i].clone());
                i += 1;
            } else {
                trees.push(other.trees[j].clone());
                j += 1;
            }
        }
        trees.extend_from_slice(&self.trees[i..]);
        trees.extend_from_slice(&other.trees[j..]);
        Forest { trees }
    }

    pub fn push(&self, tree: &RootedTree) -> Forest {
        let mut trees = self.trees.clone();
        let pos = trees.partition_point(|t| t <= tree);
        trees.insert(pos, tree.clone());
        Forest { trees }
    }

    /// Multiset difference `self ∖ other`, if `other` is contained in `self`.
    pub fn difference(&self, other: &Forest) -> Option<Forest> {
        let mut trees = Vec::with_capacity(self.trees.len());
        let mut j = 0;
        for t in &self.trees {
            if j < other.trees.len() && *t == other.trees[j] {
                j += 1;
            } else {
                trees.push(t.clone());
            }
        }
        (j == other.trees.len()).then_some(Forest { trees })
    }

    /// The forest with the tree at position `i` removed.
    pub fn without(&self, i: usize) -> Forest {
        let mut trees = self.trees.clone();
        trees.remove(i);
        Forest { trees }
    }

    /// Sub-forest made of the trees at the positions set in `mask`.
    pub fn select(&self, mask: u64) -> Forest {
        Forest {
            trees: self
                .trees
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, t)| t.clone())
                .collect(),
        }
    }

    pub fn canonical_key(&self) -> Vec<u8> {
        self.to_string().into_bytes()
    }

    pub fn map_decorations(&self, f: &mut impl FnMut(&Decoration) -> Decoration) -> Forest {
        Forest::from_trees(self.trees.iter().map(|t| t.map_decorations(f)).collect())
    }

    /// Decorations of all vertices, sorted.
    pub fn decoration_multiset(&self) -> Vec<Decoration> {
        let mut out: Vec<Decoration> = self.trees.iter().flat_map(|t| t.decorations()).collect();
        out.sort();
        out
    }
}

impl From<RootedTree> for Forest {
    fn from(t: RootedTree) -> Self {
        Forest { trees: vec![t] }
    }
}

impl From<&RootedTree> for Forest {
    fn from(t: &RootedTree) -> Self {
        Forest {
            trees: vec![t.clone()],
        }
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return f.write_str("()");
        }
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn concat(f: &Forest, g: &Forest) -> Forest {
    f.concat(g)
}

/// Path of child indices from the root, valid for the canonical layout of
/// the tree it was issued for. Any structural edit invalidates it.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexRef {
    pub path: Vec<usize>,
}

impl VertexRef {
    pub fn root() -> Self {
        VertexRef { path: Vec::new() }
    }

    pub fn new(path: Vec<usize>) -> Self {
        VertexRef { path }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("/")?;
        for (i, p) in self.path.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Bit `i` stands for the `i`-th vertex in canonical preorder.
pub(crate) type VertexMask = u32;

pub(crate) const MAX_MASK_VERTICES: usize = 24;

/// Flattened preorder view of a tree used by the subset-based algorithms.
pub(crate) struct Layout {
    pub decorations: Vec<Decoration>,
    pub children: Vec<Vec<usize>>,
    pub paths: Vec<VertexRef>,
    /// Mask of each vertex together with all of its descendants.
    pub below: Vec<VertexMask>,
}

impl Layout {
    fn new(t: &RootedTree) -> Layout {
        let n = t.size();
        let mut layout = Layout {
            decorations: Vec::with_capacity(n),
            children: Vec::with_capacity(n),
            paths: t.vertices(),
            below: Vec::with_capacity(n),
        };
        fn walk(t: &RootedTree, l: &mut Layout) -> usize {
            let idx = l.decorations.len();
            l.decorations.push(t.decoration().clone());
            l.children.push(Vec::new());
            l.below.push(0);
            let mut below: VertexMask = if idx < 32 { 1 << idx } else { 0 };
            for c in t.children() {
                let ci = walk(c, l);
                l.children[idx].push(ci);
                below |= l.below[ci];
            }
            l.below[idx] = below;
            idx
        }
        walk(t, &mut layout);
        layout
    }

    pub fn len(&self) -> usize {
        self.decorations.len()
    }

    pub fn full(&self) -> VertexMask {
        if self.len() >= 32 {
            VertexMask::MAX
        } else {
            (1 << self.len()) - 1
        }
    }

    pub fn index_of(&self, v: &VertexRef) -> Option<usize> {
        self.paths.iter().position(|p| p == v)
    }

    pub fn refs(&self, mask: VertexMask) -> Vec<VertexRef> {
        (0..self.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.paths[i].clone())
            .collect()
    }

    pub fn induced(&self, mask: VertexMask) -> Forest {
        Forest::from_trees(self.induced_at(0, mask))
    }

    fn induced_at(&self, v: usize, mask: VertexMask) -> Vec<RootedTree> {
        let below: Vec<RootedTree> = self.children[v]
            .iter()
            .filter(|&&c| self.below[c] & mask != 0)
            .flat_map(|&c| self.induced_at(c, mask))
            .collect();
        if mask >> v & 1 == 1 {
            vec![RootedTree::new(self.decorations[v].clone(), below)]
        } else {
            below
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_forest, parse_tree};

    fn t(s: &str) -> RootedTree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn b_plus_adds_one_vertex() {
        let f = parse_forest("b c[d]").unwrap();
        let tree = b_plus(&Decoration::atom("a"), &f);
        assert_eq!(tree.size(), f.size() + 1);
        assert_eq!(tree.to_string(), "a[b,c[d]]");
        let leaf = b_plus(&Decoration::atom("a"), &Forest::empty());
        assert_eq!(leaf.to_string(), "a");
        let unit = b_plus(&Decoration::unit(), &parse_forest("a[b]").unwrap());
        assert_eq!(unit.to_string(), "1[a[b]]");
    }

    #[test]
    fn concat_is_commutative_with_unit() {
        let a = parse_forest("a").unwrap();
        let b = parse_forest("b").unwrap();
        assert_eq!(concat(&a, &b), concat(&b, &a));
        assert_eq!(concat(&a, &b).to_string(), "a b");
        assert_eq!(concat(&Forest::empty(), &a), a);
        assert_eq!(concat(&a, &b).size(), 2);
    }

    #[test]
    fn graft_examples() {
        let root = VertexRef::root();
        assert_eq!(t("a").graft_at(&root, Some(&t("b"))).unwrap(), t("a[b]"));
        assert_eq!(
            t("a[b]")
                .graft_at(&VertexRef::new(vec![0]), Some(&t("c")))
                .unwrap(),
            t("a[b[c]]")
        );
        // In a[b,c] the leaf b sits at child index 0.
        assert_eq!(
            t("a[b,c]")
                .graft_at(&VertexRef::new(vec![0]), Some(&t("d[e]")))
                .unwrap(),
            t("a[b[d[e]],c]")
        );
        assert_eq!(t("a[b,c]").graft_at(&root, None).unwrap(), t("a[b,c]"));
        assert!(t("a")
            .graft_at(&VertexRef::new(vec![3]), Some(&t("b")))
            .is_err());
    }

    #[test]
    fn induced_subtree_bypasses_removed_vertices() {
        let tree = t("a[b[c],d]");
        let vs = tree.vertices();
        // preorder: a, b, c, d
        let lambda = vec![vs[0].clone(), vs[2].clone(), vs[3].clone()];
        assert_eq!(
            tree.induced_subtree(&lambda).unwrap(),
            parse_forest("a[c,d]").unwrap()
        );
        assert_eq!(
            tree.induced_subtree(&vs).unwrap(),
            Forest::from(tree.clone())
        );
        assert_eq!(tree.induced_subtree(&[]).unwrap(), Forest::empty());
        // Dropping the root disconnects.
        assert_eq!(
            tree.induced_subtree(&vs[1..]).unwrap(),
            parse_forest("b[c] d").unwrap()
        );
    }

    #[test]
    fn fertility_profiles() {
        let p = t("a").fertility_profile();
        assert_eq!(p.values().copied().collect::<Vec<_>>(), vec![0]);
        let p = t("a[b[c],d]").fertility_profile();
        assert_eq!(p.values().copied().collect::<Vec<_>>(), vec![2, 1, 0, 0]);
    }

    #[test]
    fn keys_identify_isomorphism_classes() {
        assert_eq!(t("a[b,c]").canonical_key(), t("a[c,b]").canonical_key());
        assert_ne!(t("a[b]").canonical_key(), t("b[a]").canonical_key());
        assert_eq!(
            parse_forest("c[b] a[d]").unwrap(),
            parse_forest("a[d] c[b]").unwrap()
        );
    }
}
