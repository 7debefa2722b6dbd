//! Combinatorial types: trivalent trees with leaves labelled by the degree,
//! bounded-edge data forced by balancing.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::tropical::Degree;

/// An unrooted tree: leaves are `0..leaves`, internal nodes follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    pub leaves: usize,
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Tree {
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

/// All trivalent trees on `n` labelled leaves, built by successive edge
/// insertion; there are `(2n - 5)!!` of them for `n >= 3`.
pub fn trivalent_trees(n: usize) -> Vec<Tree> {
    if n < 3 {
        return Vec::new();
    }
    let start = Tree { leaves: n, nodes: n + 1, edges: vec![(0, n), (1, n), (2, n)] };
    let mut current = vec![start];
    for k in 3..n {
        let mut next = Vec::with_capacity(current.len() * (2 * k - 3));
        for t in &current {
            for e in 0..t.edges.len() {
                let (a, b) = t.edges[e];
                let m = t.nodes;
                let mut edges = t.edges.clone();
                edges[e] = (a, m);
                edges.push((m, b));
                edges.push((m, k));
                next.push(Tree { leaves: n, nodes: m + 1, edges });
            }
        }
        current = next;
    }
    current
}

/// `(2n - 5)!!`, the number of trivalent trees on `n >= 3` labelled leaves.
pub fn tree_count(n: usize) -> u64 {
    if n < 3 {
        return 0;
    }
    (1..=(2 * n - 5) as u64).step_by(2).product()
}

/// Bounded edge of a type: endpoints and the weighted direction from `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeEdge {
    pub a: usize,
    pub b: usize,
    pub dir: [i64; 2],
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeLeg {
    pub vertex: usize,
    pub dir: [i64; 2],
    pub weight: u64,
}

/// A genus-zero plane type: trivalent tree, leg data from the degree, bounded
/// edge data forced by balancing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombinatorialType {
    pub vertex_count: usize,
    pub bounded: Vec<TypeEdge>,
    pub legs: Vec<TypeLeg>,
    /// Canonical form under isomorphisms preserving leg labels.
    pub canonical: String,
}

impl CombinatorialType {
    /// Edge ids: bounded edges first, then legs.
    pub fn edge_count(&self) -> usize {
        self.bounded.len() + self.legs.len()
    }

    /// The three edge ids at each vertex.
    pub fn stars(&self) -> Vec<Vec<usize>> {
        let mut s = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.bounded.iter().enumerate() {
            s[e.a].push(i);
            s[e.b].push(i);
        }
        for (i, l) in self.legs.iter().enumerate() {
            s[l.vertex].push(self.bounded.len() + i);
        }
        s
    }

    /// Primitive direction of edge `e` leaving vertex `v`.
    pub fn direction_from(&self, e: usize, v: usize) -> [i64; 2] {
        if e < self.bounded.len() {
            let b = &self.bounded[e];
            if b.a == v {
                b.dir
            } else {
                [-b.dir[0], -b.dir[1]]
            }
        } else {
            self.legs[e - self.bounded.len()].dir
        }
    }

    pub fn weight(&self, e: usize) -> u64 {
        if e < self.bounded.len() {
            self.bounded[e].weight
        } else {
            self.legs[e - self.bounded.len()].weight
        }
    }
}

fn canonical_rooted(adj: &[Vec<usize>], labels: &[String], v: usize, parent: usize) -> String {
    if v < labels.len() {
        return labels[v].clone();
    }
    let mut parts: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| canonical_rooted(adj, labels, w, v))
        .collect();
    parts.sort();
    format!("({})", parts.concat())
}

/// Canonical string of a leaf-labelled tree: least rooted form over internal roots.
fn canonical(tree: &Tree, labels: &[String]) -> String {
    let adj = tree.adjacency();
    (tree.leaves..tree.nodes)
        .map(|r| canonical_rooted(&adj, labels, r, usize::MAX))
        .min()
        .unwrap_or_default()
}

/// Builds the type of a labelled tree, or `None` when balancing forces a zero
/// bounded edge or a vertex with parallel edges.
fn build_type(tree: &Tree, legs: &[(Vec<i64>, u64)], canonical: String) -> Option<CombinatorialType> {
    let adj = tree.adjacency();
    let n = tree.leaves;
    let index = |node: usize| node - n;
    // Sum of weighted leaf vectors on the `b` side of the edge `a - b`.
    fn side_sum(adj: &[Vec<usize>], legs: &[(Vec<i64>, u64)], b: usize, from: usize) -> [i64; 2] {
        if b < legs.len() {
            let (d, w) = &legs[b];
            return [d[0] * *w as i64, d[1] * *w as i64];
        }
        let mut s = [0, 0];
        for &c in &adj[b] {
            if c != from {
                let t = side_sum(adj, legs, c, b);
                s[0] += t[0];
                s[1] += t[1];
            }
        }
        s
    }
    let mut bounded = Vec::new();
    let mut type_legs = Vec::new();
    for &(x, y) in &tree.edges {
        let (leaf, inner) = if x < n { (Some(x), y) } else if y < n { (Some(y), x) } else { (None, x) };
        match leaf {
            Some(l) => {
                let (d, w) = &legs[l];
                type_legs.push((l, TypeLeg { vertex: index(inner), dir: [d[0], d[1]], weight: *w }));
            }
            None => {
                let v = side_sum(&adj, legs, y, x);
                if v == [0, 0] {
                    return None;
                }
                let g = v[0].gcd(&v[1]);
                bounded.push(TypeEdge { a: index(x), b: index(y), dir: [v[0] / g, v[1] / g], weight: g as u64 });
            }
        }
    }
    type_legs.sort_by_key(|(l, _)| *l);
    let t = CombinatorialType {
        vertex_count: tree.nodes - n,
        bounded,
        legs: type_legs.into_iter().map(|(_, l)| l).collect(),
        canonical,
    };
    let stars = t.stars();
    for (v, s) in stars.iter().enumerate() {
        let u0 = t.direction_from(s[0], v);
        let u1 = t.direction_from(s[1], v);
        if u0[0] * u1[1] - u0[1] * u1[0] == 0 {
            return None;
        }
    }
    Some(t)
}

/// All genus-`g` types of the given plane degree, up to isomorphism, sorted canonically.
pub fn enumerate_types(genus: usize, degree: &Degree) -> Result<Vec<CombinatorialType>> {
    if genus != 0 {
        return Err(Error::UnsupportedGenus(genus));
    }
    if degree.entries.keys().any(|v| v.len() != 2) {
        return Err(Error::DimensionMismatch("type enumeration is planar".into()));
    }
    let legs = degree.legs();
    let n = legs.len();
    let names: BTreeMap<&(Vec<i64>, u64), usize> = {
        let mut m = BTreeMap::new();
        for l in &legs {
            let next = m.len();
            m.entry(l).or_insert(next);
        }
        m
    };
    let labels: Vec<String> = legs.iter().map(|l| format!("L{}", names[l])).collect();
    let trees = trivalent_trees(n);
    let keyed: Vec<(String, usize)> = trees
        .par_iter()
        .enumerate()
        .map(|(i, t)| (canonical(t, &labels), i))
        .collect();
    let mut first: BTreeMap<String, usize> = BTreeMap::new();
    for (k, i) in keyed {
        first.entry(k).or_insert(i);
    }
    let types: Vec<CombinatorialType> = first
        .into_par_iter()
        .filter_map(|(k, i)| build_type(&trees[i], &legs, k))
        .collect();
    Ok(types)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        for n in 3..=8 {
            assert_eq!(trivalent_trees(n).len() as u64, tree_count(n));
        }
        assert_eq!(tree_count(6), 105);
        assert_eq!(tree_count(9), 135_135);
        assert!(trivalent_trees(2).is_empty());
    }

    #[test]
    fn trees_are_trivalent() {
        for t in trivalent_trees(6) {
            let adj = t.adjacency();
            for (v, a) in adj.iter().enumerate() {
                assert_eq!(a.len(), if v < t.leaves { 1 } else { 3 });
            }
        }
    }

    #[test]
    fn line_has_one_type() {
        let types = enumerate_types(0, &Degree::projective_plane(1)).unwrap();
        assert_eq!(types.len(), 1);
        assert_eq!(types[0].vertex_count, 1);
        assert!(types[0].bounded.is_empty());
    }

    #[test]
    fn two_legs_have_no_type() {
        let mut d = Degree::default();
        d.entries.insert(vec![1, 0], 1);
        d.entries.insert(vec![-1, 0], 1);
        assert!(enumerate_types(0, &d).unwrap().is_empty());
    }

    #[test]
    fn conic_types_balance() {
        let types = enumerate_types(0, &Degree::projective_plane(2)).unwrap();
        assert!(!types.is_empty());
        for t in &types {
            assert_eq!(t.bounded.len(), 3);
            for (v, s) in t.stars().iter().enumerate() {
                let mut sum = [0i64; 2];
                for &e in s {
                    let u = t.direction_from(e, v);
                    let w = t.weight(e) as i64;
                    sum[0] += w * u[0];
                    sum[1] += w * u[1];
                }
                assert_eq!(sum, [0, 0]);
            }
        }
    }

    #[test]
    fn higher_genus_is_gated() {
        assert_eq!(enumerate_types(1, &Degree::projective_plane(3)), Err(Error::UnsupportedGenus(1)));
    }
}
