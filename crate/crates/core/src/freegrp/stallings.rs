//! Stallings graphs of finitely generated subgroups.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FreeHom, GroupWord, Syllable};

/// Order in which same-label edge pairs are identified while folding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldOrder {
    Forward,
    Reverse,
    Shuffled(u64),
}

/// Folded core graph with base vertex `0`, in canonical numbering.
///
/// Edges `(u, label, v)` are sorted; vertices are numbered in breadth-first
/// order from the base, visiting neighbours by label, outgoing before incoming.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StallingsGraph {
    labels: usize,
    vertices: usize,
    edges: Vec<(usize, usize, usize)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the base as a representative
            let (keep, drop) = if rb == 0 { (rb, ra) } else { (ra, rb) };
            self.0[drop] = keep;
        }
    }
}

/// Folded core graph of the subgroup generated by `generators` in the free
/// group on `labels` generators.
pub fn fold(generators: &[GroupWord], labels: usize) -> StallingsGraph {
    fold_with_order(generators, labels, FoldOrder::Forward)
}

pub fn fold_with_order(generators: &[GroupWord], labels: usize, order: FoldOrder) -> StallingsGraph {
    let mut vertices = 1;
    let mut edges = Vec::new();
    for g in generators.iter().filter(|g| !g.is_identity()) {
        let mut at = 0;
        for (i, s) in g.syllables().iter().enumerate() {
            let next = if i + 1 == g.len() {
                0
            } else {
                vertices += 1;
                vertices - 1
            };
            if s.inverse {
                edges.push((next, s.generator, at));
            } else {
                edges.push((at, s.generator, next));
            }
            at = next;
        }
    }
    match order {
        FoldOrder::Forward => {}
        FoldOrder::Reverse => edges.reverse(),
        FoldOrder::Shuffled(seed) => edges.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
    }
    let mut uf = UnionFind((0..vertices).collect());
    loop {
        let mut out: HashMap<(usize, usize), usize> = HashMap::new();
        let mut inc: HashMap<(usize, usize), usize> = HashMap::new();
        let mut clash = None;
        for &(u, l, v) in &edges {
            let (u, v) = (uf.find(u), uf.find(v));
            match out.insert((u, l), v) {
                Some(w) if w != v => {
                    clash = Some((v, w));
                    break;
                }
                _ => {}
            }
            match inc.insert((v, l), u) {
                Some(w) if w != u => {
                    clash = Some((u, w));
                    break;
                }
                _ => {}
            }
        }
        match clash {
            Some((a, b)) => uf.union(a, b),
            None => break,
        }
    }
    let folded: BTreeSet<(usize, usize, usize)> =
        edges.iter().map(|&(u, l, v)| (uf.find(u), l, uf.find(v))).collect();
    canonical(core(folded), labels)
}

/// Repeatedly strips non-base vertices of degree one.
fn core(mut edges: BTreeSet<(usize, usize, usize)>) -> BTreeSet<(usize, usize, usize)> {
    loop {
        let mut degree: HashMap<usize, usize> = HashMap::new();
        for &(u, _, v) in &edges {
            *degree.entry(u).or_default() += 1;
            *degree.entry(v).or_default() += 1;
        }
        let before = edges.len();
        edges.retain(|&(u, _, v)| (u == 0 || degree[&u] > 1) && (v == 0 || degree[&v] > 1));
        if edges.len() == before {
            return edges;
        }
    }
}

fn canonical(edges: BTreeSet<(usize, usize, usize)>, labels: usize) -> StallingsGraph {
    let mut adj: HashMap<usize, Vec<(usize, bool, usize)>> = HashMap::new();
    for &(u, l, v) in &edges {
        adj.entry(u).or_default().push((l, false, v));
        adj.entry(v).or_default().push((l, true, u));
    }
    for list in adj.values_mut() {
        list.sort();
    }
    let mut name: HashMap<usize, usize> = HashMap::from([(0, 0)]);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &(_, _, y) in adj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
            if !name.contains_key(&y) {
                name.insert(y, name.len());
                queue.push_back(y);
            }
        }
    }
    let mut renamed: Vec<(usize, usize, usize)> = edges.iter().map(|&(u, l, v)| (name[&u], l, name[&v])).collect();
    renamed.sort();
    StallingsGraph { labels, vertices: name.len(), edges: renamed }
}

impl StallingsGraph {
    pub fn labels(&self) -> usize {
        self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    /// Rank of the subgroup, `|E| - |V| + 1`.
    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices
    }

    pub fn is_whole_group(&self) -> bool {
        self.vertices == 1 && self.edges.len() == self.labels
    }

    /// Every vertex has an outgoing and an incoming edge of every label.
    pub fn is_finite_index(&self) -> bool {
        self.edges.len() == self.vertices * self.labels
    }

    /// Index of the subgroup when finite.
    pub fn index(&self) -> Option<usize> {
        self.is_finite_index().then_some(self.vertices)
    }

    fn step(&self, at: usize, s: Syllable) -> Option<usize> {
        self.edges.iter().find_map(|&(u, l, v)| match (l == s.generator, s.inverse) {
            (true, false) if u == at => Some(v),
            (true, true) if v == at => Some(u),
            _ => None,
        })
    }

    /// Whether `g` reads a closed path at the base.
    pub fn contains(&self, g: &GroupWord) -> bool {
        let mut at = 0;
        for &s in g.syllables() {
            match self.step(at, s) {
                Some(n) => at = n,
                None => return false,
            }
        }
        at == 0
    }

    /// Free basis read off a breadth-first spanning tree.
    pub fn basis(&self) -> Vec<GroupWord> {
        let mut path: Vec<Option<GroupWord>> = vec![None; self.vertices];
        path[0] = Some(GroupWord::identity());
        let mut tree = BTreeSet::new();
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            let here = path[x].clone().unwrap();
            for (i, &(u, l, v)) in self.edges.iter().enumerate() {
                let (y, s) = if u == x {
                    (v, Syllable::new(l, false))
                } else if v == x {
                    (u, Syllable::new(l, true))
                } else {
                    continue;
                };
                if path[y].is_none() {
                    path[y] = Some(here.mul(&GroupWord(vec![s])));
                    tree.insert(i);
                    queue.push_back(y);
                }
            }
        }
        self.edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !tree.contains(i))
            .map(|(_, &(u, l, v))| {
                let to_u = path[u].as_ref().unwrap();
                let to_v = path[v].as_ref().unwrap();
                GroupWord::product([to_u, &GroupWord::generator(l), &to_v.inverse()])
            })
            .collect()
    }
}

/// Hopfian criterion: an endomorphism of a free group of finite rank is an
/// automorphism exactly when its image is the whole group.
pub fn is_automorphism(phi: &FreeHom) -> bool {
    phi.is_endo() && fold(phi.images(), phi.rank()).is_whole_group()
}
