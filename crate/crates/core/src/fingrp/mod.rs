//! Finite groups given by explicit multiplication.

mod perm;
mod spec;

pub use perm::Permutation;
pub use spec::parse_group_spec;

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::freegrp::GroupWord;
use crate::words::Word;
use crate::{Error, Limits, Result};

/// Groups up to this order get a full multiplication table.
const TABLE_MAX: usize = 2048;

#[derive(Debug, Clone)]
enum Mult {
    Table(Vec<u32>),
    /// Element `i` is the `i`-th power of the generator.
    Cyclic,
    Perm { perms: Vec<Permutation>, index: HashMap<Permutation, usize> },
}

/// A finite group with elements `0..order`, identity `0`.
///
/// Elements are numbered breadth-first from the identity along right
/// multiplication by the generators, so generator `k` (when nontrivial and new)
/// is element `k + 1`.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mult: Mult,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    names: Vec<String>,
}

/// Elements reachable from the identity by right multiplication with `gens`, breadth first.
fn closure<T: Clone + Eq + Hash>(gens: &[T], identity: T, mul: impl Fn(&T, &T) -> T, cap: usize) -> Result<Vec<T>> {
    let mut index: HashMap<T, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elements = vec![identity];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let y = mul(&elements[i], g);
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(Error::resource(format!("group closure exceeds {cap} elements")));
                }
                index.insert(y.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
    }
    Ok(elements)
}

impl FiniteGroup {
    /// Builds a group from generators in any concrete representation.
    fn from_closure<T: Clone + Eq + Hash>(
        name: String,
        gens: &[T],
        identity: T,
        mul: impl Fn(&T, &T) -> T,
        render: impl Fn(&T) -> String,
        limits: &Limits,
    ) -> Result<Self> {
        let elements = closure(gens, identity, &mul, limits.closure_cap)?;
        let n = elements.len();
        if n > TABLE_MAX {
            return Err(Error::resource(format!("group of order {n} is too large for an explicit table")));
        }
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = vec![0u32; n * n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                table[i * n + j] = index[&mul(x, y)] as u32;
            }
        }
        let inverse = (0..n).map(|i| (0..n).find(|&j| table[i * n + j] == 0).expect("group has inverses")).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        let names = elements.iter().map(render).collect();
        Ok(FiniteGroup { name, order: n, mult: Mult::Table(table), inverse, generators, names })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("cyclic group order must be positive"));
        }
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "a".to_string(),
                _ => format!("a^{k}"),
            })
            .collect();
        Ok(FiniteGroup {
            name: format!("cyclic:{n}"),
            order: n,
            mult: Mult::Cyclic,
            inverse: (0..n).map(|k| (n - k) % n).collect(),
            generators: vec![1 % n],
            names,
        })
    }

    /// `(Z/p)^k`.
    pub fn elem_abelian(p: usize, k: usize, limits: &Limits) -> Result<Self> {
        if !crate::freegrp::is_prime(p as u64) || k == 0 {
            return Err(Error::input(format!("elab:{p}:{k} needs a prime p and k ≥ 1")));
        }
        let gens: Vec<Vec<usize>> = (0..k).map(|i| (0..k).map(|j| usize::from(i == j)).collect()).collect();
        FiniteGroup::from_closure(
            format!("elab:{p}:{k}"),
            &gens,
            vec![0; k],
            |x, y| x.iter().zip(y).map(|(a, b)| (a + b) % p).collect(),
            |x| format!("({})", x.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")),
            limits,
        )
    }

    /// Group generated by permutations of a common degree.
    pub fn perm_group(name: String, gens: Vec<Permutation>, limits: &Limits) -> Result<Self> {
        let degree = gens.first().map_or(0, Permutation::degree);
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::input("permutation generators must share a degree"));
        }
        let id = Permutation::identity(degree);
        let elements = closure(&gens, id, |x, y| x.then(y), limits.closure_cap)?;
        if elements.len() <= TABLE_MAX {
            return FiniteGroup::from_closure(name, &gens, Permutation::identity(degree), |x, y| x.then(y), |p| p.to_string(), limits);
        }
        let index: HashMap<Permutation, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(FiniteGroup {
            name,
            order: elements.len(),
            mult: Mult::Perm { perms: elements, index },
            inverse,
            generators,
            names: Vec::new(),
        })
    }

    /// Alternating group on `n` points, generated by `(1 2 3)`, `(3 4 5)` and `(1 2 k)` for `k ≥ 4`.
    pub fn alternating(n: usize, limits: &Limits) -> Result<Self> {
        let mut cycles = Vec::new();
        if n >= 3 {
            cycles.push("(1 2 3)".to_string());
        }
        if n >= 5 {
            cycles.push("(3 4 5)".to_string());
        }
        cycles.extend((4..=n).map(|k| format!("(1 2 {k})")));
        let gens = cycles.iter().map(|c| Permutation::parse_cycles(c, n.max(1))).collect::<Result<Vec<_>>>()?;
        let gens = if gens.is_empty() { vec![Permutation::identity(n.max(1))] } else { gens };
        FiniteGroup::perm_group(format!("alt:{n}"), gens, limits)
    }

    /// Symmetric group on `n` points, generated by `(1 2)` and `(1 2 … n)`.
    pub fn symmetric(n: usize, limits: &Limits) -> Result<Self> {
        if n <= 1 {
            return FiniteGroup::perm_group(format!("sym:{n}"), vec![Permutation::identity(1)], limits);
        }
        let long: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
        let gens = vec![
            Permutation::parse_cycles("(1 2)", n)?,
            Permutation::parse_cycles(&format!("({})", long.join(" ")), n)?,
        ];
        FiniteGroup::perm_group(format!("sym:{n}"), gens, limits)
    }

    /// `G × H`, generated by the generators of `G` followed by those of `H`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<Self> {
        let mut gens: Vec<(usize, usize)> = g.generators.iter().map(|&x| (x, 0)).collect();
        gens.extend(h.generators.iter().map(|&y| (0, y)));
        FiniteGroup::from_closure(
            format!("{}×{}", g.name, h.name),
            &gens,
            (0, 0),
            |x, y| (g.mul(x.0, y.0), h.mul(x.1, y.1)),
            |x| format!("({}, {})", g.element_name(x.0), h.element_name(x.1)),
            limits,
        )
    }

    /// The order-18 group `(C₃ × C₃) ⋊ C₂`, with the involution `a` inverting
    /// both `b` and `c`. Generators are `a, b, c` in that order.
    pub fn h18() -> Self {
        type E = (u8, u8, u8);
        let mul = |x: &E, y: &E| -> E {
            let sign = |v: u8| if x.2 == 0 { v } else { (3 - v) % 3 };
            ((x.0 + sign(y.0)) % 3, (x.1 + sign(y.1)) % 3, (x.2 + y.2) % 2)
        };
        let render = |x: &E| -> String {
            let mut parts = Vec::new();
            for (sym, e) in [("b", x.0), ("c", x.1)] {
                match e {
                    0 => {}
                    1 => parts.push(sym.to_string()),
                    _ => parts.push(format!("{sym}^{e}")),
                }
            }
            if x.2 == 1 {
                parts.push("a".to_string());
            }
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("")
            }
        };
        FiniteGroup::from_closure("h18".into(), &[(0, 0, 1), (1, 0, 0), (0, 1, 0)], (0, 0, 0), mul, render, &Limits::default())
            .expect("order 18 is within every cap")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        match &self.mult {
            Mult::Table(t) => t[x * self.order + y] as usize,
            Mult::Cyclic => (x + y) % self.order,
            Mult::Perm { perms, index } => index[&perms[x].then(&perms[y])],
        }
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let (mut acc, mut base, mut e) = (0, x, k);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_name(&self, x: usize) -> String {
        match &self.mult {
            Mult::Perm { perms, .. } => perms[x].to_string(),
            _ => self.names[x].clone(),
        }
    }

    /// Looks an element up by its printed name.
    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        let wanted: String = name.split_whitespace().collect();
        (0..self.order).find(|&x| self.element_name(x).split_whitespace().collect::<String>() == wanted)
    }

    /// Subgroup generated by `set`, breadth first from the identity.
    pub fn subgroup(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            for &g in set {
                let y = self.mul(list[i], g);
                if !inside[y] {
                    inside[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list
    }

    pub fn generates(&self, set: &[usize]) -> bool {
        self.subgroup(set).len() == self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Least size of a generating set, by exhaustive search over subsets.
    pub fn rank(&self, limits: &Limits) -> Result<usize> {
        if self.order > limits.rank_cap {
            return Err(Error::resource(format!(
                "rank search limited to order {}, group has order {}",
                limits.rank_cap, self.order
            )));
        }
        if self.order == 1 {
            return Ok(0);
        }
        let nontrivial: Vec<usize> = (1..self.order).collect();
        for k in 1..=self.order {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                let set: Vec<usize> = idx.iter().map(|&i| nontrivial[i]).collect();
                if self.generates(&set) {
                    return Ok(k);
                }
                if !next_combination(&mut idx, nontrivial.len()) {
                    break;
                }
            }
        }
        unreachable!("the whole group generates itself")
    }

    /// Checks associativity on every triple.
    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z)))))
    }
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Least size of a generating set of `g`.
pub fn group_rank(g: &FiniteGroup, limits: &Limits) -> Result<usize> {
    g.rank(limits)
}

/// A map from generator letters to group elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvalMap(pub Vec<usize>);

impl EvalMap {
    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn render(&self, g: &FiniteGroup) -> Vec<String> {
        self.0.iter().map(|&x| g.element_name(x)).collect()
    }

    pub fn is_generating(&self, g: &FiniteGroup) -> bool {
        g.generates(&self.0)
    }
}

/// Image of a positive word under the homomorphism extending `f`.
pub fn evaluate(g: &FiniteGroup, w: &Word, f: &EvalMap) -> usize {
    w.0.iter().fold(g.identity(), |acc, &l| g.mul(acc, f.0[usize::from(l)]))
}

/// Image of a group word under the homomorphism extending `f`.
pub fn evaluate_group_word(g: &FiniteGroup, w: &GroupWord, f: &EvalMap) -> usize {
    w.syllables().iter().fold(g.identity(), |acc, s| {
        let x = f.0[s.generator];
        g.mul(acc, if s.inverse { g.inv(x) } else { x })
    })
}
