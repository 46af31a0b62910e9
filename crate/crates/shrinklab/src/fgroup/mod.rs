//! Finite groups as explicit multiplication tables, their subgroup
//! machinery, and the group-theoretic reduction behind the Ore tower:
//! Frattini and Fitting subgroups, proper supplements, and the refined
//! filtrations of finite p-groups.

mod filtration;
mod lattice;
mod perm;

pub mod corpus;

pub use filtration::{operator_rank, pgroup_filtration};
pub use lattice::{all_subgroups, fitting, frattini, maximal_subgroups, proper_supplement, ore_tower, OreStep};
pub use perm::{cycles_to_perm, from_permutations, perm_to_cycles, Permutation};

use std::sync::Arc;
use thiserror::Error;

/// Default cap for subgroup enumeration (Frattini, Fitting, supplements).
pub const SUBGROUP_ENUM_CAP: usize = 200;
/// Default cap on the closure size in [`from_permutations`].
pub const CLOSURE_CAP: usize = 10_000;

#[derive(Debug, Error)]
pub enum FgroupError {
    #[error("permutation {index} is not a bijection on 0..{degree}")]
    NotBijective { index: usize, degree: usize },
    #[error("closure exceeds cap of {cap} elements")]
    ClosureExceedsCap { cap: usize },
    #[error("group order {order} exceeds enumeration cap {cap}")]
    OrderExceedsCap { order: usize, cap: usize },
    #[error("subgroup is not normal in the parent group")]
    NotNormal,
    #[error("normal subgroup is contained in the Frattini subgroup; no proper supplement is guaranteed")]
    ContainedInFrattini,
    #[error("group is not solvable")]
    NotSolvable,
    #[error("group order {order} is not a power of {p}")]
    NotPGroup { order: usize, p: u32 },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("multiplication table is not a group law: {0}")]
    NotAGroup(String),
}

/// A finite group given by its full multiplication table over element
/// indices `0..order`, with the identity at index 0.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    /// `mul[a * order + b]` is the index of the product `a * b`.
    mul: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<usize>,
    name: Option<String>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FiniteGroup({}, order {}, gens {:?})",
            self.name.as_deref().unwrap_or("?"),
            self.order,
            self.generators
        )
    }
}

impl FiniteGroup {
    /// Build from a raw multiplication table. Checks the group laws:
    /// full associativity up to order 256, sampled above that.
    pub fn from_table(
        mul: Vec<u32>,
        generators: Vec<usize>,
        name: Option<String>,
    ) -> Result<Arc<FiniteGroup>, FgroupError> {
        let order = (mul.len() as f64).sqrt().round() as usize;
        if order * order != mul.len() {
            return Err(FgroupError::NotAGroup("table is not square".into()));
        }
        if order == 0 {
            return Err(FgroupError::NotAGroup("empty table".into()));
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(FgroupError::NotAGroup(format!("index 0 is not an identity at {a}")));
            }
        }
        // inverses + latin-square check
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            let mut seen = vec![false; order];
            for b in 0..order {
                let c = at(a, b);
                if c >= order || seen[c] {
                    return Err(FgroupError::NotAGroup(format!("row {a} is not a permutation")));
                }
                seen[c] = true;
                if c == 0 {
                    inv[a] = b as u32;
                }
            }
        }
        if order <= 256 {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(FgroupError::NotAGroup(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            // sampled triples, deterministic stride
            let mut s: usize = 1;
            for _ in 0..50_000 {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = (s >> 33) % order;
                let b = (s >> 17) % order;
                let c = s % order;
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(FgroupError::NotAGroup(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
        let g = FiniteGroup { order, mul, inv, generators, name };
        // generators generate
        let closure = g.closure_of(&g.generators);
        if closure.len() != order {
            return Err(FgroupError::NotAGroup(format!(
                "generators span {} of {} elements",
                closure.len(),
                order
            )));
        }
        Ok(Arc::new(g))
    }

    pub fn trivial() -> Arc<FiniteGroup> {
        FiniteGroup::from_table(vec![0], vec![], Some("1".into())).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(&self, name: &str) -> Arc<FiniteGroup> {
        let mut g = self.clone();
        g.name = Some(name.to_string());
        Arc::new(g)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        // g x g^{-1}
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn comm(&self, a: usize, b: usize) -> usize {
        // a^{-1} b^{-1} a b
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let mut base = if e < 0 { self.inv(a) } else { a };
        let mut e = e.unsigned_abs();
        let mut acc = 0usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, num_lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Closure of a set of element indices under multiplication.
    pub fn closure_of(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut elems = vec![0usize];
        let mut frontier = vec![0usize];
        for &s in seed {
            if !in_set[s] {
                in_set[s] = true;
                elems.push(s);
                frontier.push(s);
            }
        }
        while let Some(x) = frontier.pop() {
            for i in 0..elems.len() {
                let y = elems[i];
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if !in_set[z] {
                        in_set[z] = true;
                        elems.push(z);
                        frontier.push(z);
                    }
                }
            }
        }
        elems.sort_unstable();
        elems
    }

    /// `[A, B]` as a sorted element set: closure of all commutators.
    pub fn commutator_set(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut seed = Vec::new();
        for &x in a {
            for &y in b {
                seed.push(self.comm(x, y));
            }
        }
        self.closure_of(&seed)
    }
}

/// A subgroup of a [`FiniteGroup`], held as a sorted set of element
/// indices of the parent.
#[derive(Clone)]
pub struct Subgroup {
    pub parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {} of {:?})", self.elements.len(), self.parent)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    pub fn new(parent: Arc<FiniteGroup>, mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        debug_assert!(is_closed(&parent, &elements), "element set is not a subgroup");
        Subgroup { parent, elements }
    }

    pub fn generated(parent: Arc<FiniteGroup>, seed: &[usize]) -> Self {
        let elements = parent.closure_of(seed);
        Subgroup { parent, elements }
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        Subgroup { parent, elements: vec![0] }
    }

    pub fn full(parent: Arc<FiniteGroup>) -> Self {
        let elements = (0..parent.order()).collect();
        Subgroup { parent, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        (0..g.order()).all(|x| self.elements.iter().all(|&n| self.contains(g.conj(x, n))))
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let elements: Vec<usize> =
            self.elements.iter().copied().filter(|&x| other.contains(x)).collect();
        Subgroup { parent: self.parent.clone(), elements }
    }

    /// Subgroup generated by the union (equals the set product when both
    /// factors are normal).
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut seed = self.elements.clone();
        seed.extend_from_slice(&other.elements);
        Subgroup::generated(self.parent.clone(), &seed)
    }

    /// Set product N·U as a sorted set (not necessarily a subgroup).
    pub fn set_product(&self, other: &Subgroup) -> Vec<usize> {
        let g = &self.parent;
        let mut out: Vec<usize> = Vec::with_capacity(self.order() * other.order());
        for &n in &self.elements {
            for &u in &other.elements {
                out.push(g.mul(n, u));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Re-index this subgroup as a standalone group. Returns the group and
    /// the embedding (new index -> parent index). Generators are a greedy
    /// generating set.
    pub fn as_group(&self) -> (Arc<FiniteGroup>, Vec<usize>) {
        let parent = &self.parent;
        // identity must come first
        let mut embed = vec![0usize];
        embed.extend(self.elements.iter().copied().filter(|&x| x != 0));
        let lookup: std::collections::HashMap<usize, usize> =
            embed.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let n = embed.len();
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = lookup[&parent.mul(embed[i], embed[j])] as u32;
            }
        }
        // greedy generating set
        let mut gens: Vec<usize> = Vec::new();
        let mut span = vec![0usize];
        {
            let tmp = FiniteGroup { order: n, mul: mul.clone(), inv: vec![0; n], generators: vec![], name: None };
            for x in 1..n {
                if !span.contains(&x) {
                    gens.push(x);
                    span = tmp.closure_of(&gens);
                    if span.len() == n {
                        break;
                    }
                }
            }
        }
        let g = FiniteGroup::from_table(mul, gens, None).expect("subgroup closure is a group");
        (g, embed)
    }
}

fn is_closed(g: &FiniteGroup, sorted: &[usize]) -> bool {
    sorted.binary_search(&0).is_ok()
        && sorted.iter().all(|&a| {
            sorted.binary_search(&g.inv(a)).is_ok()
                && sorted.iter().all(|&b| sorted.binary_search(&g.mul(a, b)).is_ok())
        })
}

fn num_lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

/// A filtration index ν = (i, j) with i ≥ j ≥ 1, ordered lexicographically.
/// The successor walks (i,1), …, (i,i), (i+1,1), ….
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FilterIndex {
    pub i: u32,
    pub j: u32,
}

impl FilterIndex {
    pub fn new(i: u32, j: u32) -> FilterIndex {
        assert!(i >= j && j >= 1, "filter index needs i >= j >= 1, got ({i},{j})");
        FilterIndex { i, j }
    }

    pub fn succ(self) -> FilterIndex {
        if self.i > self.j {
            FilterIndex { i: self.i, j: self.j + 1 }
        } else {
            FilterIndex { i: self.i + 1, j: 1 }
        }
    }

    /// Parse the display form "(i,j)".
    pub fn parse(s: &str) -> Option<FilterIndex> {
        let t = s.trim().strip_prefix('(')?.strip_suffix(')')?;
        let (a, b) = t.split_once(',')?;
        let i: u32 = a.trim().parse().ok()?;
        let j: u32 = b.trim().parse().ok()?;
        if i >= j && j >= 1 {
            Some(FilterIndex { i, j })
        } else {
            None
        }
    }
}

impl std::fmt::Display for FilterIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl std::fmt::Debug for FilterIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Derived series G ⊇ [G,G] ⊇ … until it stabilizes.
pub fn derived_series(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::full(g.clone())];
    loop {
        let last = series.last().unwrap();
        let next = g.commutator_set(last.elements(), last.elements());
        if next.len() == last.order() {
            break;
        }
        series.push(Subgroup::new(g.clone(), next));
    }
    series
}

pub fn is_solvable(g: &Arc<FiniteGroup>) -> bool {
    derived_series(g).last().unwrap().is_trivial()
}

/// Lower central series G ⊇ [G,G] ⊇ [[G,G],G] ⊇ … until it stabilizes.
pub fn lower_central_series(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::full(g.clone())];
    loop {
        let last = series.last().unwrap();
        let next = g.commutator_set(last.elements(), &Subgroup::full(g.clone()).elements().to_vec());
        if next.len() == last.order() {
            break;
        }
        series.push(Subgroup::new(g.clone(), next));
    }
    series
}

pub fn is_nilpotent(g: &Arc<FiniteGroup>) -> bool {
    lower_central_series(g).last().unwrap().is_trivial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgroup::corpus;
    use proptest::prelude::*;

    #[test]
    fn filter_index_succ() {
        assert_eq!(FilterIndex::new(2, 1).succ(), FilterIndex::new(2, 2));
        assert_eq!(FilterIndex::new(2, 2).succ(), FilterIndex::new(3, 1));
        assert_eq!(FilterIndex::new(1, 1).succ(), FilterIndex::new(2, 1));
    }

    #[test]
    fn filter_index_parse_roundtrip() {
        let v = FilterIndex::new(3, 2);
        assert_eq!(FilterIndex::parse(&v.to_string()), Some(v));
        assert_eq!(FilterIndex::parse("(1,2)"), None);
    }

    #[test]
    fn derived_series_s3() {
        let s3 = corpus::by_name("S3").unwrap();
        let ds = derived_series(&s3);
        let orders: Vec<usize> = ds.iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![6, 3, 1]);
        assert!(is_solvable(&s3));
    }

    #[test]
    fn derived_series_abelian() {
        let c4 = corpus::by_name("C4").unwrap();
        let orders: Vec<usize> = derived_series(&c4).iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![4, 1]);
    }

    #[test]
    fn a5_is_perfect() {
        let a5 = corpus::by_name("A5").unwrap();
        assert_eq!(a5.order(), 60);
        let ds = derived_series(&a5);
        assert_eq!(ds.len(), 1);
        assert!(!is_solvable(&a5));
    }

    #[test]
    fn subgroup_as_group_roundtrip() {
        let s4 = corpus::by_name("S4").unwrap();
        let h = Subgroup::generated(s4.clone(), &[s4.generators()[1]]);
        let (g, embed) = h.as_group();
        assert_eq!(g.order(), h.order());
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(embed[g.mul(a, b)], s4.mul(embed[a], embed[b]));
            }
        }
    }

    proptest! {
        #[test]
        fn succ_is_lex_increasing(i in 1u32..6, j in 1u32..6) {
            prop_assume!(i >= j);
            let v = FilterIndex::new(i, j);
            prop_assert!(v.succ() > v);
            // nothing strictly between v and succ(v)
            let s = v.succ();
            if s.j > 1 {
                prop_assert_eq!(FilterIndex::new(s.i, s.j - 1), v);
            } else {
                prop_assert_eq!(FilterIndex::new(v.i, v.i), v);
            }
        }
    }
}
