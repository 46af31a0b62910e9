//! Subgroup lattice enumeration and the §5-style reduction: Frattini and
//! Fitting subgroups, minimal proper supplements, and the Ore tower that
//! realizes a solvable group through iterated semidirect surjections.

use super::{
    derived_series, is_nilpotent, FgroupError, FiniteGroup, Subgroup, SUBGROUP_ENUM_CAP,
};
use std::collections::BTreeSet;
use std::sync::Arc;

fn check_cap(g: &FiniteGroup) -> Result<(), FgroupError> {
    if g.order() > SUBGROUP_ENUM_CAP {
        return Err(FgroupError::OrderExceedsCap { order: g.order(), cap: SUBGROUP_ENUM_CAP });
    }
    Ok(())
}

/// Every subgroup of `g`, enumerated by extending known subgroups one
/// generator at a time, starting from the trivial subgroup. Sorted by
/// (order, element set) for reproducibility.
pub fn all_subgroups(g: &Arc<FiniteGroup>) -> Result<Vec<Subgroup>, FgroupError> {
    check_cap(g)?;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(vec![0]);
    let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
    while let Some(h) = frontier.pop() {
        for x in 1..g.order() {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = h.clone();
            seed.push(x);
            let k = g.closure_of(&seed);
            if !seen.contains(&k) {
                seen.insert(k.clone());
                frontier.push(k);
            }
        }
    }
    let mut subs: Vec<Vec<usize>> = seen.into_iter().collect();
    subs.sort_by_key(|s| (s.len(), s.clone()));
    Ok(subs.into_iter().map(|elements| Subgroup { parent: g.clone(), elements }).collect())
}

pub fn maximal_subgroups(g: &Arc<FiniteGroup>) -> Result<Vec<Subgroup>, FgroupError> {
    let subs = all_subgroups(g)?;
    let proper: Vec<&Subgroup> = subs.iter().filter(|h| !h.is_full()).collect();
    let mut maximal = Vec::new();
    for h in &proper {
        let is_max = proper
            .iter()
            .all(|k| k.order() <= h.order() || !h.is_subset_of(k));
        if is_max {
            maximal.push((*h).clone());
        }
    }
    Ok(maximal)
}

/// Frattini subgroup Φ(G): intersection of all maximal subgroups.
/// For p-groups this is cross-checked against G^p[G,G].
pub fn frattini(g: &Arc<FiniteGroup>) -> Result<Subgroup, FgroupError> {
    check_cap(g)?;
    if g.order() == 1 {
        return Ok(Subgroup::trivial(g.clone()));
    }
    let maximal = maximal_subgroups(g)?;
    let mut phi = Subgroup::full(g.clone());
    for m in &maximal {
        phi = phi.intersect(m);
    }
    if let Some(p) = prime_power_base(g.order()) {
        let agemo = power_commutator_subgroup(g, p);
        assert_eq!(
            phi.elements(),
            agemo.elements(),
            "Frattini of a p-group must equal G^p[G,G]"
        );
    }
    Ok(phi)
}

/// G^p[G,G] for a p-group: subgroup generated by p-th powers and commutators.
pub fn power_commutator_subgroup(g: &Arc<FiniteGroup>, p: u32) -> Subgroup {
    let mut seed: Vec<usize> = (0..g.order()).map(|x| g.pow(x, p as i64)).collect();
    for a in 0..g.order() {
        for b in 0..g.order() {
            seed.push(g.comm(a, b));
        }
    }
    Subgroup::generated(g.clone(), &seed)
}

pub fn prime_power_base(order: usize) -> Option<u32> {
    if order <= 1 {
        return None;
    }
    let mut n = order;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return if n == 1 { Some(p as u32) } else { None };
        }
        p += 1;
    }
    Some(n as u32)
}

fn prime_divisors(order: usize) -> Vec<usize> {
    let mut n = order;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Fitting subgroup F(G): the product of the cores O_p(G), each computed
/// as the intersection of all Sylow p-subgroups.
pub fn fitting(g: &Arc<FiniteGroup>) -> Result<Subgroup, FgroupError> {
    check_cap(g)?;
    if g.order() == 1 {
        return Ok(Subgroup::trivial(g.clone()));
    }
    let subs = all_subgroups(g)?;
    let mut fit = Subgroup::trivial(g.clone());
    for p in prime_divisors(g.order()) {
        let mut pk = 1;
        while g.order() % (pk * p) == 0 {
            pk *= p;
        }
        let sylows: Vec<&Subgroup> = subs.iter().filter(|h| h.order() == pk).collect();
        let mut core = Subgroup::full(g.clone());
        for s in &sylows {
            core = core.intersect(s);
        }
        fit = fit.join(&core);
    }
    Ok(fit)
}

/// Minimal-order proper supplement U of a normal subgroup N: U ≠ G with
/// N·U = G, ties broken by the smallest element set.
pub fn proper_supplement(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<Subgroup, FgroupError> {
    check_cap(g)?;
    if !Arc::ptr_eq(&n.parent, g) || !n.is_normal() {
        return Err(FgroupError::NotNormal);
    }
    let phi = frattini(g)?;
    if n.is_subset_of(&phi) && !n.is_trivial() || (n.is_trivial() && g.order() > 1) {
        // N ⊆ Φ(G) (note N = 1 never supplements a nontrivial G)
        return Err(FgroupError::ContainedInFrattini);
    }
    // all_subgroups is sorted by (order, elements); first hit is the answer
    for u in all_subgroups(g)? {
        if u.is_full() && g.order() > 1 {
            continue;
        }
        if n.set_product(&u).len() == g.order() {
            return Ok(u);
        }
    }
    Err(FgroupError::ContainedInFrattini)
}

/// One step of the Ore tower: the Fitting kernel and the supplement that
/// acts on it, both as subgroups of the group at that level.
#[derive(Clone, Debug)]
pub struct OreStep {
    pub level_group: Arc<FiniteGroup>,
    pub kernel: Subgroup,
    pub actor: Subgroup,
}

/// The Ore recursion: G₀ = G, each step records (F(Gₖ), Uₖ) with
/// Uₖ a minimal proper supplement of F(Gₖ) and G_{k+1} = Uₖ. Nilpotent
/// levels terminate with kernel = Gₖ and actor = 1. Each step's map
/// F(Gₖ) ⋊ Uₖ → Gₖ, (h,u) ↦ h·u is checked to be a surjective
/// homomorphism.
pub fn ore_tower(g: &Arc<FiniteGroup>) -> Result<Vec<OreStep>, FgroupError> {
    check_cap(g)?;
    if !super::is_solvable(g) {
        return Err(FgroupError::NotSolvable);
    }
    let mut tower = Vec::new();
    let mut level = g.clone();
    while level.order() > 1 {
        if is_nilpotent(&level) {
            tower.push(OreStep {
                level_group: level.clone(),
                kernel: Subgroup::full(level.clone()),
                actor: Subgroup::trivial(level.clone()),
            });
            break;
        }
        let f = fitting(&level)?;
        let u = proper_supplement(&level, &f)?;
        verify_ore_step(&level, &f, &u);
        let (next, _) = u.as_group();
        tower.push(OreStep { level_group: level.clone(), kernel: f, actor: u });
        level = next;
    }
    Ok(tower)
}

/// Check that (h, u) ↦ h·u from F ⋊ U (U acting by conjugation) onto G is
/// a surjective homomorphism.
fn verify_ore_step(g: &Arc<FiniteGroup>, f: &Subgroup, u: &Subgroup) {
    // homomorphism: (h1,u1)(h2,u2) = (h1 · u1 h2 u1^{-1}, u1 u2)
    for &h1 in f.elements() {
        for &u1 in u.elements() {
            for &h2 in f.elements() {
                for &u2 in u.elements() {
                    let left = g.mul(g.mul(h1, g.conj(u1, h2)), g.mul(u1, u2));
                    let right = g.mul(g.mul(h1, u1), g.mul(h2, u2));
                    assert_eq!(left, right, "semidirect law failed in Ore step");
                }
            }
        }
    }
    assert_eq!(f.set_product(u).len(), g.order(), "Ore step map is not surjective");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgroup::corpus;

    #[test]
    fn frattini_s3_trivial() {
        let s3 = corpus::by_name("S3").unwrap();
        assert_eq!(frattini(&s3).unwrap().order(), 1);
    }

    #[test]
    fn frattini_c4() {
        let c4 = corpus::by_name("C4").unwrap();
        let phi = frattini(&c4).unwrap();
        assert_eq!(phi.order(), 2);
        // the square of the generator
        let g0 = c4.generators()[0];
        assert!(phi.contains(c4.mul(g0, g0)));
    }

    #[test]
    fn frattini_q8_is_center() {
        let q8 = corpus::by_name("Q8").unwrap();
        let phi = frattini(&q8).unwrap();
        assert_eq!(phi.order(), 2);
    }

    #[test]
    fn frattini_c8() {
        let c8 = corpus::by_name("C8").unwrap();
        assert_eq!(frattini(&c8).unwrap().order(), 4);
    }

    #[test]
    fn fitting_values() {
        let s3 = corpus::by_name("S3").unwrap();
        assert_eq!(fitting(&s3).unwrap().order(), 3);
        let s4 = corpus::by_name("S4").unwrap();
        let f = fitting(&s4).unwrap();
        assert_eq!(f.order(), 4);
        assert!(f.elements().iter().all(|&x| x == 0 || s4.element_order(x) == 2));
        let d4 = corpus::by_name("D4").unwrap();
        assert!(fitting(&d4).unwrap().is_full());
        let a4 = corpus::by_name("A4").unwrap();
        assert_eq!(fitting(&a4).unwrap().order(), 4);
    }

    #[test]
    fn supplement_values() {
        let s3 = corpus::by_name("S3").unwrap();
        let c3 = fitting(&s3).unwrap();
        assert_eq!(proper_supplement(&s3, &c3).unwrap().order(), 2);

        let s4 = corpus::by_name("S4").unwrap();
        let v4 = fitting(&s4).unwrap();
        let u = proper_supplement(&s4, &v4).unwrap();
        assert_eq!(u.order(), 6);

        let c2 = corpus::by_name("C2").unwrap();
        let full = Subgroup::full(c2.clone());
        assert_eq!(proper_supplement(&c2, &full).unwrap().order(), 1);
    }

    #[test]
    fn supplement_rejects_frattini_kernel() {
        let c4 = corpus::by_name("C4").unwrap();
        let phi = frattini(&c4).unwrap();
        assert!(matches!(
            proper_supplement(&c4, &phi),
            Err(FgroupError::ContainedInFrattini)
        ));
    }

    #[test]
    fn ore_tower_s4() {
        let s4 = corpus::by_name("S4").unwrap();
        let tower = ore_tower(&s4).unwrap();
        let shape: Vec<(usize, usize)> =
            tower.iter().map(|s| (s.kernel.order(), s.actor.order())).collect();
        assert_eq!(shape, vec![(4, 6), (3, 2), (2, 1)]);
    }

    #[test]
    fn ore_tower_nilpotent_base() {
        let c6 = corpus::by_name("C6").unwrap();
        let tower = ore_tower(&c6).unwrap();
        assert_eq!(tower.len(), 1);
        assert_eq!(tower[0].kernel.order(), 6);
        assert_eq!(tower[0].actor.order(), 1);
    }

    #[test]
    fn ore_tower_s3() {
        let s3 = corpus::by_name("S3").unwrap();
        let shape: Vec<(usize, usize)> = ore_tower(&s3)
            .unwrap()
            .iter()
            .map(|s| (s.kernel.order(), s.actor.order()))
            .collect();
        assert_eq!(shape, vec![(3, 2), (2, 1)]);
    }

    #[test]
    fn ore_tower_rejects_a5() {
        let a5 = corpus::by_name("A5").unwrap();
        assert!(matches!(ore_tower(&a5), Err(FgroupError::NotSolvable)));
    }
}
