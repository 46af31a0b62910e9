//! Permutation parsing and orbit-closure generation of permutation groups.

use super::{FgroupError, FiniteGroup, CLOSURE_CAP};
use std::collections::HashMap;
use std::sync::Arc;

/// A permutation of `0..degree`, stored as the image table.
pub type Permutation = Vec<usize>;

fn compose(a: &Permutation, b: &Permutation) -> Permutation {
    // (a ∘ b)(x) = a(b(x))
    b.iter().map(|&x| a[x]).collect()
}

/// Generate the group spanned by `perms` acting on `0..degree`.
/// Element 0 is the identity; the rest appear in breadth-first order.
pub fn from_permutations(
    degree: usize,
    perms: &[Permutation],
    name: Option<String>,
    cap: usize,
) -> Result<Arc<FiniteGroup>, FgroupError> {
    for (index, p) in perms.iter().enumerate() {
        let mut seen = vec![false; degree];
        if p.len() != degree {
            return Err(FgroupError::NotBijective { index, degree });
        }
        for &x in p {
            if x >= degree || seen[x] {
                return Err(FgroupError::NotBijective { index, degree });
            }
            seen[x] = true;
        }
    }
    let id: Permutation = (0..degree).collect();
    let mut elems: Vec<Permutation> = vec![id.clone()];
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(id, 0);
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        for g in perms {
            let q = compose(&elems[i], g);
            if !index.contains_key(&q) {
                if elems.len() >= cap {
                    return Err(FgroupError::ClosureExceedsCap { cap });
                }
                index.insert(q.clone(), elems.len());
                frontier.push(elems.len());
                elems.push(q);
            }
        }
    }
    let n = elems.len();
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let q = compose(&elems[a], &elems[b]);
            mul[a * n + b] = index[&q] as u32;
        }
    }
    let generators: Vec<usize> = perms.iter().map(|g| index[g]).collect();
    let generators = if generators.is_empty() && n == 1 { vec![] } else { generators };
    FiniteGroup::from_table(mul, generators, name)
}

pub fn from_permutations_default(
    degree: usize,
    perms: &[Permutation],
    name: Option<String>,
) -> Result<Arc<FiniteGroup>, FgroupError> {
    from_permutations(degree, perms, name, CLOSURE_CAP)
}

/// Parse disjoint-cycle notation like `(0 1 2)(3 4)` into a permutation of
/// `0..degree`. `()` denotes the identity.
pub fn cycles_to_perm(s: &str, degree: usize) -> Option<Permutation> {
    let mut perm: Permutation = (0..degree).collect();
    let s = s.trim();
    if s.is_empty() || s == "()" {
        return Some(perm);
    }
    let mut rest = s;
    while !rest.is_empty() {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('(') {
            return None;
        }
        let close = rest.find(')')?;
        let inner = &rest[1..close];
        rest = &rest[close + 1..];
        let pts: Vec<usize> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().ok())
            .collect::<Option<_>>()?;
        if pts.is_empty() {
            continue;
        }
        for &x in &pts {
            if x >= degree {
                return None;
            }
        }
        for w in 0..pts.len() {
            let from = pts[w];
            let to = pts[(w + 1) % pts.len()];
            if perm[from] != from {
                return None; // cycles are not disjoint
            }
            perm[from] = to;
        }
    }
    Some(perm)
}

pub fn perm_to_cycles(p: &Permutation) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&x.to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_from_permutations() {
        let cyc = cycles_to_perm("(0 1 2)", 3).unwrap();
        let swap = cycles_to_perm("(0 1)", 3).unwrap();
        let g = from_permutations_default(3, &[cyc, swap], None).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn trivial_group_from_no_perms() {
        let g = from_permutations_default(1, &[], None).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn c4_from_cycle() {
        let c = cycles_to_perm("(0 1 2 3)", 4).unwrap();
        let g = from_permutations_default(4, &[c], None).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert_eq!(g.element_order(g.generators()[0]), 4);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let c = cycles_to_perm("(0 1 2 3 4 5 6)", 7).unwrap();
        let err = from_permutations(7, &[c], None, 5).unwrap_err();
        assert!(matches!(err, FgroupError::ClosureExceedsCap { cap: 5 }));
    }

    #[test]
    fn cycle_roundtrip() {
        let p = cycles_to_perm("(0 2)(1 4 3)", 5).unwrap();
        let s = perm_to_cycles(&p);
        assert_eq!(cycles_to_perm(&s, 5).unwrap(), p);
    }

    #[test]
    fn rejects_non_bijection() {
        let err = from_permutations_default(3, &[vec![0, 0, 1]], None).unwrap_err();
        assert!(matches!(err, FgroupError::NotBijective { .. }));
    }
}
