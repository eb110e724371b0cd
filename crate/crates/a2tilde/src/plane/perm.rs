//! Small permutation groups given by explicit element lists.

use std::collections::{BTreeSet, HashSet, VecDeque};

pub type Perm = Vec<u8>;

pub fn identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

/// `a ∘ b`: apply `b` first.
pub fn compose(a: &[u8], b: &[u8]) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn inverse(a: &[u8]) -> Perm {
    let mut r = vec![0u8; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x as usize] = i as u8;
    }
    r
}

pub fn is_identity(a: &[u8]) -> bool {
    a.iter().enumerate().all(|(i, &x)| i as u8 == x)
}

/// All elements of the group generated by `gens`, sorted.
pub fn closure(degree: usize, gens: &[Perm]) -> Vec<Perm> {
    let id = identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = compose(s, &g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Size of the orbit of the ordered tuple `(0, 1, ..., k-1)`.
pub fn tuple_orbit_size(elements: &[Perm], k: usize) -> usize {
    let set: HashSet<Vec<u8>> = elements.iter().map(|g| g[..k].to_vec()).collect();
    set.len()
}

fn falling_factorial(n: usize, k: usize) -> usize {
    (n - k + 1..=n).product()
}

/// Largest k such that the group acts transitively on ordered k-tuples of
/// distinct points.
pub fn max_transitivity(elements: &[Perm], degree: usize) -> usize {
    let mut k = 0;
    while k < degree && tuple_orbit_size(elements, k + 1) == falling_factorial(degree, k + 1) {
        k += 1;
    }
    k
}

/// Indices into `elements` of the subgroup generated by `gens` (indices).
fn subgroup_closure(elements: &[Perm], gens: &BTreeSet<usize>) -> BTreeSet<usize> {
    let index = |p: &Perm| elements.binary_search(p).expect("closed group");
    let id = index(&identity(elements[0].len()));
    let mut set = BTreeSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for &s in gens {
            let h = index(&compose(&elements[s], &elements[g]));
            if set.insert(h) {
                queue.push_back(h);
            }
        }
    }
    set
}

fn normal_closure(elements: &[Perm], ambient: &[usize], seeds: &BTreeSet<usize>) -> BTreeSet<usize> {
    let index = |p: &Perm| elements.binary_search(p).expect("closed group");
    let mut gens = BTreeSet::new();
    for &s in seeds {
        for &g in ambient {
            let gi = inverse(&elements[g]);
            gens.insert(index(&compose(&compose(&elements[g], &elements[s]), &gi)));
        }
    }
    subgroup_closure(elements, &gens)
}

/// All normal subgroups of the subgroup `ambient` (element indices), found as
/// joins of normal closures of single elements.
pub fn normal_subgroups(elements: &[Perm], ambient: &[usize]) -> Vec<BTreeSet<usize>> {
    let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for &x in ambient {
        found.insert(normal_closure(elements, ambient, &BTreeSet::from([x])));
    }
    loop {
        let current: Vec<BTreeSet<usize>> = found.iter().cloned().collect();
        let mut grew = false;
        for a in &current {
            for b in &current {
                let seeds: BTreeSet<usize> = a.union(b).copied().collect();
                let j = subgroup_closure(elements, &seeds);
                if found.insert(j) {
                    grew = true;
                }
            }
        }
        if !grew {
            return found.into_iter().collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_normal_subgroups() {
        let g = closure(3, &[vec![1, 0, 2], vec![1, 2, 0]]);
        assert_eq!(g.len(), 6);
        let all: Vec<usize> = (0..6).collect();
        let ns = normal_subgroups(&g, &all);
        let sizes: Vec<usize> = ns.iter().map(|s| s.len()).collect::<BTreeSet<_>>().into_iter().collect();
        assert_eq!(sizes, vec![1, 3, 6]);
        assert_eq!(max_transitivity(&g, 3), 3);
    }
}
