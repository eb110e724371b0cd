//! Coset enumeration (HLT strategy with coincidence processing).

use super::abelian::abelian_map;
use super::words::{Presentation, Word};
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const NONE: u32 = u32::MAX;

/// Column `2g` is the action of generator `g`, column `2g+1` of its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetTable {
    pub cosets: usize,
    pub generators: usize,
    pub table: Vec<Vec<u32>>,
    pub complete: bool,
    pub subgroup: Vec<Word>,
    /// Cosets defined during the enumeration, including those later merged.
    pub defined: usize,
}

impl CosetTable {
    pub fn act(&self, c: u32, g: usize, inverse: bool) -> u32 {
        self.table[c as usize][2 * g + inverse as usize]
    }

    pub fn act_word(&self, c: u32, w: &Word) -> Option<u32> {
        let mut c = c;
        for l in w.letters() {
            let col = col_of(l);
            c = self.table[c as usize][col];
            if c == NONE {
                return None;
            }
        }
        Some(c)
    }

    /// Every relator closes at every coset and subgroup generators fix coset 0.
    pub fn is_consistent(&self, p: &Presentation) -> bool {
        if !self.complete {
            return false;
        }
        let inverse_ok = (0..self.cosets).all(|c| {
            (0..2 * self.generators).all(|x| self.table[self.table[c][x] as usize][x ^ 1] == c as u32)
        });
        inverse_ok
            && (0..self.cosets as u32).all(|c| p.relators.iter().all(|r| self.act_word(c, r) == Some(c)))
            && self.subgroup.iter().all(|h| self.act_word(0, h) == Some(0))
    }
}

fn col_of(letter: i64) -> usize {
    let g = (letter.unsigned_abs() - 1) as usize;
    2 * g + (letter < 0) as usize
}

struct Enumerator {
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    live: usize,
    cols: usize,
    max: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn rep(&mut self, mut c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<()> {
        if self.live >= self.max {
            return Err(Error::CosetLimitExceeded(self.max));
        }
        let d = self.table.len() as u32;
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.live += 1;
        self.table[c as usize][x] = d;
        self.table[d as usize][x ^ 1] = c;
        Ok(())
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e as usize][x];
                if f == NONE {
                    continue;
                }
                if self.table[f as usize][x ^ 1] == e {
                    self.table[f as usize][x ^ 1] = NONE;
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let ex = self.table[e1 as usize][x];
                let fx = self.table[f1 as usize][x ^ 1];
                if ex != NONE {
                    self.merge(f1, ex);
                } else if fx != NONE {
                    self.merge(e1, fx);
                } else {
                    self.table[e1 as usize][x] = f1;
                    self.table[f1 as usize][x ^ 1] = e1;
                }
            }
        }
        self.queue.clear();
    }

    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Result<()> {
        let mut f = c;
        let mut b = c;
        let mut i = 0isize;
        let mut j = w.len() as isize - 1;
        loop {
            while i <= j && self.table[f as usize][w[i as usize]] != NONE {
                f = self.table[f as usize][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b as usize][w[j as usize] ^ 1] != NONE {
                b = self.table[b as usize][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.table[f as usize][x] = b;
                self.table[b as usize][x ^ 1] = f;
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup`.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    let cols = 2 * p.rank();
    let cols_of = |w: &Word| -> Vec<usize> { w.letters().into_iter().map(col_of).collect() };
    let rels: Vec<Vec<usize>> = p.relators.iter().map(cols_of).collect();
    let mut en = Enumerator { table: vec![vec![NONE; cols]], parent: vec![0], live: 1, cols, max: max_cosets.max(1), queue: Vec::new() };
    for h in subgroup {
        en.scan_and_fill(0, &cols_of(h))?;
    }
    let mut c = 0u32;
    while (c as usize) < en.table.len() {
        for r in &rels {
            if !en.alive(c) {
                break;
            }
            en.scan_and_fill(c, r)?;
        }
        if en.alive(c) {
            for x in 0..cols {
                if en.table[c as usize][x] == NONE {
                    en.define(c, x)?;
                }
            }
        }
        c += 1;
    }
    let defined = en.table.len();
    Ok(standardize(&mut en, p.rank(), subgroup, defined))
}

/// Renumbers live cosets in breadth-first order from coset 0.
fn standardize(en: &mut Enumerator, gens: usize, subgroup: &[Word], defined: usize) -> CosetTable {
    let mut order: Vec<u32> = vec![en.rep(0)];
    let mut index: BTreeMap<u32, u32> = BTreeMap::from([(order[0], 0)]);
    let mut k = 0;
    while k < order.len() {
        let c = order[k];
        k += 1;
        for x in 0..en.cols {
            let d = en.table[c as usize][x];
            if d == NONE {
                continue;
            }
            let d = en.rep(d);
            if let std::collections::btree_map::Entry::Vacant(v) = index.entry(d) {
                v.insert(order.len() as u32);
                order.push(d);
            }
        }
    }
    let mut complete = true;
    let table: Vec<Vec<u32>> = order
        .iter()
        .map(|&c| {
            (0..en.cols)
                .map(|x| {
                    let d = en.table[c as usize][x];
                    if d == NONE {
                        complete = false;
                        NONE
                    } else {
                        let d = en.rep(d);
                        index[&d]
                    }
                })
                .collect()
        })
        .collect();
    CosetTable { cosets: order.len(), generators: gens, table, complete, subgroup: subgroup.to_vec(), defined }
}

/// Coset table of the kernel of the abelianization, with cosets labelled by
/// their images in `⊕ Z/d_k` in lexicographic order. Requires a finite
/// abelianization.
pub fn abelian_kernel_table(p: &Presentation) -> Result<CosetTable> {
    let map = abelian_map(p).ok_or_else(|| Error::InvalidData("abelianization is infinite".into()))?;
    let mut elements: Vec<Vec<u64>> = vec![Vec::new()];
    for &m in &map.moduli {
        elements = elements.into_iter().flat_map(|e| (0..m).map(move |k| [e.clone(), vec![k]].concat())).collect();
    }
    let index: BTreeMap<Vec<u64>, u32> = elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
    let shift = |e: &[u64], img: &[u64], sign: bool| -> u32 {
        let v: Vec<u64> = e
            .iter()
            .zip(img)
            .zip(&map.moduli)
            .map(|((&a, &b), &m)| if sign { (a + m - b) % m } else { (a + b) % m })
            .collect();
        index[&v]
    };
    let table: Vec<Vec<u32>> = elements
        .iter()
        .map(|e| (0..2 * p.rank()).map(|x| shift(e, &map.images[x / 2], x % 2 == 1)).collect())
        .collect();
    Ok(CosetTable { cosets: elements.len(), generators: p.rank(), table, complete: true, subgroup: Vec::new(), defined: elements.len() })
}

/// Commutators of all pairs of generators.
pub fn generator_commutators(p: &Presentation) -> Vec<Word> {
    let mut out = Vec::new();
    for a in 0..p.rank() {
        for b in a + 1..p.rank() {
            out.push(Word::commutator(&Word::generator(a), &Word::generator(b)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral() -> Presentation {
        // <a, b | a^3, b^2, (ab)^2>
        Presentation::new(
            vec!["a".into(), "b".into()],
            vec![Word(vec![(0, 3)]), Word(vec![(1, 2)]), Word(vec![(0, 1), (1, 1), (0, 1), (1, 1)])],
        )
        .unwrap()
    }

    #[test]
    fn small_groups() {
        let p = dihedral();
        let t = todd_coxeter(&p, &[], 100).unwrap();
        assert_eq!(t.cosets, 6);
        assert!(t.is_consistent(&p));
        let t = todd_coxeter(&p, &[Word::generator(0)], 100).unwrap();
        assert_eq!(t.cosets, 2);
        let t = todd_coxeter(&p, &[Word::generator(0), Word::generator(1)], 100).unwrap();
        assert_eq!(t.cosets, 1);
        let k = abelian_kernel_table(&p).unwrap();
        assert_eq!(k.cosets, 2);
        assert!(k.is_consistent(&p));
    }

    #[test]
    fn infinite_index() {
        let f = Presentation::free(&["a", "b"]);
        assert_eq!(todd_coxeter(&f, &[], 1000), Err(Error::CosetLimitExceeded(1000)));
    }
}
