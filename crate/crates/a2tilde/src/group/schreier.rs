//! Reidemeister-Schreier rewriting and the perfectness test.

use super::abelian::{abelianization, AbelianInvariants};
use super::coset::{abelian_kernel_table, generator_commutators, todd_coxeter, CosetTable};
use super::words::{Presentation, Word};
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::VecDeque;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Transversal {
    BreadthFirst,
    DepthFirst,
}

/// A Schreier transversal: for each coset, the tree edge `(parent, column)`
/// it was reached by.
fn transversal(t: &CosetTable, kind: Transversal) -> Vec<Option<(u32, usize)>> {
    let mut tree = vec![None; t.cosets];
    let mut seen = vec![false; t.cosets];
    seen[0] = true;
    let mut work: VecDeque<u32> = VecDeque::from([0]);
    while let Some(c) = match kind {
        Transversal::BreadthFirst => work.pop_front(),
        Transversal::DepthFirst => work.pop_back(),
    } {
        let cols: Vec<usize> = match kind {
            Transversal::BreadthFirst => (0..2 * t.generators).collect(),
            Transversal::DepthFirst => (0..2 * t.generators).rev().collect(),
        };
        for x in cols {
            let d = t.table[c as usize][x];
            if !seen[d as usize] {
                seen[d as usize] = true;
                tree[d as usize] = Some((c, x));
                work.push_back(d);
            }
        }
    }
    tree
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupPresentation {
    pub presentation: Presentation,
    /// For each Schreier generator, the word `u_c g u_{cg}^{-1}` in the parent group.
    pub generator_words: Vec<Word>,
    /// Number of rewritten relators before empty ones are dropped.
    pub raw_relators: usize,
}

/// Presentation of the subgroup described by a complete coset table.
pub fn reidemeister_schreier(p: &Presentation, t: &CosetTable, kind: Transversal) -> Result<SubgroupPresentation> {
    if !t.complete {
        return Err(Error::IncompleteTable);
    }
    let tree = transversal(t, kind);
    // coset representatives
    let mut reps: Vec<Option<Word>> = vec![None; t.cosets];
    reps[0] = Some(Word::empty());
    fn rep_of(c: u32, tree: &[Option<(u32, usize)>], reps: &mut Vec<Option<Word>>) -> Word {
        if let Some(w) = &reps[c as usize] {
            return w.clone();
        }
        let (parent, x) = tree[c as usize].expect("table is connected");
        let w = rep_of(parent, tree, reps).mul(&Word(vec![(x / 2, if x % 2 == 0 { 1 } else { -1 })]));
        reps[c as usize] = Some(w.clone());
        w
    }
    let reps: Vec<Word> = (0..t.cosets as u32).map(|c| rep_of(c, &tree, &mut reps)).collect();
    let is_tree = |c: u32, g: usize| -> bool {
        let d = t.table[c as usize][2 * g];
        tree[d as usize] == Some((c, 2 * g)) || tree[c as usize] == Some((d, 2 * g + 1))
    };
    let mut index = vec![vec![usize::MAX; p.rank()]; t.cosets];
    let mut names = Vec::new();
    let mut words = Vec::new();
    for c in 0..t.cosets as u32 {
        for g in 0..p.rank() {
            if !is_tree(c, g) {
                index[c as usize][g] = names.len();
                names.push(format!("{}_{}", p.generators[g], c));
                let d = t.table[c as usize][2 * g];
                words.push(reps[c as usize].mul(&Word::generator(g)).mul(&reps[d as usize].inverse()));
            }
        }
    }
    let mut relators = Vec::new();
    for c in 0..t.cosets as u32 {
        for r in &p.relators {
            let mut cur = c;
            let mut w = Word::empty();
            for l in r.letters() {
                let g = (l.unsigned_abs() - 1) as usize;
                if l > 0 {
                    if index[cur as usize][g] != usize::MAX {
                        w.push(index[cur as usize][g], 1);
                    }
                    cur = t.table[cur as usize][2 * g];
                } else {
                    let prev = t.table[cur as usize][2 * g + 1];
                    if index[prev as usize][g] != usize::MAX {
                        w.push(index[prev as usize][g], -1);
                    }
                    cur = prev;
                }
            }
            debug_assert_eq!(cur, c);
            relators.push(w);
        }
    }
    let raw = relators.len();
    Ok(SubgroupPresentation { presentation: Presentation::new(names, relators)?, generator_words: words, raw_relators: raw })
}

#[derive(Clone, Debug, Serialize)]
pub struct PerfectReport {
    pub index: usize,
    /// Index found by coset enumeration from the subgroup generators.
    pub enumerated_index: usize,
    pub cosets_defined: usize,
    pub schreier_generators: usize,
    pub raw_relators: usize,
    pub abelianization: AbelianInvariants,
    /// Abelianization with the depth-first transversal.
    pub abelianization_dfs: AbelianInvariants,
    pub perfect: bool,
}

/// How the subgroup is given to [`perfect_check`].
#[derive(Clone, Debug)]
pub enum SubgroupSpec {
    /// The derived subgroup; requires a finite abelianization.
    Derived,
    Generators(Vec<Word>),
}

/// Enumerates the subgroup's cosets, rewrites a presentation and tests whether
/// its abelianization is trivial.
///
/// For the derived subgroup the table is built from the abelianization, and
/// HLT enumeration from the commutators and the Schreier generators must
/// reproduce the same index.
pub fn perfect_check(p: &Presentation, spec: &SubgroupSpec, max_cosets: usize) -> Result<PerfectReport> {
    let (table, enumerated) = match spec {
        SubgroupSpec::Derived => {
            if abelianization(p).free_rank > 0 {
                return Err(Error::CosetLimitExceeded(max_cosets));
            }
            let table = abelian_kernel_table(p)?;
            let sub = reidemeister_schreier(p, &table, Transversal::BreadthFirst)?;
            let mut gens = generator_commutators(p);
            gens.extend(sub.generator_words);
            let check = todd_coxeter(p, &gens, max_cosets)?;
            (table, check)
        }
        SubgroupSpec::Generators(g) => {
            let t = todd_coxeter(p, g, max_cosets)?;
            (t.clone(), t)
        }
    };
    let bfs = reidemeister_schreier(p, &table, Transversal::BreadthFirst)?;
    let dfs = reidemeister_schreier(p, &table, Transversal::DepthFirst)?;
    let ab = abelianization(&bfs.presentation);
    let ab_dfs = abelianization(&dfs.presentation);
    Ok(PerfectReport {
        index: table.cosets,
        enumerated_index: enumerated.cosets,
        cosets_defined: enumerated.defined,
        schreier_generators: bfs.presentation.rank(),
        raw_relators: bfs.raw_relators,
        perfect: ab.is_trivial() && enumerated.cosets == table.cosets,
        abelianization: ab,
        abelianization_dfs: ab_dfs,
    })
}

