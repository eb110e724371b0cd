//! Words in run-length form and finite presentations.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

/// A freely reduced word: consecutive syllables have distinct generators and
/// nonzero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<(usize, i64)>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_syllables(s: &[(usize, i64)]) -> Word {
        let mut w = Word::empty();
        for &(g, e) in s {
            w.push(g, e);
        }
        w
    }

    pub fn generator(g: usize) -> Word {
        Word(vec![(g, 1)])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends `g^e`, reducing against the last syllable.
    pub fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.0.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.0.pop();
                }
            }
            _ => self.0.push((g, e)),
        }
    }

    pub fn mul(&self, o: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &o.0 {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.abs()).fold(Word::empty(), |acc, _| acc.mul(&base))
    }

    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Letter sequence, `+(g+1)` or `-(g+1)` per letter.
    pub fn letters(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for &(g, e) in &self.0 {
            let l = (g as i64 + 1) * e.signum();
            out.extend(std::iter::repeat(l).take(e.unsigned_abs() as usize));
        }
        out
    }

    pub fn length(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    /// Replaces every generator `g` by the word `images[g]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut w = Word::empty();
        for &(g, e) in &self.0 {
            w = w.mul(&images[g].pow(e));
        }
        w
    }

    /// Cyclic reduction.
    pub fn cyclically_reduced(&self) -> Word {
        let mut s = self.0.clone();
        loop {
            if s.len() >= 2 && s[0].0 == s[s.len() - 1].0 {
                let (_, e) = s.pop().unwrap();
                s[0].1 += e;
                if s[0].1 == 0 {
                    s.remove(0);
                }
            } else {
                return Word(s);
            }
        }
    }

    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for &(g, e) in &self.0 {
            v[g] += e;
        }
        v
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "<identity>".into();
        }
        let mut s = String::new();
        for (k, &(g, e)) in self.0.iter().enumerate() {
            if k > 0 {
                s.push('*');
            }
            s.push_str(&names[g]);
            if e != 1 {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<Vec<(String, i64)>>,
}

impl Presentation {
    /// Relators are freely reduced and empty ones dropped.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Presentation> {
        let n = generators.len();
        let mut out = Vec::with_capacity(relators.len());
        for r in relators {
            if r.0.iter().any(|&(g, _)| g >= n) {
                return Err(Error::InvalidData(format!("relator uses a generator outside 0..{n}")));
            }
            let r = Word::from_syllables(&r.0);
            if !r.is_empty() {
                out.push(r);
            }
        }
        Ok(Presentation { generators, relators: out })
    }

    pub fn free(names: &[&str]) -> Presentation {
        Presentation { generators: names.iter().map(|s| s.to_string()).collect(), relators: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = PresentationJson {
            generators: self.generators.clone(),
            relators: self
                .relators
                .iter()
                .map(|r| r.0.iter().map(|&(g, e)| (self.generators[g].clone(), e)).collect())
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Presentation> {
        let j: PresentationJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let relators = j
            .relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(name, e)| {
                        let g = j.generators.iter().position(|n| n == name);
                        g.map(|g| (g, *e)).ok_or_else(|| Error::Parse(format!("unknown generator {name}")))
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(|s| Word::from_syllables(&s))
            })
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(j.generators, relators)
    }

    /// GAP input defining `F` and `G := F / [...]`.
    pub fn to_gap(&self) -> String {
        let names: Vec<String> = self.generators.iter().map(|g| format!("\"{g}\"")).collect();
        let mut s = format!("F := FreeGroup({});;\n", names.join(", "));
        for (k, g) in self.generators.iter().enumerate() {
            let _ = writeln!(s, "{g} := F.{};;", k + 1);
        }
        let rels: Vec<String> = self.relators.iter().map(|r| r.render(&self.generators)).collect();
        let _ = writeln!(s, "G := F / [ {} ];;", rels.join(", "));
        s
    }

    /// Reads the format written by [`Presentation::to_gap`]; generator
    /// assignment lines are optional.
    pub fn from_gap(text: &str) -> Result<Presentation> {
        let flat: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join(" ");
        let start = flat.find("FreeGroup(").ok_or_else(|| Error::Parse("missing FreeGroup".into()))? + "FreeGroup(".len();
        let end = start + flat[start..].find(')').ok_or_else(|| Error::Parse("unclosed FreeGroup".into()))?;
        let generators: Vec<String> = flat[start..end]
            .split(',')
            .map(|s| s.trim().trim_matches('"').to_string())
            .filter(|s| !s.is_empty())
            .collect();
        let open = flat.find("/ [").or_else(|| flat.find("/[")).ok_or_else(|| Error::Parse("missing relator list".into()))?;
        let lb = open + flat[open..].find('[').unwrap() + 1;
        let rb = lb + flat[lb..].find(']').ok_or_else(|| Error::Parse("unclosed relator list".into()))?;
        let mut relators = Vec::new();
        for item in flat[lb..rb].split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let mut w = Word::empty();
            for factor in item.split('*').map(str::trim) {
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n.trim(),
                        e.trim().trim_matches(|c| c == '(' || c == ')').parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in {factor}")))?,
                    ),
                    None => (factor, 1),
                };
                let g = generators.iter().position(|n| n == name).ok_or_else(|| Error::Parse(format!("unknown generator {name}")))?;
                w.push(g, e);
            }
            relators.push(w);
        }
        Presentation::new(generators, relators)
    }
}
