//! Canonical numerical semigroup values.
//!
//! A semigroup is stored as its Apéry vector with respect to the multiplicity
//! `g1`: entry `r` is the least element of `S` congruent to `r` modulo `g1`.
//! Membership, the Frobenius number, genus and the minimal generating system
//! all fall out of that vector.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest multiplicity accepted by [`Semigroup::from_generators`]. The Apéry
/// vector has one entry per residue class, so this bounds memory.
pub const MAX_MULTIPLICITY: i64 = 1 << 22;

/// Ascending, pairwise distinct generators, each at least 2, with gcd 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GeneratorTuple(Vec<i64>);

impl GeneratorTuple {
    pub fn new(gens: Vec<i64>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&value) = gens.iter().find(|&&g| g < 2) {
            return Err(Error::UnitGenerator { value });
        }
        if !gens.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::NotAscending);
        }
        let d = gens.iter().fold(0, |acc, &g| gcd(acc, g));
        if d != 1 {
            return Err(Error::NonCoprime { gcd: d });
        }
        Ok(GeneratorTuple(gens))
    }

    /// The generating system `(1)` of the full monoid. Only the enumeration
    /// root uses it.
    fn unit() -> Self {
        GeneratorTuple(vec![1])
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GeneratorTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

pub(crate) fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// A numerical semigroup in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Semigroup {
    apery: Vec<i64>,
    frobenius: i64,
    genus: i64,
    small_count: i64,
    min_gens: GeneratorTuple,
    q: i64,
}

/// The six scalar invariants used by the bound checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub multiplicity: i64,
    pub embedding_dim: i64,
    pub frobenius: i64,
    pub genus: i64,
    pub small_count: i64,
    pub q: i64,
}

impl Semigroup {
    /// Builds the semigroup generated by `gens`. Input may be unsorted and
    /// redundant; the minimal generating system is recovered.
    pub fn from_generators(gens: &[i64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&value) = gens.iter().find(|&&g| g < 2) {
            return Err(Error::UnitGenerator { value });
        }
        let d = gens.iter().fold(0, |acc, &g| gcd(acc, g));
        if d != 1 {
            return Err(Error::NonCoprime { gcd: d });
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();

        let m = sorted[0];
        if m > MAX_MULTIPLICITY {
            return Err(Error::Overflow {
                what: "Apéry vector (multiplicity too large)",
            });
        }
        let apery = relax_apery(m, &sorted[1..])?;
        Self::from_apery(apery)
    }

    /// The full monoid N, the root of the semigroup tree.
    pub fn full() -> Self {
        Semigroup {
            apery: vec![0],
            frobenius: -1,
            genus: 0,
            small_count: 0,
            min_gens: GeneratorTuple::unit(),
            q: 0,
        }
    }

    fn from_apery(apery: Vec<i64>) -> Result<Self> {
        let m = apery.len() as i64;
        debug_assert!(m >= 2);
        let max = *apery.iter().max().expect("nonempty Apéry vector");
        let frobenius = max - m;
        // Residue class r contributes floor(w_r / m) gaps below w_r.
        let genus = apery
            .iter()
            .try_fold(0i64, |acc, &w| acc.checked_add(w / m))
            .ok_or(Error::Overflow { what: "genus" })?;
        let small_count = frobenius + 1 - genus;
        let q = (frobenius + m) / m;

        let mut gens = vec![m];
        for &w in apery.iter().skip(1) {
            let decomposable = apery.iter().skip(1).any(|&w2| {
                w2 < w && {
                    let rest = w - w2;
                    apery[(rest % m) as usize] <= rest
                }
            });
            if !decomposable {
                gens.push(w);
            }
        }
        gens.sort_unstable();

        Ok(Semigroup {
            apery,
            frobenius,
            genus,
            small_count,
            min_gens: GeneratorTuple(gens),
            q,
        })
    }

    pub fn is_full(&self) -> bool {
        self.frobenius < 0
    }

    /// `S = {0, g1, g1+1, ...}`, equivalently `q = 1` for `S != N`.
    pub fn is_half_line(&self) -> bool {
        !self.is_full() && self.q == 1
    }

    pub fn contains(&self, x: i64) -> bool {
        if x < 0 {
            return false;
        }
        let m = self.multiplicity();
        self.apery[(x % m) as usize] <= x
    }

    /// Small elements `S ∩ [0, F]`, ascending.
    pub fn small_elements(&self) -> Result<Vec<i64>> {
        if self.is_full() {
            return Err(Error::DegenerateFullMonoid);
        }
        Ok((0..=self.frobenius).filter(|&x| self.contains(x)).collect())
    }

    /// Gaps `N \ S`, ascending.
    pub fn gaps(&self) -> Vec<i64> {
        (1..=self.frobenius)
            .filter(|&x| !self.contains(x))
            .collect()
    }

    pub fn invariants(&self) -> Invariants {
        Invariants {
            multiplicity: self.multiplicity(),
            embedding_dim: self.embedding_dim(),
            frobenius: self.frobenius,
            genus: self.genus,
            small_count: self.small_count,
            q: self.q,
        }
    }

    /// Apéry vector with respect to the multiplicity, indexed by residue.
    pub fn apery_vector(&self) -> &[i64] {
        &self.apery
    }

    pub fn multiplicity(&self) -> i64 {
        self.apery.len() as i64
    }

    pub fn embedding_dim(&self) -> i64 {
        self.min_gens.len() as i64
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn small_count(&self) -> i64 {
        self.small_count
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn min_gens(&self) -> &GeneratorTuple {
        &self.min_gens
    }

    pub fn gens(&self) -> &[i64] {
        self.min_gens.as_slice()
    }
}

impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.min_gens.fmt(f)
    }
}

/// Shortest paths over residue classes mod `m`: node `r`, edge `r -> r + g`
/// of weight `g`. Relaxation passes repeat until nothing improves.
fn relax_apery(m: i64, others: &[i64]) -> Result<Vec<i64>> {
    let mu = m as usize;
    let mut apery = vec![i64::MAX; mu];
    apery[0] = 0;
    loop {
        let mut changed = false;
        for r in 0..mu {
            let w = apery[r];
            if w == i64::MAX {
                continue;
            }
            for &g in others {
                let v = w.checked_add(g).ok_or(Error::Overflow {
                    what: "Apéry vector",
                })?;
                let idx = ((r as i64 + g) % m) as usize;
                if v < apery[idx] {
                    apery[idx] = v;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    // gcd 1 guarantees every class is reached.
    debug_assert!(apery.iter().all(|&w| w != i64::MAX));
    Ok(apery)
}
