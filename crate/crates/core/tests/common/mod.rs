//! Sieve-based reference computations, independent of the Apéry machinery.

#![allow(dead_code)]

/// Membership table of `<gens>` on `[0, limit]` by dynamic programming.
pub fn sieve(gens: &[i64], limit: i64) -> Vec<bool> {
    let mut table = vec![false; limit as usize + 1];
    table[0] = true;
    for x in 1..=limit {
        table[x as usize] = gens.iter().any(|&g| g <= x && table[(x - g) as usize]);
    }
    table
}

/// Invariants read off a membership table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveSemigroup {
    pub member: Vec<bool>,
    pub frobenius: i64,
    pub genus: i64,
    pub small_count: i64,
    pub multiplicity: i64,
    pub min_gens: Vec<i64>,
    pub pf: Vec<i64>,
}

impl SieveSemigroup {
    /// `gens` must be coprime; the table runs to a bound past `F + 2 g1`.
    pub fn new(gens: &[i64]) -> Self {
        let g1 = *gens.iter().min().unwrap();
        let gmax = *gens.iter().max().unwrap();
        // F < g1 * gmax for coprime generators.
        let limit = g1 * gmax + 3 * g1 + gmax;
        let member = sieve(gens, limit);
        let frobenius = (0..=limit)
            .rev()
            .find(|&x| !member[x as usize])
            .unwrap_or(-1);
        let genus = (0..=frobenius).filter(|&x| !member[x as usize]).count() as i64;
        let small_count = (0..=frobenius).filter(|&x| member[x as usize]).count() as i64;
        let multiplicity = (1..).find(|&x| member[x as usize]).unwrap();
        let is = |x: i64| x >= 0 && (x > limit || member[x as usize]);
        let min_gens = (1..=frobenius + multiplicity)
            .filter(|&x| is(x) && !(1..=x / 2).any(|a| is(a) && is(x - a)))
            .collect();
        // Definitional PF: f + s ∈ S for every nonzero s ∈ S. Elements above
        // F need no test.
        let pf = (1..=frobenius)
            .filter(|&f| {
                !is(f)
                    && (1..=frobenius + multiplicity)
                        .filter(|&s| is(s))
                        .all(|s| is(f + s))
            })
            .collect();
        SieveSemigroup {
            member,
            frobenius,
            genus,
            small_count,
            multiplicity,
            min_gens,
            pf,
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= 0 && (x as usize >= self.member.len() || self.member[x as usize])
    }

    pub fn almost_symmetric(&self) -> bool {
        let f = self.frobenius;
        (1..=f)
            .filter(|&x| !self.contains(x))
            .all(|x| self.contains(f - x) || (self.pf.contains(&x) && self.pf.contains(&(f - x))))
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
