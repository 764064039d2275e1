//! Checkers for the Wilf-type inequalities and constructors for the two
//! partition witnesses behind the multiplicity and type bounds.
//!
//! Every inequality is evaluated on every semigroup handed in, including
//! those outside a theorem's hypotheses; [`Scope`] records which case
//! applies instead of skipping the evaluation.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::apery::{almost_symmetric_with, pseudo_frobenius, PseudoFrobeniusSet};
use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BoundId {
    /// `F + 1 <= e n`
    Wilf,
    /// `F + 1 <= q e n`
    WilfQ,
    /// `F + 1 <= e n^2`
    WilfN2,
    /// `g1 <= (e - 1) n + 1`
    Multiplicity,
    /// `t <= (e - 2)(n - q + 1) + 2`
    Type,
    /// `t <= (e - 2) n + 2`
    TypeWeak,
    /// `F + 1 <= e n`, restricted to almost-symmetric semigroups.
    CorollaryAS,
}

impl BoundId {
    pub const ALL: [BoundId; 7] = [
        BoundId::Wilf,
        BoundId::WilfQ,
        BoundId::WilfN2,
        BoundId::Multiplicity,
        BoundId::Type,
        BoundId::TypeWeak,
        BoundId::CorollaryAS,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::Wilf => "wilf",
            BoundId::WilfQ => "wilfq",
            BoundId::WilfN2 => "wilfn2",
            BoundId::Multiplicity => "multiplicity",
            BoundId::Type => "type",
            BoundId::TypeWeak => "typeweak",
            BoundId::CorollaryAS => "corollaryas",
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let lower = s.trim().to_ascii_lowercase();
        BoundId::ALL
            .into_iter()
            .find(|b| b.as_str() == lower)
            .ok_or_else(|| format!("unknown bound '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Scope {
    InScope,
    OutOfTheoremScope,
}

/// One evaluated inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub bound_id: BoundId,
    pub lhs: i64,
    pub rhs: i64,
    pub slack: i64,
    pub holds: bool,
    pub scope: Scope,
}

impl BoundReport {
    fn new(bound_id: BoundId, lhs: i64, rhs: i64, scope: Scope) -> Self {
        BoundReport {
            bound_id,
            lhs,
            rhs,
            slack: rhs - lhs,
            holds: lhs <= rhs,
            scope,
        }
    }
}

/// Per-semigroup data shared by all checkers, computed once.
#[derive(Debug, Clone)]
pub struct BoundContext<'a> {
    pub semigroup: &'a Semigroup,
    pub pf: PseudoFrobeniusSet,
    pub almost_symmetric: bool,
}

impl<'a> BoundContext<'a> {
    pub fn new(s: &'a Semigroup) -> Result<Self> {
        let pf = pseudo_frobenius(s)?;
        let almost_symmetric = almost_symmetric_with(s, &pf)?;
        Ok(BoundContext {
            semigroup: s,
            pf,
            almost_symmetric,
        })
    }

    pub fn check(&self, id: BoundId) -> Result<BoundReport> {
        let s = self.semigroup;
        let f = s.frobenius();
        let e = s.embedding_dim();
        let n = s.small_count();
        let q = s.q();
        let g1 = s.multiplicity();
        let t = self.pf.type_t;
        let ovf = |what| Error::Overflow { what };

        let report = match id {
            BoundId::Wilf => BoundReport::new(
                id,
                f + 1,
                e.checked_mul(n).ok_or(ovf("e·n"))?,
                Scope::InScope,
            ),
            BoundId::WilfQ => BoundReport::new(
                id,
                f + 1,
                q.checked_mul(e)
                    .and_then(|v| v.checked_mul(n))
                    .ok_or(ovf("q·e·n"))?,
                Scope::InScope,
            ),
            BoundId::WilfN2 => BoundReport::new(
                id,
                f + 1,
                n.checked_mul(n)
                    .and_then(|v| v.checked_mul(e))
                    .ok_or(ovf("e·n²"))?,
                Scope::InScope,
            ),
            BoundId::Multiplicity => BoundReport::new(
                id,
                g1,
                (e - 1).checked_mul(n).ok_or(ovf("(e−1)·n"))? + 1,
                Scope::InScope,
            ),
            BoundId::Type => BoundReport::new(
                id,
                t,
                (e - 2).checked_mul(n - q + 1).ok_or(ovf("(e−2)(n−q+1)"))? + 2,
                Scope::InScope,
            ),
            BoundId::TypeWeak => BoundReport::new(
                id,
                t,
                (e - 2).checked_mul(n).ok_or(ovf("(e−2)·n"))? + 2,
                Scope::InScope,
            ),
            BoundId::CorollaryAS => {
                if !self.almost_symmetric {
                    return Err(Error::NotAlmostSymmetric);
                }
                let scope = if s.is_half_line() {
                    Scope::OutOfTheoremScope
                } else {
                    Scope::InScope
                };
                BoundReport::new(id, f + 1, e.checked_mul(n).ok_or(ovf("e·n"))?, scope)
            }
        };
        Ok(report)
    }

    /// The strict chain `F + 1 <= en − e + 3 < en`, evaluated only when its
    /// hypotheses hold: almost-symmetric, `e >= 4`, `q >= 2`.
    pub fn corollary_chain(&self) -> Option<CorollaryChain> {
        let s = self.semigroup;
        let e = s.embedding_dim();
        if !self.almost_symmetric || e < 4 || s.q() < 2 {
            return None;
        }
        let en = e * s.small_count();
        let lhs = s.frobenius() + 1;
        let middle = en - e + 3;
        Some(CorollaryChain {
            lhs,
            middle,
            rhs: en,
            holds: lhs <= middle && middle < en,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorollaryChain {
    pub lhs: i64,
    pub middle: i64,
    pub rhs: i64,
    pub holds: bool,
}

pub fn check_bound(s: &Semigroup, id: BoundId) -> Result<BoundReport> {
    BoundContext::new(s)?.check(id)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WitnessKind {
    AperyPhi,
    PfPhi,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessBlock {
    pub source: i64,
    /// `(small element, generator)` pairs, ordered by generator.
    pub pairs: Vec<(i64, i64)>,
}

/// A materialized proof map together with its cardinality ledger
/// `lower <= total <= upper`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessPartition {
    pub kind: WitnessKind,
    pub blocks: Vec<WitnessBlock>,
    pub excluded: Vec<i64>,
    pub forbidden_pairs_checked: u64,
    pub lower: i64,
    pub total: i64,
    pub upper: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub kind: WitnessKind,
    pub block_count: usize,
    pub excluded: Vec<i64>,
    pub forbidden_pairs_checked: u64,
    pub lower: i64,
    pub total: i64,
    pub upper: i64,
}

impl WitnessPartition {
    pub fn summary(&self) -> WitnessSummary {
        WitnessSummary {
            kind: self.kind,
            block_count: self.blocks.len(),
            excluded: self.excluded.clone(),
            forbidden_pairs_checked: self.forbidden_pairs_checked,
            lower: self.lower,
            total: self.total,
            upper: self.upper,
        }
    }

    /// Re-checks every structural property against `s`.
    pub fn verify(&self, s: &Semigroup) -> Result<()> {
        let fail = |msg: String| {
            Err(Error::WitnessViolation(format!(
                "{s} {:?}: {msg}",
                self.kind
            )))
        };
        let gens = s.gens();
        let allowed: &[i64] = match self.kind {
            WitnessKind::AperyPhi => &gens[1..],
            WitnessKind::PfPhi => gens.get(2..).unwrap_or(&[]),
        };
        let f = s.frobenius();
        let mut seen = HashSet::new();
        let mut total = 0i64;
        for block in &self.blocks {
            if block.pairs.is_empty() {
                return fail(format!("block of {} is empty", block.source));
            }
            for &(small, g) in &block.pairs {
                if !(s.contains(small) && small <= f) {
                    return fail(format!("{small} is not a small element"));
                }
                if !allowed.contains(&g) {
                    return fail(format!("generator {g} outside the codomain"));
                }
                if !seen.insert((small, g)) {
                    return fail(format!("pair ({small},{g}) appears in two blocks"));
                }
            }
            total += block.pairs.len() as i64;
        }
        if total != self.total {
            return fail(format!("ledger total {} but {} pairs", self.total, total));
        }
        if self.kind == WitnessKind::PfPhi {
            for i in 1..s.q() {
                for &g in allowed {
                    if seen.contains(&(i * gens[0], g)) {
                        return fail(format!("forbidden pair ({},{g}) used", i * gens[0]));
                    }
                }
            }
        }
        if !(self.lower <= self.total && self.total <= self.upper) {
            return fail(format!(
                "ledger {} <= {} <= {} fails",
                self.lower, self.total, self.upper
            ));
        }
        Ok(())
    }
}

/// The map `ω ↦ {(ω − g_i, g_i) : ω − g_i ∈ S, i >= 2}` on `Ap(S, g1) \ {0}`.
pub fn apery_partition_witness(s: &Semigroup) -> Result<WitnessPartition> {
    if s.is_full() {
        return Err(Error::DegenerateFullMonoid);
    }
    let gens = s.gens();
    let mut sources: Vec<i64> = s.apery_vector()[1..].to_vec();
    sources.sort_unstable();

    let blocks: Vec<WitnessBlock> = sources
        .into_iter()
        .map(|w| WitnessBlock {
            source: w,
            pairs: gens[1..]
                .iter()
                .filter(|&&g| s.contains(w - g))
                .map(|&g| (w - g, g))
                .collect(),
        })
        .collect();

    let total = blocks.iter().map(|b| b.pairs.len() as i64).sum();
    let e = s.embedding_dim();
    let witness = WitnessPartition {
        kind: WitnessKind::AperyPhi,
        blocks,
        excluded: vec![],
        forbidden_pairs_checked: 0,
        lower: s.multiplicity() - 1,
        total,
        upper: s
            .small_count()
            .checked_mul(e - 1)
            .ok_or(Error::Overflow { what: "n·(e−1)" })?,
    };
    if witness.blocks.len() as i64 != s.multiplicity() - 1 {
        return Err(Error::WitnessViolation(format!(
            "{s}: {} Apéry blocks, expected g1 − 1 = {}",
            witness.blocks.len(),
            s.multiplicity() - 1
        )));
    }
    witness.verify(s)?;
    Ok(witness)
}

/// The map `f ↦ {(f + g1 − g_i, g_i) : f + g1 − g_i ∈ S, i >= 3}` on
/// `PF(S) \ {F, f2}`.
pub fn pf_partition_witness(s: &Semigroup) -> Result<WitnessPartition> {
    let pf = pseudo_frobenius(s)?;
    pf_partition_witness_with(s, &pf)
}

pub(crate) fn pf_partition_witness_with(
    s: &Semigroup,
    pf: &PseudoFrobeniusSet,
) -> Result<WitnessPartition> {
    let gens = s.gens();
    let g1 = gens[0];
    let f = s.frobenius();
    let mut excluded = vec![f];
    excluded.extend(pf.f2);
    let allowed = gens.get(2..).unwrap_or(&[]);

    let blocks: Vec<WitnessBlock> = pf
        .elements
        .iter()
        .filter(|x| !excluded.contains(x))
        .map(|&x| WitnessBlock {
            source: x,
            pairs: allowed
                .iter()
                .filter(|&&g| s.contains(x + g1 - g))
                .map(|&g| (x + g1 - g, g))
                .collect(),
        })
        .collect();

    if gens.len() == 2 && !blocks.is_empty() {
        return Err(Error::WitnessViolation(format!(
            "{s}: embedding dimension 2 but PF′ = {:?} is nonempty",
            blocks.iter().map(|b| b.source).collect::<Vec<_>>()
        )));
    }

    let e = s.embedding_dim();
    let q = s.q();
    let total = blocks.iter().map(|b| b.pairs.len() as i64).sum();
    let witness = WitnessPartition {
        kind: WitnessKind::PfPhi,
        blocks,
        excluded,
        forbidden_pairs_checked: ((q - 1).max(0) as u64) * allowed.len() as u64,
        lower: pf.type_t - 2,
        total,
        upper: (e - 2)
            .checked_mul(s.small_count() - q + 1)
            .ok_or(Error::Overflow {
                what: "(e−2)(n−q+1)",
            })?,
    };
    witness.verify(s)?;
    Ok(witness)
}

/// Every applicable bound in `BoundId` order, plus both witness summaries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullReport {
    pub reports: Vec<BoundReport>,
    pub apery_witness: WitnessSummary,
    pub pf_witness: WitnessSummary,
}

pub fn full_report(s: &Semigroup) -> Result<FullReport> {
    let ctx = BoundContext::new(s)?;
    let reports = BoundId::ALL
        .into_iter()
        .filter(|&id| id != BoundId::CorollaryAS || ctx.almost_symmetric)
        .map(|id| ctx.check(id))
        .collect::<Result<Vec<_>>>()?;
    Ok(FullReport {
        reports,
        apery_witness: apery_partition_witness(s)?.summary(),
        pf_witness: pf_partition_witness_with(s, &ctx.pf)?.summary(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[i64]) -> Semigroup {
        Semigroup::from_generators(gens).unwrap()
    }

    fn lrs(r: &BoundReport) -> (i64, i64, i64, bool) {
        (r.lhs, r.rhs, r.slack, r.holds)
    }

    #[test]
    fn check_bound_examples() {
        let r = check_bound(&sg(&[2, 3]), BoundId::WilfQ).unwrap();
        assert_eq!(lrs(&r), (2, 2, 0, true));
        let r = check_bound(&sg(&[5, 6, 7, 8, 9]), BoundId::Multiplicity).unwrap();
        assert_eq!(lrs(&r), (5, 5, 0, true));
        let r = check_bound(&sg(&[3, 5]), BoundId::WilfN2).unwrap();
        assert_eq!(lrs(&r), (8, 32, 24, true));
        let r = check_bound(&sg(&[3, 5, 7]), BoundId::Type).unwrap();
        assert_eq!(lrs(&r), (2, 3, 1, true));
    }

    #[test]
    fn check_bound_errors() {
        assert_eq!(
            check_bound(&Semigroup::full(), BoundId::Wilf),
            Err(Error::DegenerateFullMonoid)
        );
        assert_eq!(
            check_bound(&sg(&[5, 6, 7]), BoundId::CorollaryAS),
            Err(Error::NotAlmostSymmetric)
        );
    }

    #[test]
    fn corollary_scope() {
        let r = check_bound(&sg(&[4, 5, 6, 7]), BoundId::CorollaryAS).unwrap();
        assert_eq!(r.scope, Scope::OutOfTheoremScope);
        assert!(r.holds);
        let r = check_bound(&sg(&[3, 5, 7]), BoundId::CorollaryAS).unwrap();
        assert_eq!(r.scope, Scope::InScope);
    }

    #[test]
    fn bound_id_parse() {
        assert_eq!("WilfQ".parse::<BoundId>(), Ok(BoundId::WilfQ));
        assert!("wolf".parse::<BoundId>().is_err());
        for b in BoundId::ALL {
            assert_eq!(b.as_str().parse::<BoundId>(), Ok(b));
        }
    }

    #[test]
    fn apery_witness_examples() {
        let w = apery_partition_witness(&sg(&[3, 5, 7])).unwrap();
        assert_eq!(
            w.blocks,
            vec![
                WitnessBlock {
                    source: 5,
                    pairs: vec![(0, 5)]
                },
                WitnessBlock {
                    source: 7,
                    pairs: vec![(0, 7)]
                },
            ]
        );
        assert_eq!((w.lower, w.total, w.upper), (2, 2, 4));

        let w = apery_partition_witness(&sg(&[2, 3])).unwrap();
        assert_eq!(
            w.blocks,
            vec![WitnessBlock {
                source: 3,
                pairs: vec![(0, 3)]
            }]
        );
        assert_eq!((w.lower, w.total, w.upper), (1, 1, 1));

        let w = apery_partition_witness(&sg(&[3, 5])).unwrap();
        assert_eq!(
            w.blocks,
            vec![
                WitnessBlock {
                    source: 5,
                    pairs: vec![(0, 5)]
                },
                WitnessBlock {
                    source: 10,
                    pairs: vec![(5, 5)]
                },
            ]
        );
        assert_eq!((w.total, w.upper), (2, 4));
    }

    #[test]
    fn pf_witness_examples() {
        let w = pf_partition_witness(&sg(&[5, 6, 7, 8, 9])).unwrap();
        assert_eq!(w.excluded, vec![4, 1]);
        assert_eq!(
            w.blocks,
            vec![
                WitnessBlock {
                    source: 2,
                    pairs: vec![(0, 7)]
                },
                WitnessBlock {
                    source: 3,
                    pairs: vec![(0, 8)]
                },
            ]
        );
        assert_eq!((w.lower, w.total, w.upper), (2, 2, 3));

        let w = pf_partition_witness(&sg(&[3, 5, 7])).unwrap();
        assert_eq!(w.excluded, vec![4, 2]);
        assert!(w.blocks.is_empty());
        assert_eq!((w.total, w.upper), (0, 1));

        let w = pf_partition_witness(&sg(&[3, 5])).unwrap();
        assert_eq!(w.excluded, vec![7]);
        assert!(w.blocks.is_empty());
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let s = sg(&[5, 6, 7, 8, 9]);
        let mut w = pf_partition_witness(&s).unwrap();
        w.blocks[1].pairs = vec![(0, 7)];
        assert!(matches!(w.verify(&s), Err(Error::WitnessViolation(_))));

        let s = sg(&[4, 6, 9]);
        let mut w = pf_partition_witness(&s).unwrap();
        // (g1, g3) is forbidden because q = 3.
        w.blocks.push(WitnessBlock {
            source: 0,
            pairs: vec![(4, 9)],
        });
        w.total += 1;
        w.upper += 1;
        assert!(matches!(w.verify(&s), Err(Error::WitnessViolation(_))));

        let mut w = apery_partition_witness(&s).unwrap();
        w.blocks[0].pairs.clear();
        assert!(w.verify(&s).is_err());
    }

    #[test]
    fn full_report_examples() {
        let r = full_report(&sg(&[3, 5, 7])).unwrap();
        assert_eq!(r.reports.len(), 7);
        assert!(r.reports.iter().all(|b| b.holds));
        let ids: Vec<_> = r.reports.iter().map(|b| b.bound_id).collect();
        assert_eq!(ids, BoundId::ALL.to_vec());

        let r = full_report(&sg(&[2, 3])).unwrap();
        let slack = |id| r.reports.iter().find(|b| b.bound_id == id).unwrap().slack;
        assert_eq!(slack(BoundId::WilfQ), 0);
        assert_eq!(slack(BoundId::Multiplicity), 0);
        assert_eq!(slack(BoundId::Wilf), 0);

        let r = full_report(&sg(&[5, 6, 7])).unwrap();
        assert_eq!(r.reports.len(), 6);
        assert!(r
            .reports
            .iter()
            .all(|b| b.holds && b.bound_id != BoundId::CorollaryAS));
    }

    #[test]
    fn corollary_chain_hypotheses() {
        // <3,5,7> has e = 3: outside the chain's hypotheses.
        let s = sg(&[3, 5, 7]);
        assert_eq!(BoundContext::new(&s).unwrap().corollary_chain(), None);
        // <5,6,7,8,9> is a half-line (q = 1).
        let s = sg(&[5, 6, 7, 8, 9]);
        assert_eq!(BoundContext::new(&s).unwrap().corollary_chain(), None);
    }
}
