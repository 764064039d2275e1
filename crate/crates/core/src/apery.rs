//! Apéry sets with arbitrary anchors, pseudo-Frobenius numbers, type and the
//! symmetry classification.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{Semigroup, MAX_MULTIPLICITY};

/// `Ap(S, m)`: the least element of `S` in each residue class modulo `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AperySet {
    pub anchor: i64,
    /// Ascending.
    pub elements: Vec<i64>,
}

pub fn apery_set(s: &Semigroup, m: i64) -> Result<AperySet> {
    if m == 0 {
        return Err(Error::AnchorZero);
    }
    if !s.contains(m) {
        return Err(Error::AnchorNotInSemigroup { anchor: m });
    }
    if m > MAX_MULTIPLICITY {
        return Err(Error::Overflow {
            what: "Apéry set (anchor too large)",
        });
    }
    // Every residue class mod m has its least element in [0, F + m].
    let mut least = vec![None; m as usize];
    let mut found = 0;
    let mut x = 0;
    while found < m {
        if s.contains(x) {
            let slot = &mut least[(x % m) as usize];
            if slot.is_none() {
                *slot = Some(x);
                found += 1;
            }
        }
        x += 1;
    }
    let mut elements: Vec<i64> = least.into_iter().flatten().collect();
    elements.sort_unstable();
    Ok(AperySet {
        anchor: m,
        elements,
    })
}

/// `PF(S)` together with its type and the element `f2 = λ·g2 − g1`, if any
/// such element other than `F` exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PseudoFrobeniusSet {
    /// Ascending; the last element is the Frobenius number.
    pub elements: Vec<i64>,
    pub type_t: i64,
    pub f2: Option<i64>,
}

impl PseudoFrobeniusSet {
    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// Gaps `f` with `f + g ∈ S` for every minimal generator `g`. Testing the
/// generators suffices since every nonzero element is a sum of them.
pub fn pseudo_frobenius(s: &Semigroup) -> Result<PseudoFrobeniusSet> {
    if s.is_full() {
        return Err(Error::DegenerateFullMonoid);
    }
    let gens = s.gens();
    let elements: Vec<i64> = s
        .gaps()
        .into_iter()
        .filter(|&f| gens.iter().all(|&g| s.contains(f + g)))
        .collect();

    let g1 = gens[0];
    let g2 = gens[1];
    let mut of_form = None;
    for lambda in 1..=(s.frobenius() + g1) / g2 {
        let candidate = lambda * g2 - g1;
        if elements.binary_search(&candidate).is_ok() {
            if let Some(prev) = of_form {
                return Err(Error::WitnessViolation(format!(
                    "two pseudo-Frobenius numbers of the form λ·g2 − g1 in {s}: {prev} and {candidate}"
                )));
            }
            of_form = Some(candidate);
        }
    }

    Ok(PseudoFrobeniusSet {
        type_t: elements.len() as i64,
        elements,
        // F is removed from PF′ regardless, so f2 only names a second element.
        f2: of_form.filter(|&x| x != s.frobenius()),
    })
}

/// Definitional test: every gap `x` has `F − x ∈ S` or `{x, F − x} ⊆ PF(S)`.
/// A positive answer is cross-checked against `2n + t = F + 2`.
pub fn is_almost_symmetric(s: &Semigroup) -> Result<bool> {
    let pf = pseudo_frobenius(s)?;
    almost_symmetric_with(s, &pf)
}

pub(crate) fn almost_symmetric_with(s: &Semigroup, pf: &PseudoFrobeniusSet) -> Result<bool> {
    let f = s.frobenius();
    let holds = s
        .gaps()
        .into_iter()
        .all(|x| s.contains(f - x) || (pf.contains(x) && pf.contains(f - x)));
    if holds && 2 * s.small_count() + pf.type_t != f + 2 {
        return Err(Error::WitnessViolation(format!(
            "{s} is almost-symmetric but 2n + t = {} differs from F + 2 = {}",
            2 * s.small_count() + pf.type_t,
            f + 2
        )));
    }
    Ok(holds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SymmetryClass {
    Symmetric,
    PseudoSymmetric,
    AlmostSymmetricOther,
    None,
}

impl SymmetryClass {
    pub fn is_almost_symmetric(self) -> bool {
        self != SymmetryClass::None
    }
}

pub fn symmetry_class(s: &Semigroup) -> Result<SymmetryClass> {
    let pf = pseudo_frobenius(s)?;
    symmetry_class_with(s, &pf)
}

pub(crate) fn symmetry_class_with(s: &Semigroup, pf: &PseudoFrobeniusSet) -> Result<SymmetryClass> {
    let f = s.frobenius();
    if 2 * s.small_count() == f + 1 {
        return Ok(SymmetryClass::Symmetric);
    }
    Ok(if !almost_symmetric_with(s, pf)? {
        SymmetryClass::None
    } else if pf.type_t == 2 && f % 2 == 0 {
        SymmetryClass::PseudoSymmetric
    } else {
        SymmetryClass::AlmostSymmetricOther
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[i64]) -> Semigroup {
        Semigroup::from_generators(gens).unwrap()
    }

    #[test]
    fn apery_set_examples() {
        assert_eq!(apery_set(&sg(&[3, 5]), 3).unwrap().elements, vec![0, 5, 10]);
        assert_eq!(
            apery_set(&sg(&[3, 5, 7]), 3).unwrap().elements,
            vec![0, 5, 7]
        );
        assert_eq!(
            apery_set(&sg(&[4, 6, 9]), 4).unwrap().elements,
            vec![0, 6, 9, 15]
        );
    }

    #[test]
    fn apery_set_other_anchor() {
        // Ap(<3,5>, 5): least elements per class mod 5 are 0, 6, 12, 3, 9.
        let ap = apery_set(&sg(&[3, 5]), 5).unwrap();
        assert_eq!(ap.elements, vec![0, 3, 6, 9, 12]);
        assert_eq!(*ap.elements.last().unwrap(), 7 + 5);
    }

    #[test]
    fn apery_set_errors() {
        let s = sg(&[3, 5]);
        assert_eq!(apery_set(&s, 0), Err(Error::AnchorZero));
        assert_eq!(
            apery_set(&s, 7),
            Err(Error::AnchorNotInSemigroup { anchor: 7 })
        );
        assert_eq!(
            apery_set(&s, -3),
            Err(Error::AnchorNotInSemigroup { anchor: -3 })
        );
    }

    #[test]
    fn pseudo_frobenius_examples() {
        let pf = pseudo_frobenius(&sg(&[3, 5, 7])).unwrap();
        assert_eq!(
            (pf.elements.as_slice(), pf.type_t, pf.f2),
            (&[2, 4][..], 2, Some(2))
        );

        let pf = pseudo_frobenius(&sg(&[5, 6, 7, 8, 9])).unwrap();
        assert_eq!(
            (pf.elements.as_slice(), pf.type_t, pf.f2),
            (&[1, 2, 3, 4][..], 4, Some(1))
        );

        // 7 = 2·5 − 3 is F itself, not a separate f2.
        let pf = pseudo_frobenius(&sg(&[3, 5])).unwrap();
        assert_eq!(
            (pf.elements.as_slice(), pf.type_t, pf.f2),
            (&[7][..], 1, None)
        );

        assert_eq!(
            pseudo_frobenius(&Semigroup::full()),
            Err(Error::DegenerateFullMonoid)
        );
    }

    #[test]
    fn almost_symmetric_examples() {
        assert!(is_almost_symmetric(&sg(&[3, 5, 7])).unwrap());
        assert!(is_almost_symmetric(&sg(&[3, 5])).unwrap());
        assert!(!is_almost_symmetric(&sg(&[5, 6, 7])).unwrap());
        assert_eq!(
            pseudo_frobenius(&sg(&[5, 6, 7])).unwrap().elements,
            vec![8, 9]
        );
        assert_eq!(
            is_almost_symmetric(&Semigroup::full()),
            Err(Error::DegenerateFullMonoid)
        );
    }

    #[test]
    fn symmetry_class_examples() {
        assert_eq!(
            symmetry_class(&sg(&[3, 5])).unwrap(),
            SymmetryClass::Symmetric
        );
        assert_eq!(
            symmetry_class(&sg(&[3, 5, 7])).unwrap(),
            SymmetryClass::PseudoSymmetric
        );
        assert_eq!(
            symmetry_class(&sg(&[5, 6, 7])).unwrap(),
            SymmetryClass::None
        );
        // Half-line <4,5,6,7>: PF = {1,2,3}, every gap pairs inside PF.
        assert_eq!(
            symmetry_class(&sg(&[4, 5, 6, 7])).unwrap(),
            SymmetryClass::AlmostSymmetricOther
        );
    }
}
