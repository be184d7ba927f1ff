use serde::Serialize;

use super::iso::{fingerprint, isomorphic, QuotientFingerprint};
use super::lattice::enumerate_normal_subgroups;
use super::table::{build_group_table, FiniteGroupTable};
use crate::error::{Error, Result};
use crate::fp_poly::{FieldSpec, FpPoly};
use crate::rp_module::{truncation_modulo, ModulePresentation};
use crate::wreath::{Base, LamplighterSpec};

/// Largest supported quotient-order bound.
pub const MAX_QU_BOUND: usize = 16;
pub const DEFAULT_QU_BOUND: usize = 8;

/// Finite quotients of `N ⋊ Z` of order at most `bound`, one representative
/// per isomorphism class, sorted by fingerprint.
#[derive(Clone, Debug)]
pub struct QuSet {
    bound: usize,
    classes: Vec<(QuotientFingerprint, FiniteGroupTable)>,
}

impl QuSet {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> impl Iterator<Item = &FiniteGroupTable> {
        self.classes.iter().map(|(_, g)| g)
    }

    pub fn fingerprints(&self) -> impl Iterator<Item = &QuotientFingerprint> {
        self.classes.iter().map(|(f, _)| f)
    }

    pub fn orders(&self) -> Vec<usize> {
        self.classes.iter().map(|(f, _)| f.order).collect()
    }

    /// Membership up to isomorphism.
    pub fn contains(&self, g: &FiniteGroupTable) -> bool {
        let fp = fingerprint(g);
        self.classes
            .iter()
            .any(|(f, h)| *f == fp && isomorphic(g, h, u128::MAX).expect("uncapped"))
    }

    fn insert(&mut self, g: FiniteGroupTable) -> bool {
        if self.contains(&g) {
            return false;
        }
        let fp = fingerprint(&g);
        let at = self.classes.partition_point(|(f, _)| *f <= fp);
        self.classes.insert(at, (fp, g));
        true
    }
}

/// The group `N ⋊ Z` whose finite quotients are enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuSource {
    Presentation(ModulePresentation),
    Lamplighter(LamplighterSpec),
}

impl QuSource {
    pub fn presentation(&self) -> Result<ModulePresentation> {
        match self {
            QuSource::Presentation(p) => Ok(p.clone()),
            QuSource::Lamplighter(spec) => {
                if spec.base() != Base::Integers {
                    return Err(Error::InvalidInput("quotient enumeration expects the base Z".into()));
                }
                Ok(ModulePresentation::free(spec.field(), spec.n()))
            }
        }
    }
}

impl From<ModulePresentation> for QuSource {
    fn from(p: ModulePresentation) -> Self {
        QuSource::Presentation(p)
    }
}

impl From<LamplighterSpec> for QuSource {
    fn from(s: LamplighterSpec) -> Self {
        QuSource::Lamplighter(s)
    }
}

/// Monic polynomials of degree at most `max_deg`, constant term nonzero.
fn monic_polys(field: FieldSpec, max_deg: usize) -> Vec<FpPoly> {
    let p = field.p();
    let mut out = Vec::new();
    for deg in 0..=max_deg {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let mut coeffs: Vec<u64> = (0..deg).map(|i| code / p.pow(i as u32) % p).collect();
            if deg > 0 && coeffs[0] == 0 {
                continue;
            }
            coeffs.push(1);
            out.push(FpPoly::from_coeffs(field, coeffs));
        }
    }
    out
}

/// Divisors `e` of `x^m - 1` with `deg e <= max_deg`, keeping only those not
/// properly dividing another one in the list.
pub fn maximal_divisors(field: FieldSpec, m: usize, max_deg: usize) -> Vec<FpPoly> {
    let target = FpPoly::x_pow_minus_one(field, m);
    let divisors: Vec<FpPoly> = monic_polys(field, max_deg.min(m))
        .into_iter()
        .filter(|e| e.divides(&target))
        .collect();
    divisors
        .iter()
        .filter(|e| !divisors.iter().any(|f| f != *e && e.divides(f)))
        .cloned()
        .collect()
}

/// Largest `D` such that a quotient of order at most `bound` in which t has
/// order `m` can have a lamp part of size `p^D`. The lamp part meets `<t>`
/// in a group of order at most p, and only when p divides m.
pub fn lamp_dimension_bound(p: u64, m: usize, bound: usize) -> usize {
    let budget = if (m as u64).is_multiple_of(p) { bound as u64 * p } else { bound as u64 };
    let mut d = 0;
    while p.pow(d as u32 + 1) * m as u64 <= budget {
        d += 1;
    }
    d
}

/// Every finite quotient of order at most `bound`.
///
/// A quotient in which t has order m is a quotient of `(N/(x^m-1)N) ⋊ Z/m`.
/// Its lamp part is a cyclic-module quotient killed by the minimal
/// polynomial `e` of x on it, of degree at most [`lamp_dimension_bound`],
/// so the quotient already factors through `(N/eN) ⋊ Z/m`; only the
/// divisibility-maximal such `e` need to be visited.
pub fn truncated_qu(source: &QuSource, bound: usize, order_cap: u128) -> Result<QuSet> {
    if bound == 0 || bound > MAX_QU_BOUND {
        return Err(Error::InvalidInput(format!("quotient bound must be in 1..={MAX_QU_BOUND}, got {bound}")));
    }
    let presentation = source.presentation()?;
    let field = presentation.field();
    let mut set = QuSet { bound, classes: Vec::new() };
    for m in 1..=bound {
        let d = lamp_dimension_bound(field.p(), m, bound);
        for e in maximal_divisors(field, m, d) {
            let truncation = truncation_modulo(&presentation, &e, m)?;
            let table = build_group_table(&truncation, m, order_cap)?;
            collect_quotients(&table, bound, order_cap, &mut set)?;
        }
    }
    Ok(set)
}

/// Quotients of the full truncations `(N/(x^m-1)N) ⋊ Z/m` for `m <= bound`,
/// without the lamp-degree reduction.
pub fn truncated_qu_unreduced(source: &QuSource, bound: usize, order_cap: u128) -> Result<QuSet> {
    if bound == 0 || bound > MAX_QU_BOUND {
        return Err(Error::InvalidInput(format!("quotient bound must be in 1..={MAX_QU_BOUND}, got {bound}")));
    }
    let presentation = source.presentation()?;
    let mut set = QuSet { bound, classes: Vec::new() };
    for m in 1..=bound {
        let truncation = crate::rp_module::finite_truncation(&presentation, m)?;
        let table = build_group_table(&truncation, m, order_cap)?;
        collect_quotients(&table, bound, order_cap, &mut set)?;
    }
    Ok(set)
}

fn collect_quotients(g: &FiniteGroupTable, bound: usize, order_cap: u128, set: &mut QuSet) -> Result<()> {
    for n in enumerate_normal_subgroups(g, order_cap)? {
        if g.order() / n.order() <= bound {
            set.insert(g.quotient(&n.elements)?);
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuWitness {
    /// The side whose Qu-set contains the witness.
    pub side: Side,
    pub fingerprint: QuotientFingerprint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum QuComparison {
    Equal { bound: usize, classes: usize },
    Different { bound: usize, witness: QuWitness },
}

impl QuComparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, QuComparison::Equal { .. })
    }

    pub fn witness(&self) -> Option<&QuWitness> {
        match self {
            QuComparison::Different { witness, .. } => Some(witness),
            QuComparison::Equal { .. } => None,
        }
    }
}

/// Compares two Qu-sets; on difference, reports a class of smallest order
/// lying in exactly one of them (ties go to the left side).
pub fn compare_qu_sets(left: &QuSet, right: &QuSet) -> QuComparison {
    let bound = left.bound.min(right.bound);
    let missing = |from: &QuSet, other: &QuSet, side: Side| {
        from.classes
            .iter()
            .filter(|(f, _)| f.order <= bound)
            .find(|(_, g)| !other.contains(g))
            .map(|(f, _)| QuWitness { side, fingerprint: f.clone() })
    };
    let l = missing(left, right, Side::Left);
    let r = missing(right, left, Side::Right);
    let witness = match (l, r) {
        (Some(a), Some(b)) => Some(if b.fingerprint.order < a.fingerprint.order { b } else { a }),
        (a, b) => a.or(b),
    };
    match witness {
        Some(witness) => QuComparison::Different { bound, witness },
        None => QuComparison::Equal { bound, classes: left.len() },
    }
}

pub fn compare_qu(left: &QuSource, right: &QuSource, bound: usize, order_cap: u128) -> Result<QuComparison> {
    let a = truncated_qu(left, bound, order_cap)?;
    let b = truncated_qu(right, bound, order_cap)?;
    Ok(compare_qu_sets(&a, &b))
}
