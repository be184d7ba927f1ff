//! Lamplighter groups `(Z/pZ)^n ≀ Z` and `(Z/pZ)^n ≀ (Z/mZ)`, the
//! correspondence between lamp configurations and vectors over R_p, and
//! homomorphisms out of `N ⋊ Z`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Relation, Result};
use crate::fp_matrix::FpMatrix;
use crate::fp_poly::{FieldSpec, FpPoly, LaurentPoly};
use crate::poly_matrix::PolyMatrix;
use crate::rp_module::{is_surjective_onto_free, ModulePresentation};

/// Default number of sampled pairs for homomorphism-law checks.
pub const DEFAULT_LAW_SAMPLES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Integers,
    Cyclic(u64),
}

/// `(Z/pZ)^n ≀ base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LamplighterSpec {
    field: FieldSpec,
    n: usize,
    base: Base,
}

impl LamplighterSpec {
    pub fn new(field: FieldSpec, n: usize, base: Base) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("lamp rank n must be at least 1".into()));
        }
        if base == Base::Cyclic(0) {
            return Err(Error::InvalidM(0));
        }
        Ok(LamplighterSpec { field, n, base })
    }

    /// L_{n,p}.
    pub fn lamplighter(field: FieldSpec, n: usize) -> Result<Self> {
        Self::new(field, n, Base::Integers)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn cyclic_order(&self) -> Option<u64> {
        match self.base {
            Base::Cyclic(m) => Some(m),
            Base::Integers => None,
        }
    }

    /// Canonical representative of a base element.
    pub fn reduce(&self, k: i64) -> i64 {
        match self.base {
            Base::Integers => k,
            Base::Cyclic(m) => k.rem_euclid(m as i64),
        }
    }

    /// `p^{nm} * m` for a cyclic base.
    pub fn order(&self) -> Option<u128> {
        let m = self.cyclic_order()?;
        let exp = u32::try_from(self.n as u64 * m).ok()?;
        (self.field.p() as u128).checked_pow(exp)?.checked_mul(m as u128)
    }
}

impl fmt::Display for LamplighterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            Base::Integers => write!(f, "(Z/{}Z)^{} wr Z", self.field.p(), self.n),
            Base::Cyclic(m) => write!(f, "(Z/{}Z)^{} wr Z/{}Z", self.field.p(), self.n, m),
        }
    }
}

type Lamps = BTreeMap<i64, Vec<u64>>;

/// A pair `(L, g)`: a finitely supported lamp configuration and a base
/// element. Zero lamp vectors are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    spec: LamplighterSpec,
    lamps: Lamps,
    shift: i64,
}

impl WreathElement {
    pub fn identity(spec: LamplighterSpec) -> Self {
        WreathElement { spec, lamps: Lamps::new(), shift: 0 }
    }

    /// Builds an element from `(index, lamp vector)` pairs; entries at a
    /// repeated index are added.
    pub fn new<I>(spec: LamplighterSpec, lamps: I, shift: i64) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Vec<i64>)>,
    {
        let mut out = Self::identity(spec);
        for (index, v) in lamps {
            if v.len() != spec.n {
                return Err(Error::ShapeMismatch(format!(
                    "lamp vector of length {} in a rank-{} group",
                    v.len(),
                    spec.n
                )));
            }
            let v: Vec<u64> = v.into_iter().map(|c| spec.field.reduce(c)).collect();
            out.add_at(spec.reduce(index), &v);
        }
        out.shift = spec.reduce(shift);
        Ok(out)
    }

    /// The lamp `v` at `index` with zero shift.
    pub fn delta(spec: LamplighterSpec, index: i64, v: Vec<i64>) -> Result<Self> {
        Self::new(spec, [(index, v)], 0)
    }

    /// `(0, 1)`.
    pub fn t(spec: LamplighterSpec) -> Self {
        WreathElement { spec, lamps: Lamps::new(), shift: spec.reduce(1) }
    }

    pub fn spec(&self) -> LamplighterSpec {
        self.spec
    }

    pub fn lamps(&self) -> &BTreeMap<i64, Vec<u64>> {
        &self.lamps
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_identity(&self) -> bool {
        self.lamps.is_empty() && self.shift == 0
    }

    /// Lies in the base subgroup `⊕ (Z/pZ)^n`.
    pub fn is_base(&self) -> bool {
        self.shift == 0
    }

    /// The base-subgroup part `(L, 0)`.
    pub fn lamp_part(&self) -> Self {
        WreathElement { spec: self.spec, lamps: self.lamps.clone(), shift: 0 }
    }

    fn add_at(&mut self, index: i64, v: &[u64]) {
        let f = self.spec.field;
        let entry = self.lamps.entry(index).or_insert_with(|| vec![0; v.len()]);
        for (a, &b) in entry.iter_mut().zip(v) {
            *a = f.add(*a, b);
        }
        if entry.iter().all(|&c| c == 0) {
            self.lamps.remove(&index);
        }
    }

    /// `g · L`, i.e. `(g·L)(a) = L(a - g)`.
    fn shifted_lamps(&self, by: i64) -> Lamps {
        self.lamps
            .iter()
            .map(|(&i, v)| (self.spec.reduce(i + by), v.clone()))
            .collect()
    }

    /// The base element `(g·L, 0)`: multiplication by `x^g` on the module side.
    pub fn shift_lamps(&self, by: i64) -> Self {
        WreathElement { spec: self.spec, lamps: self.shifted_lamps(by), shift: 0 }
    }

    /// `(L1, g1)(L2, g2) = (L1 + g1·L2, g1 + g2)`.
    pub fn mul(&self, rhs: &WreathElement) -> Result<Self> {
        if self.spec != rhs.spec {
            return Err(Error::SpecMismatch);
        }
        let mut out = self.clone();
        for (i, v) in rhs.shifted_lamps(self.shift) {
            out.add_at(i, &v);
        }
        out.shift = self.spec.reduce(self.shift + rhs.shift);
        Ok(out)
    }

    /// `(L, g)^-1 = (-((-g)·L), -g)`.
    pub fn inv(&self) -> Self {
        let f = self.spec.field;
        let lamps = self
            .shifted_lamps(-self.shift)
            .into_iter()
            .map(|(i, v)| (i, v.into_iter().map(|c| f.neg(c)).collect()))
            .collect();
        WreathElement { spec: self.spec, lamps, shift: self.spec.reduce(-self.shift) }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut sq = base;
        let mut acc = Self::identity(self.spec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq).expect("same spec");
            }
            sq = sq.mul(&sq).expect("same spec");
            e >>= 1;
        }
        acc
    }

    pub fn commutator(&self, rhs: &WreathElement) -> Result<Self> {
        self.mul(rhs)?.mul(&self.inv())?.mul(&rhs.inv())
    }

    /// `c · L` on a base element (the F_p-module structure of the base).
    pub fn scale_lamps(&self, c: u64) -> Self {
        let f = self.spec.field;
        let mut out = Self::identity(self.spec);
        for (&i, v) in &self.lamps {
            let w: Vec<u64> = v.iter().map(|&a| f.mul(a, c)).collect();
            out.add_at(i, &w);
        }
        out.shift = self.shift;
        out
    }

    /// Image in `ab(H ≀ G) = (Z/pZ)^n × G`: the sum of all lamp vectors and
    /// the shift.
    pub fn abelianize(&self) -> (Vec<u64>, i64) {
        let f = self.spec.field;
        let mut sum = vec![0; self.spec.n];
        for v in self.lamps.values() {
            for (a, &b) in sum.iter_mut().zip(v) {
                *a = f.add(*a, b);
            }
        }
        (sum, self.shift)
    }

    /// Lamp configuration as a vector in `R_p^n` (or `(R_p/(x^m - 1))^n`
    /// with representatives of degree below m).
    pub fn to_module(&self) -> Vec<LaurentPoly> {
        let f = self.spec.field;
        (0..self.spec.n)
            .map(|j| {
                let terms: Vec<(i64, i64)> = self
                    .lamps
                    .iter()
                    .filter(|(_, v)| v[j] != 0)
                    .map(|(&i, v)| (i, v[j] as i64))
                    .collect();
                LaurentPoly::canonicalize(f, &terms)
            })
            .collect()
    }

    /// Lamp configuration of a module vector: the coefficient of `x^i` in
    /// coordinate `j` becomes lamp `i`, coordinate `j`. On a cyclic base,
    /// exponents are read mod m, i.e. the vector is reduced mod `x^m - 1`.
    pub fn from_module(spec: LamplighterSpec, coords: &[LaurentPoly]) -> Result<Self> {
        if coords.len() != spec.n {
            return Err(Error::ShapeMismatch(format!(
                "{} coordinates in a rank-{} group",
                coords.len(),
                spec.n
            )));
        }
        let mut out = Self::identity(spec);
        for (j, c) in coords.iter().enumerate() {
            if c.field() != spec.field {
                return Err(Error::FieldMismatch(spec.field.p(), c.field().p()));
            }
            for (e, coef) in c.terms() {
                let mut v = vec![0; spec.n];
                v[j] = coef;
                out.add_at(spec.reduce(e), &v);
            }
        }
        Ok(out)
    }

    /// As [`WreathElement::from_module`] for ordinary polynomial coordinates.
    pub fn from_polys(spec: LamplighterSpec, coords: &[FpPoly]) -> Result<Self> {
        let laurent: Vec<LaurentPoly> = coords.iter().cloned().map(LaurentPoly::from_poly).collect();
        Self::from_module(spec, &laurent)
    }

    /// Lamp values as one flat vector indexed by `(index, coordinate)`;
    /// cyclic base only.
    fn flat_lamps(&self) -> Option<Vec<u64>> {
        let m = self.spec.cyclic_order()? as usize;
        let n = self.spec.n;
        let mut out = vec![0; m * n];
        for (&i, v) in &self.lamps {
            out[i as usize * n..(i as usize + 1) * n].copy_from_slice(v);
        }
        Some(out)
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        if self.lamps.is_empty() {
            f.write_str("0")?;
        }
        for (k, (i, v)) in self.lamps.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let vs: Vec<String> = v.iter().map(|c| c.to_string()).collect();
            write!(f, "[{}]@{}", vs.join(","), i)?;
        }
        write!(f, "; {})", self.shift)
    }
}

/// An element `(a, k)` of `N ⋊ Z`, with `a` a vector of `R_p^g` standing
/// for its class in N and multiplication `(a, k)(a', k') = (a + x^k a', k + k')`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemidirectElement {
    coords: Vec<LaurentPoly>,
    shift: i64,
}

impl SemidirectElement {
    pub fn new(coords: Vec<LaurentPoly>, shift: i64) -> Self {
        SemidirectElement { coords, shift }
    }

    pub fn identity(field: FieldSpec, generators: usize) -> Self {
        Self::new(vec![LaurentPoly::zero(field); generators], 0)
    }

    /// The module generator `e_j`.
    pub fn generator(field: FieldSpec, generators: usize, j: usize) -> Self {
        let mut out = Self::identity(field, generators);
        out.coords[j] = LaurentPoly::one(field);
        out
    }

    /// `(0, k)`.
    pub fn t_pow(field: FieldSpec, generators: usize, k: i64) -> Self {
        Self::new(vec![LaurentPoly::zero(field); generators], k)
    }

    pub fn coords(&self) -> &[LaurentPoly] {
        &self.coords
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn mul(&self, rhs: &SemidirectElement) -> SemidirectElement {
        assert_eq!(self.coords.len(), rhs.coords.len(), "generator counts differ");
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(a, b)| a + &b.mul_x_pow(self.shift))
            .collect();
        SemidirectElement { coords, shift: self.shift + rhs.shift }
    }

    pub fn inv(&self) -> SemidirectElement {
        let coords = self.coords.iter().map(|a| -&a.mul_x_pow(-self.shift)).collect();
        SemidirectElement { coords, shift: -self.shift }
    }

    /// A random element with exponents in `[-radius, radius]`.
    pub fn random<R: Rng>(rng: &mut R, field: FieldSpec, generators: usize, radius: i64) -> Self {
        let coords = (0..generators)
            .map(|_| {
                let terms: Vec<(i64, i64)> = (-radius..=radius)
                    .map(|e| (e, rng.random_range(0..field.p()) as i64))
                    .collect();
                LaurentPoly::canonicalize(field, &terms)
            })
            .collect();
        SemidirectElement { coords, shift: rng.random_range(-radius..=radius) }
    }
}

/// Proposed images of the generators of `N ⋊ Z` in a finite lamplighter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorImages {
    pub source: ModulePresentation,
    pub target: LamplighterSpec,
    pub module_gen_images: Vec<WreathElement>,
    pub t_image: WreathElement,
}

/// A homomorphism `N ⋊ Z -> (Z/pZ)^n ≀ (Z/mZ)` whose defining relations
/// have been checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifiedHom {
    images: GeneratorImages,
    m: u64,
    /// Shift of the image of t.
    twist: i64,
    /// When the twist `s` is a unit mod m: the automorphism
    /// `(L, k) -> (a -> L(s a), s^-1 k)` of the target sends the image of t
    /// to shift 1. Recorded as `s`.
    normalizer: Option<u64>,
    surjective: bool,
}

impl VerifiedHom {
    pub fn images(&self) -> &GeneratorImages {
        &self.images
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn target(&self) -> LamplighterSpec {
        self.images.target
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn normalizer(&self) -> Option<u64> {
        self.normalizer
    }

    /// `ψ(a)`: x acts on the images through conjugation by the image of t,
    /// i.e. as a shift by the twist.
    fn module_image(&self, coords: &[LaurentPoly]) -> WreathElement {
        let spec = self.images.target;
        let mut acc = WreathElement::identity(spec);
        for (a, img) in coords.iter().zip(&self.images.module_gen_images) {
            for (e, c) in a.terms() {
                let term = img.shift_lamps(e * self.twist).scale_lamps(c);
                acc = acc.mul(&term).expect("same spec");
            }
        }
        acc
    }

    /// `φ(a, k) = ψ(a) · T^k`.
    pub fn evaluate(&self, el: &SemidirectElement) -> WreathElement {
        assert_eq!(el.coords.len(), self.images.module_gen_images.len(), "generator count");
        self.module_image(&el.coords)
            .mul(&self.images.t_image.pow(el.shift))
            .expect("same spec")
    }

    /// Composition with the normalizing automorphism, so that t maps to an
    /// element of shift 1. `None` when the twist is not a unit mod m.
    pub fn normalized(&self) -> Option<VerifiedHom> {
        let s = self.normalizer?;
        let s_inv = mod_inverse(s, self.m)?;
        let apply = |el: &WreathElement| -> WreathElement {
            let spec = el.spec();
            let mut out = WreathElement::identity(spec);
            for (&i, v) in el.lamps() {
                let idx = spec.reduce(i * s_inv as i64);
                out.add_at(idx, v);
            }
            out.shift = spec.reduce(el.shift() * s_inv as i64);
            out
        };
        let images = GeneratorImages {
            source: self.images.source.clone(),
            target: self.images.target,
            module_gen_images: self.images.module_gen_images.iter().map(apply).collect(),
            t_image: apply(&self.images.t_image),
        };
        Some(VerifiedHom {
            images,
            m: self.m,
            twist: 1 % self.m as i64,
            normalizer: Some(1 % self.m),
            surjective: self.surjective,
        })
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i64, (a % m) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i64) as u64)
}

/// Verifies generator images against every defining relation of `N ⋊ Z`.
pub fn hom_from_generator_images(images: GeneratorImages) -> Result<VerifiedHom> {
    let spec = images.target;
    let Some(m) = spec.cyclic_order() else {
        return Err(Error::InvalidInput("target must have a cyclic base".into()));
    };
    if spec.field() != images.source.field() {
        return Err(Error::FieldMismatch(spec.field().p(), images.source.field().p()));
    }
    let g = images.source.generators();
    if images.module_gen_images.len() != g {
        return Err(Error::ShapeMismatch(format!(
            "{} images for {g} module generators",
            images.module_gen_images.len()
        )));
    }
    if images.module_gen_images.iter().chain([&images.t_image]).any(|e| e.spec() != spec) {
        return Err(Error::SpecMismatch);
    }
    let p = spec.field().p() as i64;
    let imgs = &images.module_gen_images;
    let t = &images.t_image;

    for (j, a) in imgs.iter().enumerate() {
        if !a.pow(p).is_identity() {
            return Err(Error::RelationViolated(Relation::Exponent(j)));
        }
    }
    for i in 0..g {
        for j in i + 1..g {
            if !imgs[i].commutator(&imgs[j])?.is_identity() {
                return Err(Error::RelationViolated(Relation::Commutator(i, j)));
            }
        }
    }
    if let Some(j) = imgs.iter().position(|a| !a.is_base()) {
        return Err(Error::NotBaseValued(j));
    }

    let twist = t.shift();
    let t_inv = t.inv();
    let conj = |a: &WreathElement| t.mul(a).and_then(|x| x.mul(&t_inv));
    for (j, a) in imgs.iter().enumerate() {
        let by_module = WreathElement::from_module(spec, &a.to_module().iter().map(|c| c.mul_x_pow(twist)).collect::<Vec<_>>())?;
        if conj(a)? != by_module {
            return Err(Error::ConjugationMismatch(j));
        }
    }

    // Relator columns, evaluated with x acting by conjugation.
    let rel = images.source.relations();
    for c in 0..rel.cols() {
        let mut acc = WreathElement::identity(spec);
        for (j, img) in imgs.iter().enumerate() {
            for (e, coef) in rel.get(j, c).terms() {
                let conjugated = t.pow(e as i64).mul(img)?.mul(&t.pow(-(e as i64)))?;
                acc = acc.mul(&conjugated.pow(coef as i64))?;
            }
        }
        if !acc.is_identity() {
            return Err(Error::RelationViolated(Relation::Relator(c)));
        }
    }

    let normalizer = mod_inverse(twist as u64, m).map(|_| twist as u64 % m);
    let surjective = normalizer.is_some() && image_contains_base(spec, m, imgs, t);
    Ok(VerifiedHom { images, m, twist, normalizer, surjective })
}

/// With a unit twist, the image meets the base in `ψ(N) + F_p·g(m)`; the map
/// is onto iff that span is everything.
fn image_contains_base(spec: LamplighterSpec, m: u64, imgs: &[WreathElement], t: &WreathElement) -> bool {
    let n = spec.n();
    let mut vectors: Vec<Vec<u64>> = Vec::new();
    for img in imgs {
        for e in 0..m as i64 {
            vectors.push(img.shift_lamps(e).flat_lamps().expect("cyclic"));
        }
    }
    vectors.push(t.pow(m as i64).flat_lamps().expect("cyclic"));
    let dim = n * m as usize;
    let mut mat = FpMatrix::zero(spec.field(), vectors.len(), dim);
    for (i, v) in vectors.iter().enumerate() {
        for (j, &c) in v.iter().enumerate() {
            mat.set(i, j, c);
        }
    }
    mat.rank() == dim
}

/// The values `g(k)` (lamp part of `φ(0, k)`) for `|k| <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub m: u64,
    pub bound: i64,
    pub values: Vec<(i64, WreathElement)>,
    pub pairs_checked: usize,
}

/// Checks `g(k + k') = g(k) + x^{f(k)} g(k')`, `g(k m) = k g(m)` and the
/// unrolled form `g(k) = sum_{i<k} x^{f(i)} g(1)` for `k >= 0`.
pub fn cocycle_verify(hom: &VerifiedHom, bound: i64) -> Result<CocycleReport> {
    let field = hom.images.source.field();
    let gens = hom.images.source.generators();
    let m = hom.m as i64;
    let bound = bound.max(0);
    let image_of_t = |k: i64| hom.evaluate(&SemidirectElement::t_pow(field, gens, k));
    let table: BTreeMap<i64, WreathElement> = (-bound..=bound).map(|k| (k, image_of_t(k))).collect();
    let g = |k: i64| table[&k].lamp_part();
    let f = |k: i64| table[&k].shift();

    if !g(0).is_identity() {
        return Err(Error::CocycleViolation(0, 0));
    }
    let mut pairs = 0;
    for k in -bound..=bound {
        for k2 in -bound..=bound {
            if (k + k2).abs() > bound {
                continue;
            }
            let rhs = g(k).mul(&g(k2).shift_lamps(f(k)))?;
            if g(k + k2) != rhs {
                return Err(Error::CocycleViolation(k, k2));
            }
            pairs += 1;
        }
    }
    if m <= bound {
        let gm = g(m);
        for k in -bound / m..=bound / m {
            let p = field.p() as i64;
            if g(k * m) != gm.scale_lamps(k.rem_euclid(p) as u64) {
                return Err(Error::CocycleViolation(k, m));
            }
        }
    }
    let g1 = g(1.min(bound));
    let mut unrolled = WreathElement::identity(hom.target());
    for k in 0..=bound {
        if g(k) != unrolled {
            return Err(Error::CocycleViolation(k, 1));
        }
        unrolled = unrolled.mul(&g1.shift_lamps(f(k)))?;
    }
    Ok(CocycleReport {
        m: hom.m,
        bound,
        values: table.into_iter().map(|(k, v)| (k, v.lamp_part())).collect(),
        pairs_checked: pairs,
    })
}

/// The epimorphism `N ⋊ Z -> L_{n,p}`, `(a, k) -> (Φ(a), k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifiedGroupEpi {
    phi: PolyMatrix,
    target: LamplighterSpec,
    samples_checked: usize,
    seed: u64,
}

impl VerifiedGroupEpi {
    pub fn phi(&self) -> &PolyMatrix {
        &self.phi
    }

    pub fn target(&self) -> LamplighterSpec {
        self.target
    }

    pub fn samples_checked(&self) -> usize {
        self.samples_checked
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn evaluate(&self, el: &SemidirectElement) -> WreathElement {
        let image = apply_to_laurent(&self.phi, el.coords());
        let lamps = WreathElement::from_module(self.target, &image).expect("n coordinates");
        lamps.mul(&WreathElement::t(self.target).pow(el.shift())).expect("same spec")
    }
}

/// `Φ · a` for a Laurent vector `a`.
pub fn apply_to_laurent(phi: &PolyMatrix, a: &[LaurentPoly]) -> Vec<LaurentPoly> {
    assert_eq!(phi.cols(), a.len(), "vector length");
    let field = phi.field();
    (0..phi.rows())
        .map(|i| {
            a.iter().enumerate().fold(LaurentPoly::zero(field), |acc, (j, aj)| {
                &acc + &(&LaurentPoly::from_poly(phi.get(i, j).clone()) * aj)
            })
        })
        .collect()
}

/// Builds and certifies `(a, k) -> (Φ(a), k)`: relators are killed, Φ is onto
/// R_p^n, and the homomorphism law holds on `samples` seeded random pairs.
pub fn build_lamplighter_epimorphism(
    presentation: &ModulePresentation,
    phi: &PolyMatrix,
    samples: usize,
    seed: u64,
) -> Result<VerifiedGroupEpi> {
    let field = presentation.field();
    if phi.field() != field {
        return Err(Error::FieldMismatch(field.p(), phi.field().p()));
    }
    let g = presentation.generators();
    if phi.cols() != g || phi.rows() == 0 {
        return Err(Error::ShapeMismatch(format!(
            "map is {}x{}, expected n x {g} with n >= 1",
            phi.rows(),
            phi.cols()
        )));
    }
    let killed = phi.matrix_mul(presentation.relations())?;
    if let Some(c) = (0..killed.cols()).find(|&c| killed.column(c).iter().any(|e| !e.is_zero())) {
        return Err(Error::RelationNotKilled(c));
    }
    if !is_surjective_onto_free(phi) {
        return Err(Error::NotSurjective);
    }
    let target = LamplighterSpec::lamplighter(field, phi.rows())?;
    let epi = VerifiedGroupEpi { phi: phi.clone(), target, samples_checked: samples, seed };

    for c in 0..presentation.relator_count() {
        let col: Vec<LaurentPoly> = presentation
            .relations()
            .column(c)
            .into_iter()
            .map(LaurentPoly::from_poly)
            .collect();
        if !epi.evaluate(&SemidirectElement::new(col, 0)).is_identity() {
            return Err(Error::RelationNotKilled(c));
        }
    }
    if !epi.evaluate(&SemidirectElement::t_pow(field, g, 1)).eq(&WreathElement::t(target)) {
        return Err(Error::NotSurjective);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let a = SemidirectElement::random(&mut rng, field, g, 3);
        let b = SemidirectElement::random(&mut rng, field, g, 3);
        let lhs = epi.evaluate(&a.mul(&b));
        let rhs = epi.evaluate(&a).mul(&epi.evaluate(&b))?;
        if lhs != rhs {
            return Err(Error::LawViolated(i));
        }
    }
    Ok(epi)
}
