//! Finitely generated modules over R_p = F_p[x, x^-1] given by relation
//! matrices, their invariant-factor decomposition and finite truncations
//! `N/(x^m - 1)N`.

use crate::error::{Error, Result};
use crate::fp_matrix::FpMatrix;
use crate::fp_poly::{FieldSpec, FpPoly, LaurentPoly};
use crate::poly_matrix::{is_divisibility_chain, smith_normal_form, PolyMatrix, SmithDecomposition};

/// `N = R_p^g / (column span of relations)`.
///
/// Relations are stored as ordinary polynomials; Laurent relator columns are
/// multiplied by a power of x (a unit) when the presentation is built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModulePresentation {
    field: FieldSpec,
    generators: usize,
    relations: PolyMatrix,
}

impl ModulePresentation {
    pub fn new(field: FieldSpec, generators: usize, relations: PolyMatrix) -> Result<Self> {
        if relations.field() != field {
            return Err(Error::FieldMismatch(field.p(), relations.field().p()));
        }
        if relations.rows() != generators {
            return Err(Error::ShapeMismatch(format!(
                "relation matrix has {} rows for {generators} generators",
                relations.rows()
            )));
        }
        Ok(ModulePresentation { field, generators, relations })
    }

    /// The free module R_p^n (the lamp module of L_{n,p}).
    pub fn free(field: FieldSpec, n: usize) -> Self {
        ModulePresentation {
            field,
            generators: n,
            relations: PolyMatrix::zero(field, n, 0),
        }
    }

    /// Builds a presentation from relators, each a vector of `generators`
    /// Laurent polynomials.
    pub fn from_laurent_relators(
        field: FieldSpec,
        generators: usize,
        relators: &[Vec<LaurentPoly>],
    ) -> Result<Self> {
        let mut columns = Vec::with_capacity(relators.len());
        for (c, rel) in relators.iter().enumerate() {
            if rel.len() != generators {
                return Err(Error::ShapeMismatch(format!(
                    "relator {c} has {} entries for {generators} generators",
                    rel.len()
                )));
            }
            if let Some(e) = rel.iter().find(|e| e.field() != field) {
                return Err(Error::FieldMismatch(field.p(), e.field().p()));
            }
            let low = rel.iter().filter_map(LaurentPoly::min_exponent).min().unwrap_or(0);
            columns.push(
                rel.iter()
                    .map(|e| e.to_poly_times_x_pow(-low).expect("cleared by the column minimum"))
                    .collect(),
            );
        }
        let relations = PolyMatrix::from_columns(field, generators, columns)?;
        Self::new(field, generators, relations)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &PolyMatrix {
        &self.relations
    }

    pub fn relator_count(&self) -> usize {
        self.relations.cols()
    }
}

/// `N ≅ R_p^r × R_p/f_1 × ... × R_p/f_s` with `f_1 | ... | f_s`, each `f_i`
/// monic, nonconstant and with `f_i(0) != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleDecomposition {
    field: FieldSpec,
    free_rank: usize,
    invariant_factors: Vec<FpPoly>,
}

impl ModuleDecomposition {
    pub fn new(field: FieldSpec, free_rank: usize, invariant_factors: Vec<FpPoly>) -> Result<Self> {
        for f in &invariant_factors {
            if f.field() != field {
                return Err(Error::FieldMismatch(field.p(), f.field().p()));
            }
            if f.is_zero() || f.is_unit() || f.constant_term() == 0 || !f.is_monic() {
                return Err(Error::InvalidInput(format!("{f} is not a normalized invariant factor")));
            }
        }
        if !is_divisibility_chain(&invariant_factors) {
            return Err(Error::InvalidInput("invariant factors do not form a chain".into()));
        }
        Ok(ModuleDecomposition { field, free_rank, invariant_factors })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[FpPoly] {
        &self.invariant_factors
    }

    /// `sum deg f_i`.
    pub fn torsion_degree(&self) -> usize {
        self.invariant_factors.iter().map(FpPoly::degree_or_zero).sum()
    }

    /// `dim_{F_p} N/(x^m - 1)N = r*m + sum deg gcd(f_i, x^m - 1)`.
    pub fn quotient_dim(&self, m: usize) -> Result<usize> {
        if m == 0 {
            return Err(Error::InvalidM(0));
        }
        let modulus = FpPoly::x_pow_minus_one(self.field, m);
        let torsion: usize = self
            .invariant_factors
            .iter()
            .map(|f| f.gcd(&modulus).degree_or_zero())
            .sum();
        Ok(self.free_rank * m + torsion)
    }
}

/// Invariant-factor decomposition from the Smith form of the relations.
pub fn decompose(presentation: &ModulePresentation) -> ModuleDecomposition {
    let snf = smith_normal_form(presentation.relations());
    decomposition_from_snf(presentation, &snf)
}

fn decomposition_from_snf(presentation: &ModulePresentation, snf: &SmithDecomposition) -> ModuleDecomposition {
    let nonzero: Vec<&FpPoly> = snf.diag().iter().filter(|d| !d.is_zero()).collect();
    let free_rank = presentation.generators() - nonzero.len();
    let invariant_factors: Vec<FpPoly> = nonzero
        .into_iter()
        .map(|d| d.strip_x().1.monic())
        .filter(|f| !f.is_unit())
        .collect();
    ModuleDecomposition::new(presentation.field(), free_rank, invariant_factors)
        .expect("stripping x-powers preserves the divisibility chain")
}

/// `|R_p / f R_p| = p^{deg f}` for `f(0) != 0`.
pub fn torsion_quotient_order(f: &FpPoly) -> Result<u128> {
    if f.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    if f.constant_term() == 0 {
        return Err(Error::NotNormalized);
    }
    let deg = f.degree_or_zero() as u32;
    (f.field().p() as u128).checked_pow(deg).ok_or(Error::Overflow("p^deg f"))
}

/// An explicit R_p-module epimorphism `N -> R_p^n`, as the `n x g` matrix of
/// images of the presentation generators.
///
/// Uses the Smith change of basis `y = U x`: the coordinates of `y` past the
/// nonzero invariant factors are free, and the first `n` of them are taken.
pub fn epimorphism_to_free(
    decomposition: &ModuleDecomposition,
    presentation: &ModulePresentation,
    n: usize,
) -> Result<PolyMatrix> {
    let snf = smith_normal_form(presentation.relations());
    if &decomposition_from_snf(presentation, &snf) != decomposition {
        return Err(Error::InvalidInput("decomposition does not belong to this presentation".into()));
    }
    if decomposition.free_rank() < n {
        return Err(Error::RankDeficient { free_rank: decomposition.free_rank(), n });
    }
    let first_free = snf.rank();
    let rows: Vec<usize> = (first_free..first_free + n).collect();
    let cols: Vec<usize> = (0..presentation.generators()).collect();
    let phi = snf.u().select(&rows, &cols);

    assert!(
        phi.matrix_mul(presentation.relations())?.is_zero(),
        "projection does not kill the relations"
    );
    assert!(is_surjective_onto_free(&phi), "projection is not onto R_p^n");
    Ok(phi)
}

/// An `n x g` matrix defines a surjection `R_p^g -> R_p^n` iff its Smith
/// invariant factors are all units of R_p.
pub fn is_surjective_onto_free(phi: &PolyMatrix) -> bool {
    if phi.rows() > phi.cols() {
        return false;
    }
    let snf = smith_normal_form(phi);
    snf.diag()
        .iter()
        .all(|d| LaurentPoly::from_poly(d.clone()).is_unit())
}

/// An explicit F_p-basis of a finite quotient `N / eN` (with `e | x^m - 1`)
/// together with the matrix of multiplication by x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTruncation {
    m: usize,
    modulus: FpPoly,
    /// Nonconstant invariant factors of the quotient, one block per factor.
    blocks: Vec<(usize, FpPoly)>,
    /// Rows of the Smith transform U for the retained coordinates.
    coordinate_map: PolyMatrix,
    dim: usize,
    x_action: FpMatrix,
    generator_images: Vec<Vec<u64>>,
}

impl FiniteTruncation {
    pub fn m(&self) -> usize {
        self.m
    }

    /// The polynomial `e` with `N / eN` presented here.
    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldSpec {
        self.modulus.field()
    }

    pub fn x_action(&self) -> &FpMatrix {
        &self.x_action
    }

    pub fn generator_images(&self) -> &[Vec<u64>] {
        &self.generator_images
    }

    /// Block sizes of the basis, i.e. the degrees of the cyclic factors.
    pub fn block_degrees(&self) -> Vec<usize> {
        self.blocks.iter().map(|(_, d)| d.degree_or_zero()).collect()
    }

    /// Coordinates of the class of a polynomial vector of length `g`.
    pub fn coordinates(&self, element: &[FpPoly]) -> Vec<u64> {
        assert_eq!(element.len(), self.coordinate_map.cols(), "vector length");
        let mut out = Vec::with_capacity(self.dim);
        for (row, (_, d)) in self.blocks.iter().enumerate() {
            let mut acc = FpPoly::zero(self.field());
            for (j, e) in element.iter().enumerate() {
                acc = &acc + &(self.coordinate_map.get(row, j) * e);
            }
            let r = acc.rem(d).expect("nonzero block modulus");
            out.extend((0..d.degree_or_zero()).map(|k| r.coeff(k)));
        }
        out
    }

    /// Coordinates of the class of a Laurent vector; negative powers of x
    /// are rewritten with `x^m = 1`.
    pub fn laurent_coordinates(&self, element: &[LaurentPoly]) -> Vec<u64> {
        let low = element.iter().filter_map(LaurentPoly::min_exponent).min().unwrap_or(0).min(0);
        let m = self.m as i64;
        let lift = (-low + m - 1) / m * m;
        let polys: Vec<FpPoly> = element
            .iter()
            .map(|e| e.to_poly_times_x_pow(lift).expect("lifted to nonnegative exponents"))
            .collect();
        self.coordinates(&polys)
    }
}

/// `N/(x^m - 1)N` with its basis, x-action and generator images.
pub fn finite_truncation(presentation: &ModulePresentation, m: usize) -> Result<FiniteTruncation> {
    if m == 0 {
        return Err(Error::InvalidM(0));
    }
    truncation_modulo(presentation, &FpPoly::x_pow_minus_one(presentation.field(), m), m)
}

/// `N/eN` for a monic `e` dividing `x^m - 1`, computed from the Smith form
/// of `[relations | e*I]`.
pub fn truncation_modulo(presentation: &ModulePresentation, modulus: &FpPoly, m: usize) -> Result<FiniteTruncation> {
    if m == 0 {
        return Err(Error::InvalidM(0));
    }
    let field = presentation.field();
    if modulus.field() != field {
        return Err(Error::FieldMismatch(field.p(), modulus.field().p()));
    }
    if !modulus.divides(&FpPoly::x_pow_minus_one(field, m)) {
        return Err(Error::InvalidInput(format!("{modulus} does not divide x^{m} - 1")));
    }
    let g = presentation.generators();
    let scaled = PolyMatrix::identity(field, g).scale(modulus);
    let full = presentation.relations().hconcat(&scaled)?;
    let snf = smith_normal_form(&full);

    let blocks: Vec<(usize, FpPoly)> = snf
        .diag()
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_unit())
        .map(|(i, d)| (i, d.clone()))
        .collect();
    assert!(blocks.iter().all(|(_, d)| !d.is_zero()), "e*I has full rank");

    let dim: usize = blocks.iter().map(|(_, d)| d.degree_or_zero()).sum();
    let mut x_action = FpMatrix::zero(field, dim, dim);
    let mut offset = 0;
    for (_, d) in &blocks {
        let deg = d.degree_or_zero();
        for j in 0..deg {
            if j + 1 < deg {
                x_action.set(offset + j + 1, offset + j, 1);
            } else {
                for k in 0..deg {
                    x_action.set(offset + k, offset + j, field.neg(d.coeff(k)));
                }
            }
        }
        offset += deg;
    }

    let rows: Vec<usize> = blocks.iter().map(|(i, _)| *i).collect();
    let cols: Vec<usize> = (0..g).collect();
    let coordinate_map = snf.u().select(&rows, &cols);
    let mut truncation = FiniteTruncation {
        m,
        modulus: modulus.monic(),
        blocks,
        coordinate_map,
        dim,
        x_action,
        generator_images: Vec::new(),
    };
    truncation.generator_images = (0..g)
        .map(|j| {
            let mut e = vec![FpPoly::zero(field); g];
            e[j] = FpPoly::one(field);
            truncation.coordinates(&e)
        })
        .collect();
    assert!(
        truncation.x_action.pow(m as u64).is_identity(),
        "x^m must act trivially on the truncation"
    );
    Ok(truncation)
}
