//! Certificate pipeline for a candidate `N ⋊ Z` against `L_{n,p}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_quotients::{compare_qu, QuComparison, QuSource, DEFAULT_ORDER_CAP, DEFAULT_QU_BOUND};
use crate::fp_poly::FieldSpec;
use crate::json::{poly_to_literal, CandidateJson, MatrixJson, PolyLiteral, RelationsJson};
use crate::rp_module::{decompose, epimorphism_to_free, torsion_quotient_order, ModuleDecomposition, ModulePresentation};
use crate::wreath::{build_lamplighter_epimorphism, LamplighterSpec, DEFAULT_LAW_SAMPLES};

/// `N ⋊ Z` with t acting as x, to be compared with `L_{n,p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateGroup {
    n: usize,
    presentation: ModulePresentation,
}

impl CandidateGroup {
    pub fn new(presentation: ModulePresentation, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("target lamp rank n must be at least 1".into()));
        }
        Ok(CandidateGroup { n, presentation })
    }

    /// `L_{n,p}` itself, as the free module of rank n.
    pub fn lamplighter(field: FieldSpec, n: usize) -> Result<Self> {
        Self::new(ModulePresentation::free(field, n), n)
    }

    pub fn from_json(json: &CandidateJson) -> Result<Self> {
        let field = FieldSpec::new(json.p)?;
        Self::new(json.presentation.to_presentation(field)?, json.n)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_json(&crate::json::parse(text)?)
    }

    pub fn to_json(&self) -> CandidateJson {
        CandidateJson {
            p: self.field().p(),
            n: self.n,
            presentation: RelationsJson::from_presentation(&self.presentation),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.presentation.field()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn presentation(&self) -> &ModulePresentation {
        &self.presentation
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianizationCheck {
    pub passed: bool,
    /// `dim N/(x-1)N`.
    pub coinvariant_dim: usize,
    pub expected: usize,
}

/// `ab(N ⋊ Z) = N/(x-1)N × Z`; passes iff the coinvariants have dimension n.
pub fn abelianization_check(candidate: &CandidateGroup) -> AbelianizationCheck {
    let d = decompose(&candidate.presentation);
    abelianization_from(&d, candidate.n)
}

fn abelianization_from(d: &ModuleDecomposition, n: usize) -> AbelianizationCheck {
    let dim = d.quotient_dim(1).expect("m = 1");
    AbelianizationCheck { passed: dim == n, coinvariant_dim: dim, expected: n }
}

/// Smallest `m >= Σ deg f_i + 2` with `p ∤ m`.
pub fn choose_m(d: &ModuleDecomposition) -> usize {
    let p = d.field().p() as usize;
    (d.torsion_degree() + 2..).find(|m| m % p != 0).expect("p does not divide every integer")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCheck {
    pub passed: bool,
    pub free_rank: usize,
    pub n: usize,
    pub m: usize,
    pub torsion_degree: usize,
    /// `(n - r) * m`
    pub lhs: i64,
    /// `Σ deg f_i + 1`
    pub rhs: i64,
    pub inequality_holds: bool,
    pub inequality: String,
}

/// Decides `r >= n`, and evaluates `(n - r) m <= Σ deg f_i + 1` alongside.
pub fn rank_check(d: &ModuleDecomposition, n: usize, m: usize) -> RankCheck {
    let r = d.free_rank();
    let lhs = (n as i64 - r as i64) * m as i64;
    let rhs = d.torsion_degree() as i64 + 1;
    let holds = lhs <= rhs;
    let passed = r >= n;
    if m >= d.torsion_degree() + 2 {
        assert_eq!(passed, holds, "inequality contradicts r >= n");
    }
    RankCheck {
        passed,
        free_rank: r,
        n,
        m,
        torsion_degree: d.torsion_degree(),
        lhs,
        rhs,
        inequality_holds: holds,
        inequality: format!(
            "({n} - {r}) * {m} = {lhs} {} {rhs} = {} + 1",
            if holds { "<=" } else { ">" },
            d.torsion_degree()
        ),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub free_rank: usize,
    pub invariant_factors: Vec<PolyLiteral>,
    pub invariant_factors_text: Vec<String>,
    pub torsion_orders: Vec<u128>,
}

impl DecompositionReport {
    pub fn new(d: &ModuleDecomposition) -> Self {
        DecompositionReport {
            free_rank: d.free_rank(),
            invariant_factors: d.invariant_factors().iter().map(poly_to_literal).collect(),
            invariant_factors_text: d.invariant_factors().iter().map(|f| f.to_string()).collect(),
            torsion_orders: d
                .invariant_factors()
                .iter()
                .map(|f| torsion_quotient_order(f).expect("normalized factor"))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpimorphismReport {
    pub phi: MatrixJson,
    pub relations_killed: bool,
    pub unit_smith_form: bool,
    pub law_samples: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    AbelianizationCheck,
    RankCheck,
    Epimorphism,
    QuComparison,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::AbelianizationCheck => "abelianization_check",
            Stage::RankCheck => "rank_check",
            Stage::Epimorphism => "epimorphism",
            Stage::QuComparison => "qu_comparison",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub p: u64,
    pub n: usize,
    pub ab_check: AbelianizationCheck,
    pub decomposition: DecompositionReport,
    pub chosen_m: Option<usize>,
    pub rank_check: Option<RankCheck>,
    pub epimorphism: Option<EpimorphismReport>,
    pub qu_comparison: QuComparison,
    pub certified: bool,
    pub failed_stage: Option<Stage>,
    pub conclusion: String,
}

impl RigidityReport {
    pub fn to_json(&self) -> String {
        crate::json::to_string(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub qu_bound: usize,
    pub seed: u64,
    pub law_samples: usize,
    pub order_cap: u128,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            qu_bound: DEFAULT_QU_BOUND,
            seed: 0,
            law_samples: DEFAULT_LAW_SAMPLES,
            order_cap: DEFAULT_ORDER_CAP,
        }
    }
}

/// Runs the pipeline. The bounded Qu comparison with `L_{n,p}` is always
/// computed; the remaining stages stop at the first failure.
pub fn certify(candidate: &CandidateGroup, opts: &CertifyOptions) -> Result<RigidityReport> {
    let field = candidate.field();
    let n = candidate.n;
    let d = decompose(&candidate.presentation);
    let ab_check = abelianization_from(&d, n);
    let mut failed_stage = None;

    let mut chosen_m = None;
    let mut rank = None;
    let mut epimorphism = None;
    if !ab_check.passed {
        failed_stage = Some(Stage::AbelianizationCheck);
    } else {
        let m = choose_m(&d);
        chosen_m = Some(m);
        let rc = rank_check(&d, n, m);
        let passed = rc.passed;
        rank = Some(rc);
        if !passed {
            failed_stage = Some(Stage::RankCheck);
        } else {
            let phi = epimorphism_to_free(&d, &candidate.presentation, n)?;
            match build_lamplighter_epimorphism(&candidate.presentation, &phi, opts.law_samples, opts.seed) {
                Ok(epi) => {
                    epimorphism = Some(EpimorphismReport {
                        phi: MatrixJson::from_matrix(epi.phi()),
                        relations_killed: true,
                        unit_smith_form: true,
                        law_samples: epi.samples_checked(),
                        seed: epi.seed(),
                    })
                }
                Err(_) => failed_stage = Some(Stage::Epimorphism),
            }
        }
    }

    let target = LamplighterSpec::lamplighter(field, n)?;
    let qu_comparison = compare_qu(
        &QuSource::Presentation(candidate.presentation.clone()),
        &QuSource::Lamplighter(target),
        opts.qu_bound,
        opts.order_cap,
    )?;
    if failed_stage.is_none() && !qu_comparison.is_equal() {
        failed_stage = Some(Stage::QuComparison);
    }
    let certified = failed_stage.is_none();
    let conclusion = conclusion_text(p_n(field, n), opts.qu_bound, failed_stage, rank.as_ref(), &ab_check);
    Ok(RigidityReport {
        p: field.p(),
        n,
        ab_check,
        decomposition: DecompositionReport::new(&d),
        chosen_m,
        rank_check: rank,
        epimorphism,
        qu_comparison,
        certified,
        failed_stage,
        conclusion,
    })
}

fn p_n(field: FieldSpec, n: usize) -> String {
    format!("L_{{{n},{}}}", field.p())
}

fn conclusion_text(
    target: String,
    bound: usize,
    failed: Option<Stage>,
    rank: Option<&RankCheck>,
    ab: &AbelianizationCheck,
) -> String {
    let scope = "Input is taken in the form N ⋊ Z; reducing a general group to this form is not performed.";
    match failed {
        None => format!(
            "epimorphism Γ₀ → {target} constructed and verified; isomorphism conclusion requires \
             Qu-equality and [DFPR, Theorem 3], checked here only up to order {bound}. {scope}"
        ),
        Some(Stage::AbelianizationCheck) => format!(
            "not certified: dim N/(x-1)N = {} but {target} requires {}. {scope}",
            ab.coinvariant_dim, ab.expected
        ),
        Some(Stage::RankCheck) => {
            let rc = rank.expect("rank check ran");
            format!(
                "not certified: free rank r = {} < n = {}, so no epimorphism onto {target} exists. {scope}",
                rc.free_rank, rc.n
            )
        }
        Some(Stage::Epimorphism) => format!("not certified: the epimorphism onto {target} failed verification. {scope}"),
        Some(Stage::QuComparison) => format!(
            "not certified: finite quotients of order at most {bound} differ from those of {target}. {scope}"
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_poly::FpPoly;
    use crate::poly_matrix::PolyMatrix;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn torsion(p: u64, free: usize, factor: &[i64]) -> ModulePresentation {
        let field = f(p);
        let g = free + 1;
        let mut col = vec![FpPoly::zero(field); g];
        col[free] = FpPoly::from_signed(field, factor);
        ModulePresentation::new(field, g, PolyMatrix::from_columns(field, g, vec![col]).unwrap()).unwrap()
    }

    #[test]
    fn abelianization_examples() {
        let free = CandidateGroup::lamplighter(f(3), 2).unwrap();
        assert_eq!(abelianization_check(&free).coinvariant_dim, 2);
        let mixed = CandidateGroup::new(torsion(2, 1, &[1, 1, 1]), 1).unwrap();
        let ab = abelianization_check(&mixed);
        assert!(ab.passed);
        assert_eq!(ab.coinvariant_dim, 1);
        let tors = CandidateGroup::new(torsion(2, 0, &[1, 1]), 1).unwrap();
        assert!(abelianization_check(&tors).passed);
    }

    #[test]
    fn choose_m_examples() {
        let d = decompose(&ModulePresentation::free(f(2), 1));
        assert_eq!(choose_m(&d), 3);
        assert_eq!(choose_m(&decompose(&torsion(2, 1, &[1, 1, 1]))), 5);
        assert_eq!(choose_m(&decompose(&torsion(3, 0, &[1, 1]))), 4);
    }

    #[test]
    fn rank_check_examples() {
        let d = decompose(&ModulePresentation::free(f(2), 1));
        assert!(rank_check(&d, 1, 3).passed);
        let d = decompose(&torsion(3, 0, &[1, 1]));
        let rc = rank_check(&d, 1, 4);
        assert!(!rc.passed);
        assert_eq!((rc.lhs, rc.rhs), (4, 2));
        assert!(!rc.inequality_holds);
        let d = decompose(&ModulePresentation::free(f(2), 2));
        let rc = rank_check(&d, 1, 3);
        assert!(rc.passed && rc.lhs == -3);
    }

    #[test]
    fn certify_free_rank_one() {
        let c = CandidateGroup::lamplighter(f(2), 1).unwrap();
        let r = certify(&c, &CertifyOptions::default()).unwrap();
        assert!(r.certified, "{}", r.to_json());
        assert_eq!(r.chosen_m, Some(3));
        let phi = r.epimorphism.unwrap().phi.to_matrix().unwrap();
        assert_eq!(phi, PolyMatrix::identity(f(2), 1));
        assert!(r.qu_comparison.is_equal());
        assert!(r.conclusion.contains("[DFPR, Theorem 3]"));
    }

    #[test]
    fn certify_with_torsion() {
        let c = CandidateGroup::new(torsion(2, 1, &[1, 1, 1]), 1).unwrap();
        let r = certify(&c, &CertifyOptions::default()).unwrap();
        assert!(r.certified);
        assert_eq!(r.chosen_m, Some(5));
        assert_eq!(r.decomposition.torsion_orders, vec![4]);
    }

    #[test]
    fn certify_torsion_only_fails_at_rank() {
        let c = CandidateGroup::new(torsion(2, 0, &[1, 1]), 1).unwrap();
        let r = certify(&c, &CertifyOptions::default()).unwrap();
        assert!(!r.certified);
        assert_eq!(r.failed_stage, Some(Stage::RankCheck));
        assert!(r.epimorphism.is_none());
        let w = r.qu_comparison.witness().unwrap();
        assert!(w.fingerprint.order <= 8);
    }

    #[test]
    fn certify_abelianization_failure() {
        let c = CandidateGroup::lamplighter(f(2), 2).unwrap();
        let c = CandidateGroup::new(c.presentation().clone(), 1).unwrap();
        let r = certify(&c, &CertifyOptions::default()).unwrap();
        assert_eq!(r.failed_stage, Some(Stage::AbelianizationCheck));
        assert!(r.rank_check.is_none() && r.chosen_m.is_none());
    }
}
