//! Brute-force oracles shared by the integration and acceptance tests. None
//! of them call the library routine they are used to check.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lamplighter::finite_quotients::{FiniteGroupTable, Subset};
use lamplighter::fp_matrix::FpMatrix;
use lamplighter::fp_poly::{FieldSpec, FpPoly};
use lamplighter::poly_matrix::PolyMatrix;
use lamplighter::rp_module::ModulePresentation;
use lamplighter::wreath::WreathElement;

pub fn field(p: u64) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_poly<R: Rng>(rng: &mut R, f: FieldSpec, max_deg: usize) -> FpPoly {
    let deg = rng.random_range(0..=max_deg);
    FpPoly::from_coeffs(f, (0..=deg).map(|_| rng.random_range(0..f.p())).collect())
}

/// Random matrix with about a third of the entries zero.
pub fn random_matrix<R: Rng>(rng: &mut R, f: FieldSpec, rows: usize, cols: usize, max_deg: usize) -> PolyMatrix {
    let entries = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if rng.random_range(0..3) == 0 { FpPoly::zero(f) } else { random_poly(rng, f, max_deg) })
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(f, cols, entries).unwrap()
}

/// Product of random elementary matrices: invertible over F_p[x].
pub fn random_unimodular<R: Rng>(rng: &mut R, f: FieldSpec, n: usize, steps: usize) -> PolyMatrix {
    let mut rows: Vec<Vec<FpPoly>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { FpPoly::one(f) } else { FpPoly::zero(f) }).collect())
        .collect();
    for _ in 0..steps {
        let i = rng.random_range(0..n);
        match rng.random_range(0..3) {
            0 if n > 1 => {
                let j = (i + rng.random_range(1..n)) % n;
                let c = random_poly(rng, f, 2);
                let src = rows[j].clone();
                for (a, b) in rows[i].iter_mut().zip(&src) {
                    *a = &*a + &(&c * b);
                }
            }
            1 if n > 1 => {
                let j = rng.random_range(0..n);
                rows.swap(i, j);
            }
            _ => {
                let c = rng.random_range(1..f.p());
                for a in rows[i].iter_mut() {
                    *a = a.scale(c);
                }
            }
        }
    }
    PolyMatrix::from_rows(f, n, rows).unwrap()
}

/// Determinant by cofactor expansion.
pub fn det_laplace(m: &[Vec<FpPoly>], f: FieldSpec) -> FpPoly {
    let n = m.len();
    if n == 0 {
        return FpPoly::one(f);
    }
    let mut acc = FpPoly::zero(f);
    for j in 0..n {
        let minor: Vec<Vec<FpPoly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| e.clone()).collect()).collect();
        let term = &m[0][j] * &det_laplace(&minor, f);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn monic_gcd(a: &FpPoly, b: &FpPoly) -> FpPoly {
    // Euclid by repeated remainder.
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.divmod(&y).unwrap().1;
        x = y;
        y = r;
    }
    if x.is_zero() {
        x
    } else {
        x.monic()
    }
}

/// Invariant factors as ratios of determinantal divisors
/// `d_k = gcd of all k x k minors`.
pub fn invariant_factors_by_minors(m: &PolyMatrix) -> Vec<FpPoly> {
    let f = m.field();
    let rows = m.to_rows();
    let size = m.rows().min(m.cols());
    let mut divisors = vec![FpPoly::one(f)];
    for k in 1..=size {
        let mut g = FpPoly::zero(f);
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let sub: Vec<Vec<FpPoly>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                g = monic_gcd(&g, &det_laplace(&sub, f));
            }
        }
        divisors.push(g);
    }
    (1..=size)
        .map(|k| {
            if divisors[k].is_zero() {
                FpPoly::zero(f)
            } else {
                divisors[k].divmod(&divisors[k - 1]).unwrap().0
            }
        })
        .collect()
}

/// All residues of degree below `deg f`, reduced and deduplicated.
pub fn residue_count(f: &FpPoly) -> usize {
    let p = f.field().p();
    let d = f.degree_or_zero();
    let mut seen = HashSet::new();
    for code in 0..p.pow(d as u32) {
        let coeffs: Vec<u64> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
        let r = FpPoly::from_coeffs(f.field(), coeffs).divmod(f).unwrap().1;
        seen.insert(r.coeffs().to_vec());
    }
    seen.len()
}

/// `dim_F_p N/(x^m - 1)N` by linear algebra on `(F_p[x]/(x^m - 1))^g`:
/// `g m` minus the rank of all `x^k`-shifts of the relator columns.
pub fn truncation_dim_by_rank(p: &ModulePresentation, m: usize) -> usize {
    let f = p.field();
    let g = p.generators();
    let rel = p.relations();
    let mut vectors = Vec::new();
    for c in 0..rel.cols() {
        for k in 0..m {
            let mut v = vec![0u64; g * m];
            for j in 0..g {
                for (e, coef) in rel.get(j, c).terms() {
                    let idx = j * m + (e + k) % m;
                    v[idx] = f.add(v[idx], coef);
                }
            }
            vectors.push(v);
        }
    }
    let mut mat = FpMatrix::zero(f, vectors.len(), g * m);
    for (i, v) in vectors.iter().enumerate() {
        for (j, &c) in v.iter().enumerate() {
            mat.set(i, j, c);
        }
    }
    g * m - mat.rank()
}

/// Random presentation with `g <= 3` generators and up to 3 relators.
pub fn random_presentation<R: Rng>(rng: &mut R, f: FieldSpec) -> ModulePresentation {
    let g = rng.random_range(1..=3);
    let k = rng.random_range(0..=3);
    let rel = random_matrix(rng, f, g, k, 3);
    ModulePresentation::new(f, g, rel).unwrap()
}

/// Every subgroup, by joining cyclic subgroups until nothing new appears.
pub fn all_subgroups(g: &FiniteGroupTable) -> Vec<Subset> {
    let close = |gens: &[u32]| -> Subset {
        let mut s = Subset::from_elements(g.order(), [g.identity()]);
        let mut frontier = vec![g.identity()];
        while let Some(x) = frontier.pop() {
            for &a in gens {
                let y = g.mul(x, a);
                if s.insert(y) {
                    frontier.push(y);
                }
            }
        }
        s
    };
    let cyclic: Vec<Subset> = {
        let mut set = BTreeSet::new();
        for a in g.elements() {
            set.insert(close(&[a]));
        }
        set.into_iter().collect()
    };
    let mut found: BTreeSet<Subset> = cyclic.iter().cloned().collect();
    let mut queue: Vec<Subset> = found.iter().cloned().collect();
    while let Some(h) = queue.pop() {
        for c in &cyclic {
            if c.is_subset(&h) {
                continue;
            }
            let gens: Vec<u32> = h.iter().chain(c.iter()).collect();
            let j = close(&gens);
            if found.insert(j.clone()) {
                queue.push(j);
            }
        }
    }
    found.into_iter().collect()
}

pub fn is_normal_brute(g: &FiniteGroupTable, s: &Subset) -> bool {
    s.iter().all(|x| {
        g.elements().all(|a| s.contains(g.mul(g.mul(a, x), g.inv(a))))
    })
}

/// Group table of a set of permutations closed under composition.
pub fn permutation_group_table(elements: &[Vec<u8>]) -> FiniteGroupTable {
    let index: HashMap<&Vec<u8>, u32> = elements.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();
    let compose = |a: &Vec<u8>, b: &Vec<u8>| -> Vec<u8> { b.iter().map(|&i| a[i as usize]).collect() };
    FiniteGroupTable::from_fn(elements.len(), |a, b| index[&compose(&elements[a as usize], &elements[b as usize])], None)
        .unwrap()
}

fn perm_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    // (a*b)(i) = a(b(i))
    b.iter().map(|&i| a[i as usize]).collect()
}

fn perm_inv(a: &[u8]) -> Vec<u8> {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u8;
    }
    out
}

fn perm_pow(a: &[u8], k: usize) -> Vec<u8> {
    let mut acc: Vec<u8> = (0..a.len() as u8).collect();
    for _ in 0..k {
        acc = perm_mul(&acc, a);
    }
    acc
}

fn perm_order(a: &[u8]) -> usize {
    let id: Vec<u8> = (0..a.len() as u8).collect();
    let mut x = a.to_vec();
    let mut k = 1;
    while x != id {
        x = perm_mul(&x, a);
        k += 1;
    }
    k
}

fn all_perms(d: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..d as u8).collect();
    fn rec(k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One permutation per cycle type.
fn cycle_type_reps(d: usize) -> Vec<Vec<u8>> {
    partitions(d, d)
        .into_iter()
        .map(|parts| {
            let mut perm = vec![0u8; d];
            let mut start = 0;
            for len in parts {
                for i in 0..len {
                    perm[start + i] = (start + (i + 1) % len) as u8;
                }
                start += len;
            }
            perm
        })
        .collect()
}

/// Closure of `gens` in `S_d`, abandoned once it exceeds `limit` elements.
fn perm_closure(gens: &[Vec<u8>], limit: usize) -> Option<Vec<Vec<u8>>> {
    let d = gens[0].len();
    let id: Vec<u8> = (0..d as u8).collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = perm_mul(&out[i], g);
            if seen.insert(y.clone()) {
                if out.len() >= limit {
                    return None;
                }
                out.push(y);
            }
        }
        i += 1;
    }
    Some(out)
}

fn transitive(group: &[Vec<u8>]) -> bool {
    let d = group[0].len();
    let orbit: HashSet<u8> = group.iter().map(|g| g[0]).collect();
    orbit.len() == d
}

/// Finite quotients of order at most `bound` of `N ⋊ Z` for a one-generator
/// presentation, found as regular permutation representations: pairs
/// `(A, T)` in `S_d` satisfying the relations whose generated group is
/// transitive of order d.
pub fn quotients_by_surjections(p: &ModulePresentation, bound: usize) -> Vec<FiniteGroupTable> {
    assert_eq!(p.generators(), 1, "oracle handles one module generator");
    let prime = p.field().p() as usize;
    let rel = p.relations();
    let mut out = Vec::new();
    for d in 1..=bound {
        let perms = all_perms(d);
        let a_candidates: Vec<&Vec<u8>> = perms.iter().filter(|a| prime.is_multiple_of(perm_order(a))).collect();
        for t in cycle_type_reps(d) {
            let m = perm_order(&t);
            let t_inv = perm_inv(&t);
            // conj[k] = T^k A T^-k
            for a in &a_candidates {
                let conj: Vec<Vec<u8>> =
                    (0..m).map(|k| perm_mul(&perm_mul(&perm_pow(&t, k), a), &perm_pow(&t_inv, k))).collect();
                let commute = (0..m).all(|k| perm_mul(a, &conj[k]) == perm_mul(&conj[k], a));
                if !commute {
                    continue;
                }
                let kills = (0..rel.cols()).all(|c| {
                    let mut acc: Vec<u8> = (0..d as u8).collect();
                    for (e, coef) in rel.get(0, c).terms() {
                        acc = perm_mul(&acc, &perm_pow(&conj[e % m], coef as usize));
                    }
                    acc.iter().enumerate().all(|(i, &j)| i == j as usize)
                });
                if !kills {
                    continue;
                }
                if let Some(group) = perm_closure(&[(*a).clone(), t.clone()], d) {
                    if group.len() == d && transitive(&group) {
                        out.push(permutation_group_table(&group));
                    }
                }
            }
        }
    }
    out
}

/// Subgroup of a finite wreath product generated by `gens`, by closure.
pub fn wreath_closure(gens: &[WreathElement]) -> usize {
    let id = WreathElement::identity(gens[0].spec());
    let mut seen: HashSet<WreathElement> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.mul(g).unwrap();
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen.len()
}
