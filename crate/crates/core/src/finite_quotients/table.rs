use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rp_module::FiniteTruncation;

/// Tables up to this order get an exhaustive associativity check.
pub const FULL_CHECK_ORDER: usize = 512;
/// Default cap on the order of any constructed table.
pub const DEFAULT_ORDER_CAP: u128 = 4096;

const SPOT_CHECKS: usize = 200_000;

/// A set of group elements stored as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    len: usize,
    bits: Vec<u64>,
}

impl Subset {
    pub fn empty(len: usize) -> Self {
        Subset { len, bits: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i as u32);
        }
        s
    }

    pub fn from_elements(len: usize, elements: impl IntoIterator<Item = u32>) -> Self {
        let mut s = Self::empty(len);
        for e in elements {
            s.insert(e);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn contains(&self, e: u32) -> bool {
        self.bits[e as usize / 64] >> (e % 64) & 1 == 1
    }

    /// Returns true when `e` was not yet present.
    pub fn insert(&mut self, e: u32) -> bool {
        let (w, b) = (e as usize / 64, e % 64);
        let fresh = self.bits[w] >> b & 1 == 0;
        self.bits[w] |= 1 << b;
        fresh
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len as u32).filter(|&e| self.contains(e))
    }
}

/// A finite group given by its full multiplication table. Elements are
/// `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    mul: Vec<u32>,
    identity: u32,
    inverses: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl FiniteGroupTable {
    /// Validates a row-major table: entries in range, a two-sided identity,
    /// inverses, and associativity (exhaustive up to [`FULL_CHECK_ORDER`],
    /// seeded random triples above).
    pub fn from_table(order: usize, mul: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self> {
        if order == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if mul.len() != order * order {
            return Err(Error::NotAGroup(format!("{} entries for order {order}", mul.len())));
        }
        if mul.iter().any(|&e| e as usize >= order) {
            return Err(Error::NotAGroup("entry out of range".into()));
        }
        if labels.as_ref().is_some_and(|l| l.len() != order) {
            return Err(Error::NotAGroup("label count differs from order".into()));
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| at(a, b) == identity)
                .filter(|&b| at(b, a) == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv as u32);
        }
        let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if order <= FULL_CHECK_ORDER {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    let row = &mul[ab * order..(ab + 1) * order];
                    for (c, &lhs) in row.iter().enumerate() {
                        if lhs as usize != at(a, at(b, c)) {
                            return Err(Error::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
            for _ in 0..SPOT_CHECKS {
                let (a, b, c) = (rng.random_range(0..order), rng.random_range(0..order), rng.random_range(0..order));
                if !assoc(a, b, c) {
                    return Err(Error::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                }
            }
        }
        Ok(FiniteGroupTable { order, mul, identity: identity as u32, inverses, labels })
    }

    /// Builds a table from a multiplication closure on `0..order`.
    pub fn from_fn(order: usize, f: impl Fn(u32, u32) -> u32, labels: Option<Vec<String>>) -> Result<Self> {
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order as u32 {
            for b in 0..order as u32 {
                mul.push(f(a, b));
            }
        }
        Self::from_table(order, mul, labels)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_fn(n, |a, b| (a + b) % n as u32, Some(labels)).expect("Z/n is a group")
    }

    /// `G × H` with `(g, h)` encoded as `g * |H| + h`.
    pub fn direct_product(g: &FiniteGroupTable, h: &FiniteGroupTable) -> Self {
        let ho = h.order as u32;
        Self::from_fn(
            g.order * h.order,
            |a, b| g.mul(a / ho, b / ho) * ho + h.mul(a % ho, b % ho),
            None,
        )
        .expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, e: u32) -> String {
        match &self.labels {
            Some(l) => l[e as usize].clone(),
            None => e.to_string(),
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order as u32).map(|a| self.element_order(a)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn whole(&self) -> Subset {
        Subset::full(self.order)
    }

    pub fn trivial_subgroup(&self) -> Subset {
        Subset::from_elements(self.order, [self.identity])
    }

    /// The subgroup generated by `gens`, by breadth-first closure.
    pub fn subgroup_closure(&self, gens: &[u32]) -> Subset {
        let mut seen = self.trivial_subgroup();
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Greedy generating sequence: repeatedly adds an element of maximal
    /// order outside the current subgroup.
    pub fn generating_sequence(&self) -> Vec<u32> {
        let orders = self.element_orders();
        let mut by_order: Vec<u32> = self.elements().collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(orders[a as usize]), a));
        let mut gens = Vec::new();
        let mut span = self.trivial_subgroup();
        for a in by_order {
            if !span.contains(a) {
                gens.push(a);
                span = self.subgroup_closure(&gens);
            }
            if span.len() == self.order {
                break;
            }
        }
        gens
    }

    /// Conjugacy class of `x`, as the orbit under conjugation by generators.
    pub fn conjugacy_class(&self, x: u32, gens: &[u32]) -> Vec<u32> {
        let mut seen = Subset::from_elements(self.order, [x]);
        let mut out = vec![x];
        let mut i = 0;
        while i < out.len() {
            let y = out[i];
            for &g in gens {
                let z = self.conjugate(g, y);
                if seen.insert(z) {
                    out.push(z);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let gens = self.generating_sequence();
        let mut assigned = Subset::empty(self.order);
        let mut classes = Vec::new();
        for x in self.elements() {
            if assigned.contains(x) {
                continue;
            }
            let class = self.conjugacy_class(x, &gens);
            for &y in &class {
                assigned.insert(y);
            }
            classes.push(class);
        }
        classes
    }

    pub fn is_subgroup(&self, s: &Subset) -> bool {
        s.contains(self.identity)
            && s.iter().all(|a| s.contains(self.inv(a)) && s.iter().all(|b| s.contains(self.mul(a, b))))
    }

    pub fn is_normal(&self, s: &Subset) -> bool {
        self.is_subgroup(s) && s.iter().all(|x| self.elements().all(|g| s.contains(self.conjugate(g, x))))
    }

    /// `[G, G]`, generated by all commutators.
    pub fn derived_subgroup(&self) -> Subset {
        let mut comms = Subset::empty(self.order);
        for a in self.elements() {
            for b in self.elements() {
                comms.insert(self.commutator(a, b));
            }
        }
        let mut gens = Vec::new();
        let mut span = self.trivial_subgroup();
        for c in comms.iter() {
            if !span.contains(c) {
                gens.push(c);
                span = self.subgroup_closure(&gens);
            }
        }
        span
    }

    /// `G / N` on cosets, numbered in order of their smallest element.
    pub fn quotient(&self, normal: &Subset) -> Result<FiniteGroupTable> {
        if normal.universe() != self.order || !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for a in self.elements() {
            if coset_of[a as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(a);
            for n in normal.iter() {
                coset_of[self.mul(a, n) as usize] = id;
            }
        }
        let k = reps.len();
        let labels = self.labels.as_ref().map(|_| reps.iter().map(|&r| format!("{}N", self.label(r))).collect());
        Self::from_fn(k, |a, b| coset_of[self.mul(reps[a as usize], reps[b as usize]) as usize], labels)
    }
}

/// The semidirect product `F_p^dim ⋊ Z/m` of a finite truncation, with the
/// generator of `Z/m` acting by the truncation's x-action. The pair
/// `(v, r)` is encoded as `r * p^dim + Σ v_i p^i`.
pub fn build_group_table(truncation: &FiniteTruncation, m: usize, order_cap: u128) -> Result<FiniteGroupTable> {
    if m == 0 {
        return Err(Error::InvalidM(0));
    }
    let field = truncation.field();
    let p = field.p();
    let dim = truncation.dim();
    let base = u32::try_from(dim)
        .ok()
        .and_then(|d| (p as u128).checked_pow(d))
        .ok_or(Error::Overflow("group order"))?;
    let order = base.checked_mul(m as u128).ok_or(Error::Overflow("group order"))?;
    if order > order_cap {
        return Err(Error::OrderBoundExceeded { order, cap: order_cap });
    }
    if !truncation.x_action().pow(m as u64).is_identity() {
        return Err(Error::InvalidInput(format!("x-action does not have order dividing {m}")));
    }
    let base = base as usize;
    let decode = |mut i: usize| -> Vec<u64> {
        (0..dim)
            .map(|_| {
                let d = (i % p as usize) as u64;
                i /= p as usize;
                d
            })
            .collect()
    };
    let encode = |v: &[u64]| -> usize { v.iter().rev().fold(0, |acc, &d| acc * p as usize + d as usize) };

    // act[r][w] = index of X^r w
    let mut act = vec![vec![0usize; base]; m];
    let mut power = crate::fp_matrix::FpMatrix::identity(field, dim);
    for row in act.iter_mut() {
        for (w, slot) in row.iter_mut().enumerate() {
            *slot = encode(&power.mul_vec(&decode(w)));
        }
        power = truncation.x_action().mul(&power);
    }
    let vectors: Vec<Vec<u64>> = (0..base).map(decode).collect();
    let add = |a: usize, b: usize| -> usize {
        let s: Vec<u64> = vectors[a].iter().zip(&vectors[b]).map(|(&x, &y)| field.add(x, y)).collect();
        encode(&s)
    };
    let labels = (0..order as usize)
        .map(|i| {
            let v: Vec<String> = vectors[i % base].iter().map(|d| d.to_string()).collect();
            format!("([{}], {})", v.join(","), i / base)
        })
        .collect();
    FiniteGroupTable::from_fn(
        order as usize,
        |a, b| {
            let (va, ra) = (a as usize % base, a as usize / base);
            let (vb, rb) = (b as usize % base, b as usize / base);
            ((ra + rb) % m * base + add(va, act[ra][vb])) as u32
        },
        Some(labels),
    )
}
