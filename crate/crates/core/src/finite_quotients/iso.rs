use serde::Serialize;

use super::table::FiniteGroupTable;
use crate::error::{Error, Result};

/// Isomorphism invariants of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuotientFingerprint {
    pub order: usize,
    /// Abelianization as a sorted list of prime-power cyclic factors.
    pub abelian_invariants: Vec<usize>,
    pub exponent: usize,
    pub element_orders: Vec<usize>,
    pub class_sizes: Vec<usize>,
}

impl QuotientFingerprint {
    pub fn is_abelian(&self) -> bool {
        self.abelian_invariants.iter().product::<usize>() == self.order
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Prime-power cyclic factors of an abelian group, read off from the
/// number of elements killed by each `q^k`.
pub fn abelian_invariants(g: &FiniteGroupTable) -> Vec<usize> {
    assert!(g.is_abelian(), "abelian group expected");
    let orders = g.element_orders();
    let mut out = Vec::new();
    for q in prime_factors(g.order()) {
        // killed[k] = #{a : a^{q^k} = 1}
        let mut killed = vec![1usize];
        let mut qk = 1;
        loop {
            qk *= q;
            let count = orders.iter().filter(|&&o| qk % o == 0).count();
            killed.push(count);
            if count == g.order() || qk > g.order() {
                break;
            }
        }
        // factors of order >= q^k: log_q(killed[k] / killed[k-1])
        let at_least: Vec<usize> = killed
            .windows(2)
            .map(|w| {
                let mut r = w[1] / w[0];
                let mut e = 0;
                while r > 1 {
                    r /= q;
                    e += 1;
                }
                e
            })
            .collect();
        for k in 0..at_least.len() {
            let exactly = at_least[k] - at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..exactly {
                out.push(q.pow(k as u32 + 1));
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn fingerprint(g: &FiniteGroupTable) -> QuotientFingerprint {
    let mut element_orders = g.element_orders();
    let exponent = element_orders.iter().fold(1, |acc, &o| acc / gcd(acc, o) * o);
    element_orders.sort_unstable();
    let mut class_sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
    class_sizes.sort_unstable();
    let ab = g.quotient(&g.derived_subgroup()).expect("derived subgroup is normal");
    QuotientFingerprint {
        order: g.order(),
        abelian_invariants: abelian_invariants(&ab),
        exponent,
        element_orders,
        class_sizes,
    }
}

/// Decides `G ≅ H`: fingerprint filter, then a backtracking search for
/// images of a greedy generating sequence of G, each partial assignment
/// extended over the generated subgroup and checked edge by edge.
pub fn isomorphic(g: &FiniteGroupTable, h: &FiniteGroupTable, order_cap: u128) -> Result<bool> {
    for t in [g, h] {
        if t.order() as u128 > order_cap {
            return Err(Error::OrderBoundExceeded { order: t.order() as u128, cap: order_cap });
        }
    }
    if fingerprint(g) != fingerprint(h) {
        return Ok(false);
    }
    Ok(find_isomorphism(g, h).is_some())
}

/// An explicit isomorphism `G -> H` as an image table, if one exists.
pub fn find_isomorphism(g: &FiniteGroupTable, h: &FiniteGroupTable) -> Option<Vec<u32>> {
    if g.order() != h.order() {
        return None;
    }
    let gens = g.generating_sequence();
    let class_size = |t: &FiniteGroupTable| -> Vec<usize> {
        let mut out = vec![0; t.order()];
        for c in t.conjugacy_classes() {
            for &x in &c {
                out[x as usize] = c.len();
            }
        }
        out
    };
    let (g_cls, h_cls) = (class_size(g), class_size(h));
    let (g_ord, h_ord) = (g.element_orders(), h.element_orders());
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&x| {
            h.elements()
                .filter(|&y| h_ord[y as usize] == g_ord[x as usize] && h_cls[y as usize] == g_cls[x as usize])
                .collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search(g, h, &gens, &candidates, &mut images)
}

fn search(
    g: &FiniteGroupTable,
    h: &FiniteGroupTable,
    gens: &[u32],
    candidates: &[Vec<u32>],
    images: &mut Vec<u32>,
) -> Option<Vec<u32>> {
    let level = images.len();
    if level == gens.len() {
        return extend(g, h, gens, images).filter(|map| map.iter().all(|&v| v != u32::MAX));
    }
    for &y in &candidates[level] {
        images.push(y);
        if extend(g, h, &gens[..=level], images).is_some() {
            if let Some(found) = search(g, h, gens, candidates, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

/// Extends `gens[i] -> images[i]` over `<gens>`; `None` when the extension
/// is not a well-defined injective homomorphism.
fn extend(g: &FiniteGroupTable, h: &FiniteGroupTable, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    let mut map = vec![u32::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[g.identity() as usize] = h.identity();
    used[h.identity() as usize] = true;
    let mut queue = vec![g.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        let fx = map[x as usize];
        for (&a, &b) in gens.iter().zip(images) {
            let y = g.mul(x, a);
            let fy = h.mul(fx, b);
            match map[y as usize] {
                u32::MAX => {
                    if used[fy as usize] {
                        return None;
                    }
                    used[fy as usize] = true;
                    map[y as usize] = fy;
                    queue.push(y);
                }
                prev if prev != fy => return None,
                _ => {}
            }
        }
    }
    Some(map)
}
