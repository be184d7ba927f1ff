use std::collections::HashSet;

use super::table::{FiniteGroupTable, Subset};
use crate::error::{Error, Result};

/// Default cap on the number of normal subgroups collected.
pub const DEFAULT_LATTICE_CAP: usize = 1 << 16;

/// A normal subgroup together with a small set of elements whose normal
/// closure it is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSubgroup {
    pub elements: Subset,
    pub normal_generators: Vec<u32>,
}

impl NormalSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

struct ClassIndex {
    class_of: Vec<usize>,
    classes: Vec<Vec<u32>>,
}

impl ClassIndex {
    fn new(g: &FiniteGroupTable) -> Self {
        let classes = g.conjugacy_classes();
        let mut class_of = vec![0; g.order()];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x as usize] = i;
            }
        }
        ClassIndex { class_of, classes }
    }

    /// The subgroup generated by the classes of `xs`.
    fn normal_closure(&self, g: &FiniteGroupTable, xs: &[u32]) -> Subset {
        let mut gens = Vec::new();
        let mut span = g.trivial_subgroup();
        for &x in xs {
            for &y in &self.classes[self.class_of[x as usize]] {
                if !span.contains(y) {
                    gens.push(y);
                    span = g.subgroup_closure(&gens);
                }
            }
        }
        span
    }
}

/// Every normal subgroup of `g`, as the closure under joins of the normal
/// closures of single elements. Sorted by order, then by elements.
pub fn enumerate_normal_subgroups(g: &FiniteGroupTable, order_cap: u128) -> Result<Vec<NormalSubgroup>> {
    enumerate_with_cap(g, order_cap, DEFAULT_LATTICE_CAP)
}

pub fn enumerate_with_cap(g: &FiniteGroupTable, order_cap: u128, lattice_cap: usize) -> Result<Vec<NormalSubgroup>> {
    if g.order() as u128 > order_cap {
        return Err(Error::OrderBoundExceeded { order: g.order() as u128, cap: order_cap });
    }
    let index = ClassIndex::new(g);

    let mut atoms: Vec<(u32, Subset)> = Vec::new();
    let mut atom_seen = HashSet::new();
    for class in &index.classes {
        let x = class[0];
        let closure = index.normal_closure(g, &[x]);
        if atom_seen.insert(closure.clone()) {
            atoms.push((x, closure));
        }
    }

    let mut found: Vec<NormalSubgroup> =
        vec![NormalSubgroup { elements: g.trivial_subgroup(), normal_generators: Vec::new() }];
    let mut seen: HashSet<Subset> = HashSet::from([g.trivial_subgroup()]);
    let mut next = 0;
    while next < found.len() {
        let current = found[next].clone();
        next += 1;
        for (x, atom) in &atoms {
            if atom.is_subset(&current.elements) {
                continue;
            }
            let mut gens = current.normal_generators.clone();
            gens.push(*x);
            let join = index.normal_closure(g, &gens);
            if seen.insert(join.clone()) {
                if found.len() >= lattice_cap {
                    return Err(Error::OrderBoundExceeded { order: found.len() as u128 + 1, cap: lattice_cap as u128 });
                }
                found.push(NormalSubgroup { elements: join, normal_generators: gens });
            }
        }
    }

    for n in &found {
        if !g.is_normal(&n.elements) {
            return Err(Error::NotNormal);
        }
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(found)
}
