//! Brute-force reference implementations over plain numerator vectors.
//!
//! These deliberately share no code with the library: sets are `Vec<u8>` in
//! point-major order, families are sorted `Vec`s, and every answer comes from
//! direct enumeration.
#![allow(dead_code)]

use std::collections::BTreeSet;

pub type Raw = Vec<u8>;

#[derive(Clone, Copy, Debug)]
pub struct Grid {
    pub points: usize,
    pub n: usize,
    pub d: u8,
}

impl Grid {
    pub fn cells(&self) -> usize {
        self.points * self.n
    }

    pub fn all(&self) -> Vec<Raw> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.cells() {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=self.d).map(move |k| {
                        let mut q = p.clone();
                        q.push(k);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn restricted(&self) -> Vec<Raw> {
        self.all()
            .into_iter()
            .filter(|s| self.is_restricted(s))
            .collect()
    }

    pub fn tuple<'a>(&self, s: &'a [u8], x: usize) -> &'a [u8] {
        &s[x * self.n..(x + 1) * self.n]
    }

    pub fn positive_at(&self, s: &[u8], x: usize) -> bool {
        self.tuple(s, x).iter().all(|&g| g > 0)
    }

    pub fn is_restricted(&self, s: &[u8]) -> bool {
        (0..self.points).all(|x| {
            let t = self.tuple(s, x);
            t.iter().all(|&g| g > 0) || t.iter().all(|&g| g == 0)
        })
    }

    pub fn constants(&self) -> Vec<Raw> {
        let mut tuples: Vec<Raw> = vec![Vec::new()];
        for _ in 0..self.n {
            tuples = tuples
                .into_iter()
                .flat_map(|p| {
                    (1..=self.d).map(move |k| {
                        let mut q = p.clone();
                        q.push(k);
                        q
                    })
                })
                .collect();
        }
        tuples.into_iter().map(|t| t.repeat(self.points)).collect()
    }

    pub fn null(&self) -> Raw {
        vec![0; self.cells()]
    }
}

pub fn leq(a: &[u8], b: &[u8]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn meet(a: &[u8], b: &[u8]) -> Raw {
    a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()
}

pub fn join(a: &[u8], b: &[u8]) -> Raw {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Every join of a nonempty subfamily, plus the null set for the empty one.
pub fn subfamily_joins(grid: &Grid, family: &[Raw]) -> BTreeSet<Raw> {
    let mut out = BTreeSet::new();
    out.insert(grid.null());
    for mask in 1u64..(1 << family.len()) {
        let mut acc = grid.null();
        for (i, s) in family.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = join(&acc, s);
            }
        }
        out.insert(acc);
    }
    out
}

/// Repeats pairwise meets and joins until nothing new appears.
pub fn closure(start: &[Raw]) -> Vec<Raw> {
    let mut family: BTreeSet<Raw> = start.iter().cloned().collect();
    loop {
        let items: Vec<Raw> = family.iter().cloned().collect();
        let mut grew = false;
        for a in &items {
            for b in &items {
                grew |= family.insert(meet(a, b));
                grew |= family.insert(join(a, b));
            }
        }
        if !grew {
            return family.into_iter().collect();
        }
    }
}

pub fn generate(grid: &Grid, seeds: &[Raw]) -> Vec<Raw> {
    let mut start = seeds.to_vec();
    start.push(grid.null());
    start.extend(grid.constants());
    closure(&start)
}

/// Lowen axioms by exhaustion: every nonempty subfamily join is checked,
/// not only pairwise ones.
pub fn is_lowen(grid: &Grid, opens: &[Raw]) -> bool {
    let set: BTreeSet<&Raw> = opens.iter().collect();
    opens.iter().all(|s| grid.is_restricted(s))
        && set.contains(&grid.null())
        && grid.constants().iter().all(|c| set.contains(c))
        && opens
            .iter()
            .all(|a| opens.iter().all(|b| set.contains(&meet(a, b))))
        && (opens.len() > 20 || subfamily_joins(grid, opens).iter().all(|j| set.contains(j)))
}

pub fn is_base(grid: &Grid, opens: &[Raw], base: &[Raw]) -> bool {
    let joins = subfamily_joins(grid, base);
    opens.iter().all(|g| joins.contains(g))
}

/// The smallest bases, found by trying subfamilies in order of size.
pub fn minimum_bases(grid: &Grid, opens: &[Raw]) -> Vec<Vec<Raw>> {
    let candidates: Vec<&Raw> = opens.iter().filter(|g| **g != grid.null()).collect();
    for size in 0..=candidates.len() {
        let found: Vec<Vec<Raw>> = (0u64..(1 << candidates.len()))
            .filter(|m| m.count_ones() as usize == size)
            .map(|m| {
                candidates
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, g)| (*g).clone())
                    .collect::<Vec<_>>()
            })
            .filter(|b| is_base(grid, opens, b))
            .collect();
        if !found.is_empty() {
            return found;
        }
    }
    unreachable!("the opens themselves form a base")
}

pub fn is_nbd(grid: &Grid, opens: &[Raw], f: &[u8], x: usize) -> bool {
    grid.positive_at(f, x)
        && opens
            .iter()
            .any(|g| leq(g, f) && grid.tuple(g, x) == grid.tuple(f, x))
}

pub fn nbd_family(grid: &Grid, opens: &[Raw], x: usize) -> Vec<Raw> {
    grid.all()
        .into_iter()
        .filter(|f| is_nbd(grid, opens, f, x))
        .collect()
}

/// `{null} + {G restricted : G in L(x) wherever G is positive}`.
pub fn topology_of_system(grid: &Grid, families: &[Vec<Raw>]) -> Vec<Raw> {
    let mut out: Vec<Raw> = grid
        .restricted()
        .into_iter()
        .filter(|g| (0..grid.points).all(|x| !grid.positive_at(g, x) || families[x].contains(g)))
        .collect();
    if !out.contains(&grid.null()) {
        out.push(grid.null());
    }
    out.sort();
    out
}

/// Every Lowen topology of the grid, by closing each subset of the optional
/// members and keeping the closed ones.
pub fn all_lowen_topologies(grid: &Grid) -> Vec<Vec<Raw>> {
    let mut required = grid.constants();
    required.push(grid.null());
    let optional: Vec<Raw> = grid
        .restricted()
        .into_iter()
        .filter(|s| !required.contains(s))
        .collect();
    assert!(optional.len() <= 20, "too many candidate families");
    let mut out = Vec::new();
    for mask in 0u64..(1 << optional.len()) {
        let mut family = required.clone();
        family.extend(
            optional
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| s.clone()),
        );
        family.sort();
        if is_lowen(grid, &family) {
            out.push(family);
        }
    }
    out
}

pub fn image(assign: &[usize], grid_from: &Grid, grid_to: &Grid, a: &[u8]) -> Raw {
    let mut out = grid_to.null();
    for (x, &y) in assign.iter().enumerate() {
        for i in 0..grid_from.n {
            let c = y * grid_to.n + i;
            out[c] = out[c].max(a[x * grid_from.n + i]);
        }
    }
    out
}

pub fn preimage(assign: &[usize], grid_to: &Grid, b: &[u8]) -> Raw {
    assign
        .iter()
        .flat_map(|&y| grid_to.tuple(b, y).to_vec())
        .collect()
}
