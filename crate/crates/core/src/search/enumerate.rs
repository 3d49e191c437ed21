//! Depth-first Cayley table enumeration with identity pruning.
//!
//! Free cells are filled in row-major order. After every assignment the identities that
//! involve the new cell are checked on all instances whose cells are already defined,
//! so a branch dies as soon as one fully instantiated instance fails.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::identities::is_associative;
use crate::magma::{max_order, Elem, ElementSet, Magma};

const UNSET: u8 = u8::MAX;

/// Raw spaces up to this size are enumerated even without a pruning identity.
pub const UNPRUNED_LIMIT: f64 = (1u64 << 25) as f64;
/// Raw spaces up to this size are accepted when an identity prunes the search.
pub const PRUNED_LIMIT: f64 = 4_294_967_296.0; // 4^16

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Requirement {
    RightModular,
    Idempotent,
    Associative,
    NonAssociative,
    Commutative,
    Cancellative,
}

impl Requirement {
    pub const ALL: [Requirement; 6] = [
        Requirement::RightModular,
        Requirement::Idempotent,
        Requirement::Associative,
        Requirement::NonAssociative,
        Requirement::Commutative,
        Requirement::Cancellative,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Requirement::RightModular => "right-modular",
            Requirement::Idempotent => "idempotent",
            Requirement::Associative => "associative",
            Requirement::NonAssociative => "non-associative",
            Requirement::Commutative => "commutative",
            Requirement::Cancellative => "cancellative",
        }
    }

    fn prunes(&self) -> bool {
        matches!(
            self,
            Requirement::RightModular | Requirement::Associative | Requirement::Cancellative
        )
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Requirement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Requirement::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown requirement `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationConstraints {
    pub order: usize,
    pub require: BTreeSet<Requirement>,
    /// Row-major partial table; `Some(v)` cells are fixed.
    pub fixed_cells: Option<Vec<Option<Elem>>>,
    /// Values allowed in the free cells (default: the whole carrier).
    pub free_values: Option<ElementSet>,
}

impl EnumerationConstraints {
    pub fn new(order: usize) -> Self {
        EnumerationConstraints {
            order,
            require: BTreeSet::new(),
            fixed_cells: None,
            free_values: None,
        }
    }

    pub fn require(mut self, r: Requirement) -> Self {
        self.require.insert(r);
        self
    }

    /// Fixes the top-left block to the table of `base`.
    pub fn extending(mut self, base: &Magma) -> Result<Self> {
        let n = self.order;
        let k = base.order();
        if k > n {
            return Err(Error::Argument(format!("base of order {k} does not fit order {n}")));
        }
        let mut cells = vec![None; n * n];
        for a in 0..k {
            for b in 0..k {
                cells[a * n + b] = Some(base.mul(a, b));
            }
        }
        self.fixed_cells = Some(cells);
        Ok(self)
    }

    pub fn with_free_values(mut self, values: ElementSet) -> Self {
        self.free_values = Some(values);
        self
    }

    pub fn has(&self, r: Requirement) -> bool {
        self.require.contains(&r)
    }
}

/// A prepared enumeration.
#[derive(Clone, Debug)]
pub struct Enumerator {
    n: usize,
    start: Vec<u8>,
    free: Vec<usize>,
    domains: Vec<Vec<u8>>,
    right_modular: bool,
    associative: bool,
    non_associative: bool,
    commutative: bool,
    cancellative: bool,
    root_ok: bool,
    shard_depth: usize,
}

/// Per-shard result of [`Enumerator::fold_shards`].
#[derive(Clone, Debug)]
pub struct ShardOutput<A> {
    pub acc: A,
    /// Search nodes (cell assignments tried) in this shard.
    pub nodes: u64,
}

impl Enumerator {
    pub fn new(c: &EnumerationConstraints) -> Result<Self> {
        let n = c.order;
        if n == 0 || n > max_order() {
            return Err(Error::Capacity(format!("order {n} outside 1..={}", max_order())));
        }
        let mut start = vec![UNSET; n * n];
        if let Some(fixed) = &c.fixed_cells {
            if fixed.len() != n * n {
                return Err(Error::Argument(format!("fixed_cells must have {} entries", n * n)));
            }
            for (cell, v) in fixed.iter().enumerate() {
                if let Some(v) = *v {
                    if v >= n {
                        return Err(Error::OutOfRange { elem: v, order: n });
                    }
                    start[cell] = v as u8;
                }
            }
        }
        let mut root_ok = true;
        if c.has(Requirement::Idempotent) {
            for i in 0..n {
                let cell = i * n + i;
                if start[cell] != UNSET && start[cell] as usize != i {
                    root_ok = false;
                }
                start[cell] = i as u8;
            }
        }
        if c.has(Requirement::Associative) && c.has(Requirement::NonAssociative) {
            root_ok = false;
        }
        let values: Vec<u8> = match &c.free_values {
            Some(s) => {
                if s.carrier_order() != n {
                    return Err(Error::Argument("free_values is over a different carrier".into()));
                }
                s.iter().map(|e| e as u8).collect()
            }
            None => (0..n as u8).collect(),
        };
        let free: Vec<usize> = (0..n * n).filter(|&cell| start[cell] == UNSET).collect();
        let domains = vec![values; free.len()];

        let raw: f64 = domains.iter().map(|d| d.len() as f64).product();
        let prunes = c.require.iter().any(Requirement::prunes);
        let limit = if prunes { PRUNED_LIMIT } else { UNPRUNED_LIMIT };
        if raw > limit {
            return Err(Error::Capacity(format!(
                "raw search space {raw:.3e} exceeds {limit:.3e}{}",
                if prunes {
                    ""
                } else {
                    "; add a pruning identity or fix cells"
                }
            )));
        }

        let mut e = Enumerator {
            n,
            start,
            free,
            domains,
            right_modular: c.has(Requirement::RightModular),
            associative: c.has(Requirement::Associative),
            non_associative: c.has(Requirement::NonAssociative),
            commutative: c.has(Requirement::Commutative),
            cancellative: c.has(Requirement::Cancellative),
            root_ok,
            shard_depth: 0,
        };
        if e.root_ok {
            let t = e.start.clone();
            e.root_ok = (0..n * n)
                .filter(|&cell| t[cell] != UNSET)
                .all(|cell| e.consistent(&t, cell));
        }
        let mut shards = 1usize;
        while e.shard_depth < e.free.len() && shards < 64 {
            shards *= e.domains[e.shard_depth].len();
            e.shard_depth += 1;
        }
        Ok(e)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Size of the unpruned space.
    pub fn raw_size(&self) -> f64 {
        self.domains.iter().map(|d| d.len() as f64).product()
    }

    pub fn free_cells(&self) -> usize {
        self.free.len()
    }

    #[inline]
    fn get(&self, t: &[u8], a: usize, b: usize) -> Option<usize> {
        let v = t[a * self.n + b];
        (v != UNSET).then_some(v as usize)
    }

    /// Checks every identity instance that uses `cell` and is fully defined.
    fn consistent(&self, t: &[u8], cell: usize) -> bool {
        let n = self.n;
        let (i, j) = (cell / n, cell % n);
        let v = t[cell] as usize;
        if self.commutative {
            if let Some(w) = self.get(t, j, i) {
                if w != v {
                    return false;
                }
            }
        }
        if self.cancellative {
            for k in 0..n {
                if k != j && self.get(t, i, k) == Some(v) {
                    return false;
                }
                if k != i && self.get(t, k, j) == Some(v) {
                    return false;
                }
            }
        }
        if self.right_modular && !self.right_modular_ok(t, i, j, v) {
            return false;
        }
        if self.associative && !self.associative_ok(t, i, j, v) {
            return false;
        }
        true
    }

    /// (xy)z = (zy)x with the cell as an inner product xy, or as an outer product (xy)z.
    /// The mirrored positions are the same instances with x and z exchanged.
    fn right_modular_ok(&self, t: &[u8], i: usize, j: usize, v: usize) -> bool {
        let n = self.n;
        for z in 0..n {
            let lhs = self.get(t, v, z);
            let rhs = self.get(t, z, j).and_then(|zy| self.get(t, zy, i));
            if let (Some(l), Some(r)) = (lhs, rhs) {
                if l != r {
                    return false;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.get(t, x, y) == Some(i) {
                    if let Some(r) = self.get(t, j, y).and_then(|zy| self.get(t, zy, x)) {
                        if r != v {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// (xy)z = x(yz) with the cell in each of its four positions.
    fn associative_ok(&self, t: &[u8], i: usize, j: usize, v: usize) -> bool {
        let n = self.n;
        let same = |l: Option<usize>, r: Option<usize>| !matches!((l, r), (Some(a), Some(b)) if a != b);
        for k in 0..n {
            // cell = xy with x = i, y = j, z = k
            let l = self.get(t, v, k);
            let r = self.get(t, j, k).and_then(|yz| self.get(t, i, yz));
            if !same(l, r) {
                return false;
            }
            // cell = yz with y = i, z = j, x = k
            let l = self.get(t, k, i).and_then(|xy| self.get(t, xy, j));
            let r = self.get(t, k, v);
            if !same(l, r) {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                // cell = (xy)z with xy = i, z = j
                if self.get(t, a, b) == Some(i) {
                    let r = self.get(t, b, j).and_then(|yz| self.get(t, a, yz));
                    if !same(Some(v), r) {
                        return false;
                    }
                }
                // cell = x(yz) with x = i, yz = j
                if self.get(t, a, b) == Some(j) {
                    let l = self.get(t, i, a).and_then(|xy| self.get(t, xy, b));
                    if !same(l, Some(v)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn accept_leaf(&self, t: &[u8]) -> bool {
        if !self.non_associative {
            return true;
        }
        let m = Magma::from_bytes(self.n, t.to_vec()).expect("complete table");
        !is_associative(&m).holds
    }

    fn dfs<F: FnMut(&[u8])>(&self, t: &mut [u8], depth: usize, nodes: &mut u64, f: &mut F) {
        if depth == self.free.len() {
            if self.accept_leaf(t) {
                f(t);
            }
            return;
        }
        let cell = self.free[depth];
        for &v in &self.domains[depth] {
            *nodes += 1;
            t[cell] = v;
            if self.consistent(t, cell) {
                self.dfs(t, depth + 1, nodes, f);
            }
        }
        t[cell] = UNSET;
    }

    /// Shard prefixes in lexicographic order.
    fn shard_prefixes(&self) -> Vec<Vec<u8>> {
        let mut prefixes = vec![Vec::new()];
        for d in 0..self.shard_depth {
            prefixes = prefixes
                .into_iter()
                .flat_map(|p| {
                    self.domains[d].iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        prefixes
    }

    fn run_shard<F: FnMut(&[u8])>(&self, prefix: &[u8], f: &mut F) -> u64 {
        let mut nodes = 0;
        if !self.root_ok {
            return nodes;
        }
        let mut t = self.start.clone();
        for (d, &v) in prefix.iter().enumerate() {
            nodes += 1;
            let cell = self.free[d];
            t[cell] = v;
            if !self.consistent(&t, cell) {
                return nodes;
            }
        }
        self.dfs(&mut t, prefix.len(), &mut nodes, f);
        nodes
    }

    /// Visits every accepted table in lexicographic order on the calling thread.
    pub fn for_each<F: FnMut(&[u8])>(&self, mut f: F) -> u64 {
        self.shard_prefixes().iter().map(|p| self.run_shard(p, &mut f)).sum()
    }

    /// Folds each shard on the rayon pool; outputs come back in shard order, so the
    /// concatenated result does not depend on the number of workers.
    pub fn fold_shards<A, I, F>(&self, init: I, step: F) -> Vec<ShardOutput<A>>
    where
        A: Send,
        I: Fn() -> A + Sync,
        F: Fn(&mut A, &[u8]) + Sync,
    {
        self.shard_prefixes()
            .par_iter()
            .map(|p| {
                let mut acc = init();
                let nodes = self.run_shard(p, &mut |t: &[u8]| step(&mut acc, t));
                ShardOutput { acc, nodes }
            })
            .collect()
    }

    pub fn count(&self) -> u64 {
        self.fold_shards(|| 0u64, |acc, _| *acc += 1)
            .into_iter()
            .map(|s| s.acc)
            .sum()
    }

    pub fn collect(&self) -> Vec<Magma> {
        let n = self.n;
        self.fold_shards(Vec::new, |acc: &mut Vec<Vec<u8>>, t| acc.push(t.to_vec()))
            .into_iter()
            .flat_map(|s| s.acc)
            .map(|t| Magma::from_bytes(n, t).expect("complete table"))
            .collect()
    }
}

pub fn enumerate_magmas(c: &EnumerationConstraints) -> Result<Vec<Magma>> {
    Ok(Enumerator::new(c)?.collect())
}

pub fn count_magmas(c: &EnumerationConstraints) -> Result<u64> {
    Ok(Enumerator::new(c)?.count())
}
