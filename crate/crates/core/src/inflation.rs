//! Inflations and generalised inflations of a subgroupoid, with certificates.
//!
//! `G` is an inflation of `U` when a retraction `φ: G → U` fixes `U` and satisfies
//! `xy = φ(x)φ(y)`. `G` is a generalised inflation when every `x` has a class
//! `c(x) ∈ U` (with `c(u) = u`) and maps `α_x, β_x: U → U` (constant `u` for `u ∈ U`)
//! such that `xy = (c(y)α_x)·(β_y c(x))`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::identities::{left_identities, PropertyReport};
use crate::magma::{Elem, ElementSet, Magma};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RetractionWitness {
    pub retraction: Vec<Elem>,
}

impl RetractionWitness {
    pub fn identity(n: usize) -> Self {
        RetractionWitness {
            retraction: (0..n).collect(),
        }
    }

    /// The class `G_u = φ⁻¹(u)`.
    pub fn class_of(&self, u: Elem) -> ElementSet {
        let n = self.retraction.len();
        ElementSet::from_elems(n, (0..n).filter(|&x| self.retraction[x] == u)).expect("indices in range")
    }

    /// The same inflation seen as a generalised inflation with constant maps.
    pub fn to_constant_witness(&self, sub: &ElementSet) -> GenInflationWitness {
        let k = sub.len();
        GenInflationWitness {
            sub: *sub,
            class: self.retraction.clone(),
            alpha: self.retraction.iter().map(|&u| vec![u; k]).collect(),
            beta: self.retraction.iter().map(|&u| vec![u; k]).collect(),
        }
    }
}

/// Class assignment plus the α and β families. `alpha[x][i]` is `u_i α_x` where `u_i` is
/// the `i`-th member of `sub` in ascending order; likewise `beta[x][i] = β_x u_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenInflationWitness {
    pub sub: ElementSet,
    pub class: Vec<Elem>,
    pub alpha: Vec<Vec<Elem>>,
    pub beta: Vec<Vec<Elem>>,
}

impl GenInflationWitness {
    /// The witness of `U` over itself: every map constant.
    pub fn trivial(sub: &ElementSet) -> Self {
        RetractionWitness::identity(sub.carrier_order()).to_constant_witness(sub)
    }

    /// `u α_x`.
    pub fn alpha_at(&self, x: Elem, u: Elem) -> Elem {
        self.alpha[x][self.sub.rank(u).expect("argument lies in U")]
    }

    /// `β_x u`.
    pub fn beta_at(&self, x: Elem, u: Elem) -> Elem {
        self.beta[x][self.sub.rank(u).expect("argument lies in U")]
    }

    /// The product the law prescribes for `x·y`.
    pub fn law(&self, g: &Magma, x: Elem, y: Elem) -> Elem {
        g.mul(self.alpha_at(x, self.class[y]), self.beta_at(y, self.class[x]))
    }

    /// Text form: a `class:` block, then one `alpha[x]:` and `beta[x]:` line per element.
    pub fn format(&self, g: &Magma) -> String {
        let mut out = String::from("class:\n");
        for (x, &c) in self.class.iter().enumerate() {
            let _ = writeln!(out, "{} -> {}", g.name(x), g.name(c));
        }
        let members = self.sub.to_vec();
        for (label, maps) in [("alpha", &self.alpha), ("beta", &self.beta)] {
            for (x, map) in maps.iter().enumerate() {
                let pairs: Vec<String> = members
                    .iter()
                    .zip(map)
                    .map(|(&u, &v)| format!("{}->{}", g.name(u), g.name(v)))
                    .collect();
                let _ = writeln!(out, "{label}[{}]: {}", g.name(x), pairs.join(" "));
            }
        }
        out
    }
}

/// Whether a generalised-inflation witness is symmetric and/or constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessClassification {
    pub symmetric: bool,
    pub constant: bool,
}

impl WitnessClassification {
    /// Constant in the defined sense, which presupposes symmetry.
    pub fn is_constant_generalised_inflation(&self) -> bool {
        self.symmetric && self.constant
    }
}

fn check_sub(g: &Magma, sub: &ElementSet) -> Result<()> {
    g.check_closed(sub)?;
    if sub.is_empty() {
        return Err(Error::Argument("the subgroupoid must be non-empty".into()));
    }
    Ok(())
}

pub fn verify_retraction(g: &Magma, sub: &ElementSet, w: &RetractionWitness) -> Result<PropertyReport> {
    check_sub(g, sub)?;
    let n = g.order();
    if w.retraction.len() != n {
        return Err(Error::Structural(format!(
            "retraction has {} entries, expected {n}",
            w.retraction.len()
        )));
    }
    if let Some(x) = (0..n).find(|&x| !sub.contains(w.retraction[x])) {
        return Err(Error::Structural(format!(
            "φ({}) = {} lies outside the subgroupoid",
            g.name(x),
            w.retraction[x]
        )));
    }
    if let Some(u) = sub.iter().find(|&u| w.retraction[u] != u) {
        return Ok(PropertyReport::fails(vec![u]).with_note("retraction does not fix this element"));
    }
    for x in 0..n {
        for y in 0..n {
            if g.mul(x, y) != g.mul(w.retraction[x], w.retraction[y]) {
                return Ok(PropertyReport::fails(vec![x, y]).with_note("xy != φ(x)φ(y)"));
            }
        }
    }
    Ok(PropertyReport::holds())
}

/// Searches for a retraction onto `sub`; returns the lexicographically least one.
///
/// When `sub` has a left identity `e`, any retraction satisfies
/// `e·x = φ(e)φ(x) = e·φ(x) = φ(x)`, so it is unique and equal to `x ↦ e·x`; that
/// candidate is tried first.
pub fn find_retraction(g: &Magma, sub: &ElementSet) -> Result<Option<RetractionWitness>> {
    check_sub(g, sub)?;
    let n = g.order();
    if sub.is_full() {
        return Ok(Some(RetractionWitness::identity(n)));
    }
    if !g.square_set().is_subset(sub) {
        return Ok(None);
    }
    let sub_magma_ids = left_identities(&g.restrict(sub)?);
    let members = sub.to_vec();
    let left_identity = sub_magma_ids.first().map(|i| members[i]);
    let outside = sub.complement().to_vec();

    let mut candidates: Vec<Vec<Elem>> = Vec::with_capacity(outside.len());
    for &x in &outside {
        let mut c: Vec<Elem> = members
            .iter()
            .copied()
            .filter(|&t| {
                members
                    .iter()
                    .all(|&v| g.mul(x, v) == g.mul(t, v) && g.mul(v, x) == g.mul(v, t))
            })
            .collect();
        if let Some(e) = left_identity {
            let preferred = g.mul(e, x);
            if let Some(pos) = c.iter().position(|&t| t == preferred) {
                let t = c.remove(pos);
                c.insert(0, t);
            }
        }
        if c.is_empty() {
            return Ok(None);
        }
        candidates.push(c);
    }

    let mut phi: Vec<Elem> = (0..n).collect();
    if assign_retraction(g, &outside, &candidates, 0, &mut phi) {
        let w = RetractionWitness { retraction: phi };
        debug_assert!(verify_retraction(g, sub, &w)?.holds);
        Ok(Some(w))
    } else {
        Ok(None)
    }
}

fn assign_retraction(g: &Magma, outside: &[Elem], candidates: &[Vec<Elem>], k: usize, phi: &mut [Elem]) -> bool {
    if k == outside.len() {
        return true;
    }
    let x = outside[k];
    for &t in &candidates[k] {
        phi[x] = t;
        let ok = outside[..=k]
            .iter()
            .all(|&y| g.mul(x, y) == g.mul(phi[x], phi[y]) && g.mul(y, x) == g.mul(phi[y], phi[x]));
        if ok && assign_retraction(g, outside, candidates, k + 1, phi) {
            return true;
        }
    }
    phi[x] = x;
    false
}

pub fn verify_gen_inflation(g: &Magma, sub: &ElementSet, w: &GenInflationWitness) -> Result<PropertyReport> {
    check_sub(g, sub)?;
    let n = g.order();
    let k = sub.len();
    if w.sub != *sub {
        return Err(Error::Structural(
            "witness was built for a different subgroupoid".into(),
        ));
    }
    if w.class.len() != n || w.alpha.len() != n || w.beta.len() != n {
        return Err(Error::Structural(format!("witness must describe all {n} elements")));
    }
    for x in 0..n {
        if w.alpha[x].len() != k || w.beta[x].len() != k {
            return Err(Error::Structural(format!(
                "maps of {} must have {k} entries",
                g.name(x)
            )));
        }
        let images = std::iter::once(&w.class[x]).chain(&w.alpha[x]).chain(&w.beta[x]);
        if let Some(&bad) = images.clone().find(|&&v| !sub.contains(v)) {
            return Err(Error::Structural(format!(
                "a class or map image of {} is {bad}, outside the subgroupoid",
                g.name(x)
            )));
        }
    }
    for u in sub.iter() {
        if w.class[u] != u {
            return Ok(PropertyReport::fails(vec![u]).with_note("an element of U must lie in its own class"));
        }
        if w.alpha[u].iter().chain(&w.beta[u]).any(|&v| v != u) {
            return Ok(PropertyReport::fails(vec![u]).with_note("maps of an element of U must be constant at it"));
        }
    }
    for x in 0..n {
        for y in 0..n {
            let expected = w.law(g, x, y);
            let actual = g.mul(x, y);
            if expected != actual {
                return Ok(PropertyReport::fails(vec![x, y]).with_note(format!(
                    "law gives {}, table has {}",
                    g.name(expected),
                    g.name(actual)
                )));
            }
        }
    }
    debug_assert!(g.square_set().is_subset(sub));
    Ok(PropertyReport::holds())
}

/// Limits on `|G \ U|` for the generalised-inflation search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenInflationBounds {
    /// Any `U` may take this many outside elements.
    pub any: usize,
    /// For `|U| <= 4`.
    pub up_to_four: usize,
    /// For `|U| <= 3`.
    pub up_to_three: usize,
}

impl Default for GenInflationBounds {
    fn default() -> Self {
        GenInflationBounds {
            any: 1,
            up_to_four: 2,
            up_to_three: 3,
        }
    }
}

impl GenInflationBounds {
    pub fn allows(&self, sub_len: usize, outside: usize) -> bool {
        outside <= self.any
            || (sub_len <= 4 && outside <= self.up_to_four)
            || (sub_len <= 3 && outside <= self.up_to_three)
    }
}

pub fn find_gen_inflation(g: &Magma, sub: &ElementSet) -> Result<Option<GenInflationWitness>> {
    find_gen_inflation_bounded(g, sub, GenInflationBounds::default())
}

/// Constraint search for the lexicographically least witness, ordered by class vector,
/// then the α tables, then the β tables.
///
/// Border cells pin the map values independently of the classes: for `x ∉ U` and
/// `w ∈ U`, `x·w = (wα_x)·w` and `w·x = w·(β_x w)`. Only the values `c(y)α_x` and
/// `β_y c(x)` with `x, y ∉ U` interact, through the cells `x·y`.
pub fn find_gen_inflation_bounded(
    g: &Magma,
    sub: &ElementSet,
    bounds: GenInflationBounds,
) -> Result<Option<GenInflationWitness>> {
    check_sub(g, sub)?;
    let members = sub.to_vec();
    let outside = sub.complement().to_vec();
    let (k, m) = (members.len(), outside.len());
    if !bounds.allows(k, m) {
        return Err(Error::Capacity(format!(
            "generalised-inflation search with |U| = {k} and |G \\ U| = {m} exceeds the configured bounds"
        )));
    }
    let mut witness = GenInflationWitness::trivial(sub);
    if m == 0 {
        return Ok(Some(witness));
    }
    if !g.square_set().is_subset(sub) {
        return Ok(None);
    }

    // Candidate values (as member ranks) for every α and β entry of the outside elements.
    let mut alpha_dom = vec![vec![Vec::new(); k]; m];
    let mut beta_dom = vec![vec![Vec::new(); k]; m];
    for (xi, &x) in outside.iter().enumerate() {
        for (i, &w) in members.iter().enumerate() {
            alpha_dom[xi][i] = (0..k).filter(|&t| g.mul(members[t], w) == g.mul(x, w)).collect();
            beta_dom[xi][i] = (0..k).filter(|&t| g.mul(w, members[t]) == g.mul(w, x)).collect();
            if alpha_dom[xi][i].is_empty() || beta_dom[xi][i].is_empty() {
                return Ok(None);
            }
        }
    }

    let search = CoreSearch {
        g,
        members: &members,
        outside: &outside,
        alpha_dom: &alpha_dom,
        beta_dom: &beta_dom,
    };
    let mut classes = vec![0usize; m];
    loop {
        if let Some((alpha, beta)) = search.solve(&classes) {
            for (xi, &x) in outside.iter().enumerate() {
                witness.class[x] = members[classes[xi]];
                witness.alpha[x] = alpha[xi].iter().map(|&t| members[t]).collect();
                witness.beta[x] = beta[xi].iter().map(|&t| members[t]).collect();
            }
            debug_assert!(verify_gen_inflation(g, sub, &witness)?.holds);
            return Ok(Some(witness));
        }
        if !odometer(&mut classes, k) {
            return Ok(None);
        }
    }
}

/// Lexicographic increment of a base-`radix` digit vector; false after the last value.
pub(crate) fn odometer(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

struct CoreSearch<'a> {
    g: &'a Magma,
    members: &'a [Elem],
    outside: &'a [Elem],
    alpha_dom: &'a [Vec<Vec<usize>>],
    beta_dom: &'a [Vec<Vec<usize>>],
}

/// α and β tables for the outside elements, in member ranks.
type BorderMaps = (Vec<Vec<usize>>, Vec<Vec<usize>>);

impl CoreSearch<'_> {
    /// Least (alpha, beta) in member ranks for a fixed class vector, if any.
    fn solve(&self, classes: &[usize]) -> Option<BorderMaps> {
        let m = self.outside.len();
        let k = self.members.len();
        let mut alpha: Vec<Vec<usize>> = self
            .alpha_dom
            .iter()
            .map(|row| row.iter().map(|d| d[0]).collect())
            .collect();
        // α entries read by some x·y cell, in lexicographic (x, position) order.
        let mut touched = Vec::new();
        for xi in 0..m {
            for i in 0..k {
                if classes.contains(&i) {
                    touched.push((xi, i));
                }
            }
        }
        let mut beta = vec![vec![0usize; k]; m];
        if self.assign_alpha(classes, &touched, 0, &mut alpha, &mut beta) {
            Some((alpha, beta))
        } else {
            None
        }
    }

    fn assign_alpha(
        &self,
        classes: &[usize],
        touched: &[(usize, usize)],
        depth: usize,
        alpha: &mut [Vec<usize>],
        beta: &mut [Vec<usize>],
    ) -> bool {
        if depth == touched.len() {
            return self.fill_beta(classes, alpha, beta);
        }
        let (xi, i) = touched[depth];
        for &t in &self.alpha_dom[xi][i] {
            alpha[xi][i] = t;
            if self.assign_alpha(classes, touched, depth + 1, alpha, beta) {
                return true;
            }
        }
        false
    }

    /// With α fixed, each β entry is chosen independently as its least feasible value.
    fn fill_beta(&self, classes: &[usize], alpha: &[Vec<usize>], beta: &mut [Vec<usize>]) -> bool {
        let g = self.g;
        for (yi, &y) in self.outside.iter().enumerate() {
            for (j, slot) in beta[yi].iter_mut().enumerate() {
                let found = self.beta_dom[yi][j].iter().copied().find(|&t| {
                    self.outside
                        .iter()
                        .enumerate()
                        .filter(|&(xi, _)| classes[xi] == j)
                        .all(|(xi, &x)| g.mul(self.members[alpha[xi][classes[yi]]], self.members[t]) == g.mul(x, y))
                });
                match found {
                    Some(t) => *slot = t,
                    None => return false,
                }
            }
        }
        true
    }
}

pub fn classify_witness(w: &GenInflationWitness) -> WitnessClassification {
    let symmetric = w.alpha.iter().zip(&w.beta).all(|(a, b)| a == b);
    let constant = w.alpha.iter().all(|a| a.windows(2).all(|p| p[0] == p[1]));
    WitnessClassification { symmetric, constant }
}

/// A constant generalised inflation is an inflation: `φ(x)` is the common value of `α_x`.
pub fn constant_witness_to_retraction(w: &GenInflationWitness) -> Result<RetractionWitness> {
    if !classify_witness(w).is_constant_generalised_inflation() {
        return Err(Error::Argument(
            "witness is not a constant generalised inflation".into(),
        ));
    }
    let retraction = w
        .alpha
        .iter()
        .map(|a| {
            a.first()
                .copied()
                .ok_or_else(|| Error::Structural("empty α map".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RetractionWitness { retraction })
}

/// All `S` with `G² ⊆ S ⊆ G`, by size then lexicographically.
pub fn candidate_subgroupoids(g: &Magma) -> Vec<ElementSet> {
    let base = g.square_set();
    let free = base.complement().to_vec();
    let mut out: Vec<ElementSet> = (0u64..1 << free.len())
        .map(|mask| {
            let mut s = base;
            for (i, &e) in free.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s.insert(e);
                }
            }
            s
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.to_vec().cmp(&b.to_vec())));
    out
}
