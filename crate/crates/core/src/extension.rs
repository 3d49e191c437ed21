//! One-point extensions of a right modular groupoid.
//!
//! A new element `x` with class `c` and maps `α, β` on the base `G` gets the products
//! `x·a = (aα)·a`, `a·x = a·(βa)` and `x·x = (cα)·(βc)`. The extension is right modular
//! exactly when, for all `a, b ∈ G`,
//!
//! 1. `((aα)·a)·b = (b·a)·β(b·a)`
//! 2. `(a·βa)·b = (b·βb)·a`
//! 3. `((cα)·(βc))·a = (a·βa)·β(a·βa)`

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::identities::{is_right_modular, PropertyReport};
use crate::inflation::{find_gen_inflation, odometer, GenInflationWitness};
use crate::magma::{Elem, ElementSet, Magma};
use crate::morphisms::canonical_table;

/// Largest base order for exhaustive spec enumeration (`n^(2n+1)` specs).
pub const MAX_ENUMERATION_ORDER: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionSpec {
    pub base: Magma,
    pub c: Elem,
    pub alpha: Vec<Elem>,
    pub beta: Vec<Elem>,
}

impl ExtensionSpec {
    pub fn new(base: Magma, c: Elem, alpha: Vec<Elem>, beta: Vec<Elem>) -> Result<Self> {
        let n = base.order();
        base.check_elem(c)?;
        for map in [&alpha, &beta] {
            if map.len() != n {
                return Err(Error::Argument(format!(
                    "maps must have {n} entries, got {}",
                    map.len()
                )));
            }
            if let Some(&v) = map.iter().find(|&&v| v >= n) {
                return Err(Error::OutOfRange { elem: v, order: n });
            }
        }
        Ok(ExtensionSpec { base, c, alpha, beta })
    }

    /// Text form: `c = <name>`, `alpha: a->b ...`, `beta: ...`.
    pub fn format(&self) -> String {
        let g = &self.base;
        let line = |map: &[Elem]| -> String {
            (0..g.order())
                .map(|a| format!("{}->{}", g.name(a), g.name(map[a])))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::new();
        let _ = writeln!(out, "c = {}", g.name(self.c));
        let _ = writeln!(out, "alpha: {}", line(&self.alpha));
        let _ = writeln!(out, "beta: {}", line(&self.beta));
        out
    }

    pub fn parse(base: Magma, text: &str) -> Result<Self> {
        let mut c = None;
        let mut alpha = None;
        let mut beta = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let elem = |tok: &str| base.element(tok).ok_or_else(|| err(format!("unknown element `{tok}`")));
            if let Some(rest) = line.strip_prefix("c").and_then(|r| r.trim_start().strip_prefix('=')) {
                c = Some(elem(rest.trim())?);
            } else if let Some((key, rest)) = line.split_once(':') {
                let mut map = vec![None; base.order()];
                for pair in rest.split_whitespace() {
                    let (from, to) = pair
                        .split_once("->")
                        .ok_or_else(|| err(format!("expected `u->v`, got `{pair}`")))?;
                    map[elem(from)?] = Some(elem(to)?);
                }
                let map = map
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| err(format!("map `{key}` is not total")))?;
                match key.trim() {
                    "alpha" => alpha = Some(map),
                    "beta" => beta = Some(map),
                    other => return Err(err(format!("unknown key `{other}`"))),
                }
            } else {
                return Err(err(format!("unrecognised line `{line}`")));
            }
        }
        let missing = |what: &str| Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("missing `{what}`"),
        };
        let c = c.ok_or_else(|| missing("c"))?;
        let alpha = alpha.ok_or_else(|| missing("alpha"))?;
        let beta = beta.ok_or_else(|| missing("beta"))?;
        ExtensionSpec::new(base, c, alpha, beta)
    }

    /// The witness that `build_extension` is a generalised inflation of its base.
    pub fn witness(&self) -> GenInflationWitness {
        let n = self.base.order();
        let sub = ElementSet::prefix(n + 1, n);
        let mut w = GenInflationWitness::trivial(&sub);
        w.class[n] = self.c;
        w.alpha[n] = self.alpha.clone();
        w.beta[n] = self.beta.clone();
        w
    }
}

/// Evaluates the three conditions for `xa·b = ba·x`, `ax·b = bx·a` and `x²·a = ax·x`;
/// the witness is `[condition, a, b]` (or `[3, a]`).
pub fn theorem4_conditions(spec: &ExtensionSpec) -> PropertyReport {
    let g = &spec.base;
    let n = g.order();
    let (al, be) = (&spec.alpha, &spec.beta);
    for (a, &aa) in al.iter().enumerate() {
        for b in 0..n {
            let ba = g.mul(b, a);
            if g.mul(g.mul(aa, a), b) != g.mul(ba, be[ba]) {
                return PropertyReport::fails(vec![1, a, b]).with_note("condition xa·b = ba·x");
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if g.mul(g.mul(a, be[a]), b) != g.mul(g.mul(b, be[b]), a) {
                return PropertyReport::fails(vec![2, a, b]).with_note("condition ax·b = bx·a");
            }
        }
    }
    let xx = g.mul(al[spec.c], be[spec.c]);
    for a in 0..n {
        let t = g.mul(a, be[a]);
        if g.mul(xx, a) != g.mul(t, be[t]) {
            return PropertyReport::fails(vec![3, a]).with_note("condition x²·a = ax·x");
        }
    }
    PropertyReport::holds()
}

/// The order `n + 1` table on `G ∪ {x}`, with `x` as the last element.
pub fn build_extension(spec: &ExtensionSpec) -> Magma {
    let g = &spec.base;
    let n = g.order();
    let mut table = vec![0u8; (n + 1) * (n + 1)];
    write_extension(g, spec.c, &spec.alpha, &spec.beta, &mut table);
    let m = Magma::from_bytes(n + 1, table).expect("extension of a valid base is valid");
    match g.names() {
        Some(names) => {
            let mut fresh = String::from("x");
            while names.contains(&fresh) {
                fresh.push('\'');
            }
            m.with_names(names.iter().cloned().chain([fresh]))
                .expect("fresh name is unique")
        }
        None => m,
    }
}

fn write_extension(g: &Magma, c: Elem, alpha: &[Elem], beta: &[Elem], table: &mut [u8]) {
    let n = g.order();
    let w = n + 1;
    for a in 0..n {
        for b in 0..n {
            table[a * w + b] = g.mul(a, b) as u8;
        }
        table[n * w + a] = g.mul(alpha[a], a) as u8;
        table[a * w + n] = g.mul(a, beta[a]) as u8;
    }
    table[n * w + n] = g.mul(alpha[c], beta[c]) as u8;
}

fn require_right_modular(g: &Magma) -> Result<()> {
    let r = is_right_modular(g);
    if !r.holds {
        return Err(Error::Precondition(format!(
            "base is not right modular: fails at {}",
            g.format_elems(&r.witness.unwrap_or_default())
        )));
    }
    Ok(())
}

pub(crate) fn map_from_index(mut idx: usize, n: usize) -> Vec<Elem> {
    let mut map = vec![0; n];
    for slot in map.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    map
}

/// Every spec over `g` that satisfies the three conditions, in enumeration order.
/// Distinct specs may give the same table.
pub fn right_modular_specs(g: &Magma) -> Result<Vec<ExtensionSpec>> {
    require_right_modular(g)?;
    let n = g.order();
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::Capacity(format!(
            "exhaustive extension enumeration is limited to base order {MAX_ENUMERATION_ORDER}"
        )));
    }
    let maps = n.pow(n as u32);
    let shards: Vec<Vec<ExtensionSpec>> = (0..n * maps)
        .into_par_iter()
        .map(|shard| {
            let c = shard / maps;
            let alpha = map_from_index(shard % maps, n);
            let mut found = Vec::new();
            let mut beta = vec![0; n];
            loop {
                let spec = ExtensionSpec {
                    base: g.clone(),
                    c,
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                };
                if theorem4_conditions(&spec).holds {
                    found.push(spec);
                }
                if !odometer(&mut beta, n) {
                    break;
                }
            }
            found
        })
        .collect();
    Ok(shards.into_iter().flatten().collect())
}

/// All right modular one-point extensions, in enumeration order (c, then α, then β).
/// With `dedupe`, one table per isomorphism class is kept.
pub fn enumerate_rm_extensions(g: &Magma, dedupe: bool) -> Result<Vec<(ExtensionSpec, Magma)>> {
    let n = g.order();
    let specs = right_modular_specs(g)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for spec in specs {
        let mut table = vec![0u8; (n + 1) * (n + 1)];
        write_extension(g, spec.c, &spec.alpha, &spec.beta, &mut table);
        let key = if dedupe {
            canonical_table(&Magma::from_bytes(n + 1, table)?)?
        } else {
            table
        };
        if !seen.insert(key) {
            continue;
        }
        let ext = build_extension(&spec);
        assert!(
            is_right_modular(&ext).holds,
            "accepted spec produced a non right modular table"
        );
        assert!(
            find_gen_inflation(&ext, &ElementSet::prefix(n + 1, n))?.is_some(),
            "extension is not a generalised inflation of its base"
        );
        out.push((spec, ext));
    }
    Ok(out)
}

/// Mismatch between the three conditions and a direct right-modularity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub spec: ExtensionSpec,
    pub conditions_hold: bool,
    pub right_modular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossValidation {
    pub specs_checked: u64,
    pub accepted: u64,
    pub exhaustive: bool,
    pub discrepancies: Vec<Discrepancy>,
}

impl CrossValidation {
    pub fn report(&self) -> PropertyReport {
        match self.discrepancies.first() {
            None => PropertyReport::holds(),
            Some(d) => {
                let mut w = vec![d.spec.c];
                w.extend(&d.spec.alpha);
                w.extend(&d.spec.beta);
                PropertyReport::fails(w).with_note("witness lists c, then α, then β")
            }
        }
    }
}

fn check_spec(spec: ExtensionSpec, out: &mut CrossValidation) {
    let conditions_hold = theorem4_conditions(&spec).holds;
    let right_modular = is_right_modular(&build_extension(&spec)).holds;
    out.specs_checked += 1;
    out.accepted += conditions_hold as u64;
    if conditions_hold != right_modular {
        out.discrepancies.push(Discrepancy {
            spec,
            conditions_hold,
            right_modular,
        });
    }
}

/// Compares the conditions with right modularity of the built table. Exhaustive for
/// bases of order ≤ 3, otherwise `budget` specs sampled uniformly with `seed`.
pub fn cross_validate_theorem4(g: &Magma, budget: u64, seed: u64) -> Result<CrossValidation> {
    require_right_modular(g)?;
    let n = g.order();
    let mut out = CrossValidation {
        specs_checked: 0,
        accepted: 0,
        exhaustive: n <= 3,
        discrepancies: Vec::new(),
    };
    if n <= 3 {
        let mut digits = vec![0usize; 2 * n + 1];
        loop {
            let spec = ExtensionSpec {
                base: g.clone(),
                c: digits[0],
                alpha: digits[1..=n].to_vec(),
                beta: digits[n + 1..].to_vec(),
            };
            check_spec(spec, &mut out);
            if !odometer(&mut digits, n) {
                break;
            }
        }
    } else {
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..budget {
            let c = rng.gen_range(0..n);
            let alpha = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let beta = (0..n).map(|_| rng.gen_range(0..n)).collect();
            check_spec(
                ExtensionSpec {
                    base: g.clone(),
                    c,
                    alpha,
                    beta,
                },
                &mut out,
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::inflation::{find_retraction, verify_gen_inflation};
    use crate::morphisms::is_isomorphic;

    fn constant_spec(c: Elem, a: Elem, b: Elem) -> ExtensionSpec {
        ExtensionSpec::new(fixtures::w(), c, vec![a; 4], vec![b; 4]).unwrap()
    }

    #[test]
    fn constant_maps_on_w() {
        assert!(theorem4_conditions(&constant_spec(0, 0, 0)).holds);
        assert!(theorem4_conditions(&constant_spec(1, 1, 1)).holds);
        // Cross-validated against the built table: both say no.
        let mixed = constant_spec(0, 0, 1);
        assert!(!theorem4_conditions(&mixed).holds);
        let r = is_right_modular(&build_extension(&mixed));
        assert_eq!(r.witness, Some(vec![0, 0, 4]));
    }

    #[test]
    fn h1_copies_row_and_column_of_one() {
        let h = build_extension(&constant_spec(0, 0, 0));
        let w = fixtures::w();
        for a in 0..4 {
            assert_eq!(h.mul(4, a), w.mul(0, a));
            assert_eq!(h.mul(a, 4), w.mul(a, 0));
            for b in 0..4 {
                assert_eq!(h.mul(a, b), w.mul(a, b));
            }
        }
        assert_eq!(h.mul(4, 4), 0);
        assert_eq!(h.name(4), "x");
    }

    #[test]
    fn trivial_base() {
        let one = Magma::new(1, vec![0]).unwrap();
        let spec = ExtensionSpec::new(one.clone(), 0, vec![0], vec![0]).unwrap();
        assert_eq!(build_extension(&spec), Magma::new(2, vec![0; 4]).unwrap());
        let exts = enumerate_rm_extensions(&one, false).unwrap();
        assert_eq!(exts.len(), 1);
        let cv = cross_validate_theorem4(&one, 0, 0).unwrap();
        assert_eq!((cv.specs_checked, cv.discrepancies.len()), (1, 0));
    }

    #[test]
    fn stated_maps_build_the_derived_table() {
        let c1 = fixtures::c1();
        let e = |s: &str| c1.element(s).unwrap();
        let spec = ExtensionSpec::new(
            c1.clone(),
            e("1"),
            vec![e("b"), e("b"), e("1")],
            vec![e("a"), e("b"), e("1")],
        )
        .unwrap();
        assert_eq!(build_extension(&spec), fixtures::ex2_derived());
    }

    #[test]
    fn four_inflations_of_w() {
        let exts = enumerate_rm_extensions(&fixtures::w(), false).unwrap();
        assert_eq!(exts.len(), 4);
        let sub = ElementSet::prefix(5, 4);
        for (spec, table) in &exts {
            assert!(find_retraction(table, &sub).unwrap().is_some());
            assert!(verify_gen_inflation(table, &sub, &spec.witness()).unwrap().holds);
        }
        for (_, a) in &exts {
            for (_, b) in &exts {
                assert!(is_isomorphic(a, b).unwrap().is_some());
            }
        }
        assert_eq!(enumerate_rm_extensions(&fixtures::w(), true).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_rejects_bad_bases() {
        assert!(matches!(
            enumerate_rm_extensions(&fixtures::ex2_printed(), false),
            Err(Error::Precondition(_))
        ));
        let big = Magma::new(5, vec![0; 25]).unwrap();
        assert!(matches!(enumerate_rm_extensions(&big, false), Err(Error::Capacity(_))));
    }

    #[test]
    fn spec_text_round_trip() {
        let spec = constant_spec(2, 1, 3);
        assert_eq!(
            spec.format(),
            "c = 3\nalpha: 1->2 2->2 3->2 4->2\nbeta: 1->4 2->4 3->4 4->4\n"
        );
        assert_eq!(ExtensionSpec::parse(fixtures::w(), &spec.format()).unwrap(), spec);
        assert!(matches!(
            ExtensionSpec::parse(fixtures::w(), "c = 1\nalpha: 1->1\nbeta: 1->1 2->1 3->1 4->1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
