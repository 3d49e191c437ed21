//! Bounded search for a generalised inflation that is not an inflation, within two
//! classes of interest: right modular groupoids, and commutative semigroups.
//!
//! An empty result is a statement about the searched bounds only; the certificate
//! records exactly what was covered.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extension::{build_extension, map_from_index, right_modular_specs, ExtensionSpec};
use crate::identities::{is_associative, is_right_modular};
use crate::inflation::{find_gen_inflation, find_retraction, GenInflationWitness};
use crate::magma::{ElementSet, Magma};
use crate::morphisms::canonical_table;
use crate::search::enumerate::{EnumerationConstraints, Enumerator, Requirement};
use crate::search::harness::{iso_classes, multi_point_tables, right_modular_catalog, CATALOG_MAX_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HuntMode {
    /// `G` right modular, `U` right modular with `|U| ≤ max_sub`.
    RightModular,
    /// `G` a semigroup, `U` a commutative subsemigroup.
    CommutativeSemigroup,
}

impl HuntMode {
    pub fn name(&self) -> &'static str {
        match self {
            HuntMode::RightModular => "right-modular",
            HuntMode::CommutativeSemigroup => "commutative-semigroup",
        }
    }
}

impl fmt::Display for HuntMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HuntMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "right-modular" => Ok(HuntMode::RightModular),
            "commutative-semigroup" => Ok(HuntMode::CommutativeSemigroup),
            _ => Err(Error::Argument(format!(
                "unknown hunt mode {s:?} (right-modular, commutative-semigroup)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HuntBounds {
    /// Largest `|U|`.
    pub max_sub: usize,
    /// Largest `|G \ U|`.
    pub max_outside: usize,
}

impl HuntBounds {
    /// The bounds searched by default for each mode.
    pub fn default_for(mode: HuntMode) -> Self {
        match mode {
            HuntMode::RightModular => HuntBounds {
                max_sub: 3,
                max_outside: 2,
            },
            HuntMode::CommutativeSemigroup => HuntBounds {
                max_sub: 3,
                max_outside: 1,
            },
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_sub == 0 || self.max_sub > CATALOG_MAX_ORDER {
            return Err(Error::Capacity(format!(
                "subgroupoid order must be 1..={CATALOG_MAX_ORDER}"
            )));
        }
        if self.max_outside > 2 {
            return Err(Error::Capacity("at most 2 elements outside the subgroupoid".into()));
        }
        if self.max_sub == 4 && self.max_outside == 2 {
            return Err(Error::Capacity(
                "two outside elements are supported for subgroupoids of order <= 3".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub g: Magma,
    pub sub: ElementSet,
    pub witness: GenInflationWitness,
}

#[derive(Clone, Debug)]
pub struct HuntReport {
    pub mode: HuntMode,
    pub bounds: HuntBounds,
    /// Bases `U` searched, one per isomorphism class.
    pub bases: u64,
    /// Assignments of one-point specs to outside elements visited.
    pub specs_visited: u64,
    /// Distinct tables `G` checked for a retraction.
    pub tables_checked: u64,
    /// Sorted by order, then by table.
    pub counterexamples: Vec<Counterexample>,
    /// Counterexample tables `G` up to isomorphism.
    pub counterexample_classes: u64,
    pub elapsed: Duration,
}

impl HuntReport {
    /// Bounds, coverage, and the first `shown` counterexamples; identical across runs.
    pub fn certificate(&self, shown: usize) -> String {
        let mut s = format!(
            "mode: {}\nbounds: |U| <= {}, |G \\ U| <= {}\nbases (up to isomorphism): {}\nspec assignments visited: {}\ntables checked: {}\n",
            self.mode,
            self.bounds.max_sub,
            self.bounds.max_outside,
            self.bases,
            self.specs_visited,
            self.tables_checked
        );
        if self.counterexamples.is_empty() {
            s.push_str("result: no counterexample within bounds\n");
        } else {
            s.push_str(&format!(
                "result: {} counterexample(s), {} up to isomorphism of G; showing {}\n",
                self.counterexamples.len(),
                self.counterexample_classes,
                shown.min(self.counterexamples.len())
            ));
            for c in self.counterexamples.iter().take(shown) {
                s.push_str(&format!(
                    "\nsubgroupoid {}\n{}{}",
                    c.g.format_set(&c.sub),
                    c.g.format_table(),
                    c.witness.format(&c.g)
                ));
            }
        }
        s
    }
}

/// Every one-point spec over `u` whose extension is associative.
fn associative_specs(u: &Magma) -> Vec<ExtensionSpec> {
    let k = u.order();
    let maps = k.pow(k as u32);
    (0..k * maps * maps)
        .into_par_iter()
        .filter_map(|i| {
            let c = i / (maps * maps);
            let alpha = map_from_index((i / maps) % maps, k);
            let beta = map_from_index(i % maps, k);
            let spec = ExtensionSpec::new(u.clone(), c, alpha, beta).expect("indices in range");
            is_associative(&build_extension(&spec)).holds.then_some(spec)
        })
        .collect()
}

fn commutative_semigroup_classes(order: usize) -> Vec<Magma> {
    let c = EnumerationConstraints::new(order)
        .require(Requirement::Associative)
        .require(Requirement::Commutative);
    let tables = Enumerator::new(&c).expect("within capacity").collect();
    iso_classes(&tables)
}

pub fn hunt_open_question(bounds: HuntBounds, mode: HuntMode) -> Result<HuntReport> {
    bounds.validate()?;
    let start = Instant::now();
    let mut bases = Vec::new();
    for order in 1..=bounds.max_sub {
        match mode {
            HuntMode::RightModular => bases.extend(right_modular_catalog().classes(order).iter().cloned()),
            HuntMode::CommutativeSemigroup => bases.extend(commutative_semigroup_classes(order)),
        }
    }
    let mut report = HuntReport {
        mode,
        bounds,
        bases: bases.len() as u64,
        specs_visited: 0,
        tables_checked: 0,
        counterexamples: Vec::new(),
        counterexample_classes: 0,
        elapsed: Duration::ZERO,
    };
    for u in &bases {
        let (specs, accept): (Vec<ExtensionSpec>, fn(&Magma) -> bool) = match mode {
            HuntMode::RightModular => (right_modular_specs(u)?, |m| is_right_modular(m).holds),
            HuntMode::CommutativeSemigroup => (associative_specs(u), |m| is_associative(m).holds),
        };
        for points in 0..=bounds.max_outside {
            let found = multi_point_tables(u, &specs, points, accept);
            report.specs_visited += found.specs_visited;
            report.tables_checked += found.tables.len() as u64;
            let sub = ElementSet::prefix(u.order() + points, u.order());
            let hits: Vec<Counterexample> = found
                .tables
                .par_iter()
                .filter(|g| matches!(find_retraction(g, &sub), Ok(None)))
                .map(|g| Counterexample {
                    g: g.clone(),
                    sub,
                    witness: find_gen_inflation(g, &sub)
                        .expect("within bounds")
                        .expect("table built from a generalised-inflation spec"),
                })
                .collect();
            report.counterexamples.extend(hits);
        }
    }
    report
        .counterexamples
        .sort_by(|a, b| (a.g.order(), a.g.table()).cmp(&(b.g.order(), b.g.table())));
    let classes: BTreeSet<Vec<u8>> = report
        .counterexamples
        .par_iter()
        .map(|c| canonical_table(&c.g).expect("order within bound"))
        .collect();
    report.counterexample_classes = classes.len() as u64;
    report.elapsed = start.elapsed();
    Ok(report)
}
