//! Cayley-table groupoids, subsets of their carriers, and the plain-text table format.
//!
//! Elements are dense indices `0..n`. The table is stored row-major with the row
//! giving the left factor, so `table[a * n + b]` is `a·b`. Names are presentation
//! only and never take part in arithmetic.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub type Elem = usize;

/// Largest order accepted by default. Override with `GROUPOID_MAX_ORDER`.
pub const DEFAULT_MAX_ORDER: usize = 12;

/// Element sets are bitmasks, which caps any override.
pub const HARD_MAX_ORDER: usize = 64;

pub const MAX_ORDER_ENV: &str = "GROUPOID_MAX_ORDER";

/// Capacity limit for magma orders, read once from the environment.
pub fn max_order() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(|v| v.clamp(1, HARD_MAX_ORDER))
            .unwrap_or(DEFAULT_MAX_ORDER)
    })
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::Argument("order must be at least 1".into()));
    }
    if order > max_order() {
        return Err(Error::Capacity(format!(
            "order {order} exceeds the configured maximum {}",
            max_order()
        )));
    }
    Ok(())
}

/// A subset of the carrier `0..carrier_order` of some magma.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    carrier_order: usize,
    bits: u64,
}

impl ElementSet {
    pub fn empty(carrier_order: usize) -> Self {
        debug_assert!(carrier_order <= HARD_MAX_ORDER);
        ElementSet { carrier_order, bits: 0 }
    }

    pub fn full(carrier_order: usize) -> Self {
        let bits = if carrier_order == 64 {
            u64::MAX
        } else {
            (1u64 << carrier_order) - 1
        };
        ElementSet { carrier_order, bits }
    }

    pub fn from_bits(carrier_order: usize, bits: u64) -> Result<Self> {
        if carrier_order > HARD_MAX_ORDER || (bits & !Self::full(carrier_order).bits) != 0 {
            return Err(Error::Argument(format!(
                "bit pattern {bits:#x} does not fit a carrier of order {carrier_order}"
            )));
        }
        Ok(ElementSet { carrier_order, bits })
    }

    pub fn from_elems<I: IntoIterator<Item = Elem>>(carrier_order: usize, elems: I) -> Result<Self> {
        let mut set = Self::empty(carrier_order);
        for e in elems {
            if e >= carrier_order {
                return Err(Error::OutOfRange {
                    elem: e,
                    order: carrier_order,
                });
            }
            set.bits |= 1 << e;
        }
        Ok(set)
    }

    /// `{0, .., k-1}` inside a carrier of order `n`.
    pub fn prefix(carrier_order: usize, k: usize) -> Self {
        assert!(k <= carrier_order);
        let mut s = Self::full(k);
        s.carrier_order = carrier_order;
        s
    }

    pub fn carrier_order(&self) -> usize {
        self.carrier_order
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, e: Elem) -> bool {
        e < self.carrier_order && self.bits >> e & 1 == 1
    }

    pub fn insert(&mut self, e: Elem) {
        assert!(e < self.carrier_order, "element {e} outside carrier");
        self.bits |= 1 << e;
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.carrier_order)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// Position of `e` among the members in ascending order.
    pub fn rank(&self, e: Elem) -> Option<usize> {
        self.contains(e)
            .then(|| (self.bits & ((1u64 << e) - 1)).count_ones() as usize)
    }

    pub fn complement(&self) -> Self {
        ElementSet {
            carrier_order: self.carrier_order,
            bits: Self::full(self.carrier_order).bits & !self.bits,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        let bits = self.bits;
        (0..self.carrier_order).filter(move |&e| bits >> e & 1 == 1)
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<Elem> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }
}

/// A finite groupoid given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Magma {
    order: usize,
    table: Vec<u8>,
    names: Option<Vec<String>>,
}

impl Magma {
    pub fn new(order: usize, table: Vec<Elem>) -> Result<Self> {
        check_order(order)?;
        if table.len() != order * order {
            return Err(Error::Argument(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= order) {
            return Err(Error::OutOfRange { elem: bad, order });
        }
        Ok(Magma {
            order,
            table: table.into_iter().map(|v| v as u8).collect(),
            names: None,
        })
    }

    pub fn from_rows<R: AsRef<[Elem]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != order {
                return Err(Error::Argument(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            table.extend_from_slice(row);
        }
        Self::new(order, table)
    }

    /// Builds from a row-major byte table; entries must already be in range.
    pub fn from_bytes(order: usize, table: Vec<u8>) -> Result<Self> {
        check_order(order)?;
        if table.len() != order * order {
            return Err(Error::Argument(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= order) {
            return Err(Error::OutOfRange {
                elem: bad as usize,
                order,
            });
        }
        Ok(Magma {
            order,
            table,
            names: None,
        })
    }

    pub fn with_names<S: Into<String>, I: IntoIterator<Item = S>>(mut self, names: I) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        validate_names(&names, self.order)?;
        self.names = Some(names);
        Ok(self)
    }

    pub fn without_names(mut self) -> Self {
        self.names = None;
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Row-major table, row = left factor.
    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn carrier(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    /// Unchecked product; panics if an index is out of range.
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a < self.order && b < self.order);
        self.table[a * self.order + b] as Elem
    }

    pub fn product(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        Ok(self.mul(a, b))
    }

    pub fn check_elem(&self, e: Elem) -> Result<()> {
        if e < self.order {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                elem: e,
                order: self.order,
            })
        }
    }

    /// `x^1 = x`, `x^n = x · x^(n-1)`.
    pub fn power(&self, x: Elem, n: usize) -> Result<Elem> {
        self.check_elem(x)?;
        if n == 0 {
            return Err(Error::Argument("powers are defined for exponents n >= 1".into()));
        }
        Ok((1..n).fold(x, |acc, _| self.mul(x, acc)))
    }

    /// `G²`, the set of all products.
    pub fn square_set(&self) -> ElementSet {
        let mut s = ElementSet::empty(self.order);
        for &v in &self.table {
            s.insert(v as Elem);
        }
        s
    }

    fn first_escape(&self, s: &ElementSet) -> Option<(Elem, Elem)> {
        for a in s.iter() {
            for b in s.iter() {
                if !s.contains(self.mul(a, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_closed(&self, s: &ElementSet) -> bool {
        s.carrier_order() == self.order && self.first_escape(s).is_none()
    }

    /// Checks that `s` is a subset of this carrier and closed under the product.
    pub fn check_closed(&self, s: &ElementSet) -> Result<()> {
        if s.carrier_order() != self.order {
            return Err(Error::Argument(format!(
                "element set over a carrier of order {} used with a magma of order {}",
                s.carrier_order(),
                self.order
            )));
        }
        if let Some((a, b)) = self.first_escape(s) {
            return Err(Error::Precondition(format!(
                "set is not closed: {} * {} = {} lies outside it",
                self.name(a),
                self.name(b),
                self.name(self.mul(a, b))
            )));
        }
        Ok(())
    }

    /// The induced subgroupoid on `s`, re-indexed in ascending original order.
    pub fn restrict(&self, s: &ElementSet) -> Result<Magma> {
        self.check_closed(s)?;
        if s.is_empty() {
            return Err(Error::Argument("cannot restrict to the empty set".into()));
        }
        let members = s.to_vec();
        let mut table = Vec::with_capacity(members.len() * members.len());
        for &a in &members {
            for &b in &members {
                table.push(s.rank(self.mul(a, b)).expect("closed") as u8);
            }
        }
        let mut m = Magma::from_bytes(members.len(), table)?;
        if let Some(names) = &self.names {
            m.names = Some(members.iter().map(|&e| names[e].clone()).collect());
        }
        Ok(m)
    }

    /// Display name of an element: its declared name or its index.
    pub fn name(&self, e: Elem) -> String {
        match &self.names {
            Some(n) if e < n.len() => n[e].clone(),
            _ => e.to_string(),
        }
    }

    /// Resolves a declared name first, then a 0-based index.
    pub fn element(&self, token: &str) -> Option<Elem> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == token) {
                return Some(i);
            }
        }
        token.parse::<usize>().ok().filter(|&i| i < self.order)
    }

    pub fn format_elems(&self, elems: &[Elem]) -> String {
        let parts: Vec<String> = elems.iter().map(|&e| self.name(e)).collect();
        format!("({})", parts.join(", "))
    }

    pub fn format_set(&self, s: &ElementSet) -> String {
        let parts: Vec<String> = s.iter().map(|e| self.name(e)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Parses a comma- or whitespace-separated list of element names/indices.
    pub fn parse_set(&self, text: &str) -> Result<ElementSet> {
        let mut s = ElementSet::empty(self.order);
        for tok in text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let e = self
                .element(tok)
                .ok_or_else(|| Error::Argument(format!("unknown element `{tok}`")))?;
            s.insert(e);
        }
        Ok(s)
    }

    pub fn parse_table(text: &str) -> Result<Magma> {
        parse_table(text)
    }

    pub fn format_table(&self) -> String {
        format_table(self)
    }
}

impl fmt::Display for Magma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_table(self))
    }
}

fn validate_names(names: &[String], order: usize) -> Result<()> {
    if names.len() != order {
        return Err(Error::Argument(format!(
            "{} names given for order {order}",
            names.len()
        )));
    }
    for (i, n) in names.iter().enumerate() {
        if n.is_empty() || n.chars().any(|c| c.is_whitespace() || c == '#' || c == ',') {
            return Err(Error::Argument(format!("invalid element name `{n}`")));
        }
        if names[..i].contains(n) {
            return Err(Error::Argument(format!("duplicate element name `{n}`")));
        }
    }
    Ok(())
}

/// Parses the table text format.
///
/// ```text
/// 4            # order
/// 1 2 3 4      # optional names line
/// 1 3 4 2      # n rows of names or 0-based indices
/// ...
/// ```
///
/// The names line is recognised when its first token is not a number, or when
/// the file holds `n + 1` data lines (which allows purely numeric names).
pub fn parse_table(text: &str) -> Result<Magma> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            (
                i + 1,
                l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>(),
            )
        })
        .filter(|(_, toks)| !toks.is_empty())
        .collect();
    let Some((header_line, header)) = lines.first() else {
        return Err(Error::Parse {
            line: 1,
            msg: "empty input".into(),
        });
    };
    if header.len() != 1 {
        return Err(Error::Parse {
            line: *header_line,
            msg: "header must be a single integer order".into(),
        });
    }
    let order: usize = header[0].parse().map_err(|_| Error::Parse {
        line: *header_line,
        msg: format!("invalid order `{}`", header[0]),
    })?;
    if order == 0 {
        return Err(Error::Parse {
            line: *header_line,
            msg: "order must be at least 1".into(),
        });
    }
    if order > max_order() {
        return Err(Error::Capacity(format!(
            "order {order} exceeds the configured maximum {}",
            max_order()
        )));
    }
    let body = &lines[1..];
    let has_names = match body.first() {
        Some((_, toks)) => toks[0].parse::<usize>().is_err() || body.len() == order + 1,
        None => false,
    };
    let (names, rows) = if has_names {
        let (line, toks) = &body[0];
        if toks.len() != order {
            return Err(Error::Parse {
                line: *line,
                msg: format!("expected {order} names, found {}", toks.len()),
            });
        }
        let names: Vec<String> = toks.iter().map(|s| s.to_string()).collect();
        validate_names(&names, order).map_err(|e| Error::Parse {
            line: *line,
            msg: e.to_string(),
        })?;
        (Some(names), &body[1..])
    } else {
        (None, body)
    };
    if rows.len() != order {
        let line = rows.last().map(|(l, _)| *l).unwrap_or(*header_line);
        return Err(Error::Parse {
            line,
            msg: format!("expected {order} table rows, found {}", rows.len()),
        });
    }
    let resolve = |tok: &str| -> Option<Elem> {
        if let Some(names) = &names {
            if let Some(i) = names.iter().position(|n| n == tok) {
                return Some(i);
            }
        }
        tok.parse::<usize>().ok().filter(|&i| i < order)
    };
    let mut table = Vec::with_capacity(order * order);
    for (line, toks) in rows {
        if toks.len() != order {
            return Err(Error::Parse {
                line: *line,
                msg: format!("expected {order} entries, found {}", toks.len()),
            });
        }
        for tok in toks {
            let v = resolve(tok).ok_or_else(|| Error::Parse {
                line: *line,
                msg: format!("unknown symbol `{tok}`"),
            })?;
            table.push(v as u8);
        }
    }
    let m = Magma { order, table, names };
    Ok(m)
}

pub fn format_table(m: &Magma) -> String {
    let mut out = format!("{}\n", m.order);
    if let Some(names) = &m.names {
        out.push_str(&names.join(" "));
        out.push('\n');
    }
    for a in 0..m.order {
        let row: Vec<String> = (0..m.order).map(|b| m.name(m.mul(a, b))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
