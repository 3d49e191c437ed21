//! Decision procedures for identities and element-wise properties.
//!
//! Every universally quantified check scans its arguments in row-major order and
//! reports the lexicographically least counterexample.

use crate::error::{Error, Result};
use crate::magma::{Elem, ElementSet, Magma};

/// Outcome of a property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub holds: bool,
    /// Counterexample when `holds` is false, or a certificate for existential properties.
    pub witness: Option<Vec<Elem>>,
    pub note: Option<String>,
}

impl PropertyReport {
    pub fn holds() -> Self {
        PropertyReport {
            holds: true,
            witness: None,
            note: None,
        }
    }

    pub fn fails(witness: Vec<Elem>) -> Self {
        PropertyReport {
            holds: false,
            witness: Some(witness),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// `holds` or `fails at (a, b, c)` using the magma's element names.
    pub fn describe(&self, m: &Magma) -> String {
        let mut s = match (&self.holds, &self.witness) {
            (true, _) => "holds".to_string(),
            (false, Some(w)) => format!("fails at {}", m.format_elems(w)),
            (false, None) => "fails".to_string(),
        };
        if let Some(note) = &self.note {
            s.push_str(&format!(" [{note}]"));
        }
        s
    }
}

fn first_triple(n: usize, mut bad: impl FnMut(Elem, Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if bad(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

fn report(witness: Option<Vec<Elem>>) -> PropertyReport {
    witness.map_or_else(PropertyReport::holds, PropertyReport::fails)
}

/// `(xy)z = (zy)x`.
pub fn is_right_modular(m: &Magma) -> PropertyReport {
    report(first_triple(m.order(), |x, y, z| !right_modular_at(m, x, y, z)))
}

pub fn right_modular_at(m: &Magma, x: Elem, y: Elem, z: Elem) -> bool {
    m.mul(m.mul(x, y), z) == m.mul(m.mul(z, y), x)
}

/// `(ab)(cd) = (ac)(bd)`.
pub fn is_medial(m: &Magma) -> PropertyReport {
    let n = m.order();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if !medial_at(m, a, b, c, d) {
                        return PropertyReport::fails(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    PropertyReport::holds()
}

pub fn medial_at(m: &Magma, a: Elem, b: Elem, c: Elem, d: Elem) -> bool {
    m.mul(m.mul(a, b), m.mul(c, d)) == m.mul(m.mul(a, c), m.mul(b, d))
}

pub fn is_associative(m: &Magma) -> PropertyReport {
    report(first_triple(m.order(), |x, y, z| !associative_at(m, x, y, z)))
}

pub fn associative_at(m: &Magma, x: Elem, y: Elem, z: Elem) -> bool {
    m.mul(m.mul(x, y), z) == m.mul(x, m.mul(y, z))
}

pub fn is_commutative(m: &Magma) -> PropertyReport {
    let n = m.order();
    for a in 0..n {
        for b in 0..n {
            if m.mul(a, b) != m.mul(b, a) {
                return PropertyReport::fails(vec![a, b]);
            }
        }
    }
    PropertyReport::holds()
}

pub fn is_idempotent(m: &Magma) -> PropertyReport {
    match (0..m.order()).find(|&x| m.mul(x, x) != x) {
        Some(x) => PropertyReport::fails(vec![x]),
        None => PropertyReport::holds(),
    }
}

pub fn left_identities(m: &Magma) -> ElementSet {
    let n = m.order();
    let mut s = ElementSet::empty(n);
    for e in (0..n).filter(|&e| (0..n).all(|x| m.mul(e, x) == x)) {
        s.insert(e);
    }
    s
}

/// Witness `(a, b, c)` with `a < b` and `ac = bc`.
pub fn is_right_cancellative(m: &Magma) -> PropertyReport {
    let n = m.order();
    for a in 0..n {
        for b in a + 1..n {
            if let Some(c) = (0..n).find(|&c| m.mul(a, c) == m.mul(b, c)) {
                return PropertyReport::fails(vec![a, b, c]);
            }
        }
    }
    PropertyReport::holds()
}

/// Witness `(a, b, c)` with `a < b` and `ca = cb`.
pub fn is_left_cancellative(m: &Magma) -> PropertyReport {
    let n = m.order();
    for a in 0..n {
        for b in a + 1..n {
            if let Some(c) = (0..n).find(|&c| m.mul(c, a) == m.mul(c, b)) {
                return PropertyReport::fails(vec![a, b, c]);
            }
        }
    }
    PropertyReport::holds()
}

pub fn is_cancellative(m: &Magma) -> PropertyReport {
    let right = is_right_cancellative(m);
    if !right.holds {
        return right.with_note("right cancellation");
    }
    let left = is_left_cancellative(m);
    if !left.holds {
        return left.with_note("left cancellation");
    }
    PropertyReport::holds()
}

fn is_permutation(values: impl Iterator<Item = Elem>, n: usize) -> bool {
    let mut seen = 0u64;
    for v in values {
        seen |= 1 << v;
    }
    seen.count_ones() as usize == n
}

/// Every row and every column is a permutation. Witness: `[0, r]` for row `r`, `[1, c]` for column `c`.
pub fn is_quasigroup(m: &Magma) -> PropertyReport {
    let n = m.order();
    let bad_row = (0..n).find(|&r| !is_permutation((0..n).map(|c| m.mul(r, c)), n));
    let bad_col = (0..n).find(|&c| !is_permutation((0..n).map(|r| m.mul(r, c)), n));
    let result = match (bad_row, bad_col) {
        (Some(r), _) => PropertyReport::fails(vec![0, r]).with_note("row is not a permutation"),
        (None, Some(c)) => PropertyReport::fails(vec![1, c]).with_note("column is not a permutation"),
        (None, None) => PropertyReport::holds(),
    };
    debug_assert_eq!(result.holds, is_cancellative(m).holds);
    result
}

/// Upper bound on the order for the exhaustive subset scan.
pub const SUBSET_SEARCH_BOUND: usize = 12;

fn is_group_subset(m: &Magma, s: &ElementSet) -> bool {
    if s.is_empty() || !m.is_closed(s) {
        return false;
    }
    for x in s.iter() {
        for y in s.iter() {
            for z in s.iter() {
                if !associative_at(m, x, y, z) {
                    return false;
                }
            }
        }
    }
    let Some(e) = s
        .iter()
        .find(|&e| s.iter().all(|x| m.mul(e, x) == x && m.mul(x, e) == x))
    else {
        return false;
    };
    s.iter().all(|x| s.iter().any(|y| m.mul(x, y) == e && m.mul(y, x) == e))
}

/// All subsets that form a group under the restricted product, in increasing bit order.
pub fn group_subsets(m: &Magma) -> Result<Vec<ElementSet>> {
    let n = m.order();
    if n > SUBSET_SEARCH_BOUND {
        return Err(Error::Capacity(format!(
            "group subset search is limited to order {SUBSET_SEARCH_BOUND}"
        )));
    }
    Ok((1u64..1 << n)
        .map(|bits| ElementSet::from_bits(n, bits).expect("bits fit carrier"))
        .filter(|s| is_group_subset(m, s))
        .collect())
}

/// The carrier is covered by subsets that are groups under the restricted product.
pub fn is_union_of_groups(m: &Magma) -> Result<PropertyReport> {
    let mut covered = ElementSet::empty(m.order());
    for s in group_subsets(m)? {
        for e in s.iter() {
            covered.insert(e);
        }
    }
    let note = "union of groups = covered by subsets that are groups";
    Ok(match covered.complement().first() {
        Some(e) => PropertyReport::fails(vec![e]).with_note(note),
        None => PropertyReport::holds().with_note(note),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(m: &Magma, r: &PropertyReport) -> Vec<String> {
        r.witness.as_ref().unwrap().iter().map(|&e| m.name(e)).collect()
    }

    #[test]
    fn right_modularity() {
        assert!(is_right_modular(&fixtures::w()).holds);
        assert!(is_right_modular(&Magma::new(1, vec![0]).unwrap()).holds);
        let p = fixtures::ex2_printed();
        let r = is_right_modular(&p);
        assert!(!r.holds);
        // Least violating triple in carrier order a, b, 1, x.
        assert_eq!(names(&p, &r), ["a", "1", "x"]);
        let [one, x, a] = ["1", "x", "a"].map(|s| p.element(s).unwrap());
        assert!(!right_modular_at(&p, one, x, a));
    }

    #[test]
    fn mediality() {
        assert!(is_medial(&fixtures::w()).holds);
        let left_zero = Magma::from_rows(&[[0, 0], [1, 1]]).unwrap();
        assert!(is_medial(&left_zero).holds);
        let p = fixtures::ex2_printed();
        let r = is_medial(&p);
        assert_eq!(names(&p, &r), ["a", "a", "1", "x"]);
    }

    #[test]
    fn associativity() {
        let p = fixtures::ex2_printed();
        let r = is_associative(&p);
        assert!(!r.holds);
        assert_eq!(names(&p, &r), ["a", "1", "x"]);
        let [x, a] = ["x", "a"].map(|s| p.element(s).unwrap());
        assert_eq!(p.name(p.mul(p.mul(x, x), a)), "a");
        assert_eq!(p.name(p.mul(x, p.mul(x, a))), "b");

        let w = fixtures::w();
        let r = is_associative(&w);
        assert_eq!(names(&w, &r), ["1", "1", "2"]);
        let [one, two, three] = ["1", "2", "3"].map(|s| w.element(s).unwrap());
        assert!(!associative_at(&w, one, two, three));
        assert!(is_associative(&fixtures::c1()).holds);
    }

    #[test]
    fn idempotency() {
        assert!(is_idempotent(&fixtures::w()).holds);
        assert!(is_idempotent(&fixtures::c1()).holds);
        let p = fixtures::ex2_printed();
        assert_eq!(names(&p, &is_idempotent(&p)), ["x"]);
    }

    #[test]
    fn left_identity_sets() {
        let c1 = fixtures::c1();
        assert_eq!(left_identities(&c1), c1.parse_set("1").unwrap());
        assert!(left_identities(&fixtures::w()).is_empty());
        let right_zero = Magma::from_rows(&[[0, 1], [0, 1]]).unwrap();
        assert!(left_identities(&right_zero).is_full());
    }

    #[test]
    fn cancellation() {
        let w = fixtures::w();
        assert!(is_cancellative(&w).holds);
        let p = fixtures::ex2_printed();
        let r = is_right_cancellative(&p);
        assert_eq!(names(&p, &r), ["a", "b", "b"]);
        assert!(is_cancellative(&Magma::new(1, vec![0]).unwrap()).holds);
        let left_zero = Magma::from_rows(&[[0, 0], [1, 1]]).unwrap();
        assert!(is_right_cancellative(&left_zero).holds);
        assert_eq!(is_left_cancellative(&left_zero).witness, Some(vec![0, 1, 0]));
    }

    #[test]
    fn quasigroups() {
        assert!(is_quasigroup(&fixtures::w()).holds);
        let c1 = fixtures::c1();
        let r = is_quasigroup(&c1);
        assert!(!r.holds);
        assert!(is_quasigroup(&Magma::new(1, vec![0]).unwrap()).holds);
    }

    #[test]
    fn groups_and_unions() {
        let c1 = fixtures::c1();
        let subs = group_subsets(&c1).unwrap();
        for s in ["a", "b", "1"] {
            assert!(subs.contains(&c1.parse_set(s).unwrap()));
        }
        assert!(is_union_of_groups(&c1).unwrap().holds);

        let null = Magma::new(2, vec![0; 4]).unwrap();
        assert_eq!(
            group_subsets(&null).unwrap(),
            vec![ElementSet::from_elems(2, [0]).unwrap()]
        );
        let r = is_union_of_groups(&null).unwrap();
        assert_eq!(r.witness, Some(vec![1]));

        let w = fixtures::w();
        let subs = group_subsets(&w).unwrap();
        for e in 0..4 {
            assert!(subs.contains(&ElementSet::from_elems(4, [e]).unwrap()));
        }
        assert!(is_union_of_groups(&w).unwrap().holds);

        let z3 = Magma::from_rows(&[[0, 1, 2], [1, 2, 0], [2, 0, 1]]).unwrap();
        assert!(group_subsets(&z3).unwrap().contains(&z3.carrier()));
    }
}
