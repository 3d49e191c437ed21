//! Relabelings, isomorphism search and brute-force canonical forms.

use crate::error::{Error, Result};
use crate::magma::{Elem, Magma};

/// Largest order for isomorphism search and canonical forms.
pub const MAX_ISO_ORDER: usize = 8;

/// A bijection on `0..n`; `mapping[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<Elem>,
}

impl Permutation {
    pub fn new(mapping: Vec<Elem>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &v in &mapping {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Argument(format!("{mapping:?} is not a permutation")));
            }
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            mapping: (0..n).collect(),
        }
    }

    /// Swaps `a` and `b`, fixes everything else.
    pub fn transposition(n: usize, a: Elem, b: Elem) -> Self {
        let mut mapping: Vec<Elem> = (0..n).collect();
        mapping.swap(a, b);
        Permutation { mapping }
    }

    pub fn order(&self) -> usize {
        self.mapping.len()
    }

    pub fn apply(&self, e: Elem) -> Elem {
        self.mapping[e]
    }

    pub fn mapping(&self) -> &[Elem] {
        &self.mapping
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &v) in self.mapping.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { mapping: inv }
    }
}

/// Relabels `m` so that the result satisfies `m'[p(a)][p(b)] = p(m[a][b])`.
pub fn apply_permutation(m: &Magma, p: &Permutation) -> Result<Magma> {
    let n = m.order();
    if p.order() != n {
        return Err(Error::Argument(format!(
            "permutation of order {} applied to magma of order {n}",
            p.order()
        )));
    }
    let mut table = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            table[p.apply(a) * n + p.apply(b)] = p.apply(m.mul(a, b)) as u8;
        }
    }
    let mut out = Magma::from_bytes(n, table)?;
    if let Some(names) = m.names() {
        let mut relabeled = names.to_vec();
        for (i, name) in names.iter().enumerate() {
            relabeled[p.apply(i)] = name.clone();
        }
        out = out.with_names(relabeled)?;
    }
    Ok(out)
}

fn check_iso_order(n: usize) -> Result<()> {
    if n > MAX_ISO_ORDER {
        return Err(Error::Capacity(format!(
            "isomorphism search is limited to order {MAX_ISO_ORDER}, got {n}"
        )));
    }
    Ok(())
}

/// Finds the lexicographically first permutation `p` with `apply_permutation(m1, p) == m2`
/// (ignoring names).
pub fn is_isomorphic(m1: &Magma, m2: &Magma) -> Result<Option<Permutation>> {
    check_iso_order(m1.order())?;
    check_iso_order(m2.order())?;
    if m1.order() != m2.order() {
        return Ok(None);
    }
    let n = m1.order();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !extend_iso(m1, m2, 0, &mut image, &mut used) {
        return Ok(None);
    }
    let p = Permutation { mapping: image };
    let check = apply_permutation(&m1.clone().without_names(), &p)?;
    assert_eq!(
        check.table(),
        m2.table(),
        "isomorphism search returned an invalid permutation"
    );
    Ok(Some(p))
}

fn consistent(m1: &Magma, m2: &Magma, k: usize, image: &[Elem], used: &[bool]) -> bool {
    // Every pair among the assigned elements 0..=k: a product that is already assigned
    // must map exactly; one that is not must map to a still-unused image.
    for x in 0..=k {
        for y in 0..=k {
            let v = m1.mul(x, y);
            let target = m2.mul(image[x], image[y]);
            if v <= k {
                if image[v] != target {
                    return false;
                }
            } else if used[target] {
                return false;
            }
        }
    }
    true
}

fn extend_iso(m1: &Magma, m2: &Magma, k: usize, image: &mut Vec<Elem>, used: &mut Vec<bool>) -> bool {
    let n = m1.order();
    if k == n {
        return true;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        image[k] = v;
        used[v] = true;
        if consistent(m1, m2, k, image, used) && extend_iso(m1, m2, k + 1, image, used) {
            return true;
        }
        used[v] = false;
    }
    image[k] = usize::MAX;
    false
}

/// In-place lexicographic successor; false once the last permutation is reached.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The lexicographically least row-major table over all relabelings. Names are dropped.
pub fn canonical_form(m: &Magma) -> Result<Magma> {
    Ok(Magma::from_bytes(m.order(), canonical_table(m)?).expect("relabeling keeps entries in range"))
}

/// Flattened canonical table, usable as a hash key for deduplication.
pub fn canonical_table(m: &Magma) -> Result<Vec<u8>> {
    let n = m.order();
    check_iso_order(n)?;
    // q maps canonical positions back to original elements; p = q⁻¹ relabels values.
    let mut q: Vec<usize> = (0..n).collect();
    let mut p = vec![0usize; n];
    let mut best: Vec<u8> = m.table().to_vec();
    let mut candidate = vec![0u8; n * n];
    loop {
        for (i, &qi) in q.iter().enumerate() {
            p[qi] = i;
        }
        let mut ordering = std::cmp::Ordering::Equal;
        'cells: for i in 0..n {
            for j in 0..n {
                let v = p[m.mul(q[i], q[j])] as u8;
                let idx = i * n + j;
                if ordering == std::cmp::Ordering::Equal {
                    ordering = v.cmp(&best[idx]);
                    if ordering == std::cmp::Ordering::Greater {
                        break 'cells;
                    }
                }
                candidate[idx] = v;
            }
        }
        if ordering == std::cmp::Ordering::Less {
            best.copy_from_slice(&candidate);
        }
        if !next_permutation(&mut q) {
            break;
        }
    }
    Ok(best)
}
