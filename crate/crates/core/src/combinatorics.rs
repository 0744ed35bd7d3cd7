//! Subsets of `{1, …, n}`: enumeration in canonical order, the standard and
//! super-standard conditions, and the boundary projection `φ`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A subset of `{1, …, universe}` stored as its strictly increasing elements.
///
/// Ordering is lexicographic on the element list (subsets of different
/// universes compare by universe first, which never happens in practice).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    universe: u32,
    elements: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubsetClass {
    Unrestricted,
    /// `b_i ≥ 2i` for every sorted position `i` (1-based).
    Standard,
    /// `2i ≤ b_i < (n − 2k) + 2i` where `k` is the subset size.
    SuperStandard,
}

impl Subset {
    pub fn new(universe: u32, mut elements: Vec<u32>) -> Result<Self> {
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::params(format!("repeated element in {elements:?}")));
        }
        if let Some(&bad) = elements.iter().find(|&&e| e == 0 || e > universe) {
            return Err(Error::params(format!(
                "element {bad} outside 1..={universe}"
            )));
        }
        Ok(Subset { universe, elements })
    }

    pub fn empty(universe: u32) -> Self {
        Subset {
            universe,
            elements: Vec::new(),
        }
    }

    pub(crate) fn from_sorted_unchecked(universe: u32, elements: Vec<u32>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subset { universe, elements }
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: u32) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.elements.iter();
        'outer: for &e in &self.elements {
            for &o in it.by_ref() {
                if o == e {
                    continue 'outer;
                }
                if o > e {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn intersection_len(&self, other: &Subset) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        let (a, b) = (&self.elements, &other.elements);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    pub fn is_standard(&self) -> bool {
        self.elements
            .iter()
            .enumerate()
            .all(|(pos, &b)| b >= 2 * (pos as u32 + 1))
    }

    pub fn is_super_standard(&self) -> bool {
        let n = i64::from(self.universe);
        let k = self.len() as i64;
        self.elements.iter().enumerate().all(|(pos, &b)| {
            let i = pos as i64 + 1;
            let b = i64::from(b);
            2 * i <= b && b < n - 2 * k + 2 * i
        })
    }

    pub fn class_contains(&self, class: SubsetClass) -> bool {
        match class {
            SubsetClass::Unrestricted => true,
            SubsetClass::Standard => self.is_standard(),
            SubsetClass::SuperStandard => self.is_super_standard(),
        }
    }

    /// True iff some sorted position `i` holds the entry `2i`.
    pub fn is_boundary(&self) -> Result<bool> {
        if !self.is_standard() {
            return Err(Error::NotStandard(self.to_string()));
        }
        Ok(self.first_boundary_position().is_some())
    }

    /// 0-based position of the first entry equal to `2i` (1-based `i`).
    fn first_boundary_position(&self) -> Option<usize> {
        self.elements
            .iter()
            .enumerate()
            .position(|(pos, &b)| b == 2 * (pos as u32 + 1))
    }

    fn last_boundary_position(&self) -> Option<usize> {
        self.elements
            .iter()
            .enumerate()
            .rposition(|(pos, &b)| b == 2 * (pos as u32 + 1))
    }

    /// The boundary projection: remove the boundary entry in the smallest
    /// position and shift the remaining entries down by one. The result lives
    /// in `{1, …, n − 1}`.
    pub fn phi(&self) -> Result<Subset> {
        if !self.is_standard() {
            return Err(Error::NotStandard(self.to_string()));
        }
        let pos = self
            .first_boundary_position()
            .ok_or_else(|| Error::NotBoundary(self.to_string()))?;
        let elements = self
            .elements
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != pos)
            .map(|(_, &b)| b - 1)
            .collect();
        Ok(Subset::from_sorted_unchecked(self.universe - 1, elements))
    }

    /// Inverse of [`Subset::phi`]: `self` is a standard subset of
    /// `{1, …, n − 1}`; the result is a boundary subset of `{1, …, n}`.
    ///
    /// If the last boundary entry of `self` is `2p` (at position `p`), the
    /// removed entry must have been `2p + 2` at position `p + 1`; with no
    /// boundary entry it was `2` at position 1.
    pub fn phi_inverse(&self, n: u32) -> Result<Subset> {
        if !self.is_standard() {
            return Err(Error::NotStandard(self.to_string()));
        }
        if self.elements.last().is_some_and(|&m| m + 1 > n) || self.universe + 1 > n {
            return Err(Error::params(format!(
                "{self} does not fit in universe {} after inflation",
                n
            )));
        }
        let insert_at = self.last_boundary_position().map_or(0, |p| p + 1);
        let entry = 2 * (insert_at as u32 + 1);
        let mut elements: Vec<u32> = self.elements.iter().map(|&b| b + 1).collect();
        elements.insert(insert_at, entry);
        Ok(Subset::from_sorted_unchecked(n, elements))
    }

    /// Subtract one from every element (used for the interior bijection).
    pub fn shift_down(&self) -> Option<Subset> {
        if self.elements.first() == Some(&1) || self.universe == 0 {
            return None;
        }
        Some(Subset::from_sorted_unchecked(
            self.universe - 1,
            self.elements.iter().map(|&b| b - 1).collect(),
        ))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// `C(a, b)`, with the convention `C(a, b) = 0` whenever `b < 0` or `a < b`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b {
        return BigInt::zero();
    }
    // a ≥ b ≥ 0 here, so a ≥ 0 as well.
    let b = b.min(a - b);
    let mut acc = BigInt::from(1u32);
    for t in 0..b {
        acc *= a - t;
        acc /= t + 1;
    }
    acc
}

pub(crate) fn binomial_u64(a: i64, b: i64) -> u64 {
    binomial(a, b)
        .to_u64()
        .expect("binomial coefficient does not fit in u64")
}

/// Number of standard `s`-subsets of `{1, …, n}`.
pub fn mu(n: u32, s: u32) -> u64 {
    let (n, s) = (i64::from(n), i64::from(s));
    if n < 2 * s - 1 {
        return 0;
    }
    binomial_u64(n, s) - binomial_u64(n, s - 1)
}

/// `μ_s − μ_{s−1}`, the multiplicity of the block `M_s`.
pub(crate) fn mu_increment(n: u32, s: u32) -> u64 {
    let lower = if s == 0 { 0 } else { mu(n, s - 1) };
    mu(n, s)
        .checked_sub(lower)
        .expect("μ_s < μ_{s−1}: n below the range where the block counts are valid")
}

/// All `k`-subsets of `{1, …, n}` in `class`, in lexicographic order.
pub fn enumerate_subsets(n: u32, k: u32, class: SubsetClass) -> Vec<Subset> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let k = k as usize;
    let bounds: Vec<(u32, u32)> = (1..=k as u32)
        .map(|i| {
            let kk = k as i64;
            let (lo, hi) = match class {
                SubsetClass::Unrestricted => (i64::from(i), i64::from(n) - kk + i64::from(i)),
                SubsetClass::Standard => (2 * i64::from(i), i64::from(n)),
                SubsetClass::SuperStandard => (
                    2 * i64::from(i),
                    (i64::from(n) - 2 * kk + 2 * i64::from(i) - 1).min(i64::from(n)),
                ),
            };
            (lo.max(1) as u32, hi.max(0) as u32)
        })
        .collect();
    let mut current = Vec::with_capacity(k);
    fill(n, &bounds, 1, &mut current, &mut out);
    out
}

fn fill(n: u32, bounds: &[(u32, u32)], min: u32, current: &mut Vec<u32>, out: &mut Vec<Subset>) {
    let pos = current.len();
    if pos == bounds.len() {
        out.push(Subset::from_sorted_unchecked(n, current.clone()));
        return;
    }
    let (lo, hi) = bounds[pos];
    for b in lo.max(min)..=hi {
        current.push(b);
        fill(n, bounds, b + 1, current, out);
        current.pop();
    }
}

/// Subsets of every size `0..=k`, size-ascending, each size block
/// lexicographic. This is the row/column order of `P_k` and `P̃`.
pub fn enumerate_subsets_up_to(n: u32, k: u32, class: SubsetClass) -> Vec<Subset> {
    (0..=k.min(n))
        .flat_map(|s| enumerate_subsets(n, s, class))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u32, e: &[u32]) -> Subset {
        Subset::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(binomial(-3, 2), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(
            binomial(60, 30),
            "118264581564861424".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn standard_subsets_of_five() {
        let got: Vec<String> = enumerate_subsets_up_to(5, 2, SubsetClass::Standard)
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(
            got,
            ["{}", "{2}", "{3}", "{4}", "{5}", "{2,4}", "{2,5}", "{3,4}", "{3,5}", "{4,5}"]
        );
    }

    #[test]
    fn enumeration_edge_cases() {
        assert_eq!(
            enumerate_subsets(12, 3, SubsetClass::SuperStandard).len(),
            100
        );
        assert!(enumerate_subsets(4, 3, SubsetClass::Standard).is_empty());
        assert_eq!(enumerate_subsets(3, 5, SubsetClass::Unrestricted).len(), 0);
        assert_eq!(enumerate_subsets(0, 0, SubsetClass::SuperStandard).len(), 1);
    }

    #[test]
    fn mu_values() {
        assert_eq!(mu(12, 2), 54);
        assert_eq!(mu(5, 3), 0);
        assert_eq!(mu(9, 3), 48);
        assert_eq!(mu(7, 0), 1);
    }

    #[test]
    fn boundary_examples() {
        assert!(set(9, &[3, 4, 7]).is_boundary().unwrap());
        assert!(!set(9, &[4, 5, 8]).is_boundary().unwrap());
        assert!(!Subset::empty(5).is_boundary().unwrap());
        assert!(matches!(
            set(9, &[1, 4]).is_boundary(),
            Err(Error::NotStandard(_))
        ));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(set(9, &[2, 5, 8]).phi().unwrap(), set(8, &[4, 7]));
        assert_eq!(set(9, &[3, 4, 8]).phi().unwrap(), set(8, &[2, 7]));
        assert_eq!(set(9, &[2]).phi().unwrap(), Subset::empty(8));
        assert!(matches!(set(9, &[3, 5]).phi(), Err(Error::NotBoundary(_))));
    }

    #[test]
    fn phi_inverse_examples() {
        assert_eq!(set(8, &[4, 7]).phi_inverse(9).unwrap(), set(9, &[2, 5, 8]));
        assert_eq!(Subset::empty(8).phi_inverse(9).unwrap(), set(9, &[2]));
        assert_eq!(set(8, &[2, 7]).phi_inverse(9).unwrap(), set(9, &[3, 4, 8]));
    }

    #[test]
    fn phi_roundtrips_exhaustively() {
        for n in 1..=12 {
            for k in 0..=6 {
                for s in enumerate_subsets(n, k, SubsetClass::Standard) {
                    if s.is_boundary().unwrap() {
                        let image = s.phi().unwrap();
                        assert!(image.is_standard());
                        assert_eq!(image.phi_inverse(n).unwrap(), s);
                    }
                }
                if n >= 2 {
                    for t in enumerate_subsets(n - 1, k, SubsetClass::Standard) {
                        let up = t.phi_inverse(n).unwrap();
                        assert!(up.is_boundary().unwrap());
                        assert_eq!(up.phi().unwrap(), t);
                    }
                }
            }
        }
    }

    #[test]
    fn subset_relations() {
        let a = set(9, &[2, 5]);
        let b = set(9, &[2, 4, 5, 9]);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert!(!set(9, &[3]).is_subset_of(&b));
        assert_eq!(a.intersection_len(&b), 2);
        assert_eq!(set(9, &[1, 3]).intersection_len(&b), 0);
        assert!(Subset::new(4, vec![5]).is_err());
        assert!(Subset::new(4, vec![2, 2]).is_err());
    }
}
