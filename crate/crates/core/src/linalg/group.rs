use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A finitely generated abelian group in invariant-factor form
/// `Z/d_1 ⊕ … ⊕ Z/d_t ⊕ Z^r` with `1 < d_1 | d_2 | … | d_t`.
///
/// Torsion is stored run-length encoded since multiplicities in the Johnson
/// scheme grow like `C(n, k)`. Two groups are isomorphic iff they compare
/// equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    torsion: Vec<(BigInt, u64)>,
    free_rank: u64,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Canonical form of `⊕ (Z/|e|)^m` over the given `(e, m)` pairs. Zero
    /// entries contribute free rank, units vanish, signs are ignored.
    pub fn from_diagonal<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (BigInt, u64)>,
    {
        let mut free_rank = 0u64;
        let mut counts: BTreeMap<BigInt, u64> = BTreeMap::new();
        for (e, m) in entries {
            if m == 0 {
                continue;
            }
            let e = e.abs();
            if e.is_zero() {
                free_rank += m;
            } else if !e.is_one() {
                *counts.entry(e).or_default() += m;
            }
        }
        AbelianGroup {
            torsion: canonical_torsion(&counts),
            free_rank,
        }
    }

    /// Canonical form from an expanded list of cyclic orders.
    pub fn from_factors(factors: &[BigInt], free_rank: u64) -> Self {
        Self::from_diagonal(
            factors
                .iter()
                .map(|f| (f.clone(), 1))
                .chain(std::iter::once((BigInt::zero(), free_rank))),
        )
    }

    /// Invariant factors with multiplicities, ascending.
    pub fn torsion_runs(&self) -> &[(BigInt, u64)] {
        &self.torsion
    }

    /// Expanded invariant factors, ascending. Beware of huge multiplicities.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.torsion
            .iter()
            .flat_map(|(d, m)| std::iter::repeat_n(d.clone(), *m as usize))
            .collect()
    }

    pub fn free_rank(&self) -> u64 {
        self.free_rank
    }

    /// Number of cyclic torsion summands.
    pub fn torsion_count(&self) -> u64 {
        self.torsion.iter().map(|(_, m)| m).sum()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().map(|(d, m)| Pow::pow(d, *m)).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        Self::from_diagonal(self.torsion.iter().chain(&other.torsion).cloned().chain(
            std::iter::once((BigInt::zero(), self.free_rank + other.free_rank)),
        ))
    }
}

/// Splits the distinct orders into a pairwise coprime base, reads off the
/// exponent of every base element in every order, and zips the sorted
/// exponent runs into invariant factors.
fn canonical_torsion(counts: &BTreeMap<BigInt, u64>) -> Vec<(BigInt, u64)> {
    if counts.is_empty() {
        return Vec::new();
    }
    let base = coprime_base(counts.keys().cloned().collect());

    // Per base element: runs of (exponent, count), exponent descending.
    let mut runs: Vec<(BigInt, Vec<(u32, u64)>)> = Vec::new();
    for p in base {
        let mut by_exp: BTreeMap<u32, u64> = BTreeMap::new();
        for (v, &m) in counts {
            let mut e = 0u32;
            let mut v = v.clone();
            while v.is_multiple_of(&p) {
                v /= &p;
                e += 1;
            }
            if e > 0 {
                *by_exp.entry(e).or_default() += m;
            }
        }
        runs.push((p, by_exp.into_iter().rev().collect()));
    }

    // Largest factors first.
    let mut pos = vec![0usize; runs.len()];
    let mut left: Vec<u64> = runs
        .iter()
        .map(|(_, r)| r.first().map_or(0, |x| x.1))
        .collect();
    let mut out: Vec<(BigInt, u64)> = Vec::new();
    loop {
        let live: Vec<usize> = (0..runs.len())
            .filter(|&t| pos[t] < runs[t].1.len())
            .collect();
        if live.is_empty() {
            break;
        }
        let step = live.iter().map(|&t| left[t]).min().unwrap();
        let mut d = BigInt::one();
        for &t in &live {
            let (p, r) = &runs[t];
            d *= Pow::pow(p, r[pos[t]].0);
            left[t] -= step;
            if left[t] == 0 {
                pos[t] += 1;
                left[t] = r.get(pos[t]).map_or(0, |x| x.1);
            }
        }
        match out.last_mut() {
            Some((last, m)) if *last == d => *m += step,
            _ => out.push((d, step)),
        }
    }
    out.reverse();
    out
}

/// Refines integers > 1 into pairwise coprime integers > 1 generating the
/// same multiplicative monoid closure needed for exponent extraction.
fn coprime_base(values: Vec<BigInt>) -> Vec<BigInt> {
    let mut base: BTreeSet<BigInt> = values.into_iter().collect();
    'refine: loop {
        let items: Vec<BigInt> = base.iter().cloned().collect();
        for (i, a) in items.iter().enumerate() {
            for b in &items[i + 1..] {
                let g = a.gcd(b);
                if g.is_one() {
                    continue;
                }
                base.remove(a);
                base.remove(b);
                for x in [a / &g, b / &g, g] {
                    if !x.is_one() {
                        base.insert(x);
                    }
                }
                continue 'refine;
            }
        }
        break;
    }
    base.into_iter().collect()
}

impl fmt::Display for AbelianGroup {
    /// `Z/6 ⊕ (Z/342)^10 ⊕ Z^2`, factors ascending; the trivial group is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .torsion
            .iter()
            .map(|(d, m)| {
                if *m == 1 {
                    format!("Z/{d}")
                } else {
                    format!("(Z/{d})^{m}")
                }
            })
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let factors: Vec<serde_json::Number> = self
            .invariant_factors()
            .iter()
            .map(|d| {
                d.to_string()
                    .parse()
                    .expect("integers are valid JSON numbers")
            })
            .collect();
        let mut st = s.serialize_struct("AbelianGroup", 2)?;
        st.serialize_field("invariant_factors", &factors)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            invariant_factors: Vec<serde_json::Number>,
            free_rank: u64,
        }
        let raw = Raw::deserialize(d)?;
        let factors = raw
            .invariant_factors
            .iter()
            .map(|n| n.to_string().parse::<BigInt>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AbelianGroup::from_factors(&factors, raw.free_rank))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(entries: &[(i64, u64)]) -> AbelianGroup {
        AbelianGroup::from_diagonal(entries.iter().map(|&(e, m)| (BigInt::from(e), m)))
    }

    #[test]
    fn crt_merges_coprime_orders() {
        assert_eq!(g(&[(2, 1), (3, 1)]).to_string(), "Z/6");
        assert_eq!(g(&[(2, 1), (3, 1), (0, 2)]).to_string(), "Z/6 ⊕ Z^2");
        assert!(g(&[(1, 100)]).is_trivial());
        assert_eq!(g(&[(1, 100)]).to_string(), "0");
    }

    #[test]
    fn signs_and_units_ignored() {
        assert_eq!(g(&[(-4, 1), (-1, 3), (6, 1)]), g(&[(2, 1), (12, 1)]));
    }

    #[test]
    fn non_prime_bases() {
        // 12 = 4·3, 18 = 2·9: p-parts (4,2) and (9,3) give 2·3 = 6 and 4·9 = 36.
        assert_eq!(g(&[(12, 1), (18, 1)]).to_string(), "Z/6 ⊕ Z/36");
        assert_eq!(g(&[(4, 3), (6, 2)]).to_string(), "(Z/2)^2 ⊕ Z/4 ⊕ (Z/12)^2");
    }

    #[test]
    fn large_multiplicities_stay_compact() {
        let grp = g(&[(2, 1_000_000_000), (3, 999_999_999), (0, 5)]);
        assert_eq!(grp.to_string(), "Z/2 ⊕ (Z/6)^999999999 ⊕ Z^5");
        assert_eq!(grp.torsion_count(), 1_000_000_000);
    }

    #[test]
    fn json_roundtrip() {
        let grp = g(&[(3, 2), (14364, 1), (2, 10), (342, 10), (0, 1)]);
        let json = serde_json::to_string(&grp).unwrap();
        assert!(json.starts_with("{\"invariant_factors\":[2,"));
        assert!(json.ends_with("],\"free_rank\":1}"));
        let back: AbelianGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back, grp);
        let huge: AbelianGroup = serde_json::from_str(
            r#"{"invariant_factors":[123456789012345678901234567890],"free_rank":0}"#,
        )
        .unwrap();
        assert_eq!(huge.to_string(), "Z/123456789012345678901234567890");
    }

    #[test]
    fn direct_sum_recanonicalizes() {
        assert_eq!(
            g(&[(2, 1)]).direct_sum(&g(&[(3, 1), (0, 1)])),
            g(&[(6, 1), (0, 1)])
        );
    }
}
