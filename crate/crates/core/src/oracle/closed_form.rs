//! Closed-form diagonal forms for Johnson and Kneser graphs, evaluated from
//! their tables row by row, case splits and gcd expressions included.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{build_report, millis, VerificationReport};
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::linalg::AbelianGroup;
use crate::scheme::{SchemeElement, SchemeParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Laplacian of `J(n,2)`, `n ≥ 5`.
    JohnsonK2Laplacian,
    /// Laplacian of `J(n,3)`, `n ≥ 7`.
    JohnsonK3Laplacian,
    /// Adjacency of `J(n,2)`, `n ≥ 5`.
    JohnsonK2Adjacency,
    /// Adjacency of `J(n,3)`, `n ≥ 7`.
    JohnsonK3Adjacency,
    /// Adjacency of the Kneser graph `K(n,k)`, `n ≥ 3k − 1`.
    KneserAdjacency { k: u32 },
    /// Laplacian of `K(n,2)`, `n ≥ 5`.
    KneserK2Laplacian,
    /// Laplacian of `K(n,3)`, `n ≥ 7`.
    KneserK3Laplacian,
    /// `A_{n,2,3,1}`, `n ≥ 5`.
    NonSquare231,
}

impl Theorem {
    /// Every theorem with `k ≤ 3`, in a fixed order.
    pub fn catalog() -> Vec<Theorem> {
        use Theorem::*;
        vec![
            JohnsonK2Laplacian,
            JohnsonK3Laplacian,
            JohnsonK2Adjacency,
            JohnsonK3Adjacency,
            KneserAdjacency { k: 1 },
            KneserAdjacency { k: 2 },
            KneserAdjacency { k: 3 },
            KneserK2Laplacian,
            KneserK3Laplacian,
            NonSquare231,
        ]
    }

    pub fn id(&self) -> String {
        match self {
            Theorem::JohnsonK2Laplacian => "johnson_k2_laplacian".into(),
            Theorem::JohnsonK3Laplacian => "johnson_k3_laplacian".into(),
            Theorem::JohnsonK2Adjacency => "johnson_k2_adjacency".into(),
            Theorem::JohnsonK3Adjacency => "johnson_k3_adjacency".into(),
            Theorem::KneserAdjacency { k } => format!("kneser_adjacency_k{k}"),
            Theorem::KneserK2Laplacian => "kneser_k2_laplacian".into(),
            Theorem::KneserK3Laplacian => "kneser_k3_laplacian".into(),
            Theorem::NonSquare231 => "nonsquare_231".into(),
        }
    }

    /// Smallest `n` the theorem covers.
    pub fn min_n(&self) -> u32 {
        match self {
            Theorem::JohnsonK2Laplacian
            | Theorem::JohnsonK2Adjacency
            | Theorem::KneserK2Laplacian
            | Theorem::NonSquare231 => 5,
            Theorem::JohnsonK3Laplacian
            | Theorem::JohnsonK3Adjacency
            | Theorem::KneserK3Laplacian => 7,
            Theorem::KneserAdjacency { k } => (3 * k).saturating_sub(1),
        }
    }

    /// The scheme element the theorem describes.
    pub fn element(&self, n: u32) -> Result<SchemeElement> {
        let zero = BigInt::zero();
        match *self {
            Theorem::JohnsonK2Laplacian => SchemeElement::laplacian(n, 2, 1),
            Theorem::JohnsonK3Laplacian => SchemeElement::laplacian(n, 3, 2),
            Theorem::JohnsonK2Adjacency => {
                SchemeElement::intersection(SchemeParams::square(n, 2, 1)?, zero)
            }
            Theorem::JohnsonK3Adjacency => {
                SchemeElement::intersection(SchemeParams::square(n, 3, 2)?, zero)
            }
            Theorem::KneserAdjacency { k } => {
                SchemeElement::intersection(SchemeParams::square(n, k, 0)?, zero)
            }
            Theorem::KneserK2Laplacian => SchemeElement::laplacian(n, 2, 0),
            Theorem::KneserK3Laplacian => SchemeElement::laplacian(n, 3, 0),
            Theorem::NonSquare231 => {
                SchemeElement::intersection(SchemeParams::new(n, 2, 3, 1)?, zero)
            }
        }
    }

    /// The group read off the theorem's table at `n`.
    pub fn closed_form(&self, n: u32) -> Result<AbelianGroup> {
        if n < self.min_n() {
            return Err(Error::params(format!(
                "{} needs n >= {}, got n={n}",
                self.id(),
                self.min_n()
            )));
        }
        let t = Table {
            theorem: *self,
            rows: Vec::new(),
        };
        let rows = match self {
            Theorem::JohnsonK2Laplacian => johnson_k2_laplacian(t, n),
            Theorem::JohnsonK3Laplacian => johnson_k3_laplacian(t, n),
            Theorem::JohnsonK2Adjacency => johnson_k2_adjacency(t, n),
            Theorem::JohnsonK3Adjacency => johnson_k3_adjacency(t, n),
            Theorem::KneserAdjacency { k } => kneser_adjacency(t, n, *k),
            Theorem::KneserK2Laplacian => kneser_k2_laplacian(t, n),
            Theorem::KneserK3Laplacian => kneser_k3_laplacian(t, n),
            Theorem::NonSquare231 => nonsquare_231(t, n),
        }?;
        let e = self.element(n)?;
        let listed: u64 = rows.iter().map(|(_, m)| m).sum();
        if listed != e.rows() {
            return Err(Error::invariant(
                &self.id(),
                format!(
                    "table lists {listed} entries for a matrix with {} rows",
                    e.rows()
                ),
            ));
        }
        // The cokernel of a wide matrix gains the surplus columns as free rank.
        let surplus = (BigInt::zero(), e.cols() - e.rows());
        Ok(AbelianGroup::from_diagonal(
            rows.into_iter().chain([surplus]),
        ))
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(digits) = s.strip_prefix("kneser_adjacency_k") {
            return match digits.parse::<u32>() {
                Ok(k) if k >= 1 && k.to_string() == digits => Ok(Theorem::KneserAdjacency { k }),
                _ => Err(Error::UnknownTheorem(s.to_string())),
            };
        }
        Theorem::catalog()
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Table rows as `(entry, multiplicity)`, with checked exact division.
struct Table {
    theorem: Theorem,
    rows: Vec<(BigInt, u64)>,
}

impl Table {
    fn row(&mut self, entry: BigInt, multiplicity: BigInt) -> Result<()> {
        let m = u64::try_from(&multiplicity).map_err(|_| {
            Error::invariant(
                &self.theorem.id(),
                format!("multiplicity {multiplicity} of entry {entry} is not a count"),
            )
        })?;
        self.rows.push((entry, m));
        Ok(())
    }

    fn div(&self, num: BigInt, den: impl Into<BigInt>) -> Result<BigInt> {
        let den = den.into();
        let (q, r) = if den.is_zero() {
            (BigInt::zero(), BigInt::from(1))
        } else {
            num.div_rem(&den)
        };
        if !r.is_zero() {
            return Err(Error::invariant(
                &self.theorem.id(),
                format!("{num} is not divisible by {den}"),
            ));
        }
        Ok(q)
    }

    fn done(self) -> Result<Vec<(BigInt, u64)>> {
        Ok(self.rows)
    }
}

fn z(v: i64) -> BigInt {
    BigInt::from(v)
}

fn gcd_all(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}

fn c(n: i64, k: i64) -> BigInt {
    binomial(n, k)
}

fn johnson_k2_laplacian(mut t: Table, n: u32) -> Result<Vec<(BigInt, u64)>> {
    let n = n as i64;
    t.row(z(2 * (n - 1)), c(n, 2) - 2 * n + 1)?;
    t.row(z(2 * (n - 1) * n), z(n - 2))?;
    t.row(z(1), z(n - 2))?;
    if n % 2 == 1 {
        t.row(z(1), z(1))?;
        t.row(z(4), z(1))?;
    } else {
        t.row(z(2), z(2))?;
    }
    t.row(z(0), z(1))?;
    t.done()
}

fn johnson_k3_laplacian(mut t: Table, n: u32) -> Result<Vec<(BigInt, u64)>> {
    let n = n as i64;
    t.row(z(3 * (n - 2)), c(n, 3) - 2 * c(n, 2) + n)?;
    t.row(z(6 * (n - 2) * (n - 1)), c(n, 2) - 2 * n + 1)?;
    t.row(z(1), c(n, 2) - 2 * n + 2)?;
    if n % 2 == 1 {
        t.row(z(6 * (n - 2) * (n - 1) * n), z(n - 2))?;
        t.row(z(1), z(2 * (n - 2)))?;
    } else {
        let e = t.div(z(3 * (n - 2) * (n - 1) * n), 2)?;
        t.row(e, z(n - 2))?;
        t.row(z(2), z(2 * (n - 2)))?;
    }
    if n % 3 == 2 {
        t.row(z(36), z(1))?;
        t.row(z(1), z(1))?;
    } else {
        t.row(z(12), z(1))?;
        t.row(z(3), z(1))?;
    }
    t.row(z(0), z(1))?;
    t.done()
}

fn johnson_k2_adjacency(mut t: Table, n: u32) -> Result<Vec<(BigInt, u64)>> {
    let n = n as i64;
    let m = t.div(z((n - 2) * (n - 3)), 2)?;
    t.row(z(2), m)?;
    t.row(z((n - 2) * (n - 4)), z(1))?;
    t.row(z(2 * (n - 4)), z(n - 2))?;
    t.row(z(1), z(n - 2))?;
    t.done()
}

/// `X = gcd(3(n−3)(2n−9), (n−7)(n−3)(2n−9), 12, 2n(n−7), 3(n−7))` from the
/// `k = 3` Johnson adjacency table.
pub fn johnson_k3_adjacency_x(n: u32) -> BigInt {
    let n = n as i64;
    gcd_all(&[
        z(3 * (n - 3) * (2 * n - 9)),
        z((n - 7) * (n - 3) * (2 * n - 9)),
        z(12),
        z(2 * n * (n - 7)),
        z(3 * (n - 7)),
    ])
}

fn johnson_k3_adjacency(mut t: Table, n: u32) -> Result<Vec<(BigInt, u64)>> {
    let x = johnson_k3_adjacency_x(n);
    let n = n as i64;
    t.row(z(3 * (n - 7)), c(n, 2) - 2 * n + 1)?;
    t.row(z(3 * (2 * n - 9) * (n - 7)), z(n - 2))?;
    t.row(z(3), c(n, 3) - 2 * c(n, 2) + n + 1)?;
    let big = t.div(z(3 * (n - 3) * (n - 7) * (2 * n - 9)), x.clone())?;
    t.row(big, z(1))?;
    t.row(x, z(1))?;
    t.row(z(1), c(n, 2) - 2)?;
    t.done()
}

fn kneser_adjacency(mut t: Table, n: u32, k: u32) -> Result<Vec<(BigInt, u64)>> {
    let (n, k) = (n as i64, k as i64);
    for j in 0..=k {
        t.row(c(n - k - j, k - j), c(n, j) - c(n, j - 1))?;
    }
    t.done()
}

fn kneser_k2_laplacian(mut t: Table, n: u32) -> Result<Vec<(BigInt, u64)>> {
    let n = n as i64;
    let e2 = t.div(z((n - 1) * (n - 4)), 2)?;
    t.row(e2, c(n, 2) - 2 * n + 1)?;
    let e12 = t.div(z((n - 1) * (n - 3) * (n - 4) * n), 4)?;
    t.row(e12, z(n - 2))?;
    t.row(z(1), z(n - 1))?;
    t.row(c(n - 3, 2), z(1))?;
    t.row(z(0), z(1))?;
    t.done()
}

fn kneser_k3_laplacian(mut t: Table, n: u32) -> Result<Vec<(BigInt, u64)>> {
    let n = z(n as i64);
    let q = &n * &n - 10 * &n + 27;
    let x = gcd_all(&[
        t.div((&n - 4) * (&n - 5) * &n, 3)?,
        t.div((&n * &n - 7 * &n + 18) * (&n - 5), 6)?,
        t.div(&q * (&n - 2) * (&n - 4) * (&n - 5) * &n, 36)?,
    ]);
    let y = gcd_all(&[
        &n - 5,
        t.div(3 * (&n - 4) * (&n - 5), 2)?,
        t.div((&n - 1) * (&n - 3) * (&n - 5), 3)?,
    ]);
    let ni = i64::try_from(&n).expect("small n");
    let e3 = t.div(&q * (&n - 2), 6)?;
    t.row(e3, c(ni, 3) - 2 * c(ni, 2) + &n)?;
    let e23 = t.div(&q * (&n - 1) * (&n - 2) * (&n - 5) * (&n - 6), 36)?;
    t.row(e23, c(ni, 2) - 2 * &n + 1)?;
    t.row(z(1), c(ni, 2) - &n)?;
    let ex = t.div(
        &q * (&n - 1) * (&n - 2) * (&n - 4) * (&n - 5) * (&n - 5) * (&n - 6) * &n,
        216,
    )?;
    let ex = t.div(ex, x.clone())?;
    t.row(ex, &n - 2)?;
    t.row(x, &n - 2)?;
    let ey = t.div(&q * (&n - 4) * (&n - 5) * (&n - 5) * (&n - 6), 36)?;
    let ey = t.div(ey, y.clone())?;
    t.row(ey, z(1))?;
    t.row(y, z(1))?;
    t.row(z(0), z(1))?;
    t.done()
}

fn nonsquare_231(mut t: Table, n: u32) -> Result<Vec<(BigInt, u64)>> {
    let n = n as i64;
    t.row(z(2), c(n, 2) - 2 * n + 1)?;
    t.row(z(2 * (n - 6)), z(n - 2))?;
    t.row(z(1), z(n - 1))?;
    if n % 3 == 0 {
        t.row(z((n - 3) * (n - 6)), z(1))?;
        t.row(z(6), z(1))?;
    } else {
        t.row(z(3 * (n - 3) * (n - 6)), z(1))?;
        t.row(z(2), z(1))?;
    }
    t.done()
}

/// Evaluates the theorem's table at `n` and compares it with the structured
/// pipeline and, when `C(n,k_c) ≤ cap`, the brute-force oracle.
pub fn verify_closed_form(theorem: Theorem, n: u32, cap: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let group = theorem.closed_form(n)?;
    let ms = millis(start);
    build_report(
        &theorem.element(n)?,
        Some(theorem.id()),
        Some((group, ms)),
        cap,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn ids_round_trip() {
        for t in Theorem::catalog() {
            assert_eq!(t.id().parse::<Theorem>().unwrap(), t);
        }
        assert_eq!(
            "kneser_adjacency_k4".parse::<Theorem>().unwrap(),
            Theorem::KneserAdjacency { k: 4 }
        );
        for bad in ["johnson", "kneser_adjacency_k0", "kneser_adjacency_k01", ""] {
            assert!(matches!(
                bad.parse::<Theorem>(),
                Err(Error::UnknownTheorem(_))
            ));
        }
    }

    #[test]
    fn johnson_k2_laplacian_at_seven() {
        let g = Theorem::JohnsonK2Laplacian.closed_form(7).unwrap();
        let expected = AbelianGroup::from_diagonal([
            (b(12), 8),
            (b(84), 5),
            (b(1), 5),
            (b(1), 1),
            (b(4), 1),
            (b(0), 1),
        ]);
        assert_eq!(g, expected);
        let r = verify_closed_form(Theorem::JohnsonK2Laplacian, 7, 3000).unwrap();
        assert!(r.agrees(), "{}", r.to_json(false));
        assert_eq!(r.agreement.closed_form_oracle, Some(true));
    }

    #[test]
    fn kneser_k2_laplacian_contains_binomial() {
        let rows = kneser_k2_laplacian(
            Table {
                theorem: Theorem::KneserK2Laplacian,
                rows: Vec::new(),
            },
            9,
        )
        .unwrap();
        assert!(rows.contains(&(b(15), 1)));
        assert_eq!(
            Theorem::KneserK2Laplacian
                .closed_form(9)
                .unwrap()
                .free_rank(),
            1
        );
    }

    #[test]
    fn nonsquare_branches() {
        let t = || Table {
            theorem: Theorem::NonSquare231,
            rows: Vec::new(),
        };
        let nine = nonsquare_231(t(), 9).unwrap();
        assert!(nine.contains(&(b(18), 1)) && nine.contains(&(b(6), 1)));
        let ten = nonsquare_231(t(), 10).unwrap();
        assert!(ten.contains(&(b(84), 1)) && ten.contains(&(b(2), 1)));
        let g = Theorem::NonSquare231.closed_form(9).unwrap();
        assert_eq!(g.free_rank(), 84 - 36);
    }

    #[test]
    fn below_bound_is_rejected() {
        assert!(Theorem::JohnsonK3Laplacian.closed_form(6).is_err());
        assert!(verify_closed_form(Theorem::KneserAdjacency { k: 3 }, 7, 100).is_err());
    }

    #[test]
    fn x_depends_on_n_mod_12() {
        for n in 7..=100u32 {
            if n + 12 <= 100 {
                assert_eq!(
                    johnson_k3_adjacency_x(n),
                    johnson_k3_adjacency_x(n + 12),
                    "n={n}"
                );
            }
        }
    }
}
