//! Finite-order characters of the free abelian group Z^r.
//!
//! A character is a point of the torus with rational coordinates
//! `kappa in [0,1)^r`, identified with the homomorphism sending the i-th
//! generator to `exp(2 pi i kappa_i)`.  Its order is the least common
//! multiple of the coordinate denominators, and monomials evaluate exactly
//! into the cyclotomic field of that order.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::cyclotomic::Cyclotomic;

/// Componentwise fractional part: each coordinate is reduced into `[0, 1)`.
pub fn fractional_part_vector(v: &[BigRational]) -> Vec<BigRational> {
    v.iter().map(|q| q - q.floor()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    kappas: Vec<BigRational>,
}

impl Character {
    /// Build a character from torus coordinates; coordinates are reduced
    /// modulo 1 into `[0, 1)`.
    pub fn new(kappas: Vec<BigRational>) -> Self {
        Character { kappas: fractional_part_vector(&kappas) }
    }

    pub fn identity(r: usize) -> Self {
        Character { kappas: vec![BigRational::zero(); r] }
    }

    pub fn dim(&self) -> usize {
        self.kappas.len()
    }

    pub fn coordinates(&self) -> &[BigRational] {
        &self.kappas
    }

    pub fn is_identity(&self) -> bool {
        self.kappas.iter().all(|q| q.is_zero())
    }

    /// Compact comma-separated coordinate form, the inverse of [`Character::parse`].
    pub fn coordinate_string(&self) -> String {
        self.kappas
            .iter()
            .map(|q| {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Multiplicative order: the least common multiple of the coordinate
    /// denominators (1 for the identity).
    pub fn order(&self) -> u64 {
        let mut m = BigInt::one();
        for q in &self.kappas {
            m = m.lcm(q.denom());
        }
        m.to_u64().expect("character order exceeds u64")
    }

    /// Exact value of the monomial `t^a` at this character: a root of unity
    /// in the cyclotomic field of the character's order.
    pub fn eval_monomial(&self, exp: &[i64]) -> Cyclotomic {
        assert_eq!(exp.len(), self.kappas.len(), "exponent dimension mismatch");
        let m = self.order();
        let mb = BigInt::from(m);
        let mut k = BigInt::zero();
        for (a, q) in exp.iter().zip(&self.kappas) {
            // q * m is an integer because m is a common denominator
            let scaled = (q * &mb).to_integer();
            k += BigInt::from(*a) * scaled;
        }
        let k = k.mod_floor(&mb).to_u64().expect("reduced exponent fits in u64");
        Cyclotomic::root_power(m, k)
    }

    /// The rational number `sum_i w_i * kappa_i`.
    pub fn weighted_sum(&self, weights: &[i64]) -> BigRational {
        assert_eq!(weights.len(), self.kappas.len(), "weight dimension mismatch");
        weights
            .iter()
            .zip(&self.kappas)
            .fold(BigRational::zero(), |s, (w, q)| s + q * BigRational::from_integer((*w).into()))
    }

    /// Whether `sum_i w_i * kappa_i` is an integer, i.e. the character kills
    /// the element with exponent vector `weights`.
    pub fn satisfies_relation(&self, weights: &[i64]) -> bool {
        self.weighted_sum(weights).denom().is_one()
    }

    /// Parse a comma-separated coordinate list such as `"1/3,2/3,0"`.
    /// Coordinates outside `[0, 1)` are reduced modulo 1.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.iter().any(|p| p.trim().is_empty()) {
            return Err(Error::Parse(format!("empty coordinate in character '{s}'")));
        }
        let mut kappas = Vec::with_capacity(parts.len());
        for p in parts {
            let q: BigRational = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid rational coordinate '{}'", p.trim())))?;
            kappas.push(q);
        }
        Ok(Character::new(kappas))
    }
}

impl std::fmt::Display for Character {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.kappas.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if q.denom().is_one() {
                write!(f, "{}", q.numer())?;
            } else {
                write!(f, "{}/{}", q.numer(), q.denom())?;
            }
        }
        write!(f, ")")
    }
}

/// All characters with coordinates in `(1/m) Z / Z`, in lexicographic order;
/// `m^r` entries.
pub fn full_grid(r: usize, m: u64) -> Vec<Character> {
    assert!(m >= 1);
    let mut out = Vec::with_capacity((m as usize).pow(r as u32));
    let mut idx = vec![0u64; r];
    loop {
        out.push(Character::new(
            idx.iter()
                .map(|&k| BigRational::new(BigInt::from(k), BigInt::from(m)))
                .collect(),
        ));
        // odometer increment, last coordinate fastest
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < m {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// All characters of `Z^r` whose order is at most `bound`, in lexicographic
/// order: the union of the full grids over the divisibility-maximal moduli
/// in `1..=bound` (those greater than `bound / 2`), with duplicates removed.
pub fn characters_of_order_at_most(r: usize, bound: u64) -> Vec<Character> {
    assert!(bound >= 1);
    let mut set: BTreeSet<Character> = BTreeSet::new();
    for m in (bound / 2 + 1)..=bound {
        for chi in full_grid(r, m) {
            set.insert(chi);
        }
    }
    set.into_iter().collect()
}
