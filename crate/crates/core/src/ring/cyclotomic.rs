//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! An element is stored by its coordinates in the power basis
//! `1, x, ..., x^{phi(m)-1}` of `Q[x]/(Phi_m(x))`, where `Phi_m` is the m-th
//! cyclotomic polynomial and `x` stands for the primitive root
//! `zeta_m = exp(2 pi i / m)`.  Elements of different conductors are combined
//! by embedding both into the field of the least common multiple.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Euler's totient by trial-division factorization.
pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1);
    let mut n = m;
    let mut result = m;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if n > 1 {
        result = result / n * (n - 1);
    }
    result
}

/// Coefficients (constant term first) of the m-th cyclotomic polynomial,
/// computed by dividing `x^m - 1` by the cyclotomic polynomials of the
/// proper divisors of m.  Results are memoized process-wide.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return Arc::clone(hit);
    }
    // x^m - 1
    let mut num = vec![BigInt::zero(); (m + 1) as usize];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = divide_exact(&num, &phi_d);
        }
    }
    let result = Arc::new(num);
    cache
        .lock()
        .unwrap()
        .insert(m, Arc::clone(&result));
    result
}

/// Exact division of integer polynomials (constant term first); panics if
/// the division leaves a remainder, which cannot happen for cyclotomic
/// factors of `x^m - 1`.
fn divide_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    assert!(dn >= dd);
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for i in 0..=dd {
            let delta = &den[i] * &c;
            rem[k + i] -= delta;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division left a remainder");
    quot
}

#[derive(Debug, Clone)]
pub struct Cyclotomic {
    conductor: u64,
    /// Coordinates in the power basis of Q(zeta_m); length phi(m).
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(m: u64) -> Self {
        assert!(m >= 1);
        Cyclotomic { conductor: m, coeffs: vec![BigRational::zero(); euler_phi(m) as usize] }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational_in(m, BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_rational_in(1, q)
    }

    pub fn from_rational_in(m: u64, q: BigRational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = q;
        z
    }

    /// `zeta_m^k`, reduced into the power basis.
    pub fn root_power(m: u64, k: u64) -> Self {
        let k = (k % m) as usize;
        if let Some(t) = power_table(m) {
            let coeffs = t.rows[k]
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect();
            return Cyclotomic { conductor: m, coeffs };
        }
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        Self::reduce(m, poly)
    }

    /// Reduce an arbitrary-degree polynomial in zeta_m into the power basis
    /// by long division modulo the (monic) m-th cyclotomic polynomial.
    fn reduce(m: u64, mut poly: Vec<BigRational>) -> Self {
        let phi = euler_phi(m) as usize;
        let modulus = cyclotomic_polynomial(m);
        while poly.len() > phi {
            let top = poly.len() - 1;
            let c = poly.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            // x^top = x^{top-phi} * (x^phi - Phi_m(x) + leading-term cancel)
            let shift = top - phi;
            for i in 0..phi {
                let delta = BigRational::from_integer(modulus[i].clone()) * &c;
                poly[shift + i] -= delta;
            }
        }
        poly.resize(phi, BigRational::zero());
        Cyclotomic { conductor: m, coeffs: poly }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Some(q) when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Image under the field embedding Q(zeta_m) -> Q(zeta_n) for m | n,
    /// sending zeta_m to zeta_n^{n/m}.
    pub fn embed(&self, n: u64) -> Self {
        assert!(n % self.conductor == 0, "no embedding: {} does not divide {}", self.conductor, n);
        if n == self.conductor {
            return self.clone();
        }
        let step = (n / self.conductor) as usize;
        let deg = (self.coeffs.len() - 1) * step;
        let mut poly = vec![BigRational::zero(); deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * step] = c.clone();
            }
        }
        Self::reduce(n, poly)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let n = a.conductor.lcm(&b.conductor);
        (a.embed(n), b.embed(n))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.conductor == other.conductor {
            let mut a = self.clone();
            for (x, y) in a.coeffs.iter_mut().zip(&other.coeffs) {
                *x += y;
            }
            return a;
        }
        let (mut a, b) = Self::common(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.conductor == other.conductor {
            return Self::mul_same(self, other);
        }
        let (a, b) = Self::common(self, other);
        Self::mul_same(&a, &b)
    }

    fn mul_same(a: &Self, b: &Self) -> Self {
        let mut poly = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                poly[i + j] += x * y;
            }
        }
        Self::reduce(a.conductor, poly)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= q;
        }
        out
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// against the cyclotomic modulus.  None for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Self::from_rational_in(self.conductor, q.recip()));
        }
        let m = self.conductor;
        let modulus: Vec<BigRational> = cyclotomic_polynomial(m)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // Extended Euclid: maintain r = s * self (mod modulus).
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0 = vec![];
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant gcd (modulus is irreducible over Q).
        debug_assert_eq!(r0.len(), 1, "cyclotomic modulus must be coprime to nonzero element");
        let lead = r0[0].clone();
        let inv: Vec<BigRational> = s0.iter().map(|c| c / &lead).collect();
        Some(Self::reduce(m, inv))
    }

    /// Coordinates in the power basis (length phi(conductor)).
    pub fn coordinates(&self) -> &[BigRational] {
        &self.coeffs
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while rem.len() >= b.len() {
        let k = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        quot[k] = c.clone();
        for i in 0..b.len() {
            let delta = &b[i] * &c;
            rem[k + i] -= delta;
        }
        rem = trim(rem);
        if rem.is_empty() {
            break;
        }
        if rem.len() < b.len() {
            break;
        }
    }
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl std::fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let m = self.conductor;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let base = if i == 0 {
                String::new()
            } else if i == 1 {
                format!("z{m}")
            } else {
                format!("z{m}^{i}")
            };
            if base.is_empty() {
                if abs.denom().is_one() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "{}/{}", abs.numer(), abs.denom())?;
                }
            } else if abs.is_one() {
                write!(f, "{base}")?;
            } else if abs.denom().is_one() {
                write!(f, "{}*{base}", abs.numer())?;
            } else {
                write!(f, "{}/{}*{base}", abs.numer(), abs.denom())?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Matrix rank
// ---------------------------------------------------------------------------

/// Power-basis reduction data for one conductor: `rows[e]` holds the
/// coordinates of `x^e` in the basis `1, x, ..., x^{phi-1}` of
/// `Z[x]/(Phi_n(x))`, for every exponent `e` in `0..n`, together with the
/// nontrivial units of `Z/n` (the Galois group minus the identity).  All
/// table entries fit in `i64` for any conductor arising from finite-order
/// characters; `None` signals an overflowing table (then callers fall back to
/// field arithmetic).
struct PowerTable {
    n: u64,
    phi: usize,
    rows: Vec<Vec<i64>>,
    units_nontrivial: Vec<u64>,
}

fn power_table(n: u64) -> Option<Arc<PowerTable>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Option<Arc<PowerTable>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let built = build_power_table(n).map(Arc::new);
    cache.lock().unwrap().insert(n, built.clone());
    built
}

fn build_power_table(n: u64) -> Option<PowerTable> {
    let phi = euler_phi(n) as usize;
    let modulus = cyclotomic_polynomial(n);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n as usize);
    for e in 0..n as usize {
        if e < phi {
            let mut row = vec![BigInt::zero(); phi];
            row[e] = BigInt::one();
            rows.push(row);
        } else {
            // x^e = x * x^{e-1}, with the overflowing top term rewritten via
            // x^phi = -(Phi_n - x^phi)
            let prev = &rows[e - 1];
            let mut row = vec![BigInt::zero(); phi];
            for i in 0..phi - 1 {
                row[i + 1] = prev[i].clone();
            }
            let top = prev[phi - 1].clone();
            if !top.is_zero() {
                for i in 0..phi {
                    row[i] -= &top * &modulus[i];
                }
            }
            rows.push(row);
        }
    }
    let rows: Option<Vec<Vec<i64>>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|c| i64::try_from(c).ok()).collect())
        .collect();
    let units_nontrivial = (2..n).filter(|j| j.gcd(&n) == 1).collect();
    Some(PowerTable { n, phi, rows: rows?, units_nontrivial })
}

/// Decide whether an integer combination of roots of unity vanishes:
/// `slots[e]` accumulates the coefficient of `zeta_n^e`.  Entirely integer
/// arithmetic; `None` when the reduction table is unavailable or a checked
/// operation overflows.
pub(crate) fn residue_class_is_zero(slots: Vec<i128>, n: u64) -> Option<bool> {
    let t = power_table(n)?;
    let reduced = reduce_slots(slots, &t)?;
    Some(reduced.iter().all(|c| *c == 0))
}

/// Coefficient domains usable in the integer Bareiss elimination: `i128`
/// (fast, overflow-checked) and `BigInt` (checked operations never fail).
trait BareissCoeff:
    Clone
    + Eq
    + Zero
    + One
    + num_traits::CheckedAdd
    + num_traits::CheckedSub
    + num_traits::CheckedMul
    + From<i64>
    + std::ops::Div<Output = Self>
    + std::ops::Rem<Output = Self>
{
}

impl BareissCoeff for i128 {}
impl BareissCoeff for BigInt {}

fn poly_is_zero_t<T: BareissCoeff>(p: &[T]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Fold exponent slots `phi..` of a length-`n` accumulation buffer into the
/// power basis through the reduction table.
fn reduce_slots<T: BareissCoeff>(mut slots: Vec<T>, t: &PowerTable) -> Option<Vec<T>> {
    for e in t.phi..slots.len() {
        if slots[e].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut slots[e], T::zero());
        for (k, &m) in t.rows[e].iter().enumerate() {
            if m == 0 {
                continue;
            }
            let delta = c.checked_mul(&T::from(m))?;
            slots[k] = slots[k].checked_add(&delta)?;
        }
    }
    slots.truncate(t.phi);
    Some(slots)
}

/// Product in `Z[x]/(Phi_n)`: cyclic convolution modulo `x^n - 1` followed by
/// power-basis reduction (valid because `Phi_n` divides `x^n - 1`).
fn poly_mul_mod<T: BareissCoeff>(a: &[T], b: &[T], t: &PowerTable) -> Option<Vec<T>> {
    let n = t.n as usize;
    let mut slots = vec![T::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let k = (i + j) % n;
            let prod = x.checked_mul(y)?;
            slots[k] = slots[k].checked_add(&prod)?;
        }
    }
    reduce_slots(slots, t)
}

fn poly_sub_t<T: BareissCoeff>(mut a: Vec<T>, b: &[T]) -> Option<Vec<T>> {
    for (x, y) in a.iter_mut().zip(b) {
        *x = x.checked_sub(y)?;
    }
    Some(a)
}

/// Galois conjugate `sigma_j` (sending `x` to `x^j`, `j` a unit mod `n`).
fn conjugate_t<T: BareissCoeff>(p: &[T], j: u64, t: &PowerTable) -> Option<Vec<T>> {
    let mut slots = vec![T::zero(); t.n as usize];
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = (i as u64 * j % t.n) as usize;
        slots[k] = slots[k].checked_add(c)?;
    }
    reduce_slots(slots, t)
}

/// Exact division by the previous pivot `p`, given the product of its
/// nontrivial Galois conjugates and its integer norm: `a / p = a * conj / N(p)`
/// coefficientwise, exact because the power basis is an integral basis.
fn exact_div_t<T: BareissCoeff>(
    num: Vec<T>,
    conj: &[T],
    norm: &T,
    trivial: bool,
    t: &PowerTable,
) -> Option<Vec<T>> {
    if trivial {
        return Some(num);
    }
    let prod = poly_mul_mod(&num, conj, t)?;
    let mut out = Vec::with_capacity(prod.len());
    for c in prod {
        if !(c.clone() % norm.clone()).is_zero() {
            return None;
        }
        out.push(c / norm.clone());
    }
    Some(out)
}

/// Fraction-free Bareiss elimination over `Z[zeta_n]` on power-basis
/// coefficient vectors.  Returns `None` when a checked operation overflows or
/// a defensive exactness check fails (callers then retry in a wider domain).
fn bareiss_rank<T: BareissCoeff>(mut m: Vec<Vec<Vec<T>>>, t: &PowerTable) -> Option<usize> {
    let nrows = m.len();
    if nrows == 0 {
        return Some(0);
    }
    let ncols = m[0].len();
    let one_poly = {
        let mut p = vec![T::zero(); t.phi];
        p[0] = T::one();
        p
    };
    let mut prev_conj = one_poly.clone();
    let mut prev_norm = T::one();
    let mut prev_trivial = true;
    let mut row = 0usize;
    let mut rank = 0usize;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !poly_is_zero_t(&m[r][col])) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col].clone();
        for r in row + 1..nrows {
            let lead = std::mem::replace(&mut m[r][col], vec![T::zero(); t.phi]);
            let lead_zero = poly_is_zero_t(&lead);
            for c in col + 1..ncols {
                let mut num = poly_mul_mod(&pivot, &m[r][c], t)?;
                if !lead_zero && !poly_is_zero_t(&m[row][c]) {
                    let s = poly_mul_mod(&lead, &m[row][c], t)?;
                    num = poly_sub_t(num, &s)?;
                }
                m[r][c] = exact_div_t(num, &prev_conj, &prev_norm, prev_trivial, t)?;
            }
        }
        // the pivot becomes the divisor of the next step
        let mut conj = one_poly.clone();
        for &u in &t.units_nontrivial {
            let cj = conjugate_t(&pivot, u, t)?;
            conj = poly_mul_mod(&conj, &cj, t)?;
        }
        let norm_poly = poly_mul_mod(&pivot, &conj, t)?;
        if norm_poly[1..].iter().any(|c| !c.is_zero()) || norm_poly[0].is_zero() {
            return None; // norm must be a nonzero integer
        }
        prev_norm = norm_poly.into_iter().next().unwrap();
        prev_trivial = prev_norm.is_one() && conj == one_poly;
        prev_conj = conj;
        row += 1;
        rank += 1;
    }
    Some(rank)
}

/// Embed all entries into the lcm conductor and clear row denominators,
/// yielding integer power-basis coefficient vectors (row scaling by a
/// positive integer preserves rank).
fn integerize(rows: &[Vec<Cyclotomic>], lcm: u64) -> Vec<Vec<Vec<BigInt>>> {
    rows.iter()
        .map(|r| {
            let embedded: Vec<Cyclotomic> = r.iter().map(|e| e.embed(lcm)).collect();
            let mut scale = BigInt::one();
            for e in &embedded {
                for c in &e.coeffs {
                    scale = scale.lcm(c.denom());
                }
            }
            embedded
                .into_iter()
                .map(|e| {
                    e.coeffs
                        .iter()
                        .map(|c| c.numer() * (&scale / c.denom()))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Rank of a matrix over the cyclotomic numbers.  Rows may mix conductors;
/// they are embedded into the least common multiple once up front.  The
/// computation runs as integer fraction-free elimination in `Z[zeta]`
/// (machine-word arithmetic with overflow checks, widening to `BigInt` when
/// needed) and falls back to field Gaussian elimination in the rare cases the
/// integer path declines.
pub fn rank(rows: &[Vec<Cyclotomic>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut lcm = 1u64;
    for r in rows {
        assert_eq!(r.len(), ncols, "ragged matrix");
        for e in r {
            lcm = lcm.lcm(&e.conductor());
        }
    }
    if ncols == 0 {
        return 0;
    }
    if let Some(t) = power_table(lcm) {
        let big = integerize(rows, lcm);
        let small: Option<Vec<Vec<Vec<i128>>>> = big
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| e.iter().map(|c| i128::try_from(c).ok()).collect())
                    .collect()
            })
            .collect();
        if let Some(small) = small {
            if let Some(rk) = bareiss_rank::<i128>(small, &t) {
                return rk;
            }
        }
        if let Some(rk) = bareiss_rank::<BigInt>(big, &t) {
            return rk;
        }
    }
    rank_field_gauss(rows, lcm)
}

/// Reference rank: Gaussian elimination over the field `Q(zeta_lcm)` with
/// first-nonzero pivoting.  Always applicable; used as the fallback for the
/// integer path and as the cross-check oracle in tests.
fn rank_field_gauss(rows: &[Vec<Cyclotomic>], lcm: u64) -> usize {
    let ncols = rows[0].len();
    let mut m: Vec<Vec<Cyclotomic>> = rows
        .iter()
        .map(|r| r.iter().map(|e| e.embed(lcm)).collect())
        .collect();
    let nrows = m.len();
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..ncols {
        // find pivot
        let mut piv = None;
        for r in row..nrows {
            if !m[r][col].is_zero() {
                piv = Some(r);
                break;
            }
        }
        let Some(p) = piv else { continue };
        m.swap(row, p);
        let inv = m[row][col].inverse().expect("nonzero pivot");
        for r in row + 1..nrows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].mul(&inv);
            for c in col..ncols {
                let delta = factor.mul(&m[row][c]);
                m[r][c] = m[r][c].sub(&delta);
            }
        }
        row += 1;
        rank += 1;
        if row == nrows {
            break;
        }
    }
    rank
}
