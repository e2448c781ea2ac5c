//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! The group ring of a free abelian group on generators `t1, ..., tr`:
//! exponent vectors may be negative, coefficients are [`BigRational`].
//! Canonical printing is descending lexicographic on exponent vectors
//! (`"t1^2*t2^-1 - 3"`), and [`LaurentPoly::parse`] reads the same syntax.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::character::Character;
use crate::ring::cyclotomic::Cyclotomic;

pub type ExpVec = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    /// Exponent vector -> nonzero coefficient.
    terms: BTreeMap<ExpVec, BigRational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn int_constant(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(c.into()))
    }

    pub fn monomial(nvars: usize, exp: ExpVec, c: BigRational) -> Self {
        assert_eq!(exp.len(), nvars, "exponent vector length mismatch");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The variable `t{i+1}` (zero-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::var_pow(nvars, i, 1)
    }

    pub fn var_pow(nvars: usize, i: usize, e: i64) -> Self {
        assert!(i < nvars);
        let mut exp = vec![0; nvars];
        exp[i] = e;
        Self::monomial(nvars, exp, BigRational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_term(&mut self, exp: ExpVec, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: ExpVec = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_term(exp, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact quotient `self / other`, or `None` when the division leaves a
    /// remainder.  Every monomial is invertible here, so the usual division
    /// loop cancels the leading term (largest exponent vector) of the
    /// remainder at each step; when the division is exact that produces one
    /// quotient term per step and terminates.  A non-exact division would
    /// push the leading exponent downward forever, so the loop gives up once
    /// the step count stops being explainable by an exact quotient.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.nvars, other.nvars);
        assert!(!other.is_zero(), "division by the zero polynomial");
        let (dexp, dcoeff) = other.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        let step_cap = 4096 + 4 * self.num_terms() * other.num_terms().max(1);
        let mut steps = 0usize;
        while !rem.is_zero() {
            steps += 1;
            if steps > step_cap {
                return None;
            }
            let (rexp, rcoeff) = rem.terms.iter().next_back().unwrap();
            let exp: ExpVec = rexp.iter().zip(dexp.iter()).map(|(a, b)| a - b).collect();
            let t = Self::monomial(self.nvars, exp, rcoeff / dcoeff);
            rem = rem.sub(&t.mul(other));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Value at `t1 = ... = tr = 1`: the sum of coefficients.
    pub fn coefficient_sum(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |s, c| s + c)
    }

    /// Monomial substitution `t_i -> t_i^{w_i}` (exponent reweighting).
    pub fn raise_powers(&self, weights: &[i64]) -> Self {
        assert_eq!(weights.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let exp: ExpVec = e.iter().zip(weights).map(|(x, w)| x * w).collect();
            out.insert_term(exp, c.clone());
        }
        out
    }

    /// Reinterpret in a larger variable set, padding exponents with zeros.
    pub fn lift_vars(&self, new_nvars: usize) -> Self {
        assert!(new_nvars >= self.nvars);
        let mut out = Self::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            exp.resize(new_nvars, 0);
            out.insert_term(exp, c.clone());
        }
        out
    }

    /// Exact evaluation at a finite-order character: `t_i -> exp(2 pi i kappa_i)`,
    /// landing in the cyclotomic field of the character's order.
    pub fn eval(&self, chi: &Character) -> Result<Cyclotomic> {
        if chi.dim() != self.nvars {
            return Err(Error::Shape(format!(
                "polynomial in {} variables evaluated at a character of dimension {}",
                self.nvars,
                chi.dim()
            )));
        }
        let m = chi.order();
        let mut acc = Cyclotomic::zero(m);
        for (e, c) in &self.terms {
            let root = chi.eval_monomial(e);
            acc = acc.add(&root.scale(c));
        }
        Ok(acc)
    }

    /// Whether the value at `chi` is zero.  Exact like [`LaurentPoly::eval`],
    /// but decided in machine-integer arithmetic when the data fits: the
    /// coefficients are cleared to a common denominator (scaling by a positive
    /// integer cannot change vanishing) and folded into exponent classes of
    /// the character's order, and the class vector is reduced into the power
    /// basis.  Falls back to full cyclotomic evaluation on overflow.
    pub fn vanishes_at(&self, chi: &Character) -> Result<bool> {
        if chi.dim() != self.nvars {
            return Err(Error::Shape(format!(
                "polynomial in {} variables evaluated at a character of dimension {}",
                self.nvars,
                chi.dim()
            )));
        }
        if let Some(ans) = self.vanishes_at_fast(chi) {
            return Ok(ans);
        }
        Ok(self.eval(chi)?.is_zero())
    }

    fn vanishes_at_fast(&self, chi: &Character) -> Option<bool> {
        use num_integer::Integer;
        let m = chi.order();
        let mi = i128::try_from(m).ok()?;
        // kappa_i * m, integral because every denominator divides the order
        let res: Option<Vec<i128>> = chi
            .coordinates()
            .iter()
            .map(|kappa| {
                let scaled = kappa.numer() * (BigInt::from(m) / kappa.denom());
                i128::try_from(&scaled).ok()
            })
            .collect();
        let res = res?;
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut slots = vec![0i128; m as usize];
        for (e, c) in &self.terms {
            let mut k: i128 = 0;
            for (a, r) in e.iter().zip(&res) {
                k = k.checked_add(i128::from(*a).checked_mul(*r)?)?;
            }
            let k = k.rem_euclid(mi) as usize;
            let scaled = c.numer() * (&den / c.denom());
            let s = i128::try_from(&scaled).ok()?;
            slots[k] = slots[k].checked_add(s)?;
        }
        crate::ring::cyclotomic::residue_class_is_zero(slots, m)
    }

    /// Parse the canonical syntax: terms joined by `+`/`-`, each term a `*`-
    /// separated product of rational constants (`p` or `p/q`) and variable
    /// powers `t<i>` / `t<i>^<e>` (negative exponents allowed).  Whitespace
    /// is insignificant.  `nvars` fixes the ambient variable count.
    pub fn parse(input: &str, nvars: usize) -> Result<Self> {
        let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial string".into()));
        }
        let mut out = Self::zero(nvars);
        let mut pos = 0usize;
        let mut sign = BigRational::one();
        // Leading sign.
        if s[pos] == '-' {
            sign = -sign;
            pos += 1;
        } else if s[pos] == '+' {
            pos += 1;
        }
        loop {
            let (term, next) = parse_term(&s, pos, nvars)?;
            out = out.add(&term.scale(&sign));
            pos = next;
            if pos == s.len() {
                break;
            }
            sign = match s[pos] {
                '+' => BigRational::one(),
                '-' => -BigRational::one(),
                c => {
                    return Err(Error::Parse(format!(
                        "expected '+' or '-' at position {pos}, found '{c}'"
                    )))
                }
            };
            pos += 1;
        }
        Ok(out)
    }
}

fn parse_term(s: &[char], mut pos: usize, nvars: usize) -> Result<(LaurentPoly, usize)> {
    let mut coeff = BigRational::one();
    let mut exp = vec![0i64; nvars];
    let mut any_factor = false;
    loop {
        if pos >= s.len() {
            break;
        }
        match s[pos] {
            't' => {
                pos += 1;
                let (idx, next) = parse_unsigned(s, pos)?;
                pos = next;
                if idx == 0 || idx as usize > nvars {
                    return Err(Error::Parse(format!(
                        "variable t{idx} out of range for {nvars} variables"
                    )));
                }
                let mut e: i64 = 1;
                if pos < s.len() && s[pos] == '^' {
                    pos += 1;
                    let mut neg = false;
                    if pos < s.len() && s[pos] == '-' {
                        neg = true;
                        pos += 1;
                    }
                    let (v, next) = parse_unsigned(s, pos)?;
                    pos = next;
                    e = if neg { -(v as i64) } else { v as i64 };
                }
                exp[idx as usize - 1] += e;
            }
            '0'..='9' => {
                let (num, next) = parse_unsigned(s, pos)?;
                pos = next;
                let mut q = BigRational::from_integer(BigInt::from(num));
                if pos < s.len() && s[pos] == '/' {
                    pos += 1;
                    let (den, next) = parse_unsigned(s, pos)?;
                    pos = next;
                    if den == 0 {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    q /= BigRational::from_integer(BigInt::from(den));
                }
                coeff *= q;
            }
            c => {
                return Err(Error::Parse(format!(
                    "unexpected character '{c}' at position {pos}"
                )))
            }
        }
        any_factor = true;
        if pos < s.len() && s[pos] == '*' {
            pos += 1;
            continue;
        }
        break;
    }
    if !any_factor {
        return Err(Error::Parse(format!("empty term at position {pos}")));
    }
    Ok((LaurentPoly::monomial(nvars, exp, coeff), pos))
}

fn parse_unsigned(s: &[char], pos: usize) -> Result<(u64, usize)> {
    let mut end = pos;
    while end < s.len() && s[end].is_ascii_digit() {
        end += 1;
    }
    if end == pos {
        return Err(Error::Parse(format!("expected digits at position {pos}")));
    }
    let text: String = s[pos..end].iter().collect();
    let v = text
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("integer literal too large: {text}")))?;
    Ok((v, end))
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending lexicographic order on exponent vectors.
        for (e, c) in self.terms.iter().rev() {
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
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("t{}", i + 1)
                    } else {
                        format!("t{}^{}", i + 1, x)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn vanishing_test_agrees_with_evaluation() {
        use crate::ring::character::full_grid;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7E57);
        for _ in 0..40 {
            let nvars = rng.gen_range(1..=3);
            let mut p = LaurentPoly::zero(nvars);
            for _ in 0..rng.gen_range(0..=4) {
                let exp: ExpVec = (0..nvars).map(|_| rng.gen_range(-3..=3)).collect();
                let den = [1i64, 2, 3][rng.gen_range(0..3)];
                p = p.add(&LaurentPoly::monomial(nvars, exp, q(rng.gen_range(-4..=4), den)));
            }
            for m in [1u64, 2, 4, 6] {
                for chi in full_grid(nvars, m) {
                    assert_eq!(
                        p.vanishes_at(&chi).unwrap(),
                        p.eval(&chi).unwrap().is_zero(),
                        "poly {p} at {chi}"
                    );
                }
            }
        }
        // cancellation across exponent classes: t1^2 - t1^-1 at a cube root
        let p = LaurentPoly::var_pow(1, 0, 2).sub(&LaurentPoly::var_pow(1, 0, -1));
        let chi = Character::new(vec![q(1, 3)]);
        assert!(p.vanishes_at(&chi).unwrap());
        // dimension mismatch errors
        assert!(p.vanishes_at(&Character::identity(2)).is_err());
    }

    #[test]
    fn exact_division_inverts_multiplication() {
        let parse = |s: &str| LaurentPoly::parse(s, 2).unwrap();
        // cyclotomic-style quotient
        let num = parse("t1^5 - 1");
        let den = parse("t1 - 1");
        assert_eq!(num.div_exact(&den).unwrap(), parse("t1^4 + t1^3 + t1^2 + t1 + 1"));
        // multivariate with negative exponents: (a*b)/b == a for several a, b
        for (a, b) in [
            ("t1*t2 - 1", "t1 + t2^-1"),
            ("3*t1^2 - 1/2*t2^-3 + 7", "t2^-1 - t1"),
            ("t1^-2*t2^2 + 5", "2*t1 - 2*t2 + 1"),
        ] {
            let (a, b) = (parse(a), parse(b));
            assert_eq!(a.mul(&b).div_exact(&b).unwrap(), a, "({a})*({b})/({b})");
            assert_eq!(a.mul(&b).div_exact(&a).unwrap(), b, "({a})*({b})/({a})");
        }
        // a non-exact division never terminates by cancellation alone and
        // must be reported instead
        assert!(parse("t1 - 2").div_exact(&parse("t1 - 1")).is_none());
        assert!(parse("t1").div_exact(&parse("t1 + t2")).is_none());
    }

    #[test]
    fn printing_is_canonical() {
        // t1^2*t2^-1 - 3
        let p = LaurentPoly::monomial(2, vec![2, -1], q(1, 1))
            .add(&LaurentPoly::int_constant(2, -3));
        assert_eq!(p.to_string(), "t1^2*t2^-1 - 3");

        let z = LaurentPoly::zero(3);
        assert_eq!(z.to_string(), "0");

        let c = LaurentPoly::constant(1, q(-3, 2));
        assert_eq!(c.to_string(), "-3/2");

        let m = LaurentPoly::monomial(3, vec![1, 1, 1], q(1, 1))
            .sub(&LaurentPoly::one(3));
        assert_eq!(m.to_string(), "t1*t2*t3 - 1");

        let s = LaurentPoly::monomial(2, vec![1, 0], q(2, 1))
            .add(&LaurentPoly::monomial(2, vec![0, 1], q(-1, 2)));
        assert_eq!(s.to_string(), "2*t1 - 1/2*t2");
    }

    #[test]
    fn parse_roundtrip() {
        for text in [
            "t1^2*t2^-1 - 3",
            "t1*t2*t3 - 1",
            "0",
            "-3/2",
            "2*t1 - 1/2*t2",
            "t1 + t2",
            "5 - t1^-2",
        ] {
            let p = LaurentPoly::parse(text, 3).unwrap();
            assert_eq!(p.to_string(), text, "roundtrip of {text}");
        }
        // Whitespace is insignificant everywhere.
        let a = LaurentPoly::parse(" t1 * t2 ^ 2", 2).unwrap();
        assert_eq!(a.to_string(), "t1*t2^2");
        let c = LaurentPoly::parse("3*t1*2", 2).unwrap();
        assert_eq!(c.to_string(), "6*t1");
        let d = LaurentPoly::parse("t2*t1", 2).unwrap();
        assert_eq!(d.to_string(), "t1*t2");
        assert!(LaurentPoly::parse("t3", 2).is_err());
        assert!(LaurentPoly::parse("", 2).is_err());
        assert!(LaurentPoly::parse("t1 +", 2).is_err());
    }

    #[test]
    fn ring_operations() {
        let t1 = LaurentPoly::var(2, 0);
        let t2 = LaurentPoly::var(2, 1);
        let p = &t1 + &t2;
        let q_ = &t1 - &t2;
        let prod = &p * &q_;
        // (t1+t2)(t1-t2) = t1^2 - t2^2
        let expect = LaurentPoly::monomial(2, vec![2, 0], q(1, 1))
            .sub(&LaurentPoly::monomial(2, vec![0, 2], q(1, 1)));
        assert_eq!(prod, expect);
        // cancellation produces no zero-coefficient terms
        let zero = &p - &p;
        assert!(zero.is_zero());
        assert_eq!(zero.num_terms(), 0);
        // coefficient sum = value at t=1
        assert_eq!(prod.coefficient_sum(), q(0, 1));
        assert_eq!(p.coefficient_sum(), q(2, 1));
    }

    #[test]
    fn power_substitution_and_lift() {
        let p = LaurentPoly::parse("t1*t2 - 1", 2).unwrap();
        let w = p.raise_powers(&[2, 3]);
        assert_eq!(w.to_string(), "t1^2*t2^3 - 1");
        let l = p.lift_vars(4);
        assert_eq!(l.nvars(), 4);
        assert_eq!(l.to_string(), "t1*t2 - 1");
    }

    fn chi(parts: &[(i64, i64)]) -> Character {
        Character::new(parts.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn evaluation_examples() {
        // t1*t2*t3 - 1 at (1/3, 1/3, 1/3) -> 0
        let p = LaurentPoly::parse("t1*t2*t3 - 1", 3).unwrap();
        let v = p.eval(&chi(&[(1, 3), (1, 3), (1, 3)])).unwrap();
        assert!(v.is_zero());

        // t1 - 1 at the identity in 2 variables -> 0
        let p = LaurentPoly::parse("t1 - 1", 2).unwrap();
        assert!(p.eval(&chi(&[(0, 1), (0, 1)])).unwrap().is_zero());

        // t1 + t2 at (1/2, 1/2) -> -2
        let p = LaurentPoly::parse("t1 + t2", 2).unwrap();
        let v = p.eval(&chi(&[(1, 2), (1, 2)])).unwrap();
        assert_eq!(v.as_rational(), Some(q(-2, 1)));

        // dimension mismatch is an error
        assert!(p.eval(&chi(&[(1, 2)])).is_err());
    }

    #[test]
    fn evaluation_is_multiplicative_spot() {
        let p = LaurentPoly::parse("t1^2*t2^-1 - 3", 2).unwrap();
        let r = LaurentPoly::parse("t2 + 2", 2).unwrap();
        let x = chi(&[(1, 4), (5, 6)]);
        let lhs = (&p * &r).eval(&x).unwrap();
        let rhs = p.eval(&x).unwrap().mul(&r.eval(&x).unwrap());
        assert_eq!(lhs, rhs);
        let lhs = (&p + &r).eval(&x).unwrap();
        let rhs = p.eval(&x).unwrap().add(&r.eval(&x).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn monomial_value_is_one_iff_integer_pairing() {
        // over the full grid of order 12 in 2 variables
        for a in 0..12i64 {
            for b in 0..12i64 {
                let x = chi(&[(a, 12), (b, 12)]);
                for exp in [[1, 1], [2, -3], [0, 4], [6, 6]] {
                    let p = LaurentPoly::monomial(2, exp.to_vec(), q(1, 1));
                    let s = q(exp[0] * a + exp[1] * b, 12);
                    let is_int = s.denom().is_one();
                    let v = p.eval(&x).unwrap();
                    assert_eq!(v.is_one(), is_int, "exp {exp:?} at ({a}/12,{b}/12)");
                }
            }
        }
    }
}
