//! Multivariable motivic zeta functions from resolution data.
//!
//! A resolution datum lists divisor components with multiplicity vectors and
//! discrepancies, plus the Euler numbers (and optional Hodge E-polynomials)
//! of the strata indexed by component subsets.  The zeta function is kept in
//! factored form, one term per present stratum with factors
//! `L^{-c-1} T^a / (1 - L^{-c-1} T^a)`; realizations substitute `L -> 1`
//! (Euler) or `L -> uv` (Hodge).  The joint limit `T -> infinity` sends each
//! factor to `-1` and, gated by the equivariant divisibility rule, produces
//! the candidate characteristic-variety indicator for a character.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::covers::{
    chevalley_weil_dims, exceptional_curve_cover, riemann_hurwitz_genus,
};
use crate::error::{Error, Result};
use crate::ring::character::Character;

// ---------------------------------------------------------------------------
// E-polynomials
// ---------------------------------------------------------------------------

/// A bivariate polynomial in `(u, v)` with integer coefficients, as used for
/// Hodge realizations; `L` realizes to `uv`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EPoly {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl EPoly {
    pub fn zero() -> Self {
        EPoly::default()
    }

    pub fn monomial(pu: i64, pv: i64, coeff: i64) -> Self {
        let mut p = EPoly::zero();
        if coeff != 0 {
            p.terms.insert((pu, pv), BigInt::from(coeff));
        }
        p
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn uv() -> Self {
        Self::monomial(1, 1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, pu: i64, pv: i64) -> BigInt {
        self.terms.get(&(pu, pv)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &EPoly) -> EPoly {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            let e = out.terms.entry(*k).or_insert_with(BigInt::zero);
            *e += v;
            if e.is_zero() {
                out.terms.remove(k);
            }
        }
        out
    }

    pub fn neg(&self) -> EPoly {
        EPoly { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }

    pub fn sub(&self, other: &EPoly) -> EPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &EPoly) -> EPoly {
        let mut out = EPoly::zero();
        for ((au, av), ac) in &self.terms {
            for ((bu, bv), bc) in &other.terms {
                let k = (au + bu, av + bv);
                let e = out.terms.entry(k).or_insert_with(BigInt::zero);
                *e += ac * bc;
                if e.is_zero() {
                    out.terms.remove(&k);
                }
            }
        }
        out
    }

    /// Value at `u = v = 1`: the Euler characteristic of the class.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn to_dto(&self) -> Vec<ETermDto> {
        self.terms
            .iter()
            .map(|(&(pu, pv), c)| ETermDto {
                pu,
                pv,
                coeff: i64::try_from(c.clone()).expect("coefficient fits in i64"),
            })
            .collect()
    }

    fn from_dto(terms: &[ETermDto]) -> Result<Self> {
        let mut p = EPoly::zero();
        for t in terms {
            if t.coeff == 0 {
                continue;
            }
            let e = p.terms.entry((t.pu, t.pv)).or_insert_with(BigInt::zero);
            *e += BigInt::from(t.coeff);
            if e.is_zero() {
                p.terms.remove(&(t.pu, t.pv));
            }
        }
        Ok(p)
    }
}

impl std::fmt::Display for EPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(pu, pv), c) in self.terms.iter().rev() {
            let mag = c.magnitude().to_string();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut pieces = Vec::new();
            if mag != "1" || (pu == 0 && pv == 0) {
                pieces.push(mag);
            }
            if pu == 1 {
                pieces.push("u".into());
            } else if pu != 0 {
                pieces.push(format!("u^{pu}"));
            }
            if pv == 1 {
                pieces.push("v".into());
            } else if pv != 0 {
                pieces.push(format!("v^{pv}"));
            }
            write!(f, "{}", pieces.join("*"))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Resolution data
// ---------------------------------------------------------------------------

/// One exceptional or strict-transform component: `a[k]` is the order of the
/// pullback of the `k`-th defining function along it, `c` the order of the
/// pulled-back top form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionComponent {
    pub name: String,
    pub a: Vec<u64>,
    pub c: u64,
}

/// The stratum over a subset of components: its Euler number and, when
/// available, its Hodge E-polynomial.  Absent subsets are empty strata.
#[derive(Debug, Clone, PartialEq)]
pub struct Stratum {
    pub subset: Vec<usize>,
    pub euler: i64,
    pub hodge: Option<EPoly>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolutionDatum {
    r: usize,
    components: Vec<ResolutionComponent>,
    strata: Vec<Stratum>,
}

impl ResolutionDatum {
    pub fn new(
        r: usize,
        components: Vec<ResolutionComponent>,
        mut strata: Vec<Stratum>,
    ) -> Result<Self> {
        for comp in &components {
            if comp.a.len() != r {
                return Err(Error::Shape(format!(
                    "component {} has {} multiplicities for {} defining functions",
                    comp.name,
                    comp.a.len(),
                    r
                )));
            }
        }
        let mut names: Vec<&str> = components.iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        if names.len() != components.len() {
            return Err(Error::Shape("component names must be distinct".into()));
        }
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for s in &mut strata {
            s.subset.sort_unstable();
            s.subset.dedup();
            if s.subset.iter().any(|&i| i >= components.len()) {
                return Err(Error::Shape(format!(
                    "stratum subset {:?} references a missing component",
                    s.subset
                )));
            }
            if seen.contains(&s.subset) {
                return Err(Error::Shape(format!(
                    "stratum subset {:?} listed twice",
                    s.subset
                )));
            }
            seen.push(s.subset.clone());
        }
        strata.sort_by(|x, y| x.subset.cmp(&y.subset));
        Ok(ResolutionDatum { r, components, strata })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn components(&self) -> &[ResolutionComponent] {
        &self.components
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, subset: &[usize]) -> Option<&Stratum> {
        let mut key = subset.to_vec();
        key.sort_unstable();
        key.dedup();
        self.strata.iter().find(|s| s.subset == key)
    }

    /// Recorded consistency value: the sum of all stratum Euler numbers.
    pub fn total_euler(&self) -> i64 {
        self.strata.iter().map(|s| s.euler).sum()
    }

    pub fn to_json(&self) -> String {
        let dto = DatumDto {
            r: self.r,
            components: self
                .components
                .iter()
                .map(|c| ComponentDto { name: c.name.clone(), a: c.a.clone(), c: c.c })
                .collect(),
            strata: self
                .strata
                .iter()
                .map(|s| StratumDto {
                    subset: s.subset.iter().map(|&i| self.components[i].name.clone()).collect(),
                    euler: s.euler,
                    hodge: s.hodge.as_ref().map(|h| HodgeDto { terms: h.to_dto() }),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("datum serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: DatumDto = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("resolution datum JSON: {e}")))?;
        let components: Vec<ResolutionComponent> = dto
            .components
            .iter()
            .map(|c| ResolutionComponent { name: c.name.clone(), a: c.a.clone(), c: c.c })
            .collect();
        let mut strata = Vec::with_capacity(dto.strata.len());
        for s in &dto.strata {
            let mut subset = Vec::with_capacity(s.subset.len());
            for name in &s.subset {
                let idx = components
                    .iter()
                    .position(|c| &c.name == name)
                    .ok_or_else(|| {
                        Error::Parse(format!("stratum references unknown component {name:?}"))
                    })?;
                subset.push(idx);
            }
            strata.push(Stratum {
                subset,
                euler: s.euler,
                hodge: match &s.hodge {
                    Some(h) => Some(EPoly::from_dto(&h.terms)?),
                    None => None,
                },
            });
        }
        Self::new(dto.r, components, strata)
    }
}

#[derive(Serialize, Deserialize)]
struct ETermDto {
    pu: i64,
    pv: i64,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct HodgeDto {
    terms: Vec<ETermDto>,
}

#[derive(Serialize, Deserialize)]
struct ComponentDto {
    name: String,
    a: Vec<u64>,
    c: u64,
}

#[derive(Serialize, Deserialize)]
struct StratumDto {
    subset: Vec<String>,
    euler: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hodge: Option<HodgeDto>,
}

#[derive(Serialize, Deserialize)]
struct DatumDto {
    r: usize,
    components: Vec<ComponentDto>,
    strata: Vec<StratumDto>,
}

// ---------------------------------------------------------------------------
// The zeta function and its realizations
// ---------------------------------------------------------------------------

/// One factored term: the stratum class times
/// `prod_{i in subset} L^{-c_i-1} T^{a_i} / (1 - L^{-c_i-1} T^{a_i})`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaTerm {
    pub subset: Vec<usize>,
    pub euler: i64,
    pub hodge: Option<EPoly>,
    /// `(c_i, a_i)` exponent data per factor, in subset order.
    pub factors: Vec<(u64, Vec<u64>)>,
}

/// The motivic zeta function in factored form: one term per present stratum,
/// ordered by subset.  No common-denominator expansion is ever performed.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaFunction {
    r: usize,
    terms: Vec<ZetaTerm>,
}

impl ZetaFunction {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &[ZetaTerm] {
        &self.terms
    }
}

pub fn build_zeta(rd: &ResolutionDatum) -> ZetaFunction {
    let terms = rd
        .strata()
        .iter()
        .map(|s| ZetaTerm {
            subset: s.subset.clone(),
            euler: s.euler,
            hodge: s.hodge.clone(),
            factors: s
                .subset
                .iter()
                .map(|&i| (rd.components()[i].c, rd.components()[i].a.clone()))
                .collect(),
        })
        .collect();
    ZetaFunction { r: rd.r(), terms }
}

fn monomial_string(a: &[u64]) -> String {
    let pieces: Vec<String> = a
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(k, &e)| if e == 1 { format!("T{}", k + 1) } else { format!("T{}^{}", k + 1, e) })
        .collect();
    if pieces.is_empty() {
        "1".into()
    } else {
        pieces.join("*")
    }
}

/// The Euler realization: classes to their Euler numbers, `L -> 1`, factors
/// to `T^a / (1 - T^a)`, still factored.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerTerm {
    pub subset: Vec<usize>,
    pub coefficient: i64,
    pub factors: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EulerRealization {
    pub r: usize,
    pub terms: Vec<EulerTerm>,
}

impl EulerRealization {
    /// Exact evaluation at a rational point; errors when a denominator
    /// vanishes.
    pub fn eval(&self, t: &[BigRational]) -> Result<BigRational> {
        if t.len() != self.r {
            return Err(Error::Shape(format!(
                "{} coordinates supplied for {} variables",
                t.len(),
                self.r
            )));
        }
        let mut total = BigRational::zero();
        for term in &self.terms {
            if term.coefficient == 0 {
                continue;
            }
            let mut value = BigRational::from_integer(term.coefficient.into());
            for a in &term.factors {
                let mono: BigRational = a
                    .iter()
                    .zip(t)
                    .filter(|(&e, _)| e != 0)
                    .map(|(&e, x)| {
                        let mut p = BigRational::one();
                        for _ in 0..e {
                            p *= x;
                        }
                        p
                    })
                    .product();
                let denom = BigRational::one() - &mono;
                if denom.is_zero() {
                    return Err(Error::Domain("evaluation hits a pole".into()));
                }
                value *= mono / denom;
            }
            total += value;
        }
        Ok(total)
    }
}

impl std::fmt::Display for EulerRealization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let visible: Vec<&EulerTerm> =
            self.terms.iter().filter(|t| t.coefficient != 0).collect();
        if visible.is_empty() {
            return write!(f, "0");
        }
        for (i, term) in visible.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut pieces = Vec::new();
            if term.coefficient != 1 || term.factors.is_empty() {
                pieces.push(term.coefficient.to_string());
            }
            for a in &term.factors {
                let m = monomial_string(a);
                pieces.push(format!("{m}/(1 - {m})"));
            }
            write!(f, "{}", pieces.join(" * "))?;
        }
        Ok(())
    }
}

pub fn e_top_realization(z: &ZetaFunction) -> EulerRealization {
    EulerRealization {
        r: z.r,
        terms: z
            .terms
            .iter()
            .map(|t| EulerTerm {
                subset: t.subset.clone(),
                coefficient: t.euler,
                factors: t.factors.iter().map(|(_, a)| a.clone()).collect(),
            })
            .collect(),
    }
}

/// The Hodge realization: classes to E-polynomials, `L -> uv`; each factor
/// is stored as `T^a / ((uv)^{c+1} - T^a)` after clearing the negative
/// power.
#[derive(Debug, Clone, PartialEq)]
pub struct HodgeTerm {
    pub subset: Vec<usize>,
    pub coefficient: EPoly,
    /// `(c+1, a)` per factor: the power of `uv` in the cleared denominator.
    pub factors: Vec<(u64, Vec<u64>)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HodgeRealization {
    pub r: usize,
    pub terms: Vec<HodgeTerm>,
}

impl HodgeRealization {
    /// Specialize `u = v = 1`: the factors collapse to the Euler form and
    /// each coefficient to its value at `(1, 1)`.
    pub fn euler_specialization(&self) -> EulerRealization {
        EulerRealization {
            r: self.r,
            terms: self
                .terms
                .iter()
                .map(|t| EulerTerm {
                    subset: t.subset.clone(),
                    coefficient: i64::try_from(t.coefficient.eval_at_one())
                        .expect("euler number fits in i64"),
                    factors: t.factors.iter().map(|(_, a)| a.clone()).collect(),
                })
                .collect(),
        }
    }
}

impl std::fmt::Display for HodgeRealization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let visible: Vec<&HodgeTerm> =
            self.terms.iter().filter(|t| !t.coefficient.is_zero()).collect();
        if visible.is_empty() {
            return write!(f, "0");
        }
        for (i, term) in visible.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut pieces = vec![format!("({})", term.coefficient)];
            for (p, a) in &term.factors {
                let m = monomial_string(a);
                let uv = if *p == 1 { "u*v".to_string() } else { format!("(u*v)^{p}") };
                pieces.push(format!("{m}/({uv} - {m})"));
            }
            write!(f, "{}", pieces.join(" * "))?;
        }
        Ok(())
    }
}

pub fn hodge_realization(z: &ZetaFunction) -> Result<HodgeRealization> {
    let mut terms = Vec::with_capacity(z.terms.len());
    for t in &z.terms {
        let coefficient = t.hodge.clone().ok_or_else(|| {
            Error::MissingHodge(format!("stratum {:?} carries no Hodge data", t.subset))
        })?;
        terms.push(HodgeTerm {
            subset: t.subset.clone(),
            coefficient,
            factors: t.factors.iter().map(|(c, a)| (c + 1, a.clone())).collect(),
        });
    }
    Ok(HodgeRealization { r: z.r, terms })
}

// ---------------------------------------------------------------------------
// Equivariant rule and the limit
// ---------------------------------------------------------------------------

fn kills_all(chi: &Character, factors: &[(u64, Vec<u64>)]) -> bool {
    factors.iter().all(|(_, a)| {
        let w: Vec<i64> = a.iter().map(|&x| x as i64).collect();
        chi.satisfies_relation(&w)
    })
}

/// The equivariant Euler number of the stratum over `subset`: its plain
/// Euler number when the character kills every multiplicity monomial of the
/// subset, zero otherwise.  Absent subsets are empty and give zero.
pub fn equivariant_stratum_euler(
    rd: &ResolutionDatum,
    subset: &[usize],
    chi: &Character,
) -> Result<i64> {
    if chi.dim() != rd.r() {
        return Err(Error::Shape(format!(
            "character has {} coordinates, datum has {}",
            chi.dim(),
            rd.r()
        )));
    }
    if subset.iter().any(|&i| i >= rd.components().len()) {
        return Err(Error::Shape(format!(
            "subset {subset:?} references a missing component"
        )));
    }
    let Some(s) = rd.stratum(subset) else { return Ok(0) };
    let factors: Vec<(u64, Vec<u64>)> = s
        .subset
        .iter()
        .map(|&i| (rd.components()[i].c, rd.components()[i].a.clone()))
        .collect();
    Ok(if kills_all(chi, &factors) { s.euler } else { 0 })
}

/// Equivariant Hodge class of the stratum, by the same gate.
pub fn equivariant_stratum_hodge(
    rd: &ResolutionDatum,
    subset: &[usize],
    chi: &Character,
) -> Result<EPoly> {
    if chi.dim() != rd.r() {
        return Err(Error::Shape(format!(
            "character has {} coordinates, datum has {}",
            chi.dim(),
            rd.r()
        )));
    }
    let Some(s) = rd.stratum(subset) else { return Ok(EPoly::zero()) };
    let hodge = s.hodge.clone().ok_or_else(|| {
        Error::MissingHodge(format!("stratum {subset:?} carries no Hodge data"))
    })?;
    let factors: Vec<(u64, Vec<u64>)> = s
        .subset
        .iter()
        .map(|&i| (rd.components()[i].c, rd.components()[i].a.clone()))
        .collect();
    Ok(if kills_all(chi, &factors) { hodge } else { EPoly::zero() })
}

/// Joint formal limit as all `T_i -> infinity`, realized equivariantly at a
/// non-identity character: every factor tends to `-1`, so the value is
/// `-sum over terms whose factors the character kills of
/// (-1)^{|subset|} * euler`.  Positivity of the result signals depth-1
/// membership of the character in the characteristic variety.
pub fn limit_at_infinity(z: &ZetaFunction, chi: &Character) -> Result<i64> {
    if chi.dim() != z.r() {
        return Err(Error::Shape(format!(
            "character has {} coordinates, zeta function has {}",
            chi.dim(),
            z.r()
        )));
    }
    if chi.is_identity() {
        return Err(Error::IdentityExcluded { context: "zeta limit" });
    }
    let mut total: i64 = 0;
    for term in &z.terms {
        if term.factors.iter().any(|(_, a)| a.iter().all(|&x| x == 0)) {
            return Err(Error::Domain(
                "a factor carries the zero multiplicity vector; the limit is undefined".into(),
            ));
        }
        if !kills_all(chi, &term.factors) {
            continue;
        }
        let sign = if term.subset.len() % 2 == 0 { 1 } else { -1 };
        total += sign * term.euler;
    }
    Ok(-total)
}

// ---------------------------------------------------------------------------
// Curve Hodge consistency
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct CurveHodgeRow {
    pub k: u64,
    pub gated: bool,
    pub eigenspace_dim: usize,
}

/// Comparison of the `u`-extraction of the exceptional-curve Hodge class
/// against the 1-form eigenspace dimensions, for the diagonal degree-`m`
/// cover of the `r`-branch local divisor.  Both sides are computed by
/// independent oracles; `agrees` records whether the extraction equals the
/// eigenspace total and the divisibility gate matches eigenspace support.
#[derive(Debug, Clone, Serialize)]
pub struct CurveHodgeReport {
    pub r: usize,
    pub m: u64,
    pub deck_degree: u64,
    pub genus: u64,
    pub hodge_form_dim: u64,
    pub rows: Vec<CurveHodgeRow>,
    pub agrees: bool,
}

pub fn curve_hodge_consistency(r: usize, m: u64) -> Result<CurveHodgeReport> {
    if m < 2 {
        return Err(Error::Domain("deck order must be at least 2".into()));
    }
    let (d, datum) = exceptional_curve_cover(r, m)?;
    let (genus, cw) = match &datum {
        Some(b) => (riemann_hurwitz_genus(b)?, chevalley_weil_dims(b)?),
        None => (0, vec![0]),
    };
    let g = i64::try_from(genus).expect("small genus");
    // E-polynomial of the smooth compact curve
    let epoly = EPoly::uv()
        .add(&EPoly::constant(1))
        .sub(&EPoly::monomial(1, 0, g))
        .sub(&EPoly::monomial(0, 1, g));
    let rd = ResolutionDatum::new(
        r,
        vec![ResolutionComponent { name: "curve".into(), a: vec![1; r], c: 0 }],
        vec![Stratum {
            subset: vec![0],
            euler: 2 - 2 * g,
            hodge: Some(epoly),
        }],
    )?;
    let step = m / d;
    let mut rows = Vec::new();
    let mut eigen_total = 0usize;
    let mut gate_matches = true;
    for k in 1..m {
        let chi = Character::new(vec![BigRational::new(BigInt::from(k), BigInt::from(m)); r]);
        let gated_hodge = equivariant_stratum_hodge(&rd, &[0], &chi)?;
        let gated = !gated_hodge.is_zero();
        let eigenspace_dim = if d == 1 || k % step != 0 {
            0
        } else {
            cw[((d - k / step) % d) as usize]
        };
        eigen_total += eigenspace_dim;
        if !gated && eigenspace_dim > 0 {
            gate_matches = false;
        }
        rows.push(CurveHodgeRow { k, gated, eigenspace_dim });
    }
    // extraction: dim F^1 H^1 of the curve is minus the u-coefficient
    let hodge_form_dim = u64::try_from(-rd.strata()[0].hodge.as_ref().unwrap().coeff(1, 0))
        .expect("nonnegative form dimension");
    let agrees = gate_matches && hodge_form_dim == genus && eigen_total == genus as usize;
    Ok(CurveHodgeReport { r, m, deck_degree: d, genus, hodge_form_dim, rows, agrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::generic_arrangement_cone_complex;
    use crate::fixtures::concurrent_lines_datum;
    use crate::ring::character::characters_of_order_at_most;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn chi(parts: &[(i64, i64)]) -> Character {
        Character::new(parts.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn epoly_arithmetic_and_display() {
        let e = EPoly::uv()
            .add(&EPoly::constant(1))
            .sub(&EPoly::monomial(1, 0, 2))
            .sub(&EPoly::monomial(0, 1, 2));
        assert_eq!(e.to_string(), "u*v - 2*u - 2*v + 1");
        assert_eq!(e.eval_at_one(), BigInt::from(-2));
        assert_eq!(e.coeff(1, 0), BigInt::from(-2));
        assert_eq!(EPoly::zero().to_string(), "0");
        // (uv)^2 via mul
        let sq = EPoly::uv().mul(&EPoly::uv());
        assert_eq!(sq.to_string(), "u^2*v^2");
        // additivity of evaluation
        let a = EPoly::monomial(2, 1, 3);
        assert_eq!(a.add(&e).eval_at_one(), a.eval_at_one() + e.eval_at_one());
    }

    #[test]
    fn build_zeta_shapes() {
        // concurrent lines: one term per present stratum
        for r in [3usize, 4, 5] {
            let rd = concurrent_lines_datum(r);
            let z = build_zeta(&rd);
            assert_eq!(z.terms().len(), 2 * r + 1);
            // terms sorted by subset
            for w in z.terms().windows(2) {
                assert!(w[0].subset < w[1].subset);
            }
            // the exceptional component carries the all-ones multiplicity
            let e0 = z.terms().iter().find(|t| t.subset == vec![0]).unwrap();
            assert_eq!(e0.factors, vec![(1, vec![1; r])]);
        }

        // single smooth branch
        let rd = ResolutionDatum::new(
            1,
            vec![ResolutionComponent { name: "D".into(), a: vec![1], c: 0 }],
            vec![Stratum { subset: vec![0], euler: 1, hodge: None }],
        )
        .unwrap();
        let z = build_zeta(&rd);
        assert_eq!(z.terms().len(), 1);
        assert_eq!(e_top_realization(&z).to_string(), "T1/(1 - T1)");

        // empty divisor
        let rd = ResolutionDatum::new(1, vec![], vec![]).unwrap();
        assert!(build_zeta(&rd).terms().is_empty());
        assert_eq!(e_top_realization(&build_zeta(&rd)).to_string(), "0");
    }

    #[test]
    fn datum_validation() {
        // bad subset index
        assert!(ResolutionDatum::new(
            1,
            vec![ResolutionComponent { name: "D".into(), a: vec![1], c: 0 }],
            vec![Stratum { subset: vec![1], euler: 1, hodge: None }],
        )
        .is_err());
        // duplicate subsets
        assert!(ResolutionDatum::new(
            1,
            vec![ResolutionComponent { name: "D".into(), a: vec![1], c: 0 }],
            vec![
                Stratum { subset: vec![0], euler: 1, hodge: None },
                Stratum { subset: vec![0], euler: 2, hodge: None },
            ],
        )
        .is_err());
        // wrong multiplicity arity
        assert!(ResolutionDatum::new(
            2,
            vec![ResolutionComponent { name: "D".into(), a: vec![1], c: 0 }],
            vec![],
        )
        .is_err());
    }

    #[test]
    fn euler_realization_golden() {
        let rd = concurrent_lines_datum(3);
        let z = build_zeta(&rd);
        let e = e_top_realization(&z);
        // only the exceptional stratum has nonzero euler weight
        assert_eq!(e.to_string(), "T1*T2*T3/(1 - T1*T2*T3)");
        // vanishing at the origin
        assert_eq!(e.eval(&[q(0, 1), q(0, 1), q(0, 1)]).unwrap(), q(0, 1));
        // pole detection
        assert!(e.eval(&[q(1, 1), q(1, 1), q(1, 1)]).is_err());
        // a non-pole value
        assert_eq!(e.eval(&[q(1, 2), q(1, 1), q(1, 1)]).unwrap(), q(1, 1));
    }

    #[test]
    fn hodge_realization_rules() {
        // the concurrent-lines datum carries no Hodge data
        let z = build_zeta(&concurrent_lines_datum(3));
        assert!(matches!(hodge_realization(&z), Err(Error::MissingHodge(_))));

        // a curve with Hodge data: P^1 minus r points has E = uv + 1 - r
        let open_curve = EPoly::uv().add(&EPoly::constant(1 - 4));
        assert_eq!(open_curve.to_string(), "u*v - 3");
        let rd = ResolutionDatum::new(
            1,
            vec![ResolutionComponent { name: "E".into(), a: vec![2], c: 1 }],
            vec![Stratum { subset: vec![0], euler: -2, hodge: Some(open_curve) }],
        )
        .unwrap();
        let h = hodge_realization(&build_zeta(&rd)).unwrap();
        assert_eq!(h.to_string(), "(u*v - 3) * T1^2/((u*v)^2 - T1^2)");
        // u = v = 1 collapses to the euler realization with L = 1
        let spec = h.euler_specialization();
        let top = e_top_realization(&build_zeta(&rd));
        assert_eq!(spec, top);

        // additivity over strata
        let rd2 = ResolutionDatum::new(
            1,
            vec![
                ResolutionComponent { name: "E".into(), a: vec![2], c: 1 },
                ResolutionComponent { name: "D".into(), a: vec![1], c: 0 },
            ],
            vec![
                Stratum { subset: vec![0], euler: -2, hodge: Some(EPoly::uv()) },
                Stratum { subset: vec![1], euler: 1, hodge: Some(EPoly::constant(1)) },
            ],
        )
        .unwrap();
        let both = hodge_realization(&build_zeta(&rd2)).unwrap();
        assert_eq!(both.terms.len(), 2);
        assert_eq!(both.terms[0].coefficient, EPoly::uv());
        assert_eq!(both.terms[1].coefficient, EPoly::constant(1));
    }

    #[test]
    fn equivariant_rule_examples() {
        let rd = concurrent_lines_datum(3);
        // empty subset: no gate (absent stratum gives 0 here)
        assert_eq!(
            equivariant_stratum_euler(&rd, &[], &chi(&[(1, 3), (1, 3), (1, 3)])).unwrap(),
            0
        );
        // exceptional stratum gated by the total sum
        assert_eq!(
            equivariant_stratum_euler(&rd, &[0], &chi(&[(1, 3), (1, 3), (1, 3)])).unwrap(),
            1
        );
        assert_eq!(
            equivariant_stratum_euler(&rd, &[0], &chi(&[(1, 2), (0, 1), (0, 1)])).unwrap(),
            0
        );
        // identity kills everything
        assert_eq!(
            equivariant_stratum_euler(&rd, &[0], &Character::identity(3)).unwrap(),
            1
        );
        // shape checks
        assert!(equivariant_stratum_euler(&rd, &[99], &chi(&[(1, 3), (1, 3), (1, 3)])).is_err());
        assert!(equivariant_stratum_euler(&rd, &[0], &chi(&[(1, 3)])).is_err());
    }

    #[test]
    fn limit_examples() {
        let z = build_zeta(&concurrent_lines_datum(3));
        assert_eq!(limit_at_infinity(&z, &chi(&[(1, 3), (1, 3), (1, 3)])).unwrap(), 1);
        assert_eq!(limit_at_infinity(&z, &chi(&[(1, 3), (1, 3), (0, 1)])).unwrap(), 0);
        assert!(matches!(
            limit_at_infinity(&z, &Character::identity(3)),
            Err(Error::IdentityExcluded { .. })
        ));
        // zero multiplicity vector: no limit
        let rd = ResolutionDatum::new(
            1,
            vec![ResolutionComponent { name: "D".into(), a: vec![0], c: 0 }],
            vec![Stratum { subset: vec![0], euler: 1, hodge: None }],
        )
        .unwrap();
        assert!(limit_at_infinity(&build_zeta(&rd), &chi(&[(1, 2)])).is_err());
    }

    #[test]
    fn limit_formal_identity() {
        // the limit agrees with the signed gated euler sum, re-derived here
        for r in [3usize, 4] {
            let rd = concurrent_lines_datum(r);
            let z = build_zeta(&rd);
            for chi in characters_of_order_at_most(r, 4) {
                if chi.is_identity() {
                    continue;
                }
                let mut manual = 0i64;
                for s in rd.strata() {
                    let gate = s.subset.iter().all(|&i| {
                        let w: Vec<i64> =
                            rd.components()[i].a.iter().map(|&x| x as i64).collect();
                        chi.satisfies_relation(&w)
                    });
                    if gate {
                        let sign = if s.subset.len() % 2 == 0 { 1 } else { -1 };
                        manual += sign * s.euler;
                    }
                }
                assert_eq!(limit_at_infinity(&z, &chi).unwrap(), -manual);
            }
        }
    }

    #[test]
    fn limit_matches_homology_oracle() {
        // A'Campo-type consistency on the concurrent-lines family
        for r in [3usize, 4] {
            let z = build_zeta(&concurrent_lines_datum(r));
            let c = generic_arrangement_cone_complex(r, 1).unwrap();
            for chi in characters_of_order_at_most(r, 4) {
                if chi.is_identity() {
                    continue;
                }
                let predicted = limit_at_infinity(&z, &chi).unwrap();
                let actual = match c.specialize(&chi) {
                    Ok(s) => s.homology_dims()[1] as i64,
                    Err(_) => 0,
                };
                assert_eq!(predicted, actual, "r={r} at {chi}");
            }
        }
    }

    #[test]
    fn curve_hodge_reports() {
        for r in [3usize, 4] {
            for m in [2u64, 3] {
                let report = curve_hodge_consistency(r, m).unwrap();
                assert!(report.agrees, "r={r} m={m}: {report:?}");
                assert_eq!(report.hodge_form_dim, report.genus);
            }
        }
        // the nontrivial case: deck order 3 on three branches, genus 1
        let report = curve_hodge_consistency(3, 3).unwrap();
        assert_eq!(report.deck_degree, 3);
        assert_eq!(report.genus, 1);
        let supported: Vec<u64> =
            report.rows.iter().filter(|r| r.eigenspace_dim > 0).map(|r| r.k).collect();
        assert_eq!(supported, vec![1]);
    }

    #[test]
    fn datum_json_roundtrip() {
        let rd = concurrent_lines_datum(3);
        let back = ResolutionDatum::from_json(&rd.to_json()).unwrap();
        assert_eq!(back, rd);
        // unknown component name in a stratum
        let bad = r#"{"r": 1, "components": [{"name": "D", "a": [1], "c": 0}],
                      "strata": [{"subset": ["missing"], "euler": 1}]}"#;
        assert!(ResolutionDatum::from_json(bad).is_err());
        // hodge blocks survive the roundtrip
        let rd = ResolutionDatum::new(
            1,
            vec![ResolutionComponent { name: "E".into(), a: vec![1], c: 0 }],
            vec![Stratum { subset: vec![0], euler: 0, hodge: Some(EPoly::uv()) }],
        )
        .unwrap();
        let back = ResolutionDatum::from_json(&rd.to_json()).unwrap();
        assert_eq!(back, rd);
    }
}
