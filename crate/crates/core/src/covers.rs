//! Homology of finite abelian covers.
//!
//! Unbranched: eigenspace dimensions of a cover's homology are local-system
//! dimensions of the base, computed character by character; the sum over all
//! characters of the deck group equals the Betti number of the cover, which
//! this module can also compute directly from a lifted chain complex (the
//! regular representation replaces each monomial by a permutation matrix).
//!
//! Branched (curve case): eigenspaces of holomorphic 1-forms on a cyclic
//! cover of the line `y^m = prod (x - b_i)^{a_i}` by the classical
//! fractional-part formula, with a Riemann-Hurwitz genus cross-check.  The
//! eigenspace indexed by `k` is the one where the deck generator acts by
//! `zeta^{-k}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::intmat::IntMat;
use crate::polytope::QFace;
use crate::ring::character::Character;

/// A finite abelian quotient `G = Z/m_1 + ... + Z/m_s` of the first homology
/// `Z^r`, with the quotient map recorded as an `s x r` integer matrix
/// (meridian `j` maps to the tuple of column `j` entries).
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteQuotient {
    moduli: Vec<u64>,
    map: IntMat,
}

impl FiniteQuotient {
    pub fn new(moduli: Vec<u64>, map: IntMat) -> Result<Self> {
        if moduli.is_empty() || moduli.iter().any(|&m| m == 0) {
            return Err(Error::Shape("moduli must be positive".into()));
        }
        if map.nrows() != moduli.len() {
            return Err(Error::Shape(format!(
                "{} moduli with a {}-row quotient map",
                moduli.len(),
                map.nrows()
            )));
        }
        Ok(FiniteQuotient { moduli, map })
    }

    /// Meridian `i` maps to generator `i`: `G = Z/m_1 + ... + Z/m_r` as the
    /// coordinatewise reduction of `Z^r`.
    pub fn coordinatewise(moduli: &[u64]) -> Result<Self> {
        Self::new(moduli.to_vec(), IntMat::identity(moduli.len()))
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn map(&self) -> &IntMat {
        &self.map
    }

    pub fn source_rank(&self) -> usize {
        self.map.ncols()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    fn tuples(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let s = self.moduli.len();
        let mut g = vec![0u64; s];
        loop {
            out.push(g.clone());
            let mut i = s;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                g[i] += 1;
                if g[i] < self.moduli[i] {
                    break;
                }
                g[i] = 0;
            }
        }
    }

    fn tuple_index(&self, g: &[u64]) -> usize {
        let mut idx = 0usize;
        for (i, &gi) in g.iter().enumerate() {
            idx = idx * self.moduli[i] as usize + gi as usize;
        }
        idx
    }

    /// Every character of `G`, pulled back to a character of `Z^r` through
    /// the quotient map, in lexicographic order of the `G`-character tuples.
    pub fn characters(&self) -> Vec<Character> {
        let r = self.source_rank();
        self.tuples()
            .iter()
            .map(|j| {
                let coords: Vec<BigRational> = (0..r)
                    .map(|col| {
                        (0..self.moduli.len())
                            .map(|row| {
                                BigRational::new(
                                    self.map.entry(row, col) * BigInt::from(j[row]),
                                    BigInt::from(self.moduli[row]),
                                )
                            })
                            .sum()
                    })
                    .collect();
                Character::new(coords)
            })
            .collect()
    }
}

/// Eigenspace dimensions of `H_degree` of the `G`-cover, one entry per
/// distinct pulled-back character: the local-system homology dimension of
/// the base at that character.  Characters that violate a recorded quotient
/// relation support no homology and contribute 0.
pub fn cover_homology_eigenspaces(
    c: &ChainComplex,
    q: &FiniteQuotient,
    degree: usize,
) -> Result<BTreeMap<Character, usize>> {
    if q.source_rank() != c.character_dim() {
        return Err(Error::Shape(format!(
            "quotient of a rank-{} homology against a complex with {} character coordinates",
            q.source_rank(),
            c.character_dim()
        )));
    }
    if degree > c.top_degree() {
        return Err(Error::Shape(format!(
            "degree {degree} exceeds complex top degree {}",
            c.top_degree()
        )));
    }
    let mut out = BTreeMap::new();
    for chi in q.characters() {
        let dim = match c.specialize(&chi) {
            Ok(s) => s.homology_dims()[degree],
            Err(Error::RelationViolation { .. }) => 0,
            Err(e) => return Err(e),
        };
        out.insert(chi, dim);
    }
    Ok(out)
}

/// Chain complex of the `G`-cover over the integers: each module generator
/// lifts to `|G|` generators and each monomial `t^a` becomes the permutation
/// of `G` by the image of `a`.  Requires a complex over the full variable
/// set (no eliminated coordinates) with integer coefficients.
pub fn lifted_cover_complex(c: &ChainComplex, q: &FiniteQuotient) -> Result<Vec<IntMat>> {
    if c.relation().is_some() {
        return Err(Error::Domain(
            "cover lifting needs a complex over the full variable set; expand the quotient ring first"
                .into(),
        ));
    }
    if q.source_rank() != c.nvars() {
        return Err(Error::Shape(format!(
            "quotient map has {} columns, complex has {} variables",
            q.source_rank(),
            c.nvars()
        )));
    }
    let order = q.order() as usize;
    let tuples = q.tuples();
    let ranks = c.ranks();
    let mut lifted = Vec::with_capacity(ranks.len() - 1);
    for k in 1..ranks.len() {
        let d = c.differential(k);
        let mut big = IntMat::zero(ranks[k - 1] * order, ranks[k] * order);
        for i in 0..d.nrows() {
            for j in 0..d.ncols() {
                let p = d.entry(i, j);
                if p.is_zero() {
                    continue;
                }
                for (exp, coeff) in p.terms() {
                    if !coeff.denom().is_one() {
                        return Err(Error::Domain(
                            "cover lifting needs integer coefficients".into(),
                        ));
                    }
                    // image of the exponent vector in G
                    let delta: Vec<u64> = (0..q.moduli.len())
                        .map(|row| {
                            let s: BigInt = (0..c.nvars())
                                .map(|col| q.map.entry(row, col) * BigInt::from(exp[col]))
                                .sum();
                            s.mod_floor(&BigInt::from(q.moduli[row]))
                                .try_into()
                                .expect("reduced class is small")
                        })
                        .collect();
                    for (gi, g) in tuples.iter().enumerate() {
                        let shifted: Vec<u64> = g
                            .iter()
                            .zip(&delta)
                            .zip(&q.moduli)
                            .map(|((a, b), m)| (a + b) % m)
                            .collect();
                        let hi = q.tuple_index(&shifted);
                        let row = i * order + hi;
                        let col = j * order + gi;
                        let new = big.entry(row, col) + coeff.numer();
                        big.set_entry(row, col, new);
                    }
                }
            }
        }
        lifted.push(big);
    }
    Ok(lifted)
}

/// Betti number of the `G`-cover in one degree, computed from the lifted
/// integer complex by exact rank computations.
pub fn lifted_cover_betti(c: &ChainComplex, q: &FiniteQuotient, degree: usize) -> Result<usize> {
    if degree > c.top_degree() {
        return Err(Error::Shape(format!(
            "degree {degree} exceeds complex top degree {}",
            c.top_degree()
        )));
    }
    let lifted = lifted_cover_complex(c, q)?;
    let order = q.order() as usize;
    let total = c.ranks()[degree] * order;
    let rank_in = if degree == 0 { 0 } else { lifted[degree - 1].rank() };
    let rank_out = if degree < lifted.len() { lifted[degree].rank() } else { 0 };
    Ok(total - rank_in - rank_out)
}

// ---------------------------------------------------------------------------
// Branched cyclic covers of the line
// ---------------------------------------------------------------------------

/// Branch data of the cyclic cover `y^m = prod_i (x - b_i)^{a_i}` of the
/// line: deck order `m` and local multiplicities `a_i` (reduced mod `m`,
/// nonzero).  Ramification at infinity is determined by the sum of the
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchDatum {
    m: u64,
    a: Vec<u64>,
}

impl BranchDatum {
    pub fn new(m: u64, a: Vec<u64>) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain("deck order must be at least 2".into()));
        }
        if a.is_empty() {
            return Err(Error::Domain("need at least one branch point".into()));
        }
        let a: Vec<u64> = a.into_iter().map(|x| x % m).collect();
        if a.iter().any(|&x| x == 0) {
            return Err(Error::Domain(
                "branch multiplicities must be nonzero mod the deck order".into(),
            ));
        }
        Ok(BranchDatum { m, a })
    }

    pub fn deck_order(&self) -> u64 {
        self.m
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.a
    }

    /// Multiplicity at infinity: the negative of the total, mod `m`; zero
    /// means the cover is unramified there.
    pub fn infinity_multiplicity(&self) -> u64 {
        let s: u64 = self.a.iter().fold(0, |acc, &x| (acc + x) % self.m);
        (self.m - s) % self.m
    }

    pub fn ramified_at_infinity(&self) -> bool {
        self.infinity_multiplicity() != 0
    }

    pub fn to_json(&self) -> String {
        let dto = BranchDto {
            m: self.m,
            points: self.a.iter().map(|&a| BranchPointDto { a }).collect(),
            ramified_at_infinity: Some(self.ramified_at_infinity()),
        };
        serde_json::to_string_pretty(&dto).expect("branch datum serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: BranchDto = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("branch datum JSON: {e}")))?;
        let b = Self::new(dto.m, dto.points.iter().map(|p| p.a).collect())?;
        if let Some(flag) = dto.ramified_at_infinity {
            if flag != b.ramified_at_infinity() {
                return Err(Error::Parse(format!(
                    "ramified_at_infinity is {} but the multiplicities force {}",
                    flag,
                    b.ramified_at_infinity()
                )));
            }
        }
        Ok(b)
    }
}

#[derive(Serialize, Deserialize)]
struct BranchPointDto {
    a: u64,
}

#[derive(Serialize, Deserialize)]
struct BranchDto {
    m: u64,
    points: Vec<BranchPointDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ramified_at_infinity: Option<bool>,
}

fn frac_of_product(k: u64, a: u64, m: u64) -> BigRational {
    let prod = BigRational::new(BigInt::from(k * a), BigInt::from(m));
    &prod - prod.floor()
}

/// Eigenspace dimensions of holomorphic 1-forms on the cyclic cover:
/// `dims[k]` is the dimension of the subspace where the deck generator acts
/// by `zeta_m^{-k}`; `dims[0] = 0` (the quotient is rational).  For `k > 0`
/// the dimension is `-1 + sum_i <k a_i / m> + <k a_inf / m>`, the infinity
/// term dropped when the cover is unramified there.
pub fn chevalley_weil_dims(b: &BranchDatum) -> Result<Vec<usize>> {
    let m = b.m;
    let g = b.a.iter().fold(m, |acc, &x| acc.gcd(&x));
    if g > 1 {
        return Err(Error::DisconnectedCover { gcd: g });
    }
    let a_inf = b.infinity_multiplicity();
    let mut dims = vec![0usize; m as usize];
    for k in 1..m {
        let mut total: BigRational = b.a.iter().map(|&a| frac_of_product(k, a, m)).sum();
        if a_inf != 0 {
            total += frac_of_product(k, a_inf, m);
        }
        let total = total - BigRational::one();
        debug_assert!(total.denom().is_one(), "eigenspace dimension must be integral");
        debug_assert!(!total.is_negative(), "eigenspace dimension must be nonnegative");
        dims[k as usize] = usize::try_from(total.to_integer()).expect("small dimension");
    }
    Ok(dims)
}

/// Genus of the smooth connected cyclic cover by Riemann-Hurwitz: an
/// independent oracle for the sum of the eigenspace dimensions.
pub fn riemann_hurwitz_genus(b: &BranchDatum) -> Result<u64> {
    let m = b.m;
    let g = b.a.iter().fold(m, |acc, &x| acc.gcd(&x));
    if g > 1 {
        return Err(Error::DisconnectedCover { gcd: g });
    }
    // each branch point contributes m - gcd(a, m) to the ramification total;
    // infinity ramifies exactly when its multiplicity is nonzero
    let mut ram: i64 = b.a.iter().map(|&a| (m - a.gcd(&m)) as i64).sum();
    let a_inf = b.infinity_multiplicity();
    if a_inf != 0 {
        ram += (m - a_inf.gcd(&m)) as i64;
    }
    let two_g = 2 - 2 * (m as i64) + ram;
    if two_g < 0 || two_g % 2 != 0 {
        return Err(Error::Domain(format!(
            "Riemann-Hurwitz count {two_g} is not twice a genus"
        )));
    }
    Ok((two_g / 2) as u64)
}

/// The curve exposed by resolving `x^r = y^r` and intersecting the diagonal
/// `Z/m`-cover with the exceptional divisor: a cyclic cover of the line of
/// degree `gcd(m, r)` branched at `r` points with all multiplicities 1 and
/// never ramified at infinity.  Degree 1 (trivial cover) is reported as a
/// domain error by the eigenspace formula; callers treat it as rational.
pub fn exceptional_curve_cover(r: usize, m: u64) -> Result<(u64, Option<BranchDatum>)> {
    if r < 2 || m < 1 {
        return Err(Error::Domain(
            "need at least two branches and a positive deck order".into(),
        ));
    }
    let d = m.gcd(&(r as u64));
    if d == 1 {
        return Ok((1, None));
    }
    Ok((d, Some(BranchDatum::new(d, vec![1; r])?)))
}

/// One row of the quasiadjunction comparison: the diagonal character of
/// index `k`, the level of the face of quasiadjunction its logarithm lies
/// on (if any), and the 1-form eigenspace dimension of the exceptional
/// curve predicted for it.
#[derive(Debug, Clone, Serialize)]
pub struct QuasiadjunctionRow {
    pub k: u64,
    pub face_level: Option<String>,
    pub eigenspace_dim: usize,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuasiadjunctionReport {
    pub r: usize,
    pub m: u64,
    pub deck_degree: u64,
    pub rows: Vec<QuasiadjunctionRow>,
}

impl QuasiadjunctionReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|row| row.agrees)
    }
}

/// Compare, for every diagonal character `(k/m, ..., k/m)` of the `r`-branch
/// local divisor `x^r = y^r`, the face-of-quasiadjunction prediction with
/// the 1-form eigenspace of the exceptional curve.  The report records both
/// sides and whether membership and positivity agree; it asserts nothing.
pub fn quasiadjunction_consistency(
    r: usize,
    m: u64,
    faces: &[QFace],
) -> Result<QuasiadjunctionReport> {
    if m < 2 {
        return Err(Error::Domain("deck order must be at least 2".into()));
    }
    let (d, datum) = exceptional_curve_cover(r, m)?;
    let cw = match &datum {
        Some(b) => chevalley_weil_dims(b)?,
        None => vec![0],
    };
    let step = m / d;
    let mut rows = Vec::new();
    for k in 1..m {
        let point: Vec<BigRational> =
            vec![BigRational::new(BigInt::from(k), BigInt::from(m)); r];
        let mut face_level = None;
        for f in faces {
            let (a, c) = f.hyperplane();
            let val: BigRational = a.iter().zip(&point).map(|(x, y)| x * y).sum();
            if val == *c && f.parent().membership(&point)? {
                face_level = Some(if c.denom().is_one() {
                    c.numer().to_string()
                } else {
                    format!("{}/{}", c.numer(), c.denom())
                });
                break;
            }
        }
        let eigenspace_dim = if d == 1 || k % step != 0 {
            0
        } else {
            let kp = k / step;
            cw[((d - kp) % d) as usize]
        };
        let agrees = face_level.is_some() == (eigenspace_dim > 0);
        rows.push(QuasiadjunctionRow { k, face_level, eigenspace_dim, agrees });
    }
    Ok(QuasiadjunctionReport { r, m, deck_degree: d, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{generic_arrangement_cone_complex, product_with_circle};
    use crate::polytope::ordinary_point_catalog;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn one_form_eigenspace_examples() {
        // elliptic double cover: y^2 = quartic
        let b = BranchDatum::new(2, vec![1, 1, 1, 1]).unwrap();
        assert_eq!(chevalley_weil_dims(&b).unwrap(), vec![0, 1]);
        assert_eq!(riemann_hurwitz_genus(&b).unwrap(), 1);

        // y^3 = cubic, unramified at infinity
        let b = BranchDatum::new(3, vec![1, 1, 1]).unwrap();
        assert_eq!(chevalley_weil_dims(&b).unwrap(), vec![0, 0, 1]);
        assert_eq!(riemann_hurwitz_genus(&b).unwrap(), 1);

        // y^5 = quintic: Fermat-style genus 6
        let b = BranchDatum::new(5, vec![1; 5]).unwrap();
        let dims = chevalley_weil_dims(&b).unwrap();
        assert_eq!(dims.iter().sum::<usize>(), 6);
        assert_eq!(riemann_hurwitz_genus(&b).unwrap(), 6);

        // disconnected data rejected
        assert!(matches!(
            chevalley_weil_dims(&BranchDatum::new(4, vec![2, 2]).unwrap()),
            Err(Error::DisconnectedCover { gcd: 2 })
        ));
        assert!(BranchDatum::new(3, vec![3]).is_err());
        assert!(BranchDatum::new(1, vec![1]).is_err());
    }

    #[test]
    fn eigenspace_sums_match_riemann_hurwitz() {
        let mut data = Vec::new();
        for m in 2u64..=7 {
            for r in 2usize..=7 {
                data.push(BranchDatum::new(m, vec![1; r]).unwrap());
            }
        }
        data.push(BranchDatum::new(4, vec![1, 1, 2]).unwrap());
        data.push(BranchDatum::new(6, vec![1, 2, 3]).unwrap());
        data.push(BranchDatum::new(5, vec![2, 3, 4, 1]).unwrap());
        data.push(BranchDatum::new(7, vec![1, 2, 4]).unwrap());
        data.push(BranchDatum::new(6, vec![1, 1, 1, 3]).unwrap());
        for b in &data {
            let dims = chevalley_weil_dims(b).unwrap();
            let genus = riemann_hurwitz_genus(b).unwrap();
            assert_eq!(
                dims.iter().sum::<usize>(),
                genus as usize,
                "for m={} a={:?}",
                b.deck_order(),
                b.multiplicities()
            );
            assert_eq!(dims[0], 0);
        }
    }

    #[test]
    fn eigenspaces_ignore_branch_point_order() {
        let b1 = BranchDatum::new(6, vec![1, 2, 3]).unwrap();
        let b2 = BranchDatum::new(6, vec![3, 1, 2]).unwrap();
        assert_eq!(chevalley_weil_dims(&b1).unwrap(), chevalley_weil_dims(&b2).unwrap());
    }

    #[test]
    fn branch_datum_json() {
        let b = BranchDatum::new(4, vec![1, 1, 2]).unwrap();
        assert!(!b.ramified_at_infinity());
        let back = BranchDatum::from_json(&b.to_json()).unwrap();
        assert_eq!(back, b);
        // inconsistent flag rejected
        let bad = "{\"m\": 4, \"points\": [{\"a\": 1}, {\"a\": 1}, {\"a\": 2}], \"ramified_at_infinity\": true}";
        assert!(BranchDatum::from_json(bad).is_err());
        // flag omitted: derived
        let ok = "{\"m\": 2, \"points\": [{\"a\": 1}, {\"a\": 1}, {\"a\": 1}]}";
        assert!(BranchDatum::from_json(ok).unwrap().ramified_at_infinity());
    }

    #[test]
    fn eigenspace_map_of_small_cone() {
        let c = generic_arrangement_cone_complex(3, 1).unwrap();
        let g = FiniteQuotient::coordinatewise(&[2, 2, 2]).unwrap();
        let eig = cover_homology_eigenspaces(&c, &g, 1).unwrap();
        assert_eq!(eig.len(), 8);
        for (chi, dim) in &eig {
            let expect = if chi.is_identity() {
                2 // Betti number of the base in degree 1
            } else if chi.satisfies_relation(&[1, 1, 1]) {
                1 // C(r-2, n) on the relation torus
            } else {
                0
            };
            assert_eq!(dim, &expect, "at {chi}");
        }
        // shape errors
        let wrong = FiniteQuotient::coordinatewise(&[2, 2]).unwrap();
        assert!(cover_homology_eigenspaces(&c, &wrong, 1).is_err());
        assert!(cover_homology_eigenspaces(&c, &g, 5).is_err());
    }

    #[test]
    fn double_cover_betti_decomposes() {
        // total-degree double cover of the 3-line cone complement
        let cone = generic_arrangement_cone_complex(3, 1).unwrap();
        let product = product_with_circle(&cone).unwrap();
        let g = FiniteQuotient::new(vec![2], IntMat::from_i64(&[vec![1, 1, 1]], 3)).unwrap();
        // eigenspace sum over the two characters
        let total: usize = g
            .characters()
            .iter()
            .map(|chi| match product.specialize(chi) {
                Ok(s) => s.homology_dims()[1],
                Err(_) => 0,
            })
            .sum();
        let lifted_b1 = lifted_cover_betti(&product, &g, 1).unwrap();
        assert_eq!(total, lifted_b1);
        assert_eq!(lifted_b1, 3);
        // lifting rejects complexes over eliminated variables
        assert!(lifted_cover_complex(&cone, &g).is_err());
    }

    #[test]
    fn lifted_complex_composes_to_zero() {
        let cone = generic_arrangement_cone_complex(4, 2).unwrap();
        let product = product_with_circle(&cone).unwrap();
        let g = FiniteQuotient::coordinatewise(&[2, 2, 2, 2]).unwrap();
        let lifted = lifted_cover_complex(&product, &g).unwrap();
        for w in lifted.windows(2) {
            assert!(w[0].mul(&w[1]).is_zero());
        }
        // character sum equals lifted Betti number in both degrees
        for degree in [1usize, 2] {
            let total: usize = g
                .characters()
                .iter()
                .map(|chi| match product.specialize(chi) {
                    Ok(s) => s.homology_dims()[degree],
                    Err(_) => 0,
                })
                .sum();
            assert_eq!(total, lifted_cover_betti(&product, &g, degree).unwrap(), "degree {degree}");
        }
    }

    #[test]
    fn exceptional_curve_data() {
        let (d, b) = exceptional_curve_cover(3, 6).unwrap();
        assert_eq!(d, 3);
        let b = b.unwrap();
        assert_eq!(b.deck_order(), 3);
        assert_eq!(b.multiplicities(), &[1, 1, 1]);
        assert!(!b.ramified_at_infinity());
        // coprime degree: trivial cover
        let (d, b) = exceptional_curve_cover(3, 5).unwrap();
        assert_eq!(d, 1);
        assert!(b.is_none());
    }

    #[test]
    fn quasiadjunction_agreement() {
        // triple point, deck order 3: k=1 on the face, k=2 off it
        let faces: Vec<QFace> =
            ordinary_point_catalog(3).unwrap().into_iter().map(|(_, f)| f).collect();
        let report = quasiadjunction_consistency(3, 3, &faces).unwrap();
        assert_eq!(report.deck_degree, 3);
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.rows[0].face_level.as_deref(), Some("1"));
        assert_eq!(report.rows[0].eigenspace_dim, 1);
        assert!(report.rows[0].agrees);
        assert_eq!(report.rows[1].face_level, None);
        assert_eq!(report.rows[1].eigenspace_dim, 0);
        assert!(report.all_agree());

        // four branches, deck order 2: the midpoint lies on the level-2 face
        let faces: Vec<QFace> =
            ordinary_point_catalog(4).unwrap().into_iter().map(|(_, f)| f).collect();
        let report = quasiadjunction_consistency(4, 2, &faces).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].face_level.as_deref(), Some("2"));
        assert_eq!(report.rows[0].eigenspace_dim, 1);
        assert!(report.all_agree());

        // nodal case: no faces, rational exceptional curve, vacuous agreement
        let report = quasiadjunction_consistency(2, 4, &[]).unwrap();
        assert!(report.all_agree());
        assert!(report.rows.iter().all(|row| row.eigenspace_dim == 0));
    }

    #[test]
    fn full_diagonal_family_agrees() {
        // every r, m in the desk range: face membership of the diagonal
        // character matches positivity of the exceptional-curve eigenspace
        for r in 2usize..=6 {
            let faces: Vec<QFace> =
                ordinary_point_catalog(r).unwrap().into_iter().map(|(_, f)| f).collect();
            for m in 2u64..=7 {
                let report = quasiadjunction_consistency(r, m, &faces).unwrap();
                assert!(report.all_agree(), "disagreement at r={r} m={m}: {report:?}");
            }
        }
    }

    #[test]
    fn characters_of_quotients() {
        let g = FiniteQuotient::coordinatewise(&[2, 3]).unwrap();
        let chars = g.characters();
        assert_eq!(chars.len(), 6);
        assert!(chars[0].is_identity());
        assert_eq!(chars[1], Character::new(vec![q(0, 1), q(1, 3)]));
        assert_eq!(chars[3], Character::new(vec![q(1, 2), q(0, 1)]));
        // non-coordinatewise map
        let g = FiniteQuotient::new(vec![2], IntMat::from_i64(&[vec![1, 1]], 2)).unwrap();
        let chars = g.characters();
        assert_eq!(chars.len(), 2);
        assert_eq!(chars[1], Character::new(vec![q(1, 2), q(1, 2)]));
        assert_eq!(g.order(), 2);
    }
}
