//! Chain complexes of free modules over Laurent polynomial rings.
//!
//! The central construction is the Koszul complex on a sequence of ring
//! elements, truncated at a chosen top degree.  Two geometric families are
//! packaged here:
//!
//! * [`generic_arrangement_cone_complex`] — the chain complex of the
//!   universal abelian cover of the boundary-sphere complement of a cone
//!   over `r` generic hyperplanes: the Koszul complex on
//!   `(t_1 - 1, ..., t_{r-1} - 1)` truncated at the skeleton degree `n`,
//!   over the ring `Z[t^pm]/(t_1...t_r - 1)` realized by eliminating `t_r`.
//! * [`weighted_cone_complex`] — the same with multiplicities: parameters
//!   `t_i^{d_i} - 1` and relation `t_1^{d_1} ... t_r^{d_r} = 1`.
//!
//! Complexes specialize exactly at finite-order characters, and homology
//! dimensions come from fraction-free elimination over cyclotomic fields.

use serde::{Deserialize, Serialize};

use itertools::Itertools;

use num_rational::BigRational;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intmat::rat_rank;
use crate::ring::character::Character;
use crate::ring::cyclotomic::{self, Cyclotomic};
use crate::ring::laurent::LaurentPoly;

/// Binomial coefficient C(n, k) as usize (0 when k > n).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    for i in 0..k {
        num = num * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(num).expect("binomial overflow")
}

/// A matrix with Laurent polynomial entries, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMat {
    nrows: usize,
    ncols: usize,
    nvars: usize,
    entries: Vec<Vec<LaurentPoly>>,
}

impl PolyMat {
    pub fn new(entries: Vec<Vec<LaurentPoly>>, ncols: usize, nvars: usize) -> Self {
        for row in &entries {
            assert_eq!(row.len(), ncols, "ragged polynomial matrix");
            for e in row {
                assert_eq!(e.nvars(), nvars, "entry variable count mismatch");
            }
        }
        PolyMat { nrows: entries.len(), ncols, nvars, entries }
    }

    pub fn zero(nrows: usize, ncols: usize, nvars: usize) -> Self {
        PolyMat {
            nrows,
            ncols,
            nvars,
            entries: vec![vec![LaurentPoly::zero(nvars); ncols]; nrows],
        }
    }

    /// Diagonal matrix with every diagonal entry equal to `p`.
    pub fn scalar(n: usize, p: &LaurentPoly) -> Self {
        let mut m = Self::zero(n, n, p.nvars());
        for i in 0..n {
            m.entries[i][i] = p.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, p: LaurentPoly) {
        assert_eq!(p.nvars(), self.nvars);
        self.entries[i][j] = p;
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.ncols, self.nrows, self.nvars);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.entries[j][i] = self.entries[i][j].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "matrix product shape mismatch");
        let mut out = Self::zero(self.nrows, other.ncols, self.nvars);
        for i in 0..self.nrows {
            for j in 0..other.ncols {
                let mut acc = LaurentPoly::zero(self.nvars);
                for k in 0..self.ncols {
                    if self.entries[i][k].is_zero() || other.entries[k][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j]));
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    /// Block matrix [[a, b], [c, d]]; shapes must agree along shared edges.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.nrows, b.nrows);
        assert_eq!(c.nrows, d.nrows);
        assert_eq!(a.ncols, c.ncols);
        assert_eq!(b.ncols, d.ncols);
        let mut entries = Vec::with_capacity(a.nrows + c.nrows);
        for i in 0..a.nrows {
            let mut row = a.entries[i].clone();
            row.extend(b.entries[i].iter().cloned());
            entries.push(row);
        }
        for i in 0..c.nrows {
            let mut row = c.entries[i].clone();
            row.extend(d.entries[i].iter().cloned());
            entries.push(row);
        }
        PolyMat::new(entries, a.ncols + b.ncols, a.nvars)
    }

    /// Reinterpret entries in a larger variable set.
    pub fn lift_vars(&self, new_nvars: usize) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| p.lift_vars(new_nvars)).collect())
            .collect();
        PolyMat::new(entries, self.ncols, new_nvars)
    }

    /// Entry-wise evaluation at a character of dimension `nvars`.  Identical
    /// entries (ubiquitous in Koszul-type matrices) are evaluated once.
    pub fn eval(&self, chi: &Character) -> Result<Vec<Vec<Cyclotomic>>> {
        let mut cache: std::collections::HashMap<&LaurentPoly, Cyclotomic> =
            std::collections::HashMap::new();
        let mut out = Vec::with_capacity(self.nrows);
        for row in &self.entries {
            let mut r = Vec::with_capacity(self.ncols);
            for p in row {
                let v = match cache.get(p) {
                    Some(v) => v.clone(),
                    None => {
                        let v = p.eval(chi)?;
                        cache.insert(p, v.clone());
                        v
                    }
                };
                r.push(v);
            }
            out.push(r);
        }
        Ok(out)
    }

    /// Entry-wise coefficient sums: the value at `t = 1` as a rational matrix.
    pub fn eval_at_one(&self) -> Vec<Vec<BigRational>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.coefficient_sum()).collect())
            .collect()
    }
}

/// A bounded chain complex of free modules over a Laurent polynomial ring,
/// with `differentials[k-1]` the map `d_k` from degree `k` to degree `k-1`
/// (shape `ranks[k-1]` by `ranks[k]`, acting on column vectors).
///
/// When `relation` is `Some(w)` with `w.len() == nvars + 1`, the complex
/// lives over the quotient ring in `nvars + 1` variables subject to
/// `t_1^{w_1} ... t_{nvars+1}^{w_{nvars+1}} = 1`, realized by eliminating the
/// last variable; characters supplied on all `nvars + 1` coordinates must
/// satisfy the relation.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainComplex {
    nvars: usize,
    relation: Option<Vec<i64>>,
    ranks: Vec<usize>,
    differentials: Vec<PolyMat>,
}

impl ChainComplex {
    pub fn new(
        nvars: usize,
        relation: Option<Vec<i64>>,
        ranks: Vec<usize>,
        differentials: Vec<PolyMat>,
    ) -> Result<Self> {
        let c = ChainComplex { nvars, relation, ranks, differentials };
        c.validate()?;
        Ok(c)
    }

    /// Check shapes, the relation arity, and the symbolic identity
    /// `d_{k-1} d_k = 0`.
    pub fn validate(&self) -> Result<()> {
        if self.ranks.is_empty() {
            return Err(Error::Shape("complex must have at least degree 0".into()));
        }
        if self.differentials.len() + 1 != self.ranks.len() {
            return Err(Error::Shape(format!(
                "{} ranks require {} differentials, found {}",
                self.ranks.len(),
                self.ranks.len() - 1,
                self.differentials.len()
            )));
        }
        if let Some(w) = &self.relation {
            if w.len() != self.nvars + 1 {
                return Err(Error::Shape(format!(
                    "relation arity {} does not match {} + 1 variables",
                    w.len(),
                    self.nvars
                )));
            }
        }
        for (k, d) in self.differentials.iter().enumerate() {
            let k = k + 1;
            if d.nrows() != self.ranks[k - 1] || d.ncols() != self.ranks[k] {
                return Err(Error::Shape(format!(
                    "d_{k} has shape {}x{}, expected {}x{}",
                    d.nrows(),
                    d.ncols(),
                    self.ranks[k - 1],
                    self.ranks[k]
                )));
            }
            if d.nvars() != self.nvars {
                return Err(Error::Shape(format!(
                    "d_{k} entries use {} variables, complex has {}",
                    d.nvars(),
                    self.nvars
                )));
            }
        }
        for k in 2..self.ranks.len() {
            let prod = self.differentials[k - 2].mul(&self.differentials[k - 1]);
            if !prod.is_zero() {
                return Err(Error::NotAComplex { degree: k });
            }
        }
        Ok(())
    }

    /// Number of free variables of the underlying Laurent ring (after any
    /// elimination recorded in `relation`).
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Weight vector of the eliminated monomial relation, if any.
    pub fn relation(&self) -> Option<&[i64]> {
        self.relation.as_deref()
    }

    /// Number of torus coordinates a full character carries: `nvars + 1`
    /// for an eliminated quotient-ring model, `nvars` otherwise.
    pub fn character_dim(&self) -> usize {
        match &self.relation {
            Some(w) => w.len(),
            None => self.nvars,
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    /// The differential `d_k` (degree `k` to `k-1`), for `1 <= k <= top`.
    pub fn differential(&self, k: usize) -> &PolyMat {
        &self.differentials[k - 1]
    }

    /// Attach a quotient-ring relation `t_1^{w_1}...t_{nvars+1}^{w_{nvars+1}} = 1`.
    pub fn with_relation(mut self, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != self.nvars + 1 {
            return Err(Error::Shape(format!(
                "relation arity {} does not match {} + 1 variables",
                weights.len(),
                self.nvars
            )));
        }
        self.relation = Some(weights);
        Ok(self)
    }

    /// Evaluate every differential entry at a finite-order character.
    ///
    /// For an eliminated quotient-ring complex, `chi` may carry all
    /// `nvars + 1` torus coordinates — then it must satisfy the recorded
    /// relation, and the eliminated last coordinate is dropped — or just the
    /// `nvars` free coordinates.
    pub fn specialize(&self, chi: &Character) -> Result<SpecializedComplex> {
        let free_chi: Character = match &self.relation {
            Some(w) if chi.dim() == w.len() => {
                if !chi.satisfies_relation(w) {
                    return Err(Error::RelationViolation {
                        sum: chi.weighted_sum(w).to_string(),
                    });
                }
                Character::new(chi.coordinates()[..self.nvars].to_vec())
            }
            _ => {
                if chi.dim() != self.nvars {
                    return Err(Error::Shape(format!(
                        "character dimension {} matches neither {} free variables nor {} torus coordinates",
                        chi.dim(),
                        self.nvars,
                        self.character_dim()
                    )));
                }
                chi.clone()
            }
        };
        let differentials = self
            .differentials
            .iter()
            .map(|d| d.eval(&free_chi))
            .collect::<Result<Vec<_>>>()?;
        Ok(SpecializedComplex {
            conductor: free_chi.order(),
            ranks: self.ranks.clone(),
            differentials,
        })
    }

    /// Homology dimensions of the complex at `t = 1` computed purely with
    /// rational arithmetic — an independent cross-check for
    /// [`SpecializedComplex::homology_dims`] at the identity character.
    pub fn rational_homology_at_identity(&self) -> Vec<usize> {
        let ranks_of_d: Vec<usize> = self
            .differentials
            .iter()
            .map(|d| rat_rank(&d.eval_at_one()))
            .collect();
        dims_from_ranks(&self.ranks, &ranks_of_d)
    }

    pub fn to_json(&self) -> String {
        let dto = ComplexDto {
            variables: self.nvars,
            relation: self.relation.clone(),
            ranks: self.ranks.clone(),
            differentials: self
                .differentials
                .iter()
                .map(|d| {
                    d.rows()
                        .iter()
                        .map(|row| row.iter().map(|p| p.to_string()).collect())
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("complex serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: ComplexDto =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("complex JSON: {e}")))?;
        let mut differentials = Vec::with_capacity(dto.differentials.len());
        for (k, rows) in dto.differentials.iter().enumerate() {
            let nrows = *dto
                .ranks
                .get(k)
                .ok_or_else(|| Error::Shape("more differentials than ranks".into()))?;
            let ncols = *dto
                .ranks
                .get(k + 1)
                .ok_or_else(|| Error::Shape("more differentials than ranks".into()))?;
            if rows.len() != nrows {
                return Err(Error::Shape(format!(
                    "differential {} has {} rows, expected {}",
                    k + 1,
                    rows.len(),
                    nrows
                )));
            }
            let mut entries = Vec::with_capacity(nrows);
            for row in rows {
                if row.len() != ncols {
                    return Err(Error::Shape(format!(
                        "differential {} has a row of length {}, expected {}",
                        k + 1,
                        row.len(),
                        ncols
                    )));
                }
                let parsed: Vec<LaurentPoly> = row
                    .iter()
                    .map(|s| LaurentPoly::parse(s, dto.variables))
                    .collect::<Result<_>>()?;
                entries.push(parsed);
            }
            differentials.push(PolyMat::new(entries, ncols, dto.variables));
        }
        ChainComplex::new(dto.variables, dto.relation, dto.ranks, differentials)
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexDto {
    variables: usize,
    #[serde(default)]
    relation: Option<Vec<i64>>,
    ranks: Vec<usize>,
    differentials: Vec<Vec<Vec<String>>>,
}

/// A chain complex with entries evaluated in a cyclotomic field.
#[derive(Debug, Clone)]
pub struct SpecializedComplex {
    conductor: u64,
    ranks: Vec<usize>,
    differentials: Vec<Vec<Vec<Cyclotomic>>>,
}

impl SpecializedComplex {
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differential(&self, k: usize) -> &[Vec<Cyclotomic>] {
        &self.differentials[k - 1]
    }

    /// Ranks of the specialized differentials `d_1, ..., d_top`, in order.
    /// From these every homology dimension follows by rank-nullity; they also
    /// determine the dimensions for every shorter truncation of the same
    /// complex (`dim ker d_n = ranks[n] - rank d_n`).
    pub fn differential_ranks(&self) -> Vec<usize> {
        self.differentials.iter().map(|d| cyclotomic::rank(d)).collect()
    }

    /// `dim H_k = ranks[k] - rank(d_k) - rank(d_{k+1})` for every degree,
    /// with the out-of-range differentials taken to be zero; in particular
    /// the top degree of a truncated skeleton complex has `H_top = ker d_top`.
    pub fn homology_dims(&self) -> Vec<usize> {
        dims_from_ranks(&self.ranks, &self.differential_ranks())
    }
}

/// Homology dimension in one degree at every listed character, computed in
/// parallel.  Characters violating the cone relation support no homology and
/// report zero; the identity is allowed and reports its Betti number.
pub fn homology_dim_sweep(
    c: &ChainComplex,
    degree: usize,
    chars: &[Character],
) -> Result<Vec<usize>> {
    if degree > c.top_degree() {
        return Err(Error::Shape(format!(
            "degree {degree} exceeds top degree {}",
            c.top_degree()
        )));
    }
    chars
        .par_iter()
        .map(|chi| match c.specialize(chi) {
            Ok(s) => Ok(s.homology_dims()[degree]),
            Err(Error::RelationViolation { .. }) => Ok(0),
            Err(e) => Err(e),
        })
        .collect()
}

fn dims_from_ranks(ranks: &[usize], ranks_of_d: &[usize]) -> Vec<usize> {
    let top = ranks.len() - 1;
    (0..=top)
        .map(|k| {
            let below = if k == 0 { 0 } else { ranks_of_d[k - 1] };
            let above = if k == top { 0 } else { ranks_of_d[k] };
            ranks[k]
                .checked_sub(below + above)
                .expect("homology dimension must be nonnegative")
        })
        .collect()
}

/// The Koszul complex on `params` truncated at `top_degree`: degree-`k` term
/// is the free module on the k-element subsets of the parameter indices in
/// lexicographic order, with the standard alternating differential
/// `d(e_S) = sum_j (-1)^{j-1} p_{i_j} e_{S minus i_j}` for `S = {i_1 < ...}`.
pub fn koszul_complex(r: usize, params: &[LaurentPoly], top_degree: usize) -> Result<ChainComplex> {
    if params.is_empty() {
        return Err(Error::Shape("Koszul complex needs at least one parameter".into()));
    }
    let s = params.len();
    if top_degree > s {
        return Err(Error::Shape(format!(
            "top degree {top_degree} exceeds parameter count {s}"
        )));
    }
    for p in params {
        if p.nvars() != r {
            return Err(Error::Shape(format!(
                "parameter in {} variables, expected {r}",
                p.nvars()
            )));
        }
    }
    let ranks: Vec<usize> = (0..=top_degree).map(|k| binomial(s, k)).collect();
    let mut differentials = Vec::with_capacity(top_degree);
    for k in 1..=top_degree {
        differentials.push(koszul_differential(r, params, k));
    }
    ChainComplex::new(r, None, ranks, differentials)
}

/// Lexicographically ordered k-element subsets of `0..s`.
pub fn subset_basis(s: usize, k: usize) -> Vec<Vec<usize>> {
    (0..s).combinations(k).collect()
}

fn koszul_differential(r: usize, params: &[LaurentPoly], k: usize) -> PolyMat {
    let s = params.len();
    let domain = subset_basis(s, k);
    let codomain = subset_basis(s, k - 1);
    let col_index: std::collections::HashMap<&[usize], usize> = codomain
        .iter()
        .enumerate()
        .map(|(i, sub)| (sub.as_slice(), i))
        .collect();
    let mut m = PolyMat::zero(codomain.len(), domain.len(), r);
    for (col, sub) in domain.iter().enumerate() {
        for (j, &i_j) in sub.iter().enumerate() {
            let mut face = sub.clone();
            face.remove(j);
            let row = col_index[face.as_slice()];
            let sign = if j % 2 == 0 { 1i64 } else { -1 };
            let term = params[i_j].scale(&BigRational::from_integer(sign.into()));
            m.set_entry(row, col, term);
        }
    }
    m
}

/// Chain complex of the universal abelian cover of the boundary-sphere
/// complement of the cone over `r` generic hyperplanes, truncated at the
/// skeleton degree `n`: the Koszul complex on `(t_1 - 1, ..., t_{r-1} - 1)`
/// over `Z[t_1^pm, ..., t_r^pm]/(t_1 ... t_r - 1)`, with the last variable
/// eliminated and the relation recorded so that full `r`-coordinate
/// characters can be checked and reduced.
pub fn generic_arrangement_cone_complex(r: usize, n: usize) -> Result<ChainComplex> {
    weighted_cone_complex(&vec![1; r], n)
}

/// Weighted variant: Koszul complex on `(t_i^{d_i} - 1)` for `i < r`, over
/// the quotient by `t_1^{d_1} ... t_r^{d_r} = 1`.
pub fn weighted_cone_complex(degrees: &[i64], n: usize) -> Result<ChainComplex> {
    let r = degrees.len();
    if r < 2 {
        return Err(Error::Shape("need at least two components".into()));
    }
    if degrees.iter().any(|&d| d < 1) {
        return Err(Error::Shape("multiplicities must be positive".into()));
    }
    if n < 1 || n > r - 1 {
        return Err(Error::Shape(format!(
            "skeleton degree {n} out of range 1..={}",
            r - 1
        )));
    }
    let nvars = r - 1;
    let params: Vec<LaurentPoly> = (0..nvars)
        .map(|i| {
            LaurentPoly::var_pow(nvars, i, degrees[i]).sub(&LaurentPoly::one(nvars))
        })
        .collect();
    let c = koszul_complex(nvars, &params, n)?;
    c.with_relation(degrees.to_vec())
}

/// Tensor the complex with the two-term complex `R --(T - 1)--> R`, where
/// `T` is the recorded relation monomial, lifting everything back to the
/// full variable set.  The result is an honest complex over the full Laurent
/// ring: every character specializes, and by the tensor decomposition its
/// homology at a character `chi` vanishes unless `chi` satisfies the
/// relation, in which case `H_k = H_k(C, chi) + H_{k-1}(C, chi)`.
pub fn product_with_circle(c: &ChainComplex) -> Result<ChainComplex> {
    let Some(w) = c.relation() else {
        return Err(Error::Shape(
            "product-with-circle model needs an eliminated quotient-ring complex".into(),
        ));
    };
    let r = w.len();
    let t_full = LaurentPoly::monomial(
        r,
        w.to_vec(),
        BigRational::from_integer(1.into()),
    );
    let circle = t_full.sub(&LaurentPoly::one(r));
    let top = c.top_degree();
    let new_top = top + 1;
    let mut ranks = Vec::with_capacity(new_top + 1);
    for k in 0..=new_top {
        let a = if k <= top { c.ranks()[k] } else { 0 };
        let b = if k >= 1 && k - 1 <= top { c.ranks()[k - 1] } else { 0 };
        ranks.push(a + b);
    }
    let lifted: Vec<PolyMat> = (1..=top).map(|k| c.differential(k).lift_vars(r)).collect();
    let zero_mat = |nr: usize, nc: usize| PolyMat::zero(nr, nc, r);
    let mut differentials = Vec::with_capacity(new_top);
    for k in 1..=new_top {
        // C'_k = C_k + C_{k-1},  d' = [[d_k, (-1)^{k-1}(T-1)I], [0, d_{k-1}]]
        let ck = if k <= top { c.ranks()[k] } else { 0 };
        let ck1 = c.ranks()[k - 1];
        let ck_lo = c.ranks()[k - 1];
        let ck1_lo = if k >= 2 { c.ranks()[k - 2] } else { 0 };
        let a = if k <= top { lifted[k - 1].clone() } else { zero_mat(ck_lo, 0) };
        let sign = if k % 2 == 1 { 1i64 } else { -1 };
        let b = PolyMat::scalar(ck1, &circle.scale(&BigRational::from_integer(sign.into())));
        let c_blk = zero_mat(ck1_lo, ck);
        let d_blk = if k >= 2 { lifted[k - 2].clone() } else { zero_mat(0, ck1) };
        differentials.push(PolyMat::block(&a, &b, &c_blk, &d_blk));
    }
    ChainComplex::new(r, None, ranks, differentials)
}
