//! Finitely presented modules over Laurent rings and their characteristic
//! varieties.
//!
//! A module presented by an `m x n` polynomial matrix (m relations acting on
//! n generators) has characteristic varieties `V_k`: the zero sets of the
//! ideals of `(n-k+1)`-minors, equivalently the loci where the fiber
//! dimension `n - rank` of the presentation is at least `k`.  Away from the
//! identity character this agrees with the locus where local-system homology
//! in the relevant degree has dimension at least `k`.
//!
//! Supporting machinery: translated subtori of the character torus with
//! canonical (Hermite) forms, image subtori under maps of character tori
//! induced by homology maps, and grid-evidence verification reports.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{binomial, koszul_complex, ChainComplex, PolyMat};
use crate::error::{Error, Result};
use crate::intmat::{rat_solve, IntMat};
use crate::ring::character::{full_grid, Character};
use crate::ring::cyclotomic;
use crate::ring::laurent::LaurentPoly;

/// Default budget for minor expansion: the product of row-subset and
/// column-subset counts may not exceed this.
pub const DEFAULT_MINOR_CAP: u128 = 1_000_000;

/// Default maximum number of on-subtorus (and off-subtorus) samples used by
/// [`verify_subtorus`].
pub const DEFAULT_SAMPLE_CAP: usize = 512;

/// A finitely presented module over a Laurent polynomial ring: `phi` is an
/// `m x n` matrix of relations acting on `n` generators (rows = relations).
#[derive(Debug, Clone, PartialEq)]
pub struct ModulePresentation {
    nvars: usize,
    relation: Option<Vec<i64>>,
    phi: PolyMat,
}

impl ModulePresentation {
    pub fn new(nvars: usize, relation: Option<Vec<i64>>, phi: PolyMat) -> Result<Self> {
        if phi.ncols() == 0 {
            return Err(Error::Shape("presentation needs at least one generator".into()));
        }
        if phi.nvars() != nvars {
            return Err(Error::Shape(format!(
                "presentation entries use {} variables, declared {}",
                phi.nvars(),
                nvars
            )));
        }
        if let Some(w) = &relation {
            if w.len() != nvars {
                return Err(Error::Shape(format!(
                    "relation weight vector length {} does not match {} variables",
                    w.len(),
                    nvars
                )));
            }
        }
        Ok(ModulePresentation { nvars, relation, phi })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Weights of the quotient-ring relation this module came from, if any
    /// (metadata: the matrix already enforces it through a `T - 1` block).
    pub fn relation(&self) -> Option<&[i64]> {
        self.relation.as_deref()
    }

    pub fn matrix(&self) -> &PolyMat {
        &self.phi
    }

    pub fn num_generators(&self) -> usize {
        self.phi.ncols()
    }

    pub fn num_relations(&self) -> usize {
        self.phi.nrows()
    }

    /// Rank of the presentation matrix evaluated at a character.
    pub fn rank_at(&self, chi: &Character) -> Result<usize> {
        Ok(cyclotomic::rank(&self.phi.eval(chi)?))
    }

    /// Dimension of the cokernel fiber at a character:
    /// `generators - rank(phi(chi))`.
    pub fn fiber_dim(&self, chi: &Character) -> Result<usize> {
        Ok(self.num_generators() - self.rank_at(chi)?)
    }
}

/// A finite system of `(n-k+1) x (n-k+1)` minors of the presentation matrix
/// (n = generator count) whose common zero set equals the zero set of the
/// full minor ideal, expanded exactly.  Identically zero minors are dropped,
/// and when the relations contain a scalar block `f*I` covering every
/// generator the mixed minors are dropped too (see below); both prunings
/// leave the all-generators-vanish predicate unchanged at every character.
/// An empty sequence means every minor of that order vanishes identically
/// (or no such minor exists), so the zero set is everything.  Expansion work
/// is bounded by `size_cap`: the number of row subsets times column subsets
/// actually expanded must not exceed it.
pub fn fitting_ideal_generators(
    p: &ModulePresentation,
    k: usize,
    size_cap: u128,
) -> Result<Vec<LaurentPoly>> {
    let n = p.num_generators();
    let m = p.num_relations();
    if k > n {
        return Err(Error::Shape(format!(
            "depth {k} exceeds generator count {n}"
        )));
    }
    let j = n - k + 1;
    if j > m || j > n {
        return Ok(Vec::new());
    }
    if m > 128 || n > 128 {
        return Err(Error::Domain(
            "presentation too large for minor bookkeeping (more than 128 rows or columns)".into(),
        ));
    }
    // Scalar-block reduction.  If the rows contain f*I on the full generator
    // set, then a j-minor using q >= 1 scalar rows Laplace-expands to
    // +/- f^q times a (j-q)-minor of the remaining rows, while f^j is itself
    // a j-minor (all rows scalar).  Wherever f^j vanishes so does every
    // mixed minor, so the zero set of the whole system is already cut out by
    // f^j together with the j-minors that avoid the scalar rows entirely.
    if let Some((f, rest_rows)) = scalar_block_split(p.matrix()) {
        let mut out = vec![f.pow(j as u32)];
        out.extend(block_minors(p.matrix(), &rest_rows, j, size_cap)?);
        return Ok(out);
    }
    let all_rows: Vec<usize> = (0..m).collect();
    block_minors(p.matrix(), &all_rows, j, size_cap)
}

/// The nonzero `j x j` minors of `phi` restricted to the given rows.  Minor
/// orders above the generic rank of that row block are recognized by one
/// fraction-free elimination and yield an empty list without enumeration.
fn block_minors(
    phi: &PolyMat,
    rows_avail: &[usize],
    j: usize,
    size_cap: u128,
) -> Result<Vec<LaurentPoly>> {
    if j > rows_avail.len() || j > phi.ncols() {
        return Ok(Vec::new());
    }
    let count = binomial_u128(rows_avail.len(), j) * binomial_u128(phi.ncols(), j);
    if count > size_cap {
        return Err(Error::MinorBudgetExceeded { count, cap: size_cap });
    }
    // Minors of order above the generic rank vanish identically and
    // constrain nothing, so one symbolic elimination up front replaces what
    // would be an expensive enumeration of zero determinants.
    if j > generic_rank_of_rows(phi, rows_avail) {
        return Ok(Vec::new());
    }
    let mut memo: HashMap<(u128, u128), LaurentPoly> = HashMap::new();
    let row_subsets = crate::complex::subset_basis(rows_avail.len(), j);
    let col_subsets = crate::complex::subset_basis(phi.ncols(), j);
    let mut out = Vec::new();
    for row_pick in &row_subsets {
        let rows: Vec<usize> = row_pick.iter().map(|&i| rows_avail[i]).collect();
        for cols in &col_subsets {
            // Sparse matrices (each column touching few rows) expand fastest
            // by plain depth-first cofactors, whose tree is pruned to the
            // systems of distinct representatives; dense ones would blow up
            // there, so they go to the memoized expansion instead.  The
            // product of per-column nonzero counts bounds the tree size.
            let mut tree_bound: u128 = 1;
            for &c in cols {
                let nnz = rows.iter().filter(|&&r| !phi.entry(r, c).is_zero()).count() as u128;
                tree_bound = tree_bound.saturating_mul(nnz.max(1));
            }
            let det = if tree_bound <= MINOR_PATH_BUDGET as u128 {
                let mut nodes = 0usize;
                minor_det_bounded(phi, &mut rows.clone(), cols, &mut nodes, usize::MAX)
                    .expect("unbounded depth-first expansion always completes")
            } else {
                minor_det(phi, &rows, cols, &mut memo)
            };
            // A zero minor constrains nothing; dropping it leaves the ideal's
            // zero set and the all-generators-vanish predicate unchanged.
            if !det.is_zero() {
                out.push(det);
            }
        }
    }
    Ok(out)
}

/// Looks for a scalar block inside the rows of `phi`: a set of rows, one per
/// column, each supported on that single column with one common nonzero
/// entry `f`.  Returns `f` together with the rows outside the block.
fn scalar_block_split(phi: &PolyMat) -> Option<(LaurentPoly, Vec<usize>)> {
    let (m, g) = (phi.nrows(), phi.ncols());
    if g == 0 {
        return None;
    }
    // Rows whose single nonzero entry sits in a given column.
    let mut singleton_rows: Vec<Vec<usize>> = vec![Vec::new(); g];
    for i in 0..m {
        let nz: Vec<usize> = (0..g).filter(|&c| !phi.entry(i, c).is_zero()).collect();
        if let [c] = nz[..] {
            singleton_rows[c].push(i);
        }
    }
    // Each candidate f comes from the first column; every other column must
    // supply a singleton row carrying the same entry.  A singleton row
    // belongs to exactly one column, so the chosen rows are distinct.
    'candidates: for &r0 in &singleton_rows[0] {
        let f = phi.entry(r0, 0);
        let mut chosen = vec![r0];
        for (c, rows) in singleton_rows.iter().enumerate().skip(1) {
            match rows.iter().find(|&&i| *phi.entry(i, c) == *f) {
                Some(&i) => chosen.push(i),
                None => continue 'candidates,
            }
        }
        let rest: Vec<usize> = (0..m).filter(|i| !chosen.contains(i)).collect();
        return Some((f.clone(), rest));
    }
    None
}

/// Rank of a polynomial matrix over the fraction field, i.e. the largest
/// order of a minor that is not identically zero.  Computed by fraction-free
/// (Bareiss) elimination with full pivoting: every intermediate entry is a
/// minor of the original matrix, and each update divides exactly by the
/// previous pivot, so no fractions of polynomials ever appear.
pub fn generic_rank(phi: &PolyMat) -> usize {
    let all_rows: Vec<usize> = (0..phi.nrows()).collect();
    generic_rank_of_rows(phi, &all_rows)
}

/// [`generic_rank`] of the submatrix on the given rows.
fn generic_rank_of_rows(phi: &PolyMat, rows: &[usize]) -> usize {
    let (nr, nc) = (rows.len(), phi.ncols());
    let mut a: Vec<Vec<LaurentPoly>> =
        rows.iter().map(|&i| (0..nc).map(|j| phi.entry(i, j).clone()).collect()).collect();
    let mut prev = LaurentPoly::one(phi.nvars());
    let mut s = 0usize;
    while s < nr && s < nc {
        // Full pivoting on the sparsest nonzero entry keeps the symbolic
        // intermediates as small as the matrix allows.
        let mut pivot: Option<(usize, usize, usize)> = None;
        for i in s..nr {
            for j in s..nc {
                let t = a[i][j].num_terms();
                if t > 0 && pivot.map_or(true, |(_, _, best)| t < best) {
                    pivot = Some((i, j, t));
                }
            }
        }
        let Some((pi, pj, _)) = pivot else {
            break;
        };
        a.swap(s, pi);
        if pj != s {
            for row in a.iter_mut() {
                row.swap(s, pj);
            }
        }
        for i in s + 1..nr {
            for j in s + 1..nc {
                let num = a[s][s].mul(&a[i][j]).sub(&a[i][s].mul(&a[s][j]));
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination divides exactly by the previous pivot");
            }
            a[i][s] = LaurentPoly::zero(phi.nvars());
        }
        prev = a[s][s].clone();
        s += 1;
    }
    s
}

/// Depth-first cofactor nodes allowed per minor before falling back to the
/// memoized expansion.
const MINOR_PATH_BUDGET: usize = 1 << 20;

/// Determinant of the submatrix on `rows x cols` by memoless depth-first
/// cofactor expansion along the first column, skipping zero entries.  The
/// node count is charged against `budget`; `None` means the budget ran out
/// (`rows` is then left in an unspecified order, so callers pass a scratch
/// copy).  On sparse matrices this visits only the partial systems of
/// distinct representatives and never stores large intermediate polynomials.
fn minor_det_bounded(
    phi: &PolyMat,
    rows: &mut Vec<usize>,
    cols: &[usize],
    nodes: &mut usize,
    budget: usize,
) -> Option<LaurentPoly> {
    *nodes += 1;
    if *nodes > budget {
        return None;
    }
    let Some((&col, rest_cols)) = cols.split_first() else {
        return Some(LaurentPoly::one(phi.nvars()));
    };
    let mut acc = LaurentPoly::zero(phi.nvars());
    for pos in 0..rows.len() {
        let row = rows[pos];
        let e = phi.entry(row, col);
        if e.is_zero() {
            continue;
        }
        rows.remove(pos);
        let sub = minor_det_bounded(phi, rows, rest_cols, nodes, budget);
        rows.insert(pos, row);
        let sub = sub?;
        let signed = if pos % 2 == 0 { e.mul(&sub) } else { e.mul(&sub).neg() };
        acc = acc.add(&signed);
    }
    Some(acc)
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn mask(ixs: &[usize]) -> u128 {
    ixs.iter().fold(0u128, |m, &i| m | (1u128 << i))
}

/// Determinant of the submatrix on `rows x cols` by cofactor expansion along
/// the first column, memoized on the index-subset pair so submatrices shared
/// between different minors are expanded once.
fn minor_det(
    phi: &PolyMat,
    rows: &[usize],
    cols: &[usize],
    memo: &mut HashMap<(u128, u128), LaurentPoly>,
) -> LaurentPoly {
    debug_assert_eq!(rows.len(), cols.len());
    if rows.is_empty() {
        return LaurentPoly::one(phi.nvars());
    }
    let key = (mask(rows), mask(cols));
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut acc = LaurentPoly::zero(phi.nvars());
    let col = cols[0];
    let rest_cols = &cols[1..];
    for (pos, &row) in rows.iter().enumerate() {
        let e = phi.entry(row, col);
        if e.is_zero() {
            continue;
        }
        let mut rest_rows = rows.to_vec();
        rest_rows.remove(pos);
        let sub = minor_det(phi, &rest_rows, rest_cols, memo);
        let signed = if pos % 2 == 0 { e.mul(&sub) } else { e.mul(&sub).neg() };
        acc = acc.add(&signed);
    }
    memo.insert(key, acc.clone());
    acc
}

/// Whether `chi` lies in the depth-`k` characteristic variety measured in
/// homological `degree`: `dim H_degree(specialize(c, chi)) >= k`.  The
/// identity character is excluded from this definition.
pub fn charvar_membership(
    c: &ChainComplex,
    chi: &Character,
    k: usize,
    degree: usize,
) -> Result<bool> {
    if chi.is_identity() {
        return Err(Error::IdentityExcluded { context: "characteristic variety membership" });
    }
    if degree > c.top_degree() {
        return Err(Error::Shape(format!(
            "degree {degree} exceeds complex top degree {}",
            c.top_degree()
        )));
    }
    let dims = c.specialize(chi)?.homology_dims();
    Ok(dims[degree] >= k)
}

/// Membership with the quotient-ring convention: a character that violates
/// the recorded monomial relation supports no homology at all, so it is a
/// non-member for every positive depth (and a member at depth 0).
pub fn charvar_membership_extended(
    c: &ChainComplex,
    chi: &Character,
    k: usize,
    degree: usize,
) -> Result<bool> {
    match charvar_membership(c, chi, k, degree) {
        Ok(b) => Ok(b),
        Err(Error::RelationViolation { .. }) => Ok(k == 0),
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------------
// Presentations of the first nontrivial homotopy module of cone complements
// ---------------------------------------------------------------------------

fn cone_koszul(degrees: &[i64], top: usize) -> Result<ChainComplex> {
    let r = degrees.len();
    let nvars = r - 1;
    let params: Vec<LaurentPoly> = (0..nvars)
        .map(|i| LaurentPoly::var_pow(nvars, i, degrees[i]).sub(&LaurentPoly::one(nvars)))
        .collect();
    koszul_complex(nvars, &params, top)
}

/// Presentation of the degree-`n` homotopy module of the complement of a
/// cone over `r` components with multiplicities `degrees`, in the
/// kernel form: the module is `Ker d_n`, and exactness of the Koszul complex
/// identifies it with the cokernel of `d_{n+2}` on the basis of
/// `(n+1)`-element index subsets.  The presentation is written over the full
/// `r`-variable ring, with `T - 1` rows (T the relation monomial) enforcing
/// the quotient: characters off the relation torus get full rank, hence
/// fiber dimension zero.
pub fn homotopy_module_presentation(degrees: &[i64], n: usize) -> Result<ModulePresentation> {
    cone_presentation(degrees, n, false)
}

/// The alternative surjection form of the same module, generated by the
/// `n`-element subset basis with relations from `d_{n+1}`.  Its fiber
/// dimensions differ from the kernel form; [`compare_module_models`] reports
/// both without resolving the discrepancy.
pub fn homotopy_module_surjection_presentation(
    degrees: &[i64],
    n: usize,
) -> Result<ModulePresentation> {
    cone_presentation(degrees, n, true)
}

fn cone_presentation(degrees: &[i64], n: usize, surjection: bool) -> Result<ModulePresentation> {
    let r = degrees.len();
    if r < 3 {
        return Err(Error::Shape("need at least three components".into()));
    }
    if degrees.iter().any(|&d| d < 1) {
        return Err(Error::Shape("multiplicities must be positive".into()));
    }
    let ell = r - 1;
    let gen_degree = if surjection { n } else { n + 1 };
    if n < 1 || gen_degree > ell {
        return Err(Error::Shape(format!(
            "degree {n} out of range for {r} components"
        )));
    }
    let n_gens = binomial(ell, gen_degree);
    let rel_degree = gen_degree + 1;
    let differential_rows = if rel_degree <= ell {
        let c = cone_koszul(degrees, rel_degree)?;
        Some(c.differential(rel_degree).transpose())
    } else {
        None
    };
    let t_monomial = LaurentPoly::monomial(
        r,
        degrees.to_vec(),
        BigRational::from_integer(1.into()),
    );
    let quotient_row_block =
        PolyMat::scalar(n_gens, &t_monomial.sub(&LaurentPoly::one(r)));
    let mut rows: Vec<Vec<LaurentPoly>> = Vec::new();
    if let Some(d) = differential_rows {
        let lifted = d.lift_vars(r);
        rows.extend(lifted.rows().iter().cloned());
    }
    rows.extend(quotient_row_block.rows().iter().cloned());
    let phi = PolyMat::new(rows, n_gens, r);
    ModulePresentation::new(r, Some(degrees.to_vec()), phi)
}

/// Fiber dimensions of the kernel-form and surjection-form presentations at
/// each sampled character, next to the homology dimension computed from the
/// skeleton complex.  The two module descriptions in circulation for this
/// module are not obviously isomorphic; this report exposes the numbers and
/// takes no side.
#[derive(Debug, Clone, Serialize)]
pub struct ModelComparison {
    pub degree: usize,
    pub rows: Vec<ModelComparisonRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelComparisonRow {
    pub character: String,
    pub homology_dim: usize,
    pub kernel_model_fiber: usize,
    pub surjection_model_fiber: usize,
}

pub fn compare_module_models(
    degrees: &[i64],
    n: usize,
    chars: &[Character],
) -> Result<ModelComparison> {
    let kernel = homotopy_module_presentation(degrees, n)?;
    let surjection = homotopy_module_surjection_presentation(degrees, n)?;
    let complex = crate::complex::weighted_cone_complex(degrees, n)?;
    let mut rows = Vec::with_capacity(chars.len());
    for chi in chars {
        let dims = complex.specialize(chi)?.homology_dims();
        rows.push(ModelComparisonRow {
            character: chi.coordinate_string(),
            homology_dim: dims[n],
            kernel_model_fiber: kernel.fiber_dim(chi)?,
            surjection_model_fiber: surjection.fiber_dim(chi)?,
        });
    }
    Ok(ModelComparison { degree: n, rows })
}

// ---------------------------------------------------------------------------
// Translated subtori
// ---------------------------------------------------------------------------

/// A translated subtorus of the character torus `(R/Z)^r`: the solution set
/// of `A kappa = b (mod Z)` for an integer matrix `A` and rational offsets
/// `b`.  Stored in canonical form: `A` in Hermite normal form with
/// independent rows and offsets reduced into `[0, 1)`; inconsistent systems
/// collapse to a canonical empty representative.  Two subtori are equal as
/// sets if and only if their canonical forms coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslatedSubtorus {
    nvars: usize,
    equations: IntMat,
    offsets: Vec<BigRational>,
    empty: bool,
}

impl TranslatedSubtorus {
    /// Build from a raw system; rows may be dependent or inconsistent.
    pub fn new(nvars: usize, equations: IntMat, offsets: Vec<BigRational>) -> Result<Self> {
        if equations.ncols() != nvars {
            return Err(Error::Shape(format!(
                "equations have {} columns for {} torus coordinates",
                equations.ncols(),
                nvars
            )));
        }
        if equations.nrows() != offsets.len() {
            return Err(Error::Shape(format!(
                "{} equations with {} offsets",
                equations.nrows(),
                offsets.len()
            )));
        }
        Ok(Self::canonicalize(nvars, equations, offsets))
    }

    pub fn from_rows(nvars: usize, rows: &[Vec<i64>], offsets: &[BigRational]) -> Result<Self> {
        let eq = IntMat::from_i64(rows, nvars);
        Self::new(nvars, eq, offsets.to_vec())
    }

    /// Single congruence `weights . kappa = offset (mod Z)`.
    pub fn from_equation(weights: &[i64], offset: BigRational) -> Self {
        let eq = IntMat::from_i64(&[weights.to_vec()], weights.len());
        Self::new(weights.len(), eq, vec![offset]).expect("consistent shapes")
    }

    pub fn full_torus(nvars: usize) -> Self {
        TranslatedSubtorus {
            nvars,
            equations: IntMat::new(Vec::new(), nvars),
            offsets: Vec::new(),
            empty: false,
        }
    }

    fn empty_torus(nvars: usize) -> Self {
        TranslatedSubtorus {
            nvars,
            equations: IntMat::new(Vec::new(), nvars),
            offsets: Vec::new(),
            empty: true,
        }
    }

    fn canonicalize(nvars: usize, equations: IntMat, offsets: Vec<BigRational>) -> Self {
        let (h, u) = equations.hermite_with_transform();
        // transformed offsets: each HNF row is the same integer combination
        // of the original rows, so its offset is that combination of b
        let mut new_rows = Vec::new();
        let mut new_offsets = Vec::new();
        for i in 0..h.nrows() {
            let row = h.row(i).to_vec();
            let off: BigRational = (0..equations.nrows())
                .map(|j| BigRational::from_integer(u.entry(i, j).clone()) * &offsets[j])
                .sum();
            if row.iter().all(|x| x.is_zero()) {
                if !off.denom().is_one() {
                    // 0 = non-integer: inconsistent
                    return Self::empty_torus(nvars);
                }
            } else {
                new_rows.push(row);
                new_offsets.push(&off - off.floor());
            }
        }
        TranslatedSubtorus {
            nvars,
            equations: IntMat::new(new_rows, nvars),
            offsets: new_offsets,
            empty: false,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// `None` for the empty set, otherwise `r - rank(A)`.
    pub fn dim(&self) -> Option<usize> {
        if self.empty {
            None
        } else {
            Some(self.nvars - self.equations.nrows())
        }
    }

    pub fn equations(&self) -> &IntMat {
        &self.equations
    }

    pub fn offsets(&self) -> &[BigRational] {
        &self.offsets
    }

    pub fn contains(&self, chi: &Character) -> bool {
        if self.empty || chi.dim() != self.nvars {
            return false;
        }
        for (i, off) in self.offsets.iter().enumerate() {
            let s: BigRational = self
                .equations
                .row(i)
                .iter()
                .zip(chi.coordinates())
                .map(|(a, k)| BigRational::from_integer(a.clone()) * k)
                .sum();
            if !(&s - off).denom().is_one() {
                return false;
            }
        }
        true
    }

    /// All characters of order dividing `m` lying on the subtorus, in
    /// lexicographic order.
    pub fn grid_points(&self, m: u64) -> Vec<Character> {
        if self.empty {
            return Vec::new();
        }
        full_grid(self.nvars, m)
            .into_iter()
            .filter(|chi| self.contains(chi))
            .collect()
    }

    pub fn equation_rows_i64(&self) -> Vec<Vec<i64>> {
        self.equations
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| i64::try_from(x.clone()).expect("equation coefficient fits in i64"))
                    .collect()
            })
            .collect()
    }
}

impl std::fmt::Display for TranslatedSubtorus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.empty {
            return write!(f, "empty");
        }
        if self.equations.nrows() == 0 {
            return write!(f, "full torus");
        }
        let mut lines = Vec::new();
        for i in 0..self.equations.nrows() {
            let mut terms: Vec<String> = Vec::new();
            for (j, c) in self.equations.row(i).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let var = format!("k{}", j + 1);
                if c.is_one() {
                    terms.push(var);
                } else {
                    terms.push(format!("{c}*{var}"));
                }
            }
            let off = &self.offsets[i];
            let rhs = if off.denom().is_one() {
                off.numer().to_string()
            } else {
                format!("{}/{}", off.numer(), off.denom())
            };
            lines.push(format!("{} = {} (mod Z)", terms.join(" + "), rhs));
        }
        write!(f, "{}", lines.join("; "))
    }
}

/// The subtorus of characters obtained by restricting along a homology map:
/// given `L` (rows = target homology basis, columns = source meridians)
/// and a translated subtorus `s` of the target character torus, return its
/// image under the induced map of character tori `kappa' -> L^T kappa'`,
/// which is again a translated subtorus, in canonical form.
pub fn pullback_subtorus(l: &IntMat, s: &TranslatedSubtorus) -> Result<TranslatedSubtorus> {
    let q = l.nrows(); // target torus dimension
    let sv = l.ncols(); // source torus dimension
    if s.nvars() != q {
        return Err(Error::Shape(format!(
            "subtorus lives in a {}-torus but the map has {} rows",
            s.nvars(),
            q
        )));
    }
    if s.is_empty() {
        return Ok(TranslatedSubtorus::empty_torus(sv));
    }
    let a = s.equations();
    let p = a.nrows();
    let m = l.transpose(); // sv x q: the induced map on torus coordinates

    // Direction lattice of s and rational translates: the group
    // {v : A v in Z^p} is spanned by ker(A) over R together with rational
    // solutions of A w = e_i (canonical A has independent rows).
    let (v_bas, translates, base_point) = if p == 0 {
        (IntMat::identity(q), Vec::new(), vec![BigRational::zero(); q])
    } else {
        let a_rat: Vec<Vec<BigRational>> = a
            .rows()
            .iter()
            .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        let mut ws = Vec::with_capacity(p);
        for i in 0..p {
            let mut e = vec![BigRational::zero(); p];
            e[i] = BigRational::one();
            ws.push(rat_solve(&a_rat, &e).expect("canonical equations have full row rank"));
        }
        let x0 = rat_solve(&a_rat, s.offsets()).expect("canonical equations have full row rank");
        (a.kernel(), ws, x0)
    };

    // A row c of Z^sv constrains the image iff c.(M v) = 0 for the kernel
    // directions and c.(M w_i) is an integer for every translate.
    let g = m.mul(&v_bas.transpose()); // sv x nk
    let m_rat = |w: &[BigRational]| -> Vec<BigRational> {
        (0..sv)
            .map(|i| {
                m.row(i)
                    .iter()
                    .zip(w)
                    .map(|(x, y)| BigRational::from_integer(x.clone()) * y)
                    .sum()
            })
            .collect()
    };
    let images: Vec<Vec<BigRational>> = translates.iter().map(|w| m_rat(w)).collect();
    let mut denom = BigInt::one();
    for v in &images {
        for x in v {
            denom = num_integer::Integer::lcm(&denom, x.denom());
        }
    }
    // Stack: rows of G^T (continuous conditions), then [D*image_i | D e_i]
    // so integer solutions encode divisibility conditions.
    let mut stacked: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..g.ncols() {
        let mut row: Vec<BigInt> = (0..sv).map(|i| g.entry(i, j).clone()).collect();
        row.extend(std::iter::repeat(BigInt::zero()).take(p));
        stacked.push(row);
    }
    for (i, img) in images.iter().enumerate() {
        let mut row: Vec<BigInt> = img
            .iter()
            .map(|x| (x * BigRational::from_integer(denom.clone())).to_integer())
            .collect();
        row.extend((0..p).map(|j| if j == i { denom.clone() } else { BigInt::zero() }));
        stacked.push(row);
    }
    let kernel_rows = if stacked.is_empty() {
        IntMat::identity(sv)
    } else {
        IntMat::new(stacked, sv + p).kernel()
    };

    // Project to the torus coordinates and compute offsets from a base point.
    let image_base = m_rat(&base_point);
    let mut eq_rows: Vec<Vec<BigInt>> = Vec::new();
    let mut offsets: Vec<BigRational> = Vec::new();
    for i in 0..kernel_rows.nrows() {
        let c: Vec<BigInt> = kernel_rows.row(i)[..sv].to_vec();
        if c.iter().all(|x| x.is_zero()) {
            continue;
        }
        let off: BigRational = c
            .iter()
            .zip(&image_base)
            .map(|(x, y)| BigRational::from_integer(x.clone()) * y)
            .sum();
        eq_rows.push(c);
        offsets.push(off);
    }
    TranslatedSubtorus::new(sv, IntMat::new(eq_rows, sv), offsets)
}

// ---------------------------------------------------------------------------
// Grid-evidence verification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateStatus {
    VerifiedOnGrid,
    Refuted,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CandidateReport {
    pub equations: Vec<Vec<i64>>,
    pub offset: Vec<String>,
    pub status: CandidateStatus,
    /// A character contradicting the candidate, present exactly when refuted.
    pub witness: Option<String>,
}

/// Grid evidence for one candidate support component.  Membership lists hold
/// compact coordinate strings of the sampled characters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharVarReport {
    pub depth: usize,
    pub grid_order_bound: u64,
    pub members: Vec<String>,
    pub non_members: Vec<String>,
    pub candidates: Vec<CandidateReport>,
}

impl CharVarReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn status(&self) -> CandidateStatus {
        self.candidates[0].status
    }
}

/// Sample every character of order dividing `order_bound` on the candidate
/// subtorus (capped at `sample_cap`, deterministic lexicographic order,
/// identity excluded) plus an equally sized off-subtorus sample, and test
/// depth-`k` membership in homological `degree` for each.  The candidate is
/// reported verified-on-grid when all on-subtorus samples are members and
/// all off-subtorus samples are non-members; otherwise refuted with the
/// first witness.  This is grid evidence, never a proof.
pub fn verify_subtorus(
    c: &ChainComplex,
    s: &TranslatedSubtorus,
    k: usize,
    degree: usize,
    order_bound: u64,
    sample_cap: usize,
) -> Result<CharVarReport> {
    if order_bound < 2 {
        return Err(Error::Domain("order bound must be at least 2".into()));
    }
    let r = c.character_dim();
    if s.nvars() != r {
        return Err(Error::Shape(format!(
            "subtorus in {} coordinates, complex characters have {}",
            s.nvars(),
            r
        )));
    }
    let mut on_samples = Vec::new();
    let mut off_samples = Vec::new();
    for chi in full_grid(r, order_bound) {
        if chi.is_identity() {
            continue;
        }
        if s.contains(&chi) {
            if on_samples.len() < sample_cap {
                on_samples.push(chi);
            }
        } else if off_samples.len() < sample_cap {
            off_samples.push(chi);
        }
        if on_samples.len() >= sample_cap && off_samples.len() >= sample_cap {
            break;
        }
    }
    if on_samples.is_empty() {
        return Err(Error::Domain(format!(
            "no non-identity characters of order dividing {order_bound} lie on the candidate"
        )));
    }
    off_samples.truncate(on_samples.len());

    let mut members = Vec::new();
    let mut non_members = Vec::new();
    let mut witness: Option<String> = None;
    let mut verified = true;
    for (chi, expected) in on_samples
        .iter()
        .map(|c| (c, true))
        .chain(off_samples.iter().map(|c| (c, false)))
    {
        let is_member = charvar_membership_extended(c, chi, k, degree)?;
        if is_member {
            members.push(chi.coordinate_string());
        } else {
            non_members.push(chi.coordinate_string());
        }
        if is_member != expected && witness.is_none() {
            witness = Some(chi.coordinate_string());
            verified = false;
        }
    }
    let status = if verified { CandidateStatus::VerifiedOnGrid } else { CandidateStatus::Refuted };
    Ok(CharVarReport {
        depth: k,
        grid_order_bound: order_bound,
        members,
        non_members,
        candidates: vec![CandidateReport {
            equations: s.equation_rows_i64(),
            offset: s
                .offsets()
                .iter()
                .map(|q| {
                    if q.denom().is_one() {
                        q.numer().to_string()
                    } else {
                        format!("{}/{}", q.numer(), q.denom())
                    }
                })
                .collect(),
            status,
            witness,
        }],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::generic_arrangement_cone_complex;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn chi(parts: &[(i64, i64)]) -> Character {
        Character::new(parts.iter().map(|&(n, d)| q(n, d)).collect())
    }

    fn poly(s: &str, nvars: usize) -> LaurentPoly {
        LaurentPoly::parse(s, nvars).unwrap()
    }

    #[test]
    fn fitting_generator_examples() {
        // single-entry presentation: the entry is the only minor
        let phi = PolyMat::new(vec![vec![poly("t1*t2*t3 - 1", 3)]], 1, 3);
        let p = ModulePresentation::new(3, None, phi).unwrap();
        let gens = fitting_ideal_generators(&p, 1, DEFAULT_MINOR_CAP).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].to_string(), "t1*t2*t3 - 1");

        // 1x2 zero matrix at depth 1: minor order 2 exceeds the single row
        let phi = PolyMat::zero(1, 2, 2);
        let p = ModulePresentation::new(2, None, phi).unwrap();
        assert!(fitting_ideal_generators(&p, 1, DEFAULT_MINOR_CAP).unwrap().is_empty());

        // depth 0 asks for minors larger than the matrix: ideal zero
        let phi = PolyMat::new(vec![vec![poly("t1", 1)]], 1, 1);
        let p = ModulePresentation::new(1, None, phi).unwrap();
        assert!(fitting_ideal_generators(&p, 0, DEFAULT_MINOR_CAP).unwrap().is_empty());

        // depth beyond generators rejected
        assert!(fitting_ideal_generators(&p, 2, DEFAULT_MINOR_CAP).is_err());

        // budget enforced
        let phi = PolyMat::zero(20, 20, 1);
        let p = ModulePresentation::new(1, None, phi).unwrap();
        match fitting_ideal_generators(&p, 10, 100) {
            Err(Error::MinorBudgetExceeded { cap: 100, .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn depth_first_and_memoized_minors_agree() {
        // dense 5x5 with distinct monomial entries: both expansion
        // strategies must produce the identical determinant
        let n = 5usize;
        let mut phi = PolyMat::zero(n, n, 2);
        for i in 0..n {
            for j in 0..n {
                let text = format!(
                    "{}*t1^{}*t2^{} + {}",
                    (3 * i + 5 * j) % 7 + 1,
                    (i + 2 * j) % 3,
                    (2 * i + j) % 2,
                    i * j % 5 + 1
                );
                phi.set_entry(i, j, poly(&text, 2));
            }
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (0..n).collect();
        let mut memo = HashMap::new();
        let memoized = minor_det(&phi, &rows, &cols, &mut memo);
        let mut nodes = 0usize;
        let dfs = minor_det_bounded(&phi, &mut rows.clone(), &cols, &mut nodes, usize::MAX)
            .expect("no budget in force");
        assert_eq!(dfs, memoized);
        assert!(!dfs.is_zero());

        // the budget cuts the expansion off
        let mut nodes = 0usize;
        assert!(minor_det_bounded(&phi, &mut rows.clone(), &cols, &mut nodes, 10).is_none());
    }

    #[test]
    fn minor_determinants_are_exact() {
        // diagonal: determinant is the product of the diagonal entries
        let mut phi = PolyMat::zero(3, 3, 2);
        phi.set_entry(0, 0, poly("t1", 2));
        phi.set_entry(1, 1, poly("t2 - 1", 2));
        phi.set_entry(2, 2, poly("2*t1*t2", 2));
        let p = ModulePresentation::new(2, None, phi).unwrap();
        let gens = fitting_ideal_generators(&p, 1, DEFAULT_MINOR_CAP).unwrap();
        assert_eq!(gens.len(), 1);
        let expect = poly("t1", 2).mul(&poly("t2 - 1", 2)).mul(&poly("2*t1*t2", 2));
        assert_eq!(gens[0], expect);

        // antidiagonal 2x2: sign flip
        let mut phi = PolyMat::zero(2, 2, 2);
        phi.set_entry(0, 1, poly("t1", 2));
        phi.set_entry(1, 0, poly("t2", 2));
        let p = ModulePresentation::new(2, None, phi).unwrap();
        let gens = fitting_ideal_generators(&p, 1, DEFAULT_MINOR_CAP).unwrap();
        assert_eq!(gens[0], poly("t1*t2", 2).neg());

        // 1x1 minors at depth 2: the two zero entries are dropped, leaving
        // the two antidiagonal ones
        let gens = fitting_ideal_generators(&p, 2, DEFAULT_MINOR_CAP).unwrap();
        assert_eq!(gens.len(), 2);
        assert!(gens.contains(&poly("t1", 2)) && gens.contains(&poly("t2", 2)));
    }

    #[test]
    fn generic_rank_detects_symbolic_dependence() {
        // rank-one outer product u * v^T
        let u = ["1", "t1", "t2"];
        let v = ["t1 + 1", "t2", "1"];
        let mut phi = PolyMat::zero(3, 3, 2);
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                phi.set_entry(i, j, poly(ui, 2).mul(&poly(vj, 2)));
            }
        }
        assert_eq!(generic_rank(&phi), 1);

        // a nonsingular diagonal
        let mut phi = PolyMat::zero(3, 3, 2);
        phi.set_entry(0, 0, poly("t1", 2));
        phi.set_entry(1, 1, poly("t2 - 1", 2));
        phi.set_entry(2, 2, poly("t1*t2 + 3", 2));
        assert_eq!(generic_rank(&phi), 3);

        // a skeleton differential: d(5, 3) on the exterior algebra over
        // five parameters has rank C(4, 2) = 6 inside a 10 x 10 matrix,
        // because composing with d(5, 2) (rank 4) gives zero
        let c = cone_koszul(&[1; 6], 3).unwrap();
        let d3 = c.differential(3).transpose();
        assert_eq!((d3.nrows(), d3.ncols()), (10, 10));
        assert_eq!(generic_rank(&d3), 6);

        // the zero matrix
        assert_eq!(generic_rank(&PolyMat::zero(4, 2, 1)), 0);
    }

    #[test]
    fn scalar_block_pruning_preserves_the_vanishing_locus() {
        // rows = two differential-style rows plus (t1*t2 - 1) * identity
        let f = poly("t1*t2 - 1", 2);
        let d_rows = vec![
            vec![poly("t1 - 1", 2), poly("t2 - 1", 2), LaurentPoly::zero(2)],
            vec![LaurentPoly::zero(2), poly("t1 - 1", 2), poly("t2^2 - 1", 2)],
        ];
        let mut rows = d_rows.clone();
        for c in 0..3 {
            let mut row = vec![LaurentPoly::zero(2); 3];
            row[c] = f.clone();
            rows.push(row);
        }
        let phi = PolyMat::new(rows, 3, 2);
        let split = scalar_block_split(&phi).expect("the scalar block is present");
        assert_eq!(split.0, f);
        assert_eq!(split.1, vec![0, 1]);

        // the pruned generator system must still cut out exactly the
        // rank-based membership locus, at every depth and every sampled
        // character
        let p = ModulePresentation::new(2, None, phi).unwrap();
        for k in 1..=3usize {
            let gens = fitting_ideal_generators(&p, k, DEFAULT_MINOR_CAP).unwrap();
            for m in [2u64, 3, 4] {
                for chi in full_grid(2, m) {
                    let all_vanish = gens
                        .iter()
                        .map(|g| g.vanishes_at(&chi))
                        .collect::<Result<Vec<_>>>()
                        .unwrap()
                        .into_iter()
                        .all(|v| v);
                    let member = p.fiber_dim(&chi).unwrap() >= k;
                    assert_eq!(all_vanish, member, "k={k} chi={chi}");
                }
            }
        }
    }

    #[test]
    fn kernel_model_fibers_match_homology() {
        // generic arrangement: away from the identity every on-relation
        // character gives fiber dim == homology dim
        for (r, n) in [(3usize, 1usize), (4, 1), (4, 2), (5, 2)] {
            let degrees = vec![1i64; r];
            let p = homotopy_module_presentation(&degrees, n).unwrap();
            let c = generic_arrangement_cone_complex(r, n).unwrap();
            for m in [2u64, 3] {
                for free in full_grid(r - 1, m) {
                    if free.is_identity() {
                        continue;
                    }
                    // build the full character with last coordinate forced
                    let mut coords = free.coordinates().to_vec();
                    let sum: BigRational = coords.iter().sum();
                    coords.push(-sum);
                    let full = Character::new(coords);
                    let dims = c.specialize(&full).unwrap().homology_dims();
                    let fiber = p.fiber_dim(&full).unwrap();
                    assert_eq!(fiber, dims[n], "r={r} n={n} at {full}");
                }
            }
        }
    }

    #[test]
    fn presentation_kills_off_relation_characters() {
        let p = homotopy_module_presentation(&[1, 1, 1, 1], 1).unwrap();
        // off the relation torus the T-1 block has full rank
        assert_eq!(p.fiber_dim(&chi(&[(1, 3), (0, 1), (0, 1), (0, 1)])).unwrap(), 0);
        // on the relation torus the fiber is C(r-2, n) = 2
        assert_eq!(p.fiber_dim(&chi(&[(1, 3), (1, 3), (1, 3), (0, 1)])).unwrap(), 2);
        assert_eq!(p.relation(), Some(&[1, 1, 1, 1][..]));
    }

    #[test]
    fn surjection_model_disagrees_and_is_reported() {
        let x = chi(&[(1, 3), (1, 3), (1, 3), (0, 1)]);
        let report = compare_module_models(&[1, 1, 1, 1], 1, &[x]).unwrap();
        let row = &report.rows[0];
        assert_eq!(row.homology_dim, 2);
        assert_eq!(row.kernel_model_fiber, 2);
        // surjection model on the n-subset basis gives C(r-2, n-1) = 1
        assert_eq!(row.surjection_model_fiber, 1);
    }

    #[test]
    fn membership_semantics() {
        let c = generic_arrangement_cone_complex(4, 2).unwrap();
        let x = chi(&[(1, 2), (1, 2), (1, 2), (1, 2)]);
        assert!(charvar_membership(&c, &x, 1, 2).unwrap());
        assert!(!charvar_membership(&c, &x, 2, 2).unwrap());
        assert!(charvar_membership(&c, &x, 0, 2).unwrap());
        // identity excluded
        assert!(matches!(
            charvar_membership(&c, &Character::identity(4), 1, 2),
            Err(Error::IdentityExcluded { .. })
        ));
        // off-relation character: hard error from the strict form...
        let y = chi(&[(1, 3), (0, 1), (0, 1), (0, 1)]);
        assert!(matches!(
            charvar_membership(&c, &y, 1, 2),
            Err(Error::RelationViolation { .. })
        ));
        // ...and a definite non-member under the quotient convention
        assert_eq!(charvar_membership_extended(&c, &y, 1, 2).unwrap(), false);
        assert_eq!(charvar_membership_extended(&c, &y, 0, 2).unwrap(), true);
        // degree out of range
        assert!(charvar_membership(&c, &x, 1, 3).is_err());
    }

    #[test]
    fn subtorus_canonical_forms() {
        // same lattice, different presentations
        let s1 = TranslatedSubtorus::from_rows(
            2,
            &[vec![1, 1], vec![2, 0]],
            &[q(0, 1), q(0, 1)],
        )
        .unwrap();
        let s2 = TranslatedSubtorus::from_rows(
            2,
            &[vec![1, 1], vec![1, -1], vec![3, 1]],
            &[q(0, 1), q(0, 1), q(0, 1)],
        )
        .unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), Some(0));

        // canonicalization is idempotent
        let again = TranslatedSubtorus::new(
            2,
            s1.equations().clone(),
            s1.offsets().to_vec(),
        )
        .unwrap();
        assert_eq!(again, s1);

        // offsets transform with the equations
        let t1 = TranslatedSubtorus::from_rows(1, &[vec![2]], &[q(1, 2)]).unwrap();
        let t2 = TranslatedSubtorus::from_rows(1, &[vec![-2]], &[q(-1, 2)]).unwrap();
        let t3 = TranslatedSubtorus::from_rows(1, &[vec![2], vec![4]], &[q(1, 2), q(1, 1)]).unwrap();
        assert_eq!(t1, t2);
        assert_eq!(t1, t3);
        assert!(t1.contains(&chi(&[(1, 4)])));
        assert!(t1.contains(&chi(&[(3, 4)])));
        assert!(!t1.contains(&chi(&[(1, 2)])));

        // inconsistent systems collapse to the canonical empty set
        let e = TranslatedSubtorus::from_rows(
            2,
            &[vec![1, 1], vec![1, 1]],
            &[q(0, 1), q(1, 2)],
        )
        .unwrap();
        assert!(e.is_empty());
        assert_eq!(e.dim(), None);
        assert!(!e.contains(&chi(&[(0, 1), (0, 1)])));

        // dimensions
        let f = TranslatedSubtorus::full_torus(3);
        assert_eq!(f.dim(), Some(3));
        assert!(f.contains(&chi(&[(1, 7), (2, 7), (3, 7)])));
        let line = TranslatedSubtorus::from_equation(&[1, 1, 1], q(0, 1));
        assert_eq!(line.dim(), Some(2));
    }

    #[test]
    fn subtorus_grid_points() {
        let s = TranslatedSubtorus::from_equation(&[1, 1], q(0, 1));
        let pts = s.grid_points(3);
        // (0,0), (1/3,2/3), (2/3,1/3)
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|p| s.contains(p)));
        let translated = TranslatedSubtorus::from_equation(&[2], q(1, 2));
        assert_eq!(translated.grid_points(4).len(), 2);
        assert_eq!(translated.grid_points(2).len(), 0);
    }

    #[test]
    fn pullback_basics() {
        // identity map: subtorus unchanged
        let s = TranslatedSubtorus::from_equation(&[1, 1, 1, 1], q(0, 1));
        let id = IntMat::identity(4);
        assert_eq!(pullback_subtorus(&id, &s).unwrap(), s);

        // fold map Z^2 -> Z^1: image of the full circle is the diagonal
        let l = IntMat::from_i64(&[vec![1, 1]], 2);
        let full = TranslatedSubtorus::full_torus(1);
        let diag = pullback_subtorus(&l, &full).unwrap();
        assert_eq!(diag.dim(), Some(1));
        assert!(diag.contains(&chi(&[(1, 5), (1, 5)])));
        assert!(!diag.contains(&chi(&[(1, 5), (2, 5)])));

        // image of a translated point is the translated point
        let pt = TranslatedSubtorus::from_equation(&[1], q(1, 3));
        let img = pullback_subtorus(&l, &pt).unwrap();
        assert_eq!(img.dim(), Some(0));
        assert!(img.contains(&chi(&[(1, 3), (1, 3)])));
        assert!(!img.contains(&chi(&[(1, 3), (2, 3)])));

        // empty pulls back to empty
        let e = TranslatedSubtorus::from_rows(1, &[vec![0]], &[q(1, 2)]).unwrap();
        assert!(e.is_empty());
        assert!(pullback_subtorus(&l, &e).unwrap().is_empty());

        // shape mismatch
        let bad = IntMat::identity(3);
        assert!(pullback_subtorus(&bad, &s).is_err());
    }

    #[test]
    fn pullback_preserves_grid_membership() {
        // L: Z^3 -> Z^2 and a translated 1-dimensional candidate
        let l = IntMat::from_i64(&[vec![1, 0, 1], vec![0, 1, 1]], 3);
        let s = TranslatedSubtorus::from_equation(&[1, 1], q(1, 2));
        let img = pullback_subtorus(&l, &s).unwrap();
        // forward direction: every grid point of s maps into the image
        for kp in s.grid_points(4) {
            let coords: Vec<BigRational> = (0..3)
                .map(|i| {
                    (0..2)
                        .map(|j| {
                            BigRational::from_integer(l.entry(j, i).clone())
                                * &kp.coordinates()[j]
                        })
                        .sum()
                })
                .collect();
            let mapped = Character::new(coords);
            assert!(img.contains(&mapped), "image of {kp} missing");
        }
        // dimension: s is 1-dimensional and the induced map is injective
        assert_eq!(img.dim(), Some(1));
    }

    #[test]
    fn pullback_is_functorial() {
        // two composable homology maps
        let l1 = IntMat::from_i64(&[vec![1, 0, 1, 0], vec![0, 1, 1, 1], vec![1, 1, 0, 1]], 4);
        let l2 = IntMat::from_i64(&[vec![1, 1, 0], vec![0, 1, 2]], 3);
        let s = TranslatedSubtorus::from_equation(&[1, 1], q(1, 3));
        let step = pullback_subtorus(&l1, &pullback_subtorus(&l2, &s).unwrap()).unwrap();
        let composed = pullback_subtorus(&l2.mul(&l1), &s).unwrap();
        assert_eq!(step, composed);
    }

    #[test]
    fn verification_outcomes() {
        let c = generic_arrangement_cone_complex(3, 1).unwrap();
        // true support: verified on grid
        let s = TranslatedSubtorus::from_equation(&[1, 1, 1], q(0, 1));
        let report = verify_subtorus(&c, &s, 1, 1, 6, DEFAULT_SAMPLE_CAP).unwrap();
        assert_eq!(report.status(), CandidateStatus::VerifiedOnGrid);
        assert!(report.candidates[0].witness.is_none());
        assert!(!report.members.is_empty());
        assert!(!report.non_members.is_empty());

        // wrong candidate: refuted with a witness
        let wrong = TranslatedSubtorus::from_equation(&[1, 0, 0], q(0, 1));
        let report = verify_subtorus(&c, &wrong, 1, 1, 6, DEFAULT_SAMPLE_CAP).unwrap();
        assert_eq!(report.status(), CandidateStatus::Refuted);
        assert!(report.candidates[0].witness.is_some());

        // full torus at depth 0: trivially verified
        let full = TranslatedSubtorus::full_torus(3);
        let report = verify_subtorus(&c, &full, 0, 1, 4, DEFAULT_SAMPLE_CAP).unwrap();
        assert_eq!(report.status(), CandidateStatus::VerifiedOnGrid);

        // no grid points on the candidate
        let unreachable = TranslatedSubtorus::from_equation(&[1, 0, 0], q(1, 7));
        assert!(verify_subtorus(&c, &unreachable, 1, 1, 6, DEFAULT_SAMPLE_CAP).is_err());

        // order bound too small
        assert!(verify_subtorus(&c, &s, 1, 1, 1, DEFAULT_SAMPLE_CAP).is_err());

        // report serializes deterministically
        let report = verify_subtorus(&c, &s, 1, 1, 3, DEFAULT_SAMPLE_CAP).unwrap();
        let j1 = report.to_json();
        let j2 = verify_subtorus(&c, &s, 1, 1, 3, DEFAULT_SAMPLE_CAP).unwrap().to_json();
        assert_eq!(j1, j2);
        assert!(j1.contains("\"depth\": 1"));
        assert!(j1.contains("verified-on-grid"));
    }

    #[test]
    fn weighted_support_verification() {
        // cone over components with multiplicities (2, 1, 3): support is
        // 2k1 + k2 + 3k3 = 0
        let degrees = vec![2i64, 1, 3];
        let c = crate::complex::weighted_cone_complex(&degrees, 1).unwrap();
        let s = TranslatedSubtorus::from_equation(&degrees, q(0, 1));
        let report = verify_subtorus(&c, &s, 1, 1, 6, DEFAULT_SAMPLE_CAP).unwrap();
        assert_eq!(report.status(), CandidateStatus::VerifiedOnGrid);
    }
}
