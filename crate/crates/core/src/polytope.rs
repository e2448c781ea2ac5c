//! Rational polytopes of quasiadjunction in the unit cube.
//!
//! A local polytope is cut out of `[0,1]^n` by inequalities `a.x <= c` with
//! nonnegative data; its faces of quasiadjunction are boundary slices by
//! supporting hyperplanes other than the cube facets.  Local data is pulled
//! back to a global region through fractional-part maps, and faces are
//! exponentiated to translated subtori of the character torus.  All
//! computations are exact: vertex enumeration solves square rational systems
//! over every inequality subset at desk scale.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use itertools::Itertools;

use crate::error::{Error, Result};
use crate::intmat::{clear_denominators, rat_rank, rat_solve, IntMat};
use crate::modpres::TranslatedSubtorus;

/// Hard bound on the number of inequality subsets inspected during vertex
/// enumeration.
const VERTEX_SUBSET_CAP: u128 = 5_000_000;

fn q_zero() -> BigRational {
    BigRational::zero()
}

fn q_one() -> BigRational {
    BigRational::one()
}

fn dot(a: &[BigRational], x: &[BigRational]) -> BigRational {
    a.iter().zip(x).map(|(p, q)| p * q).sum()
}

fn fractional(q: &BigRational) -> BigRational {
    q - q.floor()
}

/// One inequality `a . x <= c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub a: Vec<BigRational>,
    pub c: BigRational,
}

/// A polytope of quasiadjunction: inequalities with nonnegative coefficients
/// and bounds, implicitly intersected with the unit cube.  Closed; boundary
/// points are members.
#[derive(Debug, Clone, PartialEq)]
pub struct QPolytope {
    dim: usize,
    inequalities: Vec<Inequality>,
}

impl QPolytope {
    pub fn new(dim: usize, inequalities: Vec<Inequality>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPolytope("dimension must be positive".into()));
        }
        for ineq in &inequalities {
            if ineq.a.len() != dim {
                return Err(Error::InvalidPolytope(format!(
                    "inequality has {} coefficients in dimension {}",
                    ineq.a.len(),
                    dim
                )));
            }
            if ineq.a.iter().any(|x| x.is_negative()) || ineq.c.is_negative() {
                return Err(Error::InvalidPolytope(
                    "inequality data must be nonnegative".into(),
                ));
            }
        }
        Ok(QPolytope { dim, inequalities })
    }

    /// Convenience constructor from integer data.
    pub fn from_i64(dim: usize, ineqs: &[(Vec<i64>, i64)]) -> Result<Self> {
        let inequalities = ineqs
            .iter()
            .map(|(a, c)| Inequality {
                a: a.iter().map(|&x| BigRational::from_integer(x.into())).collect(),
                c: BigRational::from_integer((*c).into()),
            })
            .collect();
        Self::new(dim, inequalities)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    /// Exact membership; boundary counts.
    pub fn membership(&self, x: &[BigRational]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::Shape(format!(
                "point has {} coordinates in dimension {}",
                x.len(),
                self.dim
            )));
        }
        let zero = q_zero();
        let one = q_one();
        if x.iter().any(|t| t < &zero || t > &one) {
            return Ok(false);
        }
        Ok(self.inequalities.iter().all(|i| dot(&i.a, x) <= i.c))
    }

    fn closed_rows(&self) -> Vec<(Vec<BigRational>, BigRational)> {
        let mut rows = cube_rows(self.dim);
        rows.extend(self.inequalities.iter().map(|i| (i.a.clone(), i.c.clone())));
        rows
    }

    /// All vertices, deduplicated, in lexicographic order.
    pub fn vertices(&self) -> Result<Vec<Vec<BigRational>>> {
        enumerate_vertices(&self.closed_rows(), self.dim)
    }
}

fn cube_rows(dim: usize) -> Vec<(Vec<BigRational>, BigRational)> {
    let mut rows = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        let mut up = vec![q_zero(); dim];
        up[i] = q_one();
        rows.push((up.clone(), q_one())); // x_i <= 1
        let mut down = vec![q_zero(); dim];
        down[i] = -q_one();
        rows.push((down, q_zero())); // -x_i <= 0
    }
    rows
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

/// Vertices of the closed region `{x : a.x <= c for every row}`: for each
/// `dim`-subset of rows of full rank, the unique solution of the equality
/// system is a vertex when it satisfies all rows.
fn enumerate_vertices(
    rows: &[(Vec<BigRational>, BigRational)],
    dim: usize,
) -> Result<Vec<Vec<BigRational>>> {
    if binomial_u128(rows.len(), dim) > VERTEX_SUBSET_CAP {
        return Err(Error::Domain(format!(
            "vertex enumeration over {} inequalities in dimension {dim} exceeds the subset budget",
            rows.len()
        )));
    }
    let mut found: BTreeSet<Vec<BigRational>> = BTreeSet::new();
    for subset in (0..rows.len()).combinations(dim) {
        let a: Vec<Vec<BigRational>> = subset.iter().map(|&i| rows[i].0.clone()).collect();
        if rat_rank(&a) < dim {
            continue;
        }
        let b: Vec<BigRational> = subset.iter().map(|&i| rows[i].1.clone()).collect();
        let x = rat_solve(&a, &b).expect("full-rank square system");
        if rows.iter().all(|(ra, rc)| dot(ra, &x) <= *rc) {
            found.insert(x);
        }
    }
    Ok(found.into_iter().collect())
}

/// Affine dimension of a point set: `None` when empty.
pub fn affine_dim(points: &[Vec<BigRational>]) -> Option<usize> {
    let first = points.first()?;
    let diffs: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(x, y)| x - y).collect())
        .collect();
    Some(rat_rank(&diffs))
}

/// A face of quasiadjunction: the slice of a polytope's boundary by a
/// supporting hyperplane that is not a cube facet.
#[derive(Debug, Clone, PartialEq)]
pub struct QFace {
    parent: QPolytope,
    hyperplane_a: Vec<BigRational>,
    hyperplane_c: BigRational,
    vertices: Vec<Vec<BigRational>>,
}

impl QFace {
    pub fn parent(&self) -> &QPolytope {
        &self.parent
    }

    pub fn hyperplane(&self) -> (&[BigRational], &BigRational) {
        (&self.hyperplane_a, &self.hyperplane_c)
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn affine_dim(&self) -> usize {
        affine_dim(&self.vertices).expect("faces are nonempty")
    }
}

/// Outcome of slicing a polytope by a hyperplane.
#[derive(Debug, Clone, PartialEq)]
pub enum FaceResult {
    /// The hyperplane supports the polytope; the slice is a genuine face.
    Face(QFace),
    /// The hyperplane misses the polytope entirely.
    Empty,
    /// The hyperplane cuts through the interior: not a face.
    NotSupporting,
}

fn is_cube_hyperplane(a: &[BigRational], c: &BigRational) -> bool {
    let nonzero: Vec<usize> = (0..a.len()).filter(|&i| !a[i].is_zero()).collect();
    if nonzero.len() != 1 {
        return false;
    }
    let lambda = &a[nonzero[0]];
    // proportional to x_i = 0 or x_i = 1
    c.is_zero() || c == lambda
}

/// Slice `p` by the hyperplane `a.x = c`, exactly, via vertex enumeration.
pub fn face_from_hyperplane(
    p: &QPolytope,
    a: &[BigRational],
    c: &BigRational,
) -> Result<FaceResult> {
    if a.len() != p.dim() {
        return Err(Error::Shape(format!(
            "hyperplane has {} coefficients in dimension {}",
            a.len(),
            p.dim()
        )));
    }
    if a.iter().all(|x| x.is_zero()) {
        return Err(Error::InvalidPolytope("zero hyperplane".into()));
    }
    if is_cube_hyperplane(a, c) {
        return Err(Error::CubeFacet(format!(
            "hyperplane is a unit-cube facet (coefficients {:?})",
            a.iter().map(|q| q.to_string()).collect::<Vec<_>>()
        )));
    }
    let verts = p.vertices()?;
    if verts.is_empty() {
        return Ok(FaceResult::Empty);
    }
    let evals: Vec<BigRational> = verts.iter().map(|v| dot(a, v) - c).collect();
    let any_pos = evals.iter().any(|e| e.is_positive());
    let any_neg = evals.iter().any(|e| e.is_negative());
    let on: Vec<Vec<BigRational>> = verts
        .iter()
        .zip(&evals)
        .filter(|(_, e)| e.is_zero())
        .map(|(v, _)| v.clone())
        .collect();
    if any_pos && any_neg {
        return Ok(FaceResult::NotSupporting);
    }
    if on.is_empty() {
        return Ok(FaceResult::Empty);
    }
    Ok(FaceResult::Face(QFace {
        parent: p.clone(),
        hyperplane_a: a.to_vec(),
        hyperplane_c: c.clone(),
        vertices: on,
    }))
}

/// Integer-hyperplane convenience form.
pub fn face_from_integer_hyperplane(p: &QPolytope, a: &[i64], c: i64) -> Result<FaceResult> {
    let a_r: Vec<BigRational> = a.iter().map(|&x| BigRational::from_integer(x.into())).collect();
    face_from_hyperplane(p, &a_r, &BigRational::from_integer(c.into()))
}

/// Built-in catalog for an ordinary point of multiplicity `s`: the polytopes
/// `x_1 + ... + x_s <= l` with faces on the slices `x_1 + ... + x_s = l`,
/// `l = 1, ..., s-2`.  Empty for `s <= 2` (normal crossings contribute no
/// faces of quasiadjunction).
pub fn ordinary_point_catalog(s: usize) -> Result<Vec<(QPolytope, QFace)>> {
    if s == 0 {
        return Err(Error::InvalidPolytope("multiplicity must be positive".into()));
    }
    let mut out = Vec::new();
    if s <= 2 {
        return Ok(out);
    }
    let ones = vec![1i64; s];
    for l in 1..=(s - 2) {
        let p = QPolytope::from_i64(s, &[(ones.clone(), l as i64)])?;
        match face_from_integer_hyperplane(&p, &ones, l as i64)? {
            FaceResult::Face(f) => out.push((p, f)),
            other => {
                return Err(Error::InvalidPolytope(format!(
                    "catalog slice l={l} for multiplicity {s} is not a face: {other:?}"
                )))
            }
        }
    }
    Ok(out)
}

/// Exponential of the affine span of a rational point set: the translated
/// subtorus cut out by every integer equation satisfied by the span.
/// Translating every point by a common integer vector yields the same
/// subtorus.
pub fn exp_points(points: &[Vec<BigRational>]) -> Result<TranslatedSubtorus> {
    let first = points
        .first()
        .ok_or_else(|| Error::Domain("cannot exponentiate an empty face".into()))?;
    let n = first.len();
    let diffs: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(x, y)| x - y).collect())
        .collect();
    let equations = if diffs.is_empty() {
        IntMat::identity(n)
    } else {
        let (cleared, _) = clear_denominators(&diffs, n);
        cleared.kernel()
    };
    let offsets: Vec<BigRational> = (0..equations.nrows())
        .map(|i| {
            equations
                .row(i)
                .iter()
                .zip(first)
                .map(|(z, x)| BigRational::from_integer(z.clone()) * x)
                .sum()
        })
        .collect();
    TranslatedSubtorus::new(n, equations, offsets)
}

/// Exponential of a face of quasiadjunction.
pub fn exp_face(f: &QFace) -> Result<TranslatedSubtorus> {
    exp_points(f.vertices())
}

/// Verdict of testing a face against a divisor hyperplane `d.x = l`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContributionVerdict {
    /// Whether the face lies inside the hyperplane.
    pub contained: bool,
    /// A face vertex off the hyperplane, present exactly when not contained.
    pub witness: Option<Vec<BigRational>>,
    /// Predicted support component (exponential of the face) when contained.
    pub component: Option<TranslatedSubtorus>,
    /// Externally supplied depth prediction, echoed when contained.
    pub depth: Option<usize>,
}

/// Check whether the affine span of the face lies in `{d.x = level}`; when
/// it does, predict the support component as the exponential of the face
/// with the supplied depth (a sheaf-cohomology dimension given as input).
pub fn contributing_face_test(
    f: &QFace,
    d: &[BigRational],
    level: &BigRational,
    h1_dim: usize,
) -> Result<ContributionVerdict> {
    if d.len() != f.parent().dim() {
        return Err(Error::Shape(format!(
            "hyperplane has {} coefficients in dimension {}",
            d.len(),
            f.parent().dim()
        )));
    }
    for v in f.vertices() {
        if dot(d, v) != *level {
            return Ok(ContributionVerdict {
                contained: false,
                witness: Some(v.clone()),
                component: None,
                depth: None,
            });
        }
    }
    Ok(ContributionVerdict {
        contained: true,
        witness: None,
        component: Some(exp_face(f)?),
        depth: Some(h1_dim),
    })
}

// ---------------------------------------------------------------------------
// Local-to-global pullback
// ---------------------------------------------------------------------------

/// The fractional-part map attached to a non-normal-crossing point: global
/// coordinates pair with the integer matrix columns, then reduce into
/// `[0,1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalToGlobalMap {
    /// Indices of the divisor components through the point (for reporting).
    pub component_indices: Vec<usize>,
    /// `r x s` integer matrix: local coordinate `t` of the image is the
    /// fractional part of `sum_i matrix[i][t] * xi_i`.
    pub matrix: IntMat,
}

impl LocalToGlobalMap {
    pub fn new(component_indices: Vec<usize>, matrix: IntMat) -> Self {
        LocalToGlobalMap { component_indices, matrix }
    }

    /// The map for an ordinary point: local coordinate `t` reads off the
    /// global coordinate of component `indices[t]` directly.
    pub fn selection(r: usize, indices: &[usize]) -> Result<Self> {
        let mut m = IntMat::zero(r, indices.len());
        for (t, &j) in indices.iter().enumerate() {
            if j >= r {
                return Err(Error::Shape(format!(
                    "component index {j} out of range for {r} components"
                )));
            }
            m.set_entry(j, t, BigInt::one());
        }
        Ok(LocalToGlobalMap { component_indices: indices.to_vec(), matrix: m })
    }

    pub fn global_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn local_dim(&self) -> usize {
        self.matrix.ncols()
    }

    /// Apply the map: exact fractional parts of the pairings.
    pub fn apply(&self, xi: &[BigRational]) -> Result<Vec<BigRational>> {
        if xi.len() != self.global_dim() {
            return Err(Error::Shape(format!(
                "point has {} coordinates, map expects {}",
                xi.len(),
                self.global_dim()
            )));
        }
        Ok((0..self.local_dim())
            .map(|t| {
                let s: BigRational = (0..self.global_dim())
                    .map(|i| BigRational::from_integer(self.matrix.entry(i, t).clone()) * &xi[i])
                    .sum();
                fractional(&s)
            })
            .collect())
    }
}

/// One affine cell of a global region: on the band where each pairing
/// functional lies in `[level, level + 1)`, the fractional-part map is
/// affine and the pullback of the local polytopes is an honest polytope.
/// The stored system is the closed closure; `sample` is an interior-ish
/// witness point.
#[derive(Debug, Clone)]
pub struct GlobalCell {
    pub levels: Vec<i64>,
    pub closure_rows: Vec<(Vec<BigRational>, BigRational)>,
    pub vertices: Vec<Vec<BigRational>>,
    pub sample: Vec<BigRational>,
}

/// Intersection of the pullbacks of local polytopes under fractional-part
/// maps: the set of points of `[0,1)^r` whose images lie in every local
/// polytope.  Membership is always decided by direct evaluation; the cell
/// decomposition is a derived description.
#[derive(Debug, Clone)]
pub struct GlobalRegion {
    r: usize,
    locals: Vec<(QPolytope, LocalToGlobalMap)>,
    functionals: Vec<Vec<BigInt>>,
    // per (local, coordinate): index into functionals
    functional_of: Vec<Vec<usize>>,
}

impl GlobalRegion {
    pub fn new(r: usize, locals: Vec<(QPolytope, LocalToGlobalMap)>) -> Result<Self> {
        let mut functionals: Vec<Vec<BigInt>> = Vec::new();
        let mut functional_of = Vec::with_capacity(locals.len());
        for (p, m) in &locals {
            if m.global_dim() != r {
                return Err(Error::Shape(format!(
                    "map expects {} global coordinates, region has {r}",
                    m.global_dim()
                )));
            }
            if m.local_dim() != p.dim() {
                return Err(Error::Shape(format!(
                    "map lands in {} coordinates but the local polytope has dimension {}",
                    m.local_dim(),
                    p.dim()
                )));
            }
            let mut ids = Vec::with_capacity(m.local_dim());
            for t in 0..m.local_dim() {
                let col: Vec<BigInt> = (0..r).map(|i| m.matrix.entry(i, t).clone()).collect();
                let id = match functionals.iter().position(|f| f == &col) {
                    Some(i) => i,
                    None => {
                        functionals.push(col);
                        functionals.len() - 1
                    }
                };
                ids.push(id);
            }
            functional_of.push(ids);
        }
        Ok(GlobalRegion { r, locals, functionals, functional_of })
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn locals(&self) -> &[(QPolytope, LocalToGlobalMap)] {
        &self.locals
    }

    /// Direct evaluation: fractional parts, then local membership.  Points
    /// outside `[0,1)^r` are not members.
    pub fn membership(&self, xi: &[BigRational]) -> Result<bool> {
        if xi.len() != self.r {
            return Err(Error::Shape(format!(
                "point has {} coordinates in dimension {}",
                xi.len(),
                self.r
            )));
        }
        let zero = q_zero();
        let one = q_one();
        if xi.iter().any(|t| t < &zero || t >= &one) {
            return Ok(false);
        }
        for (p, m) in &self.locals {
            if !p.membership(&m.apply(xi)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The affine cells, in lexicographic order of their level vectors.
    /// Candidate levels per functional span its range over the cube; a cell
    /// survives when its closed system has vertices and the genuinely strict
    /// constraints (upper band edges and the cube's open faces) do not pin
    /// the whole cell.
    pub fn cells(&self) -> Result<Vec<GlobalCell>> {
        let ranges: Vec<(i64, i64)> = self
            .functionals
            .iter()
            .map(|f| {
                let lo: BigInt = f.iter().filter(|x| x.is_negative()).cloned().sum();
                let hi: BigInt = f.iter().filter(|x| x.is_positive()).cloned().sum();
                let lo = i64::try_from(lo).expect("functional bound fits in i64");
                let hi = i64::try_from(hi).expect("functional bound fits in i64");
                if lo == hi {
                    (0, 0)
                } else {
                    (lo, hi - 1)
                }
            })
            .collect();
        let mut out = Vec::new();
        let mut levels: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        loop {
            if let Some(cell) = self.build_cell(&levels)? {
                out.push(cell);
            }
            // odometer over level ranges, last index fastest
            let mut i = self.functionals.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if levels[i] < ranges[i].1 {
                    levels[i] += 1;
                    for j in i + 1..self.functionals.len() {
                        levels[j] = ranges[j].0;
                    }
                    break;
                }
            }
        }
    }

    fn build_cell(&self, levels: &[i64]) -> Result<Option<GlobalCell>> {
        let mut rows = cube_rows(self.r);
        // strict rows: indices whose true constraint is strict (<)
        let mut strict: Vec<usize> = (0..self.r).map(|i| 2 * i).collect(); // x_i <= 1 rows
        for (fi, f) in self.functionals.iter().enumerate() {
            let fr: Vec<BigRational> =
                f.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            let n = BigRational::from_integer(levels[fi].into());
            // f.x >= n
            rows.push((fr.iter().map(|x| -x).collect(), -n.clone()));
            // f.x < n + 1 (stored closed)
            rows.push((fr, n + q_one()));
            strict.push(rows.len() - 1);
        }
        for (li, (p, _)) in self.locals.iter().enumerate() {
            for ineq in p.inequalities() {
                // sum_t a[t] * (f_t . x - n_t) <= c
                let mut coeff = vec![q_zero(); self.r];
                let mut shift = q_zero();
                for (t, a_t) in ineq.a.iter().enumerate() {
                    let fi = self.functional_of[li][t];
                    for i in 0..self.r {
                        coeff[i] += a_t
                            * BigRational::from_integer(self.functionals[fi][i].clone());
                    }
                    shift += a_t * BigRational::from_integer(levels[fi].into());
                }
                rows.push((coeff, &ineq.c + shift));
            }
        }
        let verts = enumerate_vertices(&rows, self.r)?;
        if verts.is_empty() {
            return Ok(None);
        }
        // prune cells whose closure lies entirely on a strict boundary
        for &si in &strict {
            let (a, c) = &rows[si];
            if verts.iter().all(|v| dot(a, v) == *c) {
                return Ok(None);
            }
        }
        let k = BigRational::from_integer((verts.len() as i64).into());
        let sample: Vec<BigRational> = (0..self.r)
            .map(|i| verts.iter().map(|v| &v[i]).sum::<BigRational>() / &k)
            .collect();
        Ok(Some(GlobalCell {
            levels: levels.to_vec(),
            closure_rows: rows,
            vertices: verts,
            sample,
        }))
    }
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct IneqDto {
    a: Vec<String>,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct PolytopeDto {
    dim: usize,
    inequalities: Vec<IneqDto>,
}

#[derive(Serialize, Deserialize)]
struct HyperplaneDto {
    a: Vec<String>,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct FaceDto {
    #[serde(flatten)]
    polytope: PolytopeDto,
    hyperplane: HyperplaneDto,
}

fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl QPolytope {
    pub fn to_json(&self) -> String {
        let dto = PolytopeDto {
            dim: self.dim,
            inequalities: self
                .inequalities
                .iter()
                .map(|i| IneqDto {
                    a: i.a.iter().map(rational_string).collect(),
                    c: rational_string(&i.c),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("polytope serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: PolytopeDto =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("polytope JSON: {e}")))?;
        let mut ineqs = Vec::with_capacity(dto.inequalities.len());
        for i in &dto.inequalities {
            let a = i.a.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            ineqs.push(Inequality { a, c: parse_rational(&i.c)? });
        }
        Self::new(dto.dim, ineqs)
    }
}

impl QFace {
    pub fn to_json(&self) -> String {
        let dto = FaceDto {
            polytope: PolytopeDto {
                dim: self.parent.dim,
                inequalities: self
                    .parent
                    .inequalities
                    .iter()
                    .map(|i| IneqDto {
                        a: i.a.iter().map(rational_string).collect(),
                        c: rational_string(&i.c),
                    })
                    .collect(),
            },
            hyperplane: HyperplaneDto {
                a: self.hyperplane_a.iter().map(rational_string).collect(),
                c: rational_string(&self.hyperplane_c),
            },
        };
        serde_json::to_string_pretty(&dto).expect("face serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: FaceDto =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("face JSON: {e}")))?;
        let mut ineqs = Vec::with_capacity(dto.polytope.inequalities.len());
        for i in &dto.polytope.inequalities {
            let a = i.a.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            ineqs.push(Inequality { a, c: parse_rational(&i.c)? });
        }
        let p = QPolytope::new(dto.polytope.dim, ineqs)?;
        let a = dto
            .hyperplane
            .a
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        let c = parse_rational(&dto.hyperplane.c)?;
        match face_from_hyperplane(&p, &a, &c)? {
            FaceResult::Face(f) => Ok(f),
            other => Err(Error::InvalidPolytope(format!(
                "hyperplane does not cut a face: {other:?}"
            ))),
        }
    }
}
