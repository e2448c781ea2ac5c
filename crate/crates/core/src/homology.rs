//! First homology of divisor complements from intersection data.
//!
//! The abelianized fundamental group of the complement of a divisor
//! `D = D_1 + ... + D_N` in a simply connected variety `X` is the cokernel
//! of the map `H_2(X) -> Z^N` sending a 2-cycle to its intersection numbers
//! with the components.  This module computes that cokernel by Smith normal
//! form, and tests whether a character is *essential* — nontrivial on the
//! boundary loop of a small disk transversal to every component.

use serde::{Deserialize, Serialize};


use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::intmat::IntMat;
use crate::ring::character::Character;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComponentInfo {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct Hypotheses {
    pub simply_connected: bool,
    pub ample: bool,
    pub normal_crossings_outside_isolated: bool,
}

/// Intersection data of a divisor inside an ambient variety.
///
/// `pairing` has one row per basis element of `H_2(X)` and one column per
/// component (the intersection number).  `boundary` expresses the boundary
/// loop of a small transversal disk at component `j` as the `j`-th column in
/// a chosen basis of `H_1` of the complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorData {
    pub components: Vec<ComponentInfo>,
    pub pairing: Option<IntMat>,
    pub boundary: Option<IntMat>,
    pub hypotheses: Hypotheses,
}

#[derive(Serialize, Deserialize)]
struct DivisorDto {
    components: Vec<ComponentInfo>,
    #[serde(default)]
    pairing: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    boundary: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    hypotheses: Hypotheses,
}

impl DivisorData {
    pub fn new(
        components: Vec<ComponentInfo>,
        pairing: Option<IntMat>,
        boundary: Option<IntMat>,
        hypotheses: Hypotheses,
    ) -> Result<Self> {
        let n = components.len();
        if let Some(p) = &pairing {
            if p.ncols() != n {
                return Err(Error::Shape(format!(
                    "pairing matrix has {} columns for {} components",
                    p.ncols(),
                    n
                )));
            }
        }
        if let Some(b) = &boundary {
            if b.ncols() != n {
                return Err(Error::Shape(format!(
                    "boundary matrix has {} columns for {} components",
                    b.ncols(),
                    n
                )));
            }
        }
        Ok(DivisorData { components, pairing, boundary, hypotheses })
    }

    pub fn to_json(&self) -> String {
        let dto = DivisorDto {
            components: self.components.clone(),
            pairing: self.pairing.as_ref().map(rows_to_i64),
            boundary: self.boundary.as_ref().map(rows_to_i64),
            hypotheses: self.hypotheses,
        };
        serde_json::to_string_pretty(&dto).expect("divisor serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: DivisorDto =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("divisor JSON: {e}")))?;
        let n = dto.components.len();
        let build = |rows: &Vec<Vec<i64>>| -> Result<IntMat> {
            let width = rows.first().map_or(n, |r| r.len());
            if rows.iter().any(|r| r.len() != width) {
                return Err(Error::Shape("ragged matrix in divisor data".into()));
            }
            Ok(IntMat::from_i64(rows, width))
        };
        let pairing = dto.pairing.as_ref().map(build).transpose()?;
        let boundary = dto.boundary.as_ref().map(build).transpose()?;
        DivisorData::new(dto.components, pairing, boundary, dto.hypotheses)
    }
}

fn rows_to_i64(m: &IntMat) -> Vec<Vec<i64>> {
    m.rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| i64::try_from(x.clone()).expect("entry fits in i64"))
                .collect()
        })
        .collect()
}

/// A finitely generated abelian group: free rank plus invariant factors
/// (each dividing the next, all greater than 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Abelianization of the fundamental group of the complement: the cokernel
/// of the intersection pairing `H_2(X) -> Z^N`, computed by Smith normal
/// form.  When the divisor data declares the triviality hypotheses
/// (simply connected ambient space, ample components, normal crossings
/// outside finitely many points), this cokernel is the full fundamental
/// group.
pub fn abelianized_pi1(d: &DivisorData) -> Result<AbelianGroup> {
    let Some(pairing) = &d.pairing else {
        return Err(Error::Domain("divisor data has no pairing matrix".into()));
    };
    let invariants = pairing.smith_invariants();
    let rank = invariants.len();
    let torsion: Vec<u64> = invariants
        .iter()
        .filter(|s| !s.is_one())
        .map(|s| u64::try_from(s.abs()).expect("torsion coefficient fits in u64"))
        .collect();
    Ok(AbelianGroup { free_rank: pairing.ncols() - rank, torsion })
}

/// Whether the character is nontrivial on the boundary loop of a small
/// 2-disk transversal to every component: for each component `j`, the
/// weighted sum `sum_i boundary[i][j] * kappa_i` must be non-integral.
pub fn is_essential(chi: &Character, d: &DivisorData) -> Result<bool> {
    let Some(boundary) = &d.boundary else {
        return Err(Error::Domain("divisor data has no boundary matrix".into()));
    };
    if chi.dim() != boundary.nrows() {
        return Err(Error::Shape(format!(
            "character dimension {} does not match {} homology generators",
            chi.dim(),
            boundary.nrows()
        )));
    }
    for j in 0..boundary.ncols() {
        let col: Vec<i64> = (0..boundary.nrows())
            .map(|i| i64::try_from(boundary.entry(i, j).clone()).expect("entry fits in i64"))
            .collect();
        if chi.satisfies_relation(&col) {
            return Ok(false);
        }
    }
    Ok(true)
}
