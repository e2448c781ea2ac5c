//! Bundled example data shared by the test suites and the command-line
//! front end: the resolved ordinary point of an `r`-fold curve singularity,
//! an eight-plane configuration with four-fold points and its projections,
//! a catalog of branched-cover data, and small divisor examples.

use num_rational::BigRational;
use num_traits::Zero;

use crate::covers::BranchDatum;
use crate::homology::{ComponentInfo, DivisorData, Hypotheses};
use crate::intmat::IntMat;
use crate::modpres::TranslatedSubtorus;
use crate::zeta::{ResolutionComponent, ResolutionDatum, Stratum};

/// Resolution datum for `r` concurrent lines (the cone over `r` distinct
/// points): one blowup, exceptional component `E0` with multiplicity one
/// along every branch and discrepancy one, plus the `r` strict transforms.
///
/// The stratum weights are the *realized* equivariant contributions — the
/// torus factor over a two-fold intersection has Euler number zero, and the
/// exceptional weight absorbs the odd-degree cohomological sign — so the
/// joint limit of the zeta function reproduces rank-one local system
/// homology exactly (see the oracle tests).
pub fn concurrent_lines_datum(r: usize) -> ResolutionDatum {
    assert!(r >= 2, "need at least two branches");
    let mut components = vec![ResolutionComponent { name: "E0".into(), a: vec![1; r], c: 1 }];
    for k in 0..r {
        let mut a = vec![0; r];
        a[k] = 1;
        components.push(ResolutionComponent { name: format!("D{}", k + 1), a, c: 0 });
    }
    let mut strata = vec![Stratum { subset: vec![0], euler: r as i64 - 2, hodge: None }];
    for k in 1..=r {
        strata.push(Stratum { subset: vec![0, k], euler: 0, hodge: None });
        strata.push(Stratum { subset: vec![k], euler: 0, hodge: None });
    }
    ResolutionDatum::new(r, components, strata).expect("valid concurrent-lines datum")
}

// ---------------------------------------------------------------------------
// Eight planes with eight four-fold points
// ---------------------------------------------------------------------------

/// Plane incidences of the eight four-fold points: `INCIDENCE[q]` lists the
/// four planes (1-based) through point `q + 1`.  The configuration is
/// self-dual: plane `p` passes through point `q` iff plane `q` passes
/// through point `p`.
pub const CONFIG_8_4_INCIDENCE: [[usize; 4]; 8] = [
    [2, 3, 4, 5],
    [1, 3, 4, 6],
    [1, 2, 4, 7],
    [1, 2, 3, 8],
    [1, 6, 7, 8],
    [2, 5, 7, 8],
    [3, 5, 6, 8],
    [4, 5, 6, 7],
];

/// Divisor data of the eight-plane configuration in projective three-space:
/// the hyperplane class meets each plane once, and the meridian of the last
/// plane is minus the sum of the first seven in the chosen basis of the
/// complement's first homology (a free group of rank seven).
pub fn config_8_4_divisor() -> DivisorData {
    let components = (1..=8)
        .map(|i| ComponentInfo { name: format!("P{i}"), degree: 1 })
        .collect();
    let pairing = IntMat::from_i64(&[vec![1; 8]], 8);
    let mut boundary = Vec::with_capacity(7);
    for i in 0..7 {
        let mut row = vec![0i64; 8];
        row[i] = 1;
        row[7] = -1;
        boundary.push(row);
    }
    let boundary = IntMat::from_i64(&boundary, 8);
    DivisorData::new(
        components,
        Some(pairing),
        Some(boundary),
        Hypotheses {
            simply_connected: true,
            ample: true,
            normal_crossings_outside_isolated: true,
        },
    )
    .expect("valid configuration data")
}

/// The nine projection maps on first homology, each a matrix with one row
/// per target meridian and one column per basis meridian of the source.
///
/// The first eight project from one of the four-fold points: a plane through
/// the center maps to the target line of its image (ranked within the
/// incidence list), every other plane maps to zero.  The ninth is the
/// orbifold quotient sending the seven basis meridians cyclically onto four.
pub fn config_8_4_projection_maps() -> Vec<IntMat> {
    let mut maps = Vec::with_capacity(9);
    for inc in &CONFIG_8_4_INCIDENCE {
        let mut rows = vec![vec![0i64; 7]; 4];
        for (rank, &plane) in inc.iter().enumerate() {
            if plane <= 7 {
                rows[rank][plane - 1] = 1;
            }
        }
        maps.push(IntMat::from_i64(&rows, 7));
    }
    let mut rows = vec![vec![0i64; 7]; 4];
    for col in 0..7 {
        rows[col % 4][col] = 1;
    }
    maps.push(IntMat::from_i64(&rows, 7));
    maps
}

/// The expected images of the target characteristic subtorus under the nine
/// projections: nine pairwise distinct three-dimensional subtori of the
/// seven-torus, recorded by their integer equation rows (all offsets zero).
pub fn config_8_4_expected_subtori() -> Vec<TranslatedSubtorus> {
    fn zeros(idx: &[usize]) -> Vec<Vec<i64>> {
        idx.iter()
            .map(|&i| {
                let mut row = vec![0i64; 7];
                row[i - 1] = 1;
                row
            })
            .collect()
    }
    fn sum(idx: &[usize]) -> Vec<i64> {
        let mut row = vec![0i64; 7];
        for &i in idx {
            row[i - 1] = 1;
        }
        row
    }
    let make = |rows: Vec<Vec<i64>>| {
        let offsets = vec![BigRational::zero(); rows.len()];
        TranslatedSubtorus::from_rows(7, &rows, &offsets).expect("valid subtorus rows")
    };
    let mut out = Vec::with_capacity(9);
    // projections from the eight four-fold points
    let data: [(&[usize], Option<&[usize]>); 8] = [
        (&[1, 6, 7], Some(&[2, 3, 4, 5])),
        (&[2, 5, 7], Some(&[1, 3, 4, 6])),
        (&[3, 5, 6], Some(&[1, 2, 4, 7])),
        (&[4, 5, 6, 7], None),
        (&[2, 3, 4, 5], None),
        (&[1, 3, 4, 6], None),
        (&[1, 2, 4, 7], None),
        (&[1, 2, 3], Some(&[4, 5, 6, 7])),
    ];
    for (z, s) in data {
        let mut rows = zeros(z);
        if let Some(s) = s {
            rows.push(sum(s));
        }
        out.push(make(rows));
    }
    // the orbifold quotient map
    let mut rows = Vec::new();
    for i in 0..3 {
        let mut row = vec![0i64; 7];
        row[i] = 1;
        row[i + 4] = -1;
        rows.push(row);
    }
    rows.push(sum(&[1, 2, 3, 4]));
    out.push(make(rows));
    out
}

// ---------------------------------------------------------------------------
// Branched covers and weighted cones
// ---------------------------------------------------------------------------

/// Bundled branched-cover data: the uniform diagonal family plus a handful
/// of non-uniform multiplicities, all connected.
pub fn branch_catalog() -> Vec<BranchDatum> {
    let mut data = Vec::new();
    for m in 2..=7u64 {
        for r in 2..=7usize {
            data.push(BranchDatum::new(m, vec![1; r]).expect("uniform datum"));
        }
    }
    data.push(BranchDatum::new(4, vec![1, 1, 2]).expect("catalog datum"));
    data.push(BranchDatum::new(6, vec![1, 2, 3]).expect("catalog datum"));
    data.push(BranchDatum::new(5, vec![2, 3, 4, 1]).expect("catalog datum"));
    data.push(BranchDatum::new(7, vec![1, 2, 4]).expect("catalog datum"));
    data.push(BranchDatum::new(6, vec![1, 1, 1, 3]).expect("catalog datum"));
    data
}

/// Weight vectors used by the weighted-cone examples.
pub fn weighted_degree_examples() -> Vec<Vec<i64>> {
    vec![vec![2, 1, 3], vec![1, 1, 2], vec![2, 2, 1, 1], vec![3, 1, 1]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incidence_is_self_dual_and_balanced() {
        // every plane appears in exactly four incidence lists
        for plane in 1..=8 {
            let count = CONFIG_8_4_INCIDENCE
                .iter()
                .filter(|inc| inc.contains(&plane))
                .count();
            assert_eq!(count, 4, "plane {plane}");
        }
        // self-duality
        for (q, inc) in CONFIG_8_4_INCIDENCE.iter().enumerate() {
            for &p in inc {
                assert!(
                    CONFIG_8_4_INCIDENCE[p - 1].contains(&(q + 1)),
                    "point {} vs plane {p}",
                    q + 1
                );
            }
        }
        // no two points share more than one plane pair-wise structure:
        // distinct lists
        for i in 0..8 {
            for j in i + 1..8 {
                assert_ne!(CONFIG_8_4_INCIDENCE[i], CONFIG_8_4_INCIDENCE[j]);
            }
        }
    }

    #[test]
    fn projection_maps_are_consistent() {
        let maps = config_8_4_projection_maps();
        assert_eq!(maps.len(), 9);
        for m in &maps {
            assert_eq!(m.nrows(), 4);
            assert_eq!(m.ncols(), 7);
        }
        // each point map hits every target meridian once over all 8 planes,
        // counting the missing eighth column as minus the sum of the others
        for (q, m) in maps[..8].iter().enumerate() {
            let inc = &CONFIG_8_4_INCIDENCE[q];
            for row in 0..4 {
                let total: i64 = (0..7)
                    .map(|c| i64::try_from(m.entry(row, c).clone()).unwrap())
                    .sum();
                let plane_of_row = inc[row];
                // if the ranked plane is the eighth, the row is zero on the
                // basis columns
                assert_eq!(total, if plane_of_row == 8 { 0 } else { 1 });
            }
        }
    }

    #[test]
    fn expected_subtori_are_distinct_dimension_three() {
        let tori = config_8_4_expected_subtori();
        assert_eq!(tori.len(), 9);
        for t in &tori {
            assert_eq!(t.dim(), Some(3));
        }
        for i in 0..9 {
            for j in i + 1..9 {
                assert_ne!(tori[i], tori[j], "subtori {i} and {j}");
            }
        }
    }

    #[test]
    fn divisor_data_shape() {
        let d = config_8_4_divisor();
        assert_eq!(d.components.len(), 8);
        assert_eq!(d.pairing.as_ref().unwrap().nrows(), 1);
        assert_eq!(d.boundary.as_ref().unwrap().nrows(), 7);
        let back = DivisorData::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn branch_catalog_is_connected() {
        let data = branch_catalog();
        assert_eq!(data.len(), 36 + 5);
        for b in &data {
            assert!(b.deck_order() >= 2);
        }
    }
}
