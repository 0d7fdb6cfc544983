//! Good/ugly/bad classification by exact minimisation of the dimension
//! grading over nonzero magnetic charges.
//!
//! Pipeline: check the joint kernel of all charge forms, subdivide the
//! canonical charge cone into sign regions, evaluate the grading on every
//! extreme ray, and finish with a certified lattice scan. On each sign region
//! the grading is linear, so a nonpositive value anywhere forces a
//! nonpositive value on some extreme ray; conversely when every ray value is
//! positive, `2Δ(λ) ≥ κ·‖λ‖∞ / R` with `κ` the smallest ray value and `R`
//! the largest ray max-norm, which turns the remaining minimisation into a
//! finite scan.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::chambers::{chamber_fan, reduced_forms};
use crate::error::{Error, Result};
use crate::linalg;
use crate::monopole::{canonicalize, graded_lex_key, scan_canonical_shell, ChargeModel, Coweight};
use crate::quiver::{
    cartan_matrix, classify_graph, DimVector, GaugeTheory, GraphClass, GroupConvention, Quiver,
};
use crate::roots::{positive_roots_bounded, positive_roots_finite, RootTable};
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Good,
    Ugly,
    Bad,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The reduced charge lattice is zero-dimensional; the defining bound
    /// holds vacuously and the verdict is good by convention.
    TrivialLattice,
    /// A nonzero charge with nonpositive grading, exhibited directly.
    BadRay { value: i64 },
    /// Every extreme ray of every sign region has positive grading, giving
    /// the lower bound `2Δ(λ) ≥ kappa·‖λ‖∞ / ray_radius`; the minimum was
    /// then certified by scanning all charges with max-norm at most
    /// `scanned_radius`.
    ConeBound {
        chambers: usize,
        rays: usize,
        kappa: i64,
        ray_radius: i64,
        scanned_radius: i64,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// Dimension of the reduced charge lattice.
    pub rank: usize,
    /// Certified minimum of the grading over nonzero charges for good/ugly
    /// verdicts; the witness value for bad ones; absent on a trivial lattice.
    pub min_value: Option<i64>,
    /// A charge realising `min_value`, in canonical form.
    pub witness: Option<Coweight>,
    pub certificate: Certificate,
    pub notes: Vec<String>,
}

pub fn classify_theory(theory: &GaugeTheory) -> Result<Classification> {
    classify_theory_with(theory, &Limits::default())
}

pub fn classify_theory_with(theory: &GaugeTheory, limits: &Limits) -> Result<Classification> {
    let model = ChargeModel::new(theory)?;
    let rank = model.reduced_dim();
    if rank == 0 {
        return Ok(Classification {
            verdict: Verdict::Good,
            rank,
            min_value: None,
            witness: None,
            certificate: Certificate::TrivialLattice,
            notes: vec![
                "the reduced charge lattice is zero-dimensional, so the bound holds vacuously"
                    .to_string(),
            ],
        });
    }
    if rank > limits.max_reduced_dim {
        return Err(Error::DimensionLimit { dim: rank, limit: limits.max_reduced_dim });
    }

    // A nonzero direction on which every charge form vanishes has grading
    // zero everywhere along it.
    let forms = reduced_forms(&model);
    let rows: Vec<Vec<i128>> = forms
        .iter()
        .map(|f| f.iter().map(|&x| x as i128).collect())
        .collect();
    if let Some(k) = linalg::kernel_basis(&rows, rank).first() {
        let dir: Vec<i64> = k
            .iter()
            .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("kernel witness")))
            .collect::<Result<_>>()?;
        let flat = model.unreduce(&dir);
        let value = model.two_delta_flat(&flat)?;
        let witness = canonicalize(theory, &model.unflatten(&flat))?;
        return Ok(Classification {
            verdict: Verdict::Bad,
            rank,
            min_value: Some(value),
            witness: Some(witness),
            certificate: Certificate::BadRay { value },
            notes: vec!["every charge form vanishes along the witness direction".to_string()],
        });
    }

    let fan = chamber_fan(&model, limits.max_chambers)?;
    let mut ray_set: BTreeSet<Vec<i64>> = BTreeSet::new();
    for chamber in &fan {
        for ray in &chamber.rays {
            ray_set.insert(ray.clone());
        }
    }
    let mut kappa = i64::MAX;
    let mut radius: i64 = 1;
    let mut best: Option<(i64, (i64, Vec<(i64, u8)>), Vec<i64>)> = None;
    for ray in &ray_set {
        let value = model.two_delta_flat(&model.unreduce(ray))?;
        if value <= 0 {
            let witness = canonicalize(theory, &model.unflatten(&model.unreduce(ray)))?;
            return Ok(Classification {
                verdict: Verdict::Bad,
                rank,
                min_value: Some(value),
                witness: Some(witness),
                certificate: Certificate::BadRay { value },
                notes: vec![
                    "the grading is nonpositive along an extreme ray of a sign region".to_string(),
                ],
            });
        }
        kappa = kappa.min(value);
        radius = radius.max(ray.iter().map(|&x| x.abs()).max().unwrap_or(0));
        let key = graded_lex_key(ray);
        if best.as_ref().map_or(true, |(bv, bk, _)| value < *bv || (value == *bv && key < *bk)) {
            best = Some((value, key, ray.clone()));
        }
    }
    let (mut m, mut m_key, mut m_point) =
        best.ok_or_else(|| Error::invariant("chamber-cover", "no extreme rays".to_string()))?;

    // Certified once scanned·κ ≥ (m−1)·R: any charge with a smaller value
    // would have max-norm within the scanned range.
    let mut budget = limits.scan_budget;
    let mut scanned: i64 = 0;
    let mut shell: i64 = 1;
    while (scanned as i128) * (kappa as i128) < ((m as i128) - 1) * (radius as i128) {
        let stopped = scan_canonical_shell(&model, shell, &mut budget, &mut |p| {
            let value = model.two_delta_flat(&model.unreduce(p))?;
            let key = graded_lex_key(p);
            if value < m || (value == m && key < m_key) {
                m = value;
                m_key = key;
                m_point = p.to_vec();
            }
            Ok(m == 1)
        })?;
        scanned = shell;
        shell += 1;
        if stopped {
            break;
        }
    }

    let witness = canonicalize(theory, &model.unflatten(&model.unreduce(&m_point)))?;
    let verdict = if m >= 2 { Verdict::Good } else { Verdict::Ugly };
    let note = match verdict {
        Verdict::Good => format!(
            "minimum {m} certified by the ray bound after scanning charges of max-norm up to {scanned}"
        ),
        _ => "a nonzero charge of grading one exists and no smaller value is possible".to_string(),
    };
    Ok(Classification {
        verdict,
        rank,
        min_value: Some(m),
        witness: Some(witness),
        certificate: Certificate::ConeBound {
            chambers: fan.len(),
            rays: ray_set.len(),
            kappa,
            ray_radius: radius,
            scanned_radius: scanned,
        },
        notes: vec![note],
    })
}

/// Exact minimum of the grading over nonzero canonical charges with max-norm
/// at most `radius`, with a minimising charge. `None` when the lattice is
/// zero-dimensional or the radius is zero.
pub fn brute_force_min(theory: &GaugeTheory, radius: i64) -> Result<Option<(i64, Coweight)>> {
    brute_force_min_with(theory, radius, &Limits::default())
}

pub fn brute_force_min_with(
    theory: &GaugeTheory,
    radius: i64,
    limits: &Limits,
) -> Result<Option<(i64, Coweight)>> {
    let model = ChargeModel::new(theory)?;
    if model.reduced_dim() == 0 || radius <= 0 {
        return Ok(None);
    }
    let mut budget = limits.scan_budget;
    let mut best: Option<(i64, (i64, Vec<(i64, u8)>), Vec<i64>)> = None;
    for shell in 1..=radius {
        scan_canonical_shell(&model, shell, &mut budget, &mut |p| {
            let value = model.two_delta_flat(&model.unreduce(p))?;
            let key = graded_lex_key(p);
            if best
                .as_ref()
                .map_or(true, |(bv, bk, _)| value < *bv || (value == *bv && key < *bk))
            {
                best = Some((value, key, p.to_vec()));
            }
            Ok(false)
        })?;
    }
    match best {
        None => Ok(None),
        Some((value, _, point)) => {
            let witness = canonicalize(theory, &model.unflatten(&model.unreduce(&point)))?;
            Ok(Some((value, witness)))
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NeverGoodEntry {
    pub v: DimVector,
    pub verdict: Verdict,
    /// True when the reduced lattice is zero-dimensional, where the good
    /// verdict is a convention rather than a positivity statement.
    pub trivial_lattice: bool,
    pub is_positive_root: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NeverGoodReport {
    pub entries: Vec<NeverGoodEntry>,
    /// Dimension vectors skipped because their support is disconnected.
    pub skipped_disconnected: usize,
    /// Some nontrivial entry came out good (the sweep is meant to refute this).
    pub any_good_nontrivial: bool,
    /// Over nontrivial entries: ugly exactly at positive roots. Absent when
    /// the graph carries no finite or affine root data.
    pub ugly_matches_roots: Option<bool>,
}

/// Classify every unframed central-quotient theory with `0 < v ≤ bound` on
/// the given quiver, cross-referencing positive-root membership.
pub fn verify_never_good(quiver: &Quiver, bound: &DimVector) -> Result<NeverGoodReport> {
    verify_never_good_with(quiver, bound, &Limits::default())
}

pub fn verify_never_good_with(
    quiver: &Quiver,
    bound: &DimVector,
    limits: &Limits,
) -> Result<NeverGoodReport> {
    let n = quiver.n_vertices();
    if bound.len() != n {
        return Err(Error::invariant("bound-length", format!("bound must have {n} entries")));
    }
    let cartan = cartan_matrix(quiver);
    let table: Option<RootTable> = match classify_graph(quiver)? {
        GraphClass::Finite => Some(positive_roots_finite(&cartan)?),
        GraphClass::Affine { .. } => Some(positive_roots_bounded(&cartan, bound)?),
        GraphClass::Indefinite => None,
    };
    let mut entries = Vec::new();
    let mut skipped_disconnected = 0usize;
    let mut v = vec![0u32; n];
    'outer: loop {
        // Odometer over 0 <= v <= bound.
        let mut i = 0;
        loop {
            if i == n {
                break 'outer;
            }
            v[i] += 1;
            if v[i] <= bound.0[i] {
                break;
            }
            v[i] = 0;
            i += 1;
        }
        let support: Vec<bool> = v.iter().map(|&x| x > 0).collect();
        if !quiver.is_connected_on(&support) {
            skipped_disconnected += 1;
            continue;
        }
        let dv = DimVector(v.clone());
        let theory = GaugeTheory::quiver(
            quiver.clone(),
            dv.clone(),
            DimVector(vec![0; n]),
            GroupConvention::ProdGlModCenter,
        )?;
        let c = classify_theory_with(&theory, limits)?;
        let is_positive_root = table
            .as_ref()
            .map(|t| t.roots.iter().any(|(r, _)| *r == dv));
        entries.push(NeverGoodEntry {
            v: dv,
            verdict: c.verdict,
            trivial_lattice: c.certificate == Certificate::TrivialLattice,
            is_positive_root,
        });
    }
    let any_good_nontrivial = entries
        .iter()
        .any(|e| e.verdict == Verdict::Good && !e.trivial_lattice);
    let ugly_matches_roots = if table.is_some() {
        Some(entries.iter().all(|e| {
            e.trivial_lattice
                || (e.verdict == Verdict::Ugly) == e.is_positive_root.unwrap_or(false)
        }))
    } else {
        None
    };
    Ok(NeverGoodReport { entries, skipped_disconnected, any_good_nontrivial, ugly_matches_roots })
}
