//! Subdivision of the canonical charge cone into regions where every charge
//! form has a constant sign, so that the dimension grading is linear on each
//! region.

use crate::cone::{Cone, SignSplit};
use crate::error::{Error, Result};
use crate::monopole::ChargeModel;

#[derive(Debug, Clone)]
pub(crate) struct Chamber {
    /// Extreme rays in reduced coordinates; every point of the chamber is a
    /// nonnegative combination of these.
    pub rays: Vec<Vec<i64>>,
}

/// The distinct sign-relevant linear forms of the model, in reduced
/// coordinates: primitive, leading entry positive, deduplicated, sorted.
pub(crate) fn reduced_forms(model: &ChargeModel) -> Vec<Vec<i64>> {
    let mut forms: Vec<Vec<i64>> = Vec::new();
    for f in model.gauge_forms.iter().chain(model.matter_forms.iter().map(|(f, _)| f)) {
        let mut r = model.reduce_form(f);
        let g = r.iter().fold(0i64, |acc, &v| crate::linalg::gcd(acc as i128, v as i128) as i64);
        if g == 0 {
            continue;
        }
        for x in &mut r {
            *x /= g;
        }
        if let Some(first) = r.iter().find(|&&x| x != 0) {
            if *first < 0 {
                for x in &mut r {
                    *x = -*x;
                }
            }
        }
        forms.push(r);
    }
    forms.sort();
    forms.dedup();
    forms
}

/// Split the canonical cone by the signs of all reduced forms. The leaves
/// cover the canonical cone, each is pointed, and each comes with its exact
/// extreme rays.
pub(crate) fn chamber_fan(model: &ChargeModel, max_chambers: usize) -> Result<Vec<Chamber>> {
    let dim = model.reduced_dim();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let forms = reduced_forms(model);
    let base = Cone::weyl_base(&model.dims, model.pinned_block())?;
    let mut out = Vec::new();
    let mut stack: Vec<(Cone, usize)> = vec![(base, 0)];
    while let Some((cone, i)) = stack.pop() {
        if cone.is_trivial() {
            continue;
        }
        if i == forms.len() {
            if !cone.lineality.is_empty() {
                return Err(Error::invariant(
                    "chamber-pointed",
                    "sign region kept a lineality direction; the joint form kernel must be checked first"
                        .to_string(),
                ));
            }
            out.push(Chamber { rays: cone.rays.iter().map(|r| r.dir.clone()).collect() });
            if out.len() > max_chambers {
                return Err(Error::Budget {
                    op: "chamber subdivision",
                    detail: format!("more than {max_chambers} sign regions"),
                });
            }
            continue;
        }
        match cone.split(&forms[i])? {
            SignSplit::AllNonneg | SignSplit::AllNonpos => stack.push((cone, i + 1)),
            SignSplit::Split { plus, minus } => {
                stack.push((plus, i + 1));
                stack.push((minus, i + 1));
            }
        }
    }
    if out.is_empty() {
        return Err(Error::invariant(
            "chamber-cover",
            "subdivision produced no regions for a positive-rank lattice".to_string(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{DimVector, GaugeTheory, GroupConvention, Quiver};

    fn model_of(theory: &GaugeTheory) -> ChargeModel {
        ChargeModel::new(theory).unwrap()
    }

    fn a2(v: Vec<u32>, w: Vec<u32>, group: GroupConvention) -> GaugeTheory {
        let q = Quiver::new(vec!["1".into(), "2".into()], &[("1".into(), "2".into())]).unwrap();
        GaugeTheory::quiver(q, DimVector(v), DimVector(w), group).unwrap()
    }

    #[test]
    fn one_dimensional_lattices_split_in_two() {
        for theory in [GaugeTheory::sl2(4), GaugeTheory::u1(vec![2, -3]).unwrap()] {
            let fan = chamber_fan(&model_of(&theory), 100).unwrap();
            let mut rays: Vec<Vec<i64>> = fan.iter().flat_map(|c| c.rays.clone()).collect();
            rays.sort();
            assert_eq!(rays, vec![vec![-1], vec![1]]);
        }
    }

    #[test]
    fn rank_one_quiver_splits_in_two() {
        let theory = a2(vec![1, 1], vec![0, 0], GroupConvention::ProdGlModCenter);
        let fan = chamber_fan(&model_of(&theory), 100).unwrap();
        assert_eq!(fan.len(), 2);
    }

    #[test]
    fn half_plane_subdivides_into_three() {
        // Reduced coordinates (x, y) with x >= 0 and forms x, x - y, y.
        let theory = a2(vec![2, 1], vec![0, 0], GroupConvention::ProdGlModCenter);
        let fan = chamber_fan(&model_of(&theory), 100).unwrap();
        assert_eq!(fan.len(), 3);
        let mut rays: Vec<Vec<i64>> = fan.iter().flat_map(|c| c.rays.clone()).collect();
        rays.sort();
        rays.dedup();
        assert_eq!(rays, vec![vec![0, -1], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn budget_is_enforced() {
        let theory = a2(vec![2, 2], vec![1, 1], GroupConvention::ProdGl);
        let err = chamber_fan(&model_of(&theory), 2).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }

    #[test]
    fn form_normalisation_dedups_signs_and_scales() {
        let model = model_of(&GaugeTheory::sl2(5));
        // Gauge form (2) and matter forms (1), (-1) collapse to a single (1).
        assert_eq!(reduced_forms(&model), vec![vec![1]]);
    }
}
