//! Conformal-dimension evaluation for magnetic charges.
//!
//! Every supported theory is lowered to a [`ChargeModel`]: a list of integer
//! linear forms on the flattened coweight coordinates, split into gauge-root
//! forms (weight -2 each in the grading) and matter forms with multiplicities
//! (weight +1/2 each). All arithmetic is exact; the doubled grading `2Δ` is
//! always an integer and the implementation checks that internally.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{GaugeTheory, GroupConvention};

/// A magnetic charge: one integer tuple per gauge-group factor. One-block,
/// length-one tuples for the rank-one theories.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(pub Vec<Vec<i64>>);

impl Coweight {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|b| b.iter().all(|&x| x == 0))
    }
}

/// Matter weights as flat linear forms with multiplicities, together with the
/// block structure of the flattened coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMultiset {
    pub dims: Vec<usize>,
    pub weights: Vec<(Vec<i64>, u64)>,
}

/// Lowered form of a theory, shared by the evaluator and the classifier.
#[derive(Debug, Clone)]
pub(crate) struct ChargeModel {
    /// Sizes of the per-factor coordinate blocks.
    pub dims: Vec<usize>,
    pub flat_dim: usize,
    /// Positive-root forms of the gauge group (each contributes -2|.|).
    pub gauge_forms: Vec<Vec<i64>>,
    /// Matter weight forms with multiplicities (each contributes +1/2 |.| per unit).
    pub matter_forms: Vec<(Vec<i64>, u64)>,
    /// Flat coordinate pinned to zero in the central quotient, if any.
    pub pin: Option<usize>,
    /// Whether the single coordinate carries a sign-flip symmetry instead of
    /// block permutations (the rank-one non-abelian case).
    pub sign_flip: bool,
}

impl ChargeModel {
    pub fn new(theory: &GaugeTheory) -> Result<ChargeModel> {
        match theory {
            GaugeTheory::Quiver { quiver, v, w, group } => {
                let dims: Vec<usize> = v.0.iter().map(|&d| d as usize).collect();
                let flat_dim: usize = dims.iter().sum();
                let offsets: Vec<usize> = dims
                    .iter()
                    .scan(0usize, |acc, &d| {
                        let here = *acc;
                        *acc += d;
                        Some(here)
                    })
                    .collect();
                let mut gauge_forms = Vec::new();
                for (i, &d) in dims.iter().enumerate() {
                    for k in 0..d {
                        for l in (k + 1)..d {
                            let mut f = vec![0i64; flat_dim];
                            f[offsets[i] + k] = 1;
                            f[offsets[i] + l] = -1;
                            gauge_forms.push(f);
                        }
                    }
                }
                let mut matter: Vec<(Vec<i64>, u64)> = Vec::new();
                for &(i, j) in quiver.edges() {
                    if i == j {
                        // Adjoint-valued matter: one form per ordered pair of
                        // distinct coordinates, twice over.
                        for k in 0..dims[i] {
                            for p in 0..dims[i] {
                                if k == p {
                                    continue;
                                }
                                let mut f = vec![0i64; flat_dim];
                                f[offsets[i] + k] = 1;
                                f[offsets[i] + p] = -1;
                                matter.push((f, 2));
                            }
                        }
                    } else {
                        for k in 0..dims[i] {
                            for p in 0..dims[j] {
                                let mut f = vec![0i64; flat_dim];
                                f[offsets[i] + k] = 1;
                                f[offsets[j] + p] = -1;
                                matter.push((f.clone(), 1));
                                matter.push((f.iter().map(|&x| -x).collect(), 1));
                            }
                        }
                    }
                }
                for (i, &wi) in w.0.iter().enumerate() {
                    if wi == 0 {
                        continue;
                    }
                    for k in 0..dims[i] {
                        let mut f = vec![0i64; flat_dim];
                        f[offsets[i] + k] = 1;
                        matter.push((f.clone(), wi as u64));
                        matter.push((f.iter().map(|&x| -x).collect(), wi as u64));
                    }
                }
                let pin = match group {
                    GroupConvention::ProdGl => None,
                    GroupConvention::ProdGlModCenter => {
                        let first = dims
                            .iter()
                            .position(|&d| d > 0)
                            .ok_or_else(|| Error::invariant("v-nonzero", "no nonzero block"))?;
                        Some(offsets[first] + dims[first] - 1)
                    }
                };
                Ok(ChargeModel {
                    dims,
                    flat_dim,
                    gauge_forms,
                    matter_forms: merge_forms(matter),
                    pin,
                    sign_flip: false,
                })
            }
            GaugeTheory::Sl2Flavor { flavors } => Ok(ChargeModel {
                dims: vec![1],
                flat_dim: 1,
                gauge_forms: vec![vec![2]],
                matter_forms: merge_forms(vec![
                    (vec![1], 2 * *flavors as u64),
                    (vec![-1], 2 * *flavors as u64),
                ]),
                pin: None,
                sign_flip: true,
            }),
            GaugeTheory::U1Flavor { charges } => {
                let matter = charges.iter().map(|&c| (vec![c], 1u64)).collect();
                Ok(ChargeModel {
                    dims: vec![1],
                    flat_dim: 1,
                    gauge_forms: Vec::new(),
                    matter_forms: merge_forms(matter),
                    pin: None,
                    sign_flip: false,
                })
            }
        }
    }

    pub fn flatten(&self, cw: &Coweight) -> Result<Vec<i64>> {
        if cw.0.len() != self.dims.len() || cw.0.iter().zip(&self.dims).any(|(b, &d)| b.len() != d) {
            return Err(Error::invariant(
                "coweight-shape",
                format!("expected blocks of sizes {:?}", self.dims),
            ));
        }
        Ok(cw.0.iter().flatten().copied().collect())
    }

    pub fn unflatten(&self, flat: &[i64]) -> Coweight {
        let mut blocks = Vec::with_capacity(self.dims.len());
        let mut at = 0;
        for &d in &self.dims {
            blocks.push(flat[at..at + d].to_vec());
            at += d;
        }
        Coweight(blocks)
    }

    /// Dimension of the charge space after pinning out the center.
    pub fn reduced_dim(&self) -> usize {
        self.flat_dim - usize::from(self.pin.is_some())
    }

    /// Index of the block containing the pinned coordinate, if any.
    pub fn pinned_block(&self) -> Option<usize> {
        let pin = self.pin?;
        let mut at = 0;
        for (b, &d) in self.dims.iter().enumerate() {
            if pin < at + d {
                return Some(b);
            }
            at += d;
        }
        None
    }

    /// Per-block sizes of the reduced coordinates (the pinned block loses its
    /// final coordinate).
    pub fn reduced_block_dims(&self) -> Vec<usize> {
        let pinned = self.pinned_block();
        self.dims
            .iter()
            .enumerate()
            .map(|(b, &d)| if Some(b) == pinned { d - 1 } else { d })
            .collect()
    }

    /// Drop the pinned coordinate from a form (valid because evaluation sets
    /// that coordinate to zero).
    pub fn reduce_form(&self, form: &[i64]) -> Vec<i64> {
        match self.pin {
            None => form.to_vec(),
            Some(p) => {
                let mut out = form.to_vec();
                out.remove(p);
                out
            }
        }
    }

    /// Re-insert a zero at the pinned coordinate.
    pub fn unreduce(&self, reduced: &[i64]) -> Vec<i64> {
        match self.pin {
            None => reduced.to_vec(),
            Some(p) => {
                let mut out = reduced.to_vec();
                out.insert(p, 0);
                out
            }
        }
    }

    pub fn two_delta_flat(&self, flat: &[i64]) -> Result<i64> {
        let mut quad: i128 = 0;
        for g in &self.gauge_forms {
            quad -= 4 * dot(g, flat).abs();
        }
        for (m, mult) in &self.matter_forms {
            quad += *mult as i128 * dot(m, flat).abs();
        }
        if quad % 2 != 0 {
            return Err(Error::invariant(
                "2delta-integer",
                format!("odd doubled value {quad} at {flat:?}"),
            ));
        }
        i64::try_from(quad / 2).map_err(|_| Error::Overflow("two_delta"))
    }
}

fn dot(form: &[i64], x: &[i64]) -> i128 {
    form.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum()
}

fn merge_forms(mut forms: Vec<(Vec<i64>, u64)>) -> Vec<(Vec<i64>, u64)> {
    forms.sort_by(|(a, _), (b, _)| graded_lex_key(a).cmp(&graded_lex_key(b)));
    let mut out: Vec<(Vec<i64>, u64)> = Vec::with_capacity(forms.len());
    for (f, m) in forms {
        match out.last_mut() {
            Some((g, acc)) if *g == f => *acc += m,
            _ => out.push((f, m)),
        }
    }
    out
}

/// Total order on integer vectors: by sum of absolute values, then entrywise
/// by absolute value with nonnegative entries ranked before negative ones.
pub(crate) fn graded_lex_key(v: &[i64]) -> (i64, Vec<(i64, u8)>) {
    let grade: i64 = v.iter().map(|&x| x.abs()).sum();
    (grade, v.iter().map(|&x| (x.abs(), u8::from(x < 0))).collect())
}

/// Visit every canonical charge, in reduced coordinates, whose max-norm is
/// exactly `shell`. Canonical: nonincreasing within each block, nonnegative
/// entries in the pinned block, and only the nonnegative representative under
/// a sign flip. Each completed candidate consumes one unit of `budget`; the
/// callback stops the scan early by returning `Ok(true)`.
pub(crate) fn scan_canonical_shell(
    model: &ChargeModel,
    shell: i64,
    budget: &mut u64,
    f: &mut dyn FnMut(&[i64]) -> Result<bool>,
) -> Result<bool> {
    debug_assert!(shell >= 1);
    let charge = |budget: &mut u64| -> Result<()> {
        if *budget == 0 {
            return Err(Error::Budget {
                op: "charge scan",
                detail: format!("lattice scan exceeded its budget at max-norm {shell}"),
            });
        }
        *budget -= 1;
        Ok(())
    };
    if model.sign_flip {
        charge(budget)?;
        return f(&[shell]);
    }
    let reduced = model.reduced_block_dims();
    let pinned = model.pinned_block();
    // Per flat reduced position: block index and whether it starts a block.
    let mut lows = Vec::new();
    let mut starts = Vec::new();
    for (b, &m) in reduced.iter().enumerate() {
        for k in 0..m {
            lows.push(if Some(b) == pinned { 0 } else { -shell });
            starts.push(k == 0);
        }
    }
    let dim = lows.len();
    if dim == 0 {
        return Ok(false);
    }
    let mut vals = vec![0i64; dim];

    fn rec(
        pos: usize,
        max_abs: i64,
        shell: i64,
        lows: &[i64],
        starts: &[bool],
        vals: &mut Vec<i64>,
        budget: &mut u64,
        charge: &dyn Fn(&mut u64) -> Result<()>,
        f: &mut dyn FnMut(&[i64]) -> Result<bool>,
    ) -> Result<bool> {
        if pos == lows.len() {
            charge(budget)?;
            if max_abs == shell {
                return f(vals);
            }
            return Ok(false);
        }
        let hi = if starts[pos] { shell } else { vals[pos - 1] };
        let mut v = hi;
        while v >= lows[pos] {
            vals[pos] = v;
            if rec(pos + 1, max_abs.max(v.abs()), shell, lows, starts, vals, budget, charge, f)? {
                return Ok(true);
            }
            v -= 1;
        }
        Ok(false)
    }

    rec(0, 0, shell, &lows, &starts, &mut vals, budget, &|b| charge(b), f)
}

/// Matter weights of the theory as flat linear forms with multiplicities,
/// merged and canonically ordered.
pub fn weight_multiset(theory: &GaugeTheory) -> Result<WeightMultiset> {
    let model = ChargeModel::new(theory)?;
    Ok(WeightMultiset { dims: model.dims.clone(), weights: model.matter_forms })
}

/// Doubled conformal dimension of a magnetic charge.
pub fn two_delta(theory: &GaugeTheory, cw: &Coweight) -> Result<i64> {
    let model = ChargeModel::new(theory)?;
    let flat = model.flatten(cw)?;
    model.two_delta_flat(&flat)
}

/// Closed-form evaluation for quiver data, organised by vertex and edge sums.
/// Independent of the charge-model path; the two must agree everywhere.
pub fn two_delta_quiver_closed_form(theory: &GaugeTheory, cw: &Coweight) -> Result<i64> {
    let GaugeTheory::Quiver { quiver, v, w, .. } = theory else {
        return Err(Error::unsupported(
            "two_delta_quiver_closed_form",
            "closed form is defined for quiver data only".to_string(),
        ));
    };
    if cw.0.len() != v.len() || cw.0.iter().zip(&v.0).any(|(b, &d)| b.len() != d as usize) {
        return Err(Error::invariant(
            "coweight-shape",
            format!("expected blocks of sizes {:?}", v.0),
        ));
    }
    let lam = &cw.0;
    let mut vector: i128 = 0;
    let mut matter: i128 = 0;
    for (i, block) in lam.iter().enumerate() {
        for k in 0..block.len() {
            for l in (k + 1)..block.len() {
                vector += (block[k] as i128 - block[l] as i128).abs();
            }
        }
        for &x in block {
            matter += w.0[i] as i128 * (x as i128).abs();
        }
    }
    for &(i, j) in quiver.edges() {
        if i == j {
            for k in 0..lam[i].len() {
                for p in (k + 1)..lam[i].len() {
                    matter += 2 * (lam[i][k] as i128 - lam[i][p] as i128).abs();
                }
            }
        } else {
            for &a in &lam[i] {
                for &b in &lam[j] {
                    matter += (a as i128 - b as i128).abs();
                }
            }
        }
    }
    i64::try_from(matter - 2 * vector).map_err(|_| Error::Overflow("two_delta_quiver_closed_form"))
}

/// Canonical representative of the symmetry orbit of a charge: blocks sorted
/// nonincreasing, central shifts normalised so the pinned coordinate is zero,
/// and the sign flip applied in the rank-one non-abelian case.
pub fn canonicalize(theory: &GaugeTheory, cw: &Coweight) -> Result<Coweight> {
    let model = ChargeModel::new(theory)?;
    let flat = model.flatten(cw)?;
    if model.sign_flip {
        return Ok(Coweight(vec![vec![flat[0].abs()]]));
    }
    let mut out = cw.clone();
    for block in &mut out.0 {
        block.sort_unstable_by(|a, b| b.cmp(a));
    }
    if let Some(p) = model.pin {
        let flat_sorted: Vec<i64> = out.0.iter().flatten().copied().collect();
        let shift = flat_sorted[p];
        for block in &mut out.0 {
            for x in block.iter_mut() {
                *x -= shift;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{DimVector, Quiver};

    fn a2(v: Vec<u32>, w: Vec<u32>, group: GroupConvention) -> GaugeTheory {
        let q = Quiver::new(vec!["1".into(), "2".into()], &[("1".into(), "2".into())]).unwrap();
        GaugeTheory::quiver(q, DimVector(v), DimVector(w), group).unwrap()
    }

    fn jordan(v: u32, w: u32, group: GroupConvention) -> GaugeTheory {
        let q = Quiver::new(vec!["x".into()], &[("x".into(), "x".into())]).unwrap();
        GaugeTheory::quiver(q, DimVector(vec![v]), DimVector(vec![w]), group).unwrap()
    }

    #[test]
    fn rank_one_closed_form() {
        for flavors in 0..=6u32 {
            let theory = GaugeTheory::sl2(flavors);
            for n in -3i64..=3 {
                let got = two_delta(&theory, &Coweight(vec![vec![n]])).unwrap();
                assert_eq!(got, (2 * flavors as i64 - 4) * n.abs(), "N={flavors}, n={n}");
            }
        }
    }

    #[test]
    fn abelian_charges() {
        // One weight form per listed charge: a full hypermultiplet of charge
        // q is the pair [q, -q].
        let theory = GaugeTheory::u1(vec![3, -3]).unwrap();
        assert_eq!(two_delta(&theory, &Coweight(vec![vec![2]])).unwrap(), 6);
        let theory = GaugeTheory::u1(vec![1, -1, 1, -1]).unwrap();
        assert_eq!(two_delta(&theory, &Coweight(vec![vec![-2]])).unwrap(), 4);
        let theory = GaugeTheory::u1(vec![1, -1, 2, -2]).unwrap();
        assert_eq!(two_delta(&theory, &Coweight(vec![vec![1]])).unwrap(), 3);
        // An unpaired charge list can give a half-integral grading, which is
        // rejected rather than rounded.
        let theory = GaugeTheory::u1(vec![1, -2]).unwrap();
        assert!(matches!(
            two_delta(&theory, &Coweight(vec![vec![1]])),
            Err(Error::Invariant { rule: "2delta-integer", .. })
        ));
    }

    #[test]
    fn small_quiver_values() {
        let theory = a2(vec![1, 1], vec![0, 0], GroupConvention::ProdGl);
        assert_eq!(two_delta(&theory, &Coweight(vec![vec![1], vec![0]])).unwrap(), 1);
        assert_eq!(two_delta(&theory, &Coweight(vec![vec![2], vec![2]])).unwrap(), 0);

        // One fundamental at each end on top of the bifundamental.
        let theory = a2(vec![1, 1], vec![1, 1], GroupConvention::ProdGl);
        assert_eq!(two_delta(&theory, &Coweight(vec![vec![1], vec![0]])).unwrap(), 2);
        assert_eq!(two_delta(&theory, &Coweight(vec![vec![1], vec![1]])).unwrap(), 2);
    }

    #[test]
    fn adjoint_matter_cancels_vector_contribution() {
        let theory = jordan(2, 0, GroupConvention::ProdGlModCenter);
        for (a, b) in [(1i64, 0i64), (3, -2), (5, 5)] {
            assert_eq!(two_delta(&theory, &Coweight(vec![vec![a, b]])).unwrap(), 0);
        }
    }

    #[test]
    fn central_shift_invariance_without_framing() {
        let theory = a2(vec![2, 1], vec![0, 0], GroupConvention::ProdGlModCenter);
        let base = Coweight(vec![vec![3, 1], vec![2]]);
        let shifted = Coweight(vec![vec![4, 2], vec![3]]);
        assert_eq!(two_delta(&theory, &base).unwrap(), two_delta(&theory, &shifted).unwrap());
    }

    #[test]
    fn closed_form_agrees_with_charge_model() {
        let theories = vec![
            a2(vec![2, 1], vec![1, 0], GroupConvention::ProdGl),
            a2(vec![2, 2], vec![0, 1], GroupConvention::ProdGl),
            jordan(2, 1, GroupConvention::ProdGl),
        ];
        for theory in &theories {
            let GaugeTheory::Quiver { v, .. } = theory else { unreachable!() };
            let dims: Vec<usize> = v.0.iter().map(|&d| d as usize).collect();
            let total: usize = dims.iter().sum();
            // Exhaust a small grid of charges.
            let radius = 2i64;
            let span = 2 * radius + 1;
            let count = (span as usize).pow(total as u32);
            for idx in 0..count {
                let mut rem = idx;
                let mut flat = Vec::with_capacity(total);
                for _ in 0..total {
                    flat.push((rem % span as usize) as i64 - radius);
                    rem /= span as usize;
                }
                let mut blocks = Vec::new();
                let mut at = 0;
                for &d in &dims {
                    blocks.push(flat[at..at + d].to_vec());
                    at += d;
                }
                let cw = Coweight(blocks);
                assert_eq!(
                    two_delta(theory, &cw).unwrap(),
                    two_delta_quiver_closed_form(theory, &cw).unwrap(),
                    "theory mismatch at {cw:?}",
                );
            }
        }
    }

    #[test]
    fn weight_multiset_contents() {
        let theory = a2(vec![1, 1], vec![1, 0], GroupConvention::ProdGl);
        let ws = weight_multiset(&theory).unwrap();
        assert_eq!(ws.dims, vec![1, 1]);
        assert_eq!(
            ws.weights,
            vec![
                (vec![1, 0], 1),
                (vec![-1, 0], 1),
                (vec![1, -1], 1),
                (vec![-1, 1], 1),
            ]
        );

        let ws = weight_multiset(&GaugeTheory::sl2(3)).unwrap();
        assert_eq!(ws.weights, vec![(vec![1], 6), (vec![-1], 6)]);

        let ws = weight_multiset(&GaugeTheory::u1(vec![2, 2, -1]).unwrap()).unwrap();
        assert_eq!(ws.weights, vec![(vec![-1], 1), (vec![2], 2)]);
    }

    #[test]
    fn canonical_representatives() {
        let theory = a2(vec![2, 1], vec![0, 0], GroupConvention::ProdGlModCenter);
        let cw = Coweight(vec![vec![1, 3], vec![2]]);
        assert_eq!(
            canonicalize(&theory, &cw).unwrap(),
            Coweight(vec![vec![2, 0], vec![1]])
        );

        let theory = a2(vec![2, 1], vec![1, 0], GroupConvention::ProdGl);
        let cw = Coweight(vec![vec![-1, 4], vec![2]]);
        assert_eq!(
            canonicalize(&theory, &cw).unwrap(),
            Coweight(vec![vec![4, -1], vec![2]])
        );

        assert_eq!(
            canonicalize(&GaugeTheory::sl2(2), &Coweight(vec![vec![-5]])).unwrap(),
            Coweight(vec![vec![5]])
        );
    }

    #[test]
    fn shape_validation() {
        let theory = a2(vec![2, 1], vec![0, 0], GroupConvention::ProdGl);
        let err = two_delta(&theory, &Coweight(vec![vec![1], vec![0]])).unwrap_err();
        assert!(err.to_string().contains("coweight-shape"));
    }

    #[test]
    fn graded_lex_orders_positive_before_negative() {
        let mut v = vec![vec![-1i64], vec![1], vec![0], vec![2], vec![-2]];
        v.sort_by(|a, b| graded_lex_key(a).cmp(&graded_lex_key(b)));
        assert_eq!(v, vec![vec![0], vec![1], vec![-1], vec![2], vec![-2]]);
    }
}
