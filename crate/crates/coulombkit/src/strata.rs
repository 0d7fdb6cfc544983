//! Stratification posets for the two branch families that reduce to finite
//! combinatorics: framed finite-type theories, indexed by dimension vectors,
//! and unframed affine theories, indexed by integer partitions. Includes the
//! order-reversing bijection check between a Coulomb poset and a Higgs poset.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{partition_counts, partitions_of, partitions_up_to, Partition};
use crate::quiver::{cartan_matrix, classify_graph, DimVector, GaugeTheory, GraphClass};
use crate::roots::is_dominant;
use crate::Limits;

/// Index of one stratum: a dimension vector in the framed family, a
/// partition in the affine family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum StratumIndex {
    Dim(DimVector),
    Shape(Partition),
}

impl fmt::Display for StratumIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumIndex::Dim(v) => {
                let body: Vec<String> = v.0.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", body.join(","))
            }
            StratumIndex::Shape(p) => {
                let body: Vec<String> = p.0.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", body.join(","))
            }
        }
    }
}

/// One factor of a stratum or slice: a named theory family with its
/// dimension data.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LabelComponent {
    pub family: String,
    pub v: Vec<u32>,
    pub w: Vec<u32>,
}

/// Theory descriptors attached to one stratum: the stratum itself and the
/// transverse slice through it, each a sorted multiset of components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumLabel {
    pub stratum: Vec<LabelComponent>,
    pub slice: Vec<LabelComponent>,
}

/// A finite poset of strata. `covers` lists (lower, upper) index pairs whose
/// transitive closure is the order; elements, labels and flags are parallel.
#[derive(Debug, Clone, Serialize)]
pub struct StratumPoset {
    pub elements: Vec<StratumIndex>,
    pub covers: Vec<(usize, usize)>,
    pub labels: Vec<StratumLabel>,
    /// Shapes with every part equal to 1 (affine family only).
    pub special: Vec<bool>,
    /// Strata whose nonemptiness is an assumption rather than a theorem.
    pub nonempty_assumed: Vec<bool>,
}

/// Which map to test between two stratum posets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Identity,
    Transpose,
}

impl MapKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MapKind::Identity => "identity",
            MapKind::Transpose => "transpose",
        }
    }
}

/// Result of testing a map between two posets.
#[derive(Debug, Clone, Serialize)]
pub struct BijectionReport {
    pub map: String,
    pub is_order_reversing: bool,
    pub labels_match: bool,
    pub mismatches: Vec<String>,
}

fn component(family: &str, v: Vec<u32>, w: Vec<u32>) -> LabelComponent {
    LabelComponent { family: family.to_string(), v, w }
}

fn sorted(mut comps: Vec<LabelComponent>) -> Vec<LabelComponent> {
    comps.sort();
    comps
}

/// x <= y reachability from cover pairs, by upward walks.
fn leq_matrix(n: usize, covers: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(l, u) in covers {
        up[l].push(u);
    }
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
        let mut stack = vec![i];
        while let Some(x) = stack.pop() {
            for &y in &up[x] {
                if !row[y] {
                    row[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    leq
}

fn swapped_covers(covers: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = covers.iter().map(|&(l, u)| (u, l)).collect();
    out.sort_unstable();
    out
}

fn swapped_labels(labels: &[StratumLabel]) -> Vec<StratumLabel> {
    labels
        .iter()
        .map(|l| StratumLabel { stratum: l.slice.clone(), slice: l.stratum.clone() })
        .collect()
}

/// Coulomb and Higgs stratification posets of a framed finite-type theory.
/// Strata are indexed by the dimension vectors v' <= v with w - Cv'
/// dominant; the Coulomb order is componentwise, the Higgs order its
/// reverse, and the two label assignments exchange stratum and slice.
pub fn strata_framed_finite(t: &GaugeTheory) -> Result<(StratumPoset, StratumPoset)> {
    strata_framed_finite_with(t, &Limits::default())
}

pub fn strata_framed_finite_with(
    t: &GaugeTheory,
    limits: &Limits,
) -> Result<(StratumPoset, StratumPoset)> {
    let (quiver, v, w) = t.as_quiver("strata_framed_finite")?;
    if w.is_zero() {
        return Err(Error::unsupported("strata_framed_finite", "requires nonzero framing w"));
    }
    if !matches!(classify_graph(quiver)?, GraphClass::Finite) {
        return Err(Error::unsupported("strata_framed_finite", "requires a finite-type quiver"));
    }
    let c = cartan_matrix(quiver);
    let n = v.len();

    let box_size = v.0.iter().fold(1u64, |acc, &x| acc.saturating_mul(x as u64 + 1));
    if box_size > limits.enum_budget {
        return Err(Error::Budget {
            op: "strata_framed_finite",
            detail: format!("{box_size} candidate strata exceed the budget {}", limits.enum_budget),
        });
    }

    // All v' in the box with w - Cv' dominant, in graded-lexicographic order.
    let mut elements: Vec<DimVector> = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        let cand = DimVector(cur.clone());
        let u: Vec<i64> = w
            .as_i64()
            .iter()
            .zip(&c.apply(&cand.as_i64()))
            .map(|(&wi, &ci)| wi - ci)
            .collect();
        if is_dominant(&u) {
            elements.push(cand);
        }
        let mut pos = 0;
        loop {
            if pos == n {
                break;
            }
            if cur[pos] < v.0[pos] {
                cur[pos] += 1;
                for cx in cur.iter_mut().take(pos) {
                    *cx = 0;
                }
                break;
            }
            pos += 1;
        }
        if pos == n {
            break;
        }
    }
    elements.sort_by(|a, b| (a.total(), &a.0).cmp(&(b.total(), &b.0)));

    // Hasse diagram of the componentwise order restricted to the kept set.
    let lt = |a: &DimVector, b: &DimVector| a.leq(b) && a != b;
    let mut covers = Vec::new();
    for (i, ei) in elements.iter().enumerate() {
        for (j, ej) in elements.iter().enumerate() {
            if lt(ei, ej)
                && !elements.iter().any(|ek| lt(ei, ek) && lt(ek, ej))
            {
                covers.push((i, j));
            }
        }
    }
    covers.sort_unstable();

    let mut labels = Vec::new();
    for e in &elements {
        let rest = v.checked_sub(e).expect("element inside the box");
        let u: Vec<u32> = w
            .as_i64()
            .iter()
            .zip(&c.apply(&e.as_i64()))
            .map(|(&wi, &ci)| (wi - ci) as u32)
            .collect();
        labels.push(StratumLabel {
            stratum: vec![component("framed-quiver", rest.0.clone(), u)],
            slice: vec![component("framed-quiver", e.0.clone(), w.0.clone())],
        });
    }

    let size = elements.len();
    let coulomb = StratumPoset {
        elements: elements.iter().cloned().map(StratumIndex::Dim).collect(),
        covers: covers.clone(),
        labels: labels.clone(),
        special: vec![false; size],
        nonempty_assumed: vec![false; size],
    };
    let higgs = StratumPoset {
        elements: coulomb.elements.clone(),
        covers: swapped_covers(&covers),
        labels: swapped_labels(&labels),
        special: vec![false; size],
        nonempty_assumed: vec![false; size],
    };
    Ok((coulomb, higgs))
}

struct AffineData {
    elements: Vec<Partition>,
    covers: Vec<(usize, usize)>,
    special: Vec<bool>,
    nonempty_assumed: Vec<bool>,
    delta: DimVector,
    e0: Vec<u32>,
    v: DimVector,
}

fn affine_data(t: &GaugeTheory, limits: &Limits) -> Result<AffineData> {
    let (quiver, v, w) = t.as_quiver("strata_affine_unframed")?;
    if !w.is_zero() {
        return Err(Error::unsupported("strata_affine_unframed", "requires w = 0"));
    }
    let delta = match classify_graph(quiver)? {
        GraphClass::Affine { delta } => delta,
        _ => {
            return Err(Error::unsupported(
                "strata_affine_unframed",
                "requires an affine-type quiver",
            ))
        }
    };
    let jordan = quiver.n_vertices() == 1 && quiver.edge_multiplicity(0, 0) > 0;
    let cap = v
        .0
        .iter()
        .zip(&delta.0)
        .map(|(&vi, &di)| vi / di)
        .min()
        .expect("nonempty quiver");

    let counts = partition_counts(cap);
    let total: u64 = if jordan {
        counts[cap as usize]
    } else {
        counts.iter().fold(0u64, |a, &b| a.saturating_add(b))
    };
    if total > limits.enum_budget {
        return Err(Error::Budget {
            op: "strata_affine_unframed",
            detail: format!("{total} strata exceed the budget {}", limits.enum_budget),
        });
    }

    let elements: Vec<Partition> =
        if jordan { partitions_of(cap) } else { partitions_up_to(cap) };
    let index: HashMap<&Partition, usize> =
        elements.iter().enumerate().map(|(i, p)| (p, i)).collect();

    // Downward degenerations: merge two parts, or add a new part of size 1
    // while the leftover v - |shape| delta stays nonnegative. Every such move
    // lands on a cover: merges reduce the part count by exactly one at fixed
    // size, and a added 1 raises the size by exactly one.
    let mut covers: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, nu) in elements.iter().enumerate() {
        let mut targets: BTreeSet<Partition> = BTreeSet::new();
        for a in 0..nu.len() {
            for b in (a + 1)..nu.len() {
                let mut parts = nu.0.clone();
                let merged = parts[a] + parts[b];
                parts.remove(b);
                parts.remove(a);
                parts.push(merged);
                targets.insert(Partition::new(parts));
            }
        }
        if nu.sum() + 1 <= cap {
            let mut parts = nu.0.clone();
            parts.push(1);
            targets.insert(Partition::new(parts));
        }
        for target in targets {
            if let Some(&j) = index.get(&target) {
                covers.insert((j, i));
            }
        }
    }

    let special = elements.iter().map(|p| p.0.iter().all(|&x| x == 1)).collect();
    let nonempty_assumed = elements
        .iter()
        .map(|p| {
            let used = p.sum();
            v.0.iter().zip(&delta.0).any(|(&vi, &di)| vi != di * used)
        })
        .collect();

    let mut e0 = vec![0u32; delta.len()];
    let zero_vertex = delta
        .0
        .iter()
        .position(|&d| d == 1)
        .ok_or_else(|| Error::invariant("affine-delta-one", "no vertex carries kernel entry 1"))?;
    e0[zero_vertex] = 1;

    Ok(AffineData {
        covers: covers.into_iter().collect(),
        special,
        nonempty_assumed,
        delta,
        e0,
        v: v.clone(),
        elements,
    })
}

fn leftover(v: &DimVector, delta: &DimVector, used: u32) -> Vec<u32> {
    v.0.iter().zip(&delta.0).map(|(&vi, &di)| vi - di * used).collect()
}

fn scaled(delta: &DimVector, k: u32) -> Vec<u32> {
    delta.0.iter().map(|&d| d * k).collect()
}

/// Coulomb-side stratification poset of an unframed affine (or one-loop)
/// theory. Strata are indexed by partitions whose size fits into v along the
/// kernel vector; the empty shape is the open top stratum. Stratum labels
/// pair the leftover theory with one point-configuration factor per distinct
/// part size; slice labels carry one kernel-multiple theory per part.
pub fn strata_affine_unframed(t: &GaugeTheory) -> Result<StratumPoset> {
    strata_affine_unframed_with(t, &Limits::default())
}

pub fn strata_affine_unframed_with(t: &GaugeTheory, limits: &Limits) -> Result<StratumPoset> {
    let data = affine_data(t, limits)?;
    let zero_w = vec![0u32; data.delta.len()];
    let labels = data
        .elements
        .iter()
        .map(|nu| {
            let mut stratum =
                vec![component("base-quiver", leftover(&data.v, &data.delta, nu.sum()), zero_w.clone())];
            for (_, mult) in nu.multiplicities() {
                stratum.push(component("jordan", vec![mult], vec![0]));
            }
            let slice = nu
                .0
                .iter()
                .map(|&k| component("affine-instanton", scaled(&data.delta, k), data.e0.clone()))
                .collect();
            StratumLabel { stratum: sorted(stratum), slice: sorted(slice) }
        })
        .collect();
    Ok(StratumPoset {
        elements: data.elements.iter().cloned().map(StratumIndex::Shape).collect(),
        covers: data.covers,
        labels,
        special: data.special,
        nonempty_assumed: data.nonempty_assumed,
    })
}

/// Higgs-side counterpart of [`strata_affine_unframed`]: same index set with
/// the reversed order. Stratum labels carry one kernel-multiple theory per
/// distinct part size (scaled by its multiplicity); slice labels pair the
/// leftover theory with one one-vertex factor per part.
pub fn strata_affine_unframed_higgs(t: &GaugeTheory) -> Result<StratumPoset> {
    strata_affine_unframed_higgs_with(t, &Limits::default())
}

pub fn strata_affine_unframed_higgs_with(
    t: &GaugeTheory,
    limits: &Limits,
) -> Result<StratumPoset> {
    let data = affine_data(t, limits)?;
    let zero_w = vec![0u32; data.delta.len()];
    let labels = data
        .elements
        .iter()
        .map(|nu| {
            let stratum = nu
                .multiplicities()
                .iter()
                .map(|&(_, mult)| {
                    component("affine-instanton", scaled(&data.delta, mult), data.e0.clone())
                })
                .collect();
            let mut slice =
                vec![component("base-quiver", leftover(&data.v, &data.delta, nu.sum()), zero_w.clone())];
            for &k in &nu.0 {
                slice.push(component("jordan", vec![k], vec![0]));
            }
            StratumLabel { stratum: sorted(stratum), slice: sorted(slice) }
        })
        .collect();
    Ok(StratumPoset {
        elements: data.elements.iter().cloned().map(StratumIndex::Shape).collect(),
        covers: swapped_covers(&data.covers),
        labels,
        special: data.special,
        nonempty_assumed: data.nonempty_assumed,
    })
}

fn apply_map(x: &StratumIndex, map: MapKind) -> Result<StratumIndex> {
    match (map, x) {
        (MapKind::Identity, _) => Ok(x.clone()),
        (MapKind::Transpose, StratumIndex::Shape(p)) => Ok(StratumIndex::Shape(p.transpose())),
        (MapKind::Transpose, StratumIndex::Dim(_)) => Err(Error::unsupported(
            "check_order_reversing_bijection",
            "transpose map requires partition-indexed posets",
        )),
    }
}

/// Test whether `map` sends poset `a` to poset `b` reversing the order, and
/// whether it exchanges stratum and slice labels. Errors when the map is not
/// a bijection between the element sets.
pub fn check_order_reversing_bijection(
    a: &StratumPoset,
    b: &StratumPoset,
    map: MapKind,
) -> Result<BijectionReport> {
    let n = a.elements.len();
    if b.elements.len() != n {
        return Err(Error::invariant(
            "bijection-size",
            format!("posets have {n} and {} elements", b.elements.len()),
        ));
    }
    let mut image = Vec::with_capacity(n);
    let mut hit = vec![false; n];
    for x in &a.elements {
        let y = apply_map(x, map)?;
        let j = b
            .elements
            .iter()
            .position(|e| *e == y)
            .ok_or_else(|| Error::invariant("bijection-total", format!("{y} is not in the target poset")))?;
        if hit[j] {
            return Err(Error::invariant("bijection-injective", format!("{y} is hit twice")));
        }
        hit[j] = true;
        image.push(j);
    }

    let la = leq_matrix(n, &a.covers);
    let lb = leq_matrix(n, &b.covers);
    let mut mismatches = Vec::new();
    let mut is_order_reversing = true;
    for i in 0..n {
        for j in 0..n {
            if la[i][j] && !lb[image[j]][image[i]] {
                is_order_reversing = false;
                mismatches.push(format!(
                    "order: {} <= {} is not reversed by the map",
                    a.elements[i], a.elements[j]
                ));
            }
        }
    }
    let mut labels_match = true;
    for i in 0..n {
        let j = image[i];
        if a.labels[i].stratum != b.labels[j].slice {
            labels_match = false;
            mismatches.push(format!(
                "labels: stratum of {} differs from the slice of its image {}",
                a.elements[i], b.elements[j]
            ));
        }
        if a.labels[i].slice != b.labels[j].stratum {
            labels_match = false;
            mismatches.push(format!(
                "labels: slice of {} differs from the stratum of its image {}",
                a.elements[i], b.elements[j]
            ));
        }
    }
    Ok(BijectionReport {
        map: map.as_str().to_string(),
        is_order_reversing,
        labels_match,
        mismatches,
    })
}

/// Hasse diagram in DOT format; doubled borders mark special strata, dashed
/// borders mark assumption-based ones.
pub fn poset_dot(p: &StratumPoset, name: &str) -> String {
    let mut s = format!("digraph {name} {{\n  rankdir=BT;\n");
    for (i, e) in p.elements.iter().enumerate() {
        let mut attrs = format!("label=\"{e}\"");
        if p.special[i] {
            attrs.push_str(", peripheries=2");
        }
        if p.nonempty_assumed[i] {
            attrs.push_str(", style=dashed");
        }
        s.push_str(&format!("  n{i} [{attrs}];\n"));
    }
    for &(l, u) in &p.covers {
        s.push_str(&format!("  n{l} -> n{u};\n"));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{GroupConvention, Quiver};

    fn a1_framed(v: u32, w: u32) -> GaugeTheory {
        let quiver = Quiver::new(vec!["1".into()], &[]).unwrap();
        GaugeTheory::quiver(quiver, DimVector(vec![v]), DimVector(vec![w]), GroupConvention::ProdGl)
            .unwrap()
    }

    fn a2_framed(v: Vec<u32>, w: Vec<u32>) -> GaugeTheory {
        let quiver =
            Quiver::new(vec!["1".into(), "2".into()], &[("1".into(), "2".into())]).unwrap();
        GaugeTheory::quiver(quiver, DimVector(v), DimVector(w), GroupConvention::ProdGl).unwrap()
    }

    fn affine_a1(v: Vec<u32>) -> GaugeTheory {
        let quiver = Quiver::new(
            vec!["0".into(), "1".into()],
            &[("0".into(), "1".into()), ("0".into(), "1".into())],
        )
        .unwrap();
        let n = v.len();
        GaugeTheory::quiver(quiver, DimVector(v), DimVector(vec![0; n]), GroupConvention::ProdGlModCenter)
            .unwrap()
    }

    fn jordan(v: u32) -> GaugeTheory {
        let quiver = Quiver::new(vec!["x".into()], &[("x".into(), "x".into())]).unwrap();
        GaugeTheory::quiver(
            quiver,
            DimVector(vec![v]),
            DimVector(vec![0]),
            GroupConvention::ProdGlModCenter,
        )
        .unwrap()
    }

    fn shapes(p: &StratumPoset) -> Vec<Vec<u32>> {
        p.elements
            .iter()
            .map(|e| match e {
                StratumIndex::Shape(s) => s.0.clone(),
                StratumIndex::Dim(_) => panic!("expected shapes"),
            })
            .collect()
    }

    #[test]
    fn framed_rank_one_with_two_strata() {
        let (coulomb, higgs) = strata_framed_finite(&a1_framed(1, 2)).unwrap();
        assert_eq!(
            coulomb.elements,
            vec![
                StratumIndex::Dim(DimVector(vec![0])),
                StratumIndex::Dim(DimVector(vec![1]))
            ]
        );
        assert_eq!(coulomb.covers, vec![(0, 1)]);
        assert_eq!(higgs.covers, vec![(1, 0)]);
        assert_eq!(
            coulomb.labels[0].stratum,
            vec![component("framed-quiver", vec![1], vec![2])]
        );
        assert_eq!(coulomb.labels[1].stratum, vec![component("framed-quiver", vec![0], vec![0])]);
        assert_eq!(coulomb.labels[1].slice, vec![component("framed-quiver", vec![1], vec![2])]);

        let report =
            check_order_reversing_bijection(&coulomb, &higgs, MapKind::Identity).unwrap();
        assert!(report.is_order_reversing);
        assert!(report.labels_match);
        assert!(report.mismatches.is_empty());
    }

    #[test]
    fn framed_dominance_filter_and_degenerate_cases() {
        let (coulomb, _) = strata_framed_finite(&a1_framed(1, 1)).unwrap();
        assert_eq!(coulomb.elements.len(), 1);

        let (coulomb, higgs) = strata_framed_finite(&a1_framed(0, 1)).unwrap();
        assert_eq!(coulomb.elements.len(), 1);
        let report =
            check_order_reversing_bijection(&coulomb, &higgs, MapKind::Identity).unwrap();
        assert!(report.is_order_reversing && report.labels_match);
    }

    #[test]
    fn framed_hasse_respects_the_restricted_index_set() {
        // Only (0,0) and (1,1) survive the dominance filter, so they form a
        // cover pair even though they are not adjacent in the full box.
        let (coulomb, _) = strata_framed_finite(&a2_framed(vec![1, 1], vec![1, 1])).unwrap();
        assert_eq!(
            coulomb.elements,
            vec![
                StratumIndex::Dim(DimVector(vec![0, 0])),
                StratumIndex::Dim(DimVector(vec![1, 1]))
            ]
        );
        assert_eq!(coulomb.covers, vec![(0, 1)]);
    }

    #[test]
    fn framed_posets_are_anti_isomorphic_under_identity() {
        for (v, w) in [(vec![2, 1], vec![2, 0]), (vec![1, 2], vec![0, 3]), (vec![2, 2], vec![1, 1])]
        {
            let (coulomb, higgs) = strata_framed_finite(&a2_framed(v, w)).unwrap();
            let report =
                check_order_reversing_bijection(&coulomb, &higgs, MapKind::Identity).unwrap();
            assert!(report.is_order_reversing, "{:?}", report.mismatches);
            assert!(report.labels_match, "{:?}", report.mismatches);
        }
    }

    #[test]
    fn framed_requires_framing_and_finite_type() {
        assert!(strata_framed_finite(&a1_framed(1, 0)).is_err());
        assert!(strata_framed_finite(&affine_a1(vec![1, 1])).is_err());
        assert!(strata_framed_finite(&GaugeTheory::sl2(3)).is_err());
    }

    #[test]
    fn affine_poset_below_twice_the_kernel_vector() {
        let coulomb = strata_affine_unframed(&affine_a1(vec![2, 2])).unwrap();
        assert_eq!(shapes(&coulomb), vec![vec![], vec![1], vec![2], vec![1, 1]]);
        // Chain: [] above [1] above [1,1] above [2].
        assert_eq!(coulomb.covers, vec![(1, 0), (2, 3), (3, 1)]);
        assert_eq!(coulomb.special, vec![true, true, false, true]);
        assert_eq!(coulomb.nonempty_assumed, vec![true, true, false, false]);
    }

    #[test]
    fn affine_poset_at_the_kernel_vector_and_errors() {
        let coulomb = strata_affine_unframed(&affine_a1(vec![1, 1])).unwrap();
        assert_eq!(shapes(&coulomb), vec![vec![], vec![1]]);
        assert_eq!(coulomb.covers, vec![(1, 0)]);

        let finite = a2_framed(vec![1, 1], vec![0, 0]);
        assert!(strata_affine_unframed(&finite).is_err());
        assert!(strata_affine_unframed(&a1_framed(1, 1)).is_err());
    }

    #[test]
    fn jordan_strata_fix_the_total_size() {
        let coulomb = strata_affine_unframed(&jordan(2)).unwrap();
        assert_eq!(shapes(&coulomb), vec![vec![2], vec![1, 1]]);
        assert_eq!(coulomb.covers, vec![(0, 1)]);
        assert_eq!(coulomb.nonempty_assumed, vec![false, false]);
        assert_eq!(coulomb.special, vec![false, true]);

        let three = strata_affine_unframed(&jordan(3)).unwrap();
        assert_eq!(shapes(&three), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn affine_transpose_exchange_fails_on_labels() {
        let theory = affine_a1(vec![2, 2]);
        let coulomb = strata_affine_unframed(&theory).unwrap();
        let higgs = strata_affine_unframed_higgs(&theory).unwrap();
        let report =
            check_order_reversing_bijection(&coulomb, &higgs, MapKind::Transpose).unwrap();
        assert_eq!(report.map, "transpose");
        assert!(!report.labels_match);
        assert!(!report.is_order_reversing);
        assert!(!report.mismatches.is_empty());

        // The one-box shape is self-transpose and its labels do agree.
        assert_eq!(coulomb.labels[1].stratum, higgs.labels[1].slice);
        assert_eq!(coulomb.labels[1].slice, higgs.labels[1].stratum);
        // The mismatch is the multiplicity bookkeeping between [2] and [1,1].
        assert_ne!(coulomb.labels[2].stratum, higgs.labels[3].slice);
        assert_eq!(coulomb.labels[2].slice, higgs.labels[3].stratum);
    }

    #[test]
    fn affine_label_contents_match_the_advertised_shape() {
        let coulomb = strata_affine_unframed(&affine_a1(vec![2, 2])).unwrap();
        // Shape [1,1]: leftover zero, one two-point configuration factor.
        assert_eq!(
            coulomb.labels[3].stratum,
            sorted(vec![
                component("base-quiver", vec![0, 0], vec![0, 0]),
                component("jordan", vec![2], vec![0]),
            ])
        );
        // Slice of [1,1]: two kernel-sized factors.
        assert_eq!(
            coulomb.labels[3].slice,
            vec![
                component("affine-instanton", vec![1, 1], vec![1, 0]),
                component("affine-instanton", vec![1, 1], vec![1, 0]),
            ]
        );
    }

    #[test]
    fn bijection_validation_errors() {
        let (coulomb, higgs) = strata_framed_finite(&a1_framed(1, 2)).unwrap();
        assert!(check_order_reversing_bijection(&coulomb, &higgs, MapKind::Transpose).is_err());

        let small = strata_affine_unframed(&affine_a1(vec![1, 1])).unwrap();
        let large = strata_affine_unframed(&affine_a1(vec![2, 2])).unwrap();
        assert!(check_order_reversing_bijection(&small, &large, MapKind::Identity).is_err());
    }

    #[test]
    fn dot_export_is_deterministic_and_marks_flags() {
        let coulomb = strata_affine_unframed(&affine_a1(vec![2, 2])).unwrap();
        let dot = poset_dot(&coulomb, "coulomb");
        assert!(dot.starts_with("digraph coulomb {"));
        assert!(dot.contains("n0 [label=\"[]\", peripheries=2, style=dashed];"));
        assert!(dot.contains("n2 [label=\"[2]\"];"));
        assert!(dot.contains("n1 -> n0;"));
        assert_eq!(dot, poset_dot(&coulomb, "coulomb"));
    }
}
