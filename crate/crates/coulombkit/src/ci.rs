//! Complete-intersection tests for the moment-map fiber attached to a quiver
//! gauge theory: exact enumeration of decompositions of the dimension vector,
//! plus closed-form root-pairing criteria for finite and affine types.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{
    cartan_matrix, classify_graph, CartanMatrix, DimVector, GaugeTheory, GraphClass, Quiver,
};
use crate::roots::{positive_roots_bounded, positive_roots_finite, RootTable};
use crate::Limits;

/// Which family of parts a decomposition may draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecompositionPool {
    PositiveRoots,
    PositiveVectors,
}

/// One way of writing a target vector as a sum of nonzero parts, with an
/// optional leftover for splits that need not use up the whole target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// Parts in nondecreasing graded-lexicographic order.
    pub parts: Vec<DimVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub remainder: Option<DimVector>,
}

/// How a complete-intersection verdict was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CiMethod {
    FullEnumeration,
    FastPathFinite,
    FastPathAffine,
}

/// A decomposition whose inequality fails, with both sides recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CiViolation {
    pub parts: Vec<DimVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub remainder: Option<DimVector>,
    pub lhs: i64,
    pub rhs: i64,
}

/// Outcome of a complete-intersection check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CiReport {
    pub is_ci: bool,
    pub method: CiMethod,
    /// First failing decomposition in enumeration order; only the full
    /// enumeration ever reports one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<CiViolation>,
}

fn doti(a: &DimVector, b: &DimVector) -> i64 {
    a.0.iter().zip(&b.0).map(|(&x, &y)| x as i64 * y as i64).sum()
}

/// w - C v, the linear functional both fast paths pair roots against.
fn framing_weight(c: &CartanMatrix, v: &DimVector, w: &DimVector) -> Vec<i64> {
    let cv = c.apply(&v.as_i64());
    w.as_i64().iter().zip(&cv).map(|(&wi, &ci)| wi - ci).collect()
}

fn descending(pool: &mut [DimVector]) {
    pool.sort_by(|a, b| (b.total(), &b.0).cmp(&(a.total(), &a.0)));
}

/// Candidate parts for decompositions of `target`, largest first.
fn build_pool(
    target: &DimVector,
    pool: DecompositionPool,
    table: Option<&RootTable>,
) -> Result<Vec<DimVector>> {
    let mut parts: Vec<DimVector> = match pool {
        DecompositionPool::PositiveRoots => {
            let table = table.ok_or_else(|| {
                Error::invariant("pool-table", "positive-root pool requires a root table")
            })?;
            if table.delta.is_some() && !target.leq(&table.bound) {
                return Err(Error::invariant(
                    "pool-table-bound",
                    format!(
                        "root table complete below {:?} cannot decompose {:?}",
                        table.bound.0, target.0
                    ),
                ));
            }
            table.roots.iter().filter(|(r, _)| r.leq(target)).map(|(r, _)| r.clone()).collect()
        }
        DecompositionPool::PositiveVectors => {
            let n = target.len();
            let mut out = Vec::new();
            let mut cur = vec![0u32; n];
            'odometer: loop {
                for i in 0..n {
                    if cur[i] < target.0[i] {
                        cur[i] += 1;
                        for c in cur.iter_mut().take(i) {
                            *c = 0;
                        }
                        out.push(DimVector(cur.clone()));
                        continue 'odometer;
                    }
                }
                break;
            }
            out
        }
    };
    descending(&mut parts);
    Ok(parts)
}

/// Number of multisets the split enumeration will visit, memoized on
/// (first usable pool index, remaining target); saturates at `u64::MAX`.
fn count_splits(
    pool: &[DimVector],
    target: &DimVector,
    allow_remainder: bool,
    budget: u64,
) -> Result<u64> {
    type Memo = HashMap<(usize, Vec<u32>), u64>;
    fn rec(
        pool: &[DimVector],
        start: usize,
        rem: &DimVector,
        allow: bool,
        memo: &mut Memo,
        cap: usize,
    ) -> Result<u64> {
        let key = (start, rem.0.clone());
        if let Some(&c) = memo.get(&key) {
            return Ok(c);
        }
        let mut c: u64 = u64::from(allow || rem.is_zero());
        for j in start..pool.len() {
            if let Some(sub) = rem.checked_sub(&pool[j]) {
                c = c.saturating_add(rec(pool, j, &sub, allow, memo, cap)?);
            }
        }
        if memo.len() >= cap {
            return Err(Error::Budget {
                op: "decompositions",
                detail: "count table outgrew the enumeration budget".to_string(),
            });
        }
        memo.insert(key, c);
        Ok(c)
    }
    let mut memo = Memo::new();
    let cap = usize::try_from(budget).unwrap_or(usize::MAX).max(1024);
    rec(pool, 0, target, allow_remainder, &mut memo, cap)
}

/// Depth-first enumeration of multisets of pool parts summing to `target`
/// (exactly, or with a leftover when `allow_remainder`). Parts are pushed in
/// nonincreasing order; the visitor receives (parts-so-far, leftover) and
/// stops the walk by returning `Ok(true)`. A count guard runs first so the
/// walk never starts when the output would exceed `budget`.
fn enumerate_splits<F>(
    pool: &[DimVector],
    target: &DimVector,
    allow_remainder: bool,
    budget: u64,
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(&[DimVector], &DimVector) -> Result<bool>,
{
    let count = count_splits(pool, target, allow_remainder, budget)?;
    if count > budget {
        return Err(Error::Budget {
            op: "decompositions",
            detail: format!("{count} decompositions exceed the enumeration budget {budget}"),
        });
    }
    fn rec<F>(
        pool: &[DimVector],
        start: usize,
        rem: &DimVector,
        allow: bool,
        parts: &mut Vec<DimVector>,
        nodes: &mut u64,
        visit: &mut F,
    ) -> Result<bool>
    where
        F: FnMut(&[DimVector], &DimVector) -> Result<bool>,
    {
        if *nodes == 0 {
            return Err(Error::Budget {
                op: "decompositions",
                detail: "node budget exhausted during enumeration".to_string(),
            });
        }
        *nodes -= 1;
        if (allow || rem.is_zero()) && visit(parts, rem)? {
            return Ok(true);
        }
        for j in start..pool.len() {
            if let Some(sub) = rem.checked_sub(&pool[j]) {
                parts.push(pool[j].clone());
                let stop = rec(pool, j, &sub, allow, parts, nodes, visit)?;
                parts.pop();
                if stop {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
    let mut parts = Vec::new();
    // Exact-sum walks can hit dead ends that the count guard does not see;
    // give the node counter slack beyond one unit per emitted multiset.
    let mut nodes = budget.saturating_mul(16);
    rec(pool, 0, target, allow_remainder, &mut parts, &mut nodes, visit)?;
    Ok(())
}

fn canonical_parts(parts: &[DimVector]) -> Vec<DimVector> {
    let mut ps = parts.to_vec();
    ps.reverse();
    ps
}

/// All ways of writing `target` as a multiset of nonzero parts from the pool,
/// each exactly once, parts in nondecreasing graded-lexicographic order. The
/// root table is consulted only for the positive-root pool, and for tables of
/// affine type it must be complete below `target`.
pub fn decompositions(
    target: &DimVector,
    pool: DecompositionPool,
    table: &RootTable,
) -> Result<Vec<Decomposition>> {
    decompositions_with(target, pool, table, &Limits::default())
}

pub fn decompositions_with(
    target: &DimVector,
    pool: DecompositionPool,
    table: &RootTable,
    limits: &Limits,
) -> Result<Vec<Decomposition>> {
    let parts_pool = build_pool(target, pool, Some(table))?;
    let mut out = Vec::new();
    enumerate_splits(&parts_pool, target, false, limits.enum_budget, &mut |parts, _| {
        out.push(Decomposition { parts: canonical_parts(parts), remainder: None });
        Ok(false)
    })?;
    Ok(out)
}

fn root_table_for(quiver: &Quiver, c: &CartanMatrix, bound: &DimVector) -> Result<RootTable> {
    match classify_graph(quiver)? {
        GraphClass::Finite => positive_roots_finite(c),
        GraphClass::Affine { .. } => positive_roots_bounded(c, bound),
        GraphClass::Indefinite => Err(Error::unsupported(
            "decompositions",
            "positive-root pool requires a finite or affine quiver",
        )),
    }
}

/// Complete-intersection test for an unframed theory: for every decomposition
/// of v into parts from the pool, 2 - <v,Cv> must be at least the sum of
/// 2 - <b,Cb> over the parts. Default pool: positive roots.
pub fn ci_check_unframed(t: &GaugeTheory) -> Result<CiReport> {
    ci_check_unframed_with(t, DecompositionPool::PositiveRoots, &Limits::default())
}

pub fn ci_check_unframed_with(
    t: &GaugeTheory,
    pool: DecompositionPool,
    limits: &Limits,
) -> Result<CiReport> {
    let (quiver, v, w) = t.as_quiver("ci_check_unframed")?;
    if !w.is_zero() {
        return Err(Error::unsupported(
            "ci_check_unframed",
            "requires w = 0; use ci_check_framed for framed theories",
        ));
    }
    let c = cartan_matrix(quiver);
    let table = match pool {
        DecompositionPool::PositiveRoots => Some(root_table_for(quiver, &c, v)?),
        DecompositionPool::PositiveVectors => None,
    };
    let parts_pool = build_pool(v, pool, table.as_ref())?;
    let vi = v.as_i64();
    let lhs = 2 - c.pairing(&vi, &vi);
    let mut violation = None;
    enumerate_splits(&parts_pool, v, false, limits.enum_budget, &mut |parts, _| {
        let rhs: i64 = parts
            .iter()
            .map(|b| {
                let bi = b.as_i64();
                2 - c.pairing(&bi, &bi)
            })
            .sum();
        if lhs < rhs {
            violation =
                Some(CiViolation { parts: canonical_parts(parts), remainder: None, lhs, rhs });
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(CiReport { is_ci: violation.is_none(), method: CiMethod::FullEnumeration, violation })
}

/// Complete-intersection test for a framed theory: for every split
/// v = v0 + sum of nonzero nonnegative parts b,
/// <v, 2w - Cv> must be at least <v0, 2w - Cv0> + sum of 2 - <b,Cb>.
pub fn ci_check_framed(t: &GaugeTheory) -> Result<CiReport> {
    ci_check_framed_with(t, &Limits::default())
}

pub fn ci_check_framed_with(t: &GaugeTheory, limits: &Limits) -> Result<CiReport> {
    let (quiver, v, w) = t.as_quiver("ci_check_framed")?;
    if w.is_zero() {
        return Err(Error::unsupported(
            "ci_check_framed",
            "requires nonzero framing w; use ci_check_unframed for w = 0",
        ));
    }
    let c = cartan_matrix(quiver);
    let parts_pool = build_pool(v, DecompositionPool::PositiveVectors, None)?;
    let vi = v.as_i64();
    let lhs = 2 * doti(v, w) - c.pairing(&vi, &vi);
    let mut violation = None;
    enumerate_splits(&parts_pool, v, true, limits.enum_budget, &mut |parts, rem| {
        let ri = rem.as_i64();
        let mut rhs = 2 * doti(rem, w) - c.pairing(&ri, &ri);
        for b in parts {
            let bi = b.as_i64();
            rhs += 2 - c.pairing(&bi, &bi);
        }
        if lhs < rhs {
            violation = Some(CiViolation {
                parts: canonical_parts(parts),
                remainder: Some(rem.clone()),
                lhs,
                rhs,
            });
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(CiReport { is_ci: violation.is_none(), method: CiMethod::FullEnumeration, violation })
}

/// Closed-form test for finite-type framed theories: complete intersection
/// holds exactly when <b, w - Cv> >= -1 for every positive root b.
pub fn ci_fast_path_finite(t: &GaugeTheory) -> Result<CiReport> {
    let (quiver, v, w) = t.as_quiver("ci_fast_path_finite")?;
    if !matches!(classify_graph(quiver)?, GraphClass::Finite) {
        return Err(Error::unsupported("ci_fast_path_finite", "requires a finite-type quiver"));
    }
    let c = cartan_matrix(quiver);
    let table = positive_roots_finite(&c)?;
    let u = framing_weight(&c, v, w);
    let is_ci = table
        .roots
        .iter()
        .all(|(b, _)| b.0.iter().zip(&u).map(|(&x, &y)| x as i64 * y).sum::<i64>() >= -1);
    Ok(CiReport { is_ci, method: CiMethod::FastPathFinite, violation: None })
}

/// Closed-form test for affine-type framed theories. With u = w - Cv and d
/// the primitive kernel vector of the Cartan matrix, complete intersection
/// holds exactly when, for every positive root a of the finite subsystem
/// obtained by deleting the distinguished kernel-entry-1 vertex,
/// <a, u> >= -1 and <d, w> - <a, u> >= -1.
pub fn ci_fast_path_affine(t: &GaugeTheory) -> Result<CiReport> {
    let (quiver, v, w) = t.as_quiver("ci_fast_path_affine")?;
    if w.is_zero() {
        return Err(Error::unsupported("ci_fast_path_affine", "requires nonzero framing w"));
    }
    let delta = match classify_graph(quiver)? {
        GraphClass::Affine { delta } => delta,
        _ => return Err(Error::unsupported("ci_fast_path_affine", "requires an affine-type quiver")),
    };
    let c = cartan_matrix(quiver);
    let u = framing_weight(&c, v, w);
    let dw = doti(&delta, w);
    let n = quiver.n_vertices();
    let zero_vertex = delta
        .0
        .iter()
        .position(|&d| d == 1)
        .ok_or_else(|| Error::invariant("affine-delta-one", "no vertex carries kernel entry 1"))?;
    let keep: Vec<usize> = (0..n).filter(|&i| i != zero_vertex).collect();
    let is_ci = if keep.is_empty() {
        true
    } else {
        let sub = CartanMatrix(
            keep.iter().map(|&r| keep.iter().map(|&s| c.0[r][s]).collect()).collect(),
        );
        let table = positive_roots_finite(&sub)?;
        table.roots.iter().all(|(alpha, _)| {
            let a: i64 =
                alpha.0.iter().zip(&keep).map(|(&x, &i)| x as i64 * u[i]).sum();
            a >= -1 && dw - a >= -1
        })
    };
    Ok(CiReport { is_ci, method: CiMethod::FastPathAffine, violation: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{GroupConvention, Quiver};

    fn path_theory(n: usize, v: Vec<u32>, w: Vec<u32>) -> GaugeTheory {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let edges: Vec<(String, String)> =
            (1..n).map(|i| (i.to_string(), (i + 1).to_string())).collect();
        let quiver = Quiver::new(vertices, &edges).unwrap();
        GaugeTheory::quiver(quiver, DimVector(v), DimVector(w), GroupConvention::ProdGl).unwrap()
    }

    fn affine_a1_theory(v: Vec<u32>, w: Vec<u32>) -> GaugeTheory {
        let quiver = Quiver::new(
            vec!["0".into(), "1".into()],
            &[("0".into(), "1".into()), ("0".into(), "1".into())],
        )
        .unwrap();
        GaugeTheory::quiver(quiver, DimVector(v), DimVector(w), GroupConvention::ProdGl).unwrap()
    }

    fn jordan_theory(v: u32) -> GaugeTheory {
        let quiver = Quiver::new(vec!["x".into()], &[("x".into(), "x".into())]).unwrap();
        GaugeTheory::quiver(quiver, DimVector(vec![v]), DimVector(vec![0]), GroupConvention::ProdGl)
            .unwrap()
    }

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn decomposition_examples() {
        let quiver = match path_theory(2, vec![1, 1], vec![0, 0]) {
            GaugeTheory::Quiver { quiver, .. } => quiver,
            _ => unreachable!(),
        };
        let c = cartan_matrix(&quiver);
        let table = positive_roots_finite(&c).unwrap();
        let decs =
            decompositions(&dv(&[1, 1]), DecompositionPool::PositiveRoots, &table).unwrap();
        assert_eq!(
            decs,
            vec![
                Decomposition { parts: vec![dv(&[1, 1])], remainder: None },
                Decomposition { parts: vec![dv(&[0, 1]), dv(&[1, 0])], remainder: None },
            ]
        );

        let empty = decompositions(&dv(&[0, 0]), DecompositionPool::PositiveRoots, &table).unwrap();
        assert_eq!(empty, vec![Decomposition { parts: vec![], remainder: None }]);
    }

    #[test]
    fn affine_decompositions_below_twice_the_kernel_vector() {
        let quiver = match affine_a1_theory(vec![2, 2], vec![0, 0]) {
            GaugeTheory::Quiver { quiver, .. } => quiver,
            _ => unreachable!(),
        };
        let c = cartan_matrix(&quiver);
        let table = positive_roots_bounded(&c, &dv(&[2, 2])).unwrap();
        let decs =
            decompositions(&dv(&[2, 2]), DecompositionPool::PositiveRoots, &table).unwrap();
        assert_eq!(decs.len(), 6);
        let has = |parts: &[DimVector]| decs.iter().any(|d| d.parts == parts);
        assert!(has(&[dv(&[2, 2])]));
        assert!(has(&[dv(&[1, 1]), dv(&[1, 1])]));
        assert!(has(&[dv(&[0, 1]), dv(&[2, 1])]));
        assert!(has(&[dv(&[0, 1]), dv(&[1, 0]), dv(&[1, 1])]));
    }

    #[test]
    fn unframed_examples() {
        let ok = ci_check_unframed(&path_theory(2, vec![1, 1], vec![0, 0])).unwrap();
        assert!(ok.is_ci);
        assert_eq!(ok.method, CiMethod::FullEnumeration);
        assert!(ok.violation.is_none());

        let bad = ci_check_unframed(&path_theory(2, vec![2, 2], vec![0, 0])).unwrap();
        assert!(!bad.is_ci);
        let v = bad.violation.unwrap();
        assert_eq!(v.parts, vec![dv(&[1, 1]), dv(&[1, 1])]);
        assert_eq!((v.lhs, v.rhs), (-6, 0));
    }

    #[test]
    fn unframed_affine_examples() {
        let delta = ci_check_unframed(&affine_a1_theory(vec![1, 1], vec![0, 0])).unwrap();
        assert!(delta.is_ci);

        let twice = ci_check_unframed(&affine_a1_theory(vec![2, 2], vec![0, 0])).unwrap();
        assert!(!twice.is_ci);
        let v = twice.violation.unwrap();
        assert_eq!(v.parts, vec![dv(&[1, 1]), dv(&[1, 1])]);
        assert_eq!((v.lhs, v.rhs), (2, 4));
    }

    #[test]
    fn jordan_quiver_is_ci_only_at_dimension_one() {
        assert!(ci_check_unframed(&jordan_theory(1)).unwrap().is_ci);
        let two = ci_check_unframed(&jordan_theory(2)).unwrap();
        assert!(!two.is_ci);
        assert_eq!(two.violation.unwrap().parts, vec![dv(&[1]), dv(&[1])]);
    }

    #[test]
    fn framed_examples() {
        let ok = ci_check_framed(&path_theory(1, vec![1], vec![2])).unwrap();
        assert!(ok.is_ci);

        let bad = ci_check_framed(&path_theory(1, vec![2], vec![2])).unwrap();
        assert!(!bad.is_ci);
        let v = bad.violation.unwrap();
        assert_eq!(v.parts, vec![dv(&[1])]);
        assert_eq!(v.remainder, Some(dv(&[1])));
        assert_eq!((v.lhs, v.rhs), (0, 2));

        let zero = ci_check_framed(&path_theory(2, vec![0, 0], vec![1, 0])).unwrap();
        assert!(zero.is_ci);
    }

    #[test]
    fn fast_path_finite_examples() {
        let t = path_theory(3, vec![1, 1, 1], vec![1, 0, 1]);
        let report = ci_fast_path_finite(&t).unwrap();
        assert!(report.is_ci);
        assert_eq!(report.method, CiMethod::FastPathFinite);
        assert!(report.violation.is_none());
        // The pairing functional here is identically zero.
        let (quiver, v, w) = t.as_quiver("test").unwrap();
        assert_eq!(framing_weight(&cartan_matrix(quiver), v, w), vec![0, 0, 0]);

        assert!(!ci_fast_path_finite(&path_theory(1, vec![2], vec![2])).unwrap().is_ci);
        // Dominant functional: always a complete intersection.
        assert!(ci_fast_path_finite(&path_theory(1, vec![1], vec![2])).unwrap().is_ci);
    }

    #[test]
    fn fast_path_affine_examples() {
        let ok = ci_fast_path_affine(&affine_a1_theory(vec![1, 1], vec![1, 0])).unwrap();
        assert!(ok.is_ci);
        assert_eq!(ok.method, CiMethod::FastPathAffine);

        let err = ci_fast_path_affine(&affine_a1_theory(vec![1, 1], vec![0, 0]));
        assert!(err.is_err());

        let finite = ci_fast_path_affine(&path_theory(2, vec![1, 1], vec![1, 0]));
        assert!(finite.is_err());
    }

    #[test]
    fn fast_path_matches_full_enumeration_on_a_small_grid() {
        for v1 in 0..=2u32 {
            for v2 in 0..=2u32 {
                for w1 in 0..=2u32 {
                    for w2 in 0..=2u32 {
                        if w1 == 0 && w2 == 0 {
                            continue;
                        }
                        let t = path_theory(2, vec![v1, v2], vec![w1, w2]);
                        let full = ci_check_framed(&t).unwrap().is_ci;
                        let fast = ci_fast_path_finite(&t).unwrap().is_ci;
                        assert_eq!(full, fast, "v=({v1},{v2}) w=({w1},{w2})");
                    }
                }
            }
        }
    }

    #[test]
    fn affine_fast_path_matches_full_enumeration_on_a_small_grid() {
        for v1 in 0..=2u32 {
            for v2 in 0..=2u32 {
                for w1 in 0..=1u32 {
                    for w2 in 0..=1u32 {
                        if w1 == 0 && w2 == 0 {
                            continue;
                        }
                        let t = affine_a1_theory(vec![v1, v2], vec![w1, w2]);
                        let full = ci_check_framed(&t).unwrap().is_ci;
                        let fast = ci_fast_path_affine(&t).unwrap().is_ci;
                        assert_eq!(full, fast, "v=({v1},{v2}) w=({w1},{w2})");
                    }
                }
            }
        }
    }

    #[test]
    fn root_and_vector_pools_agree_on_small_unframed_cases() {
        let limits = Limits::default();
        for v1 in 0..=2u32 {
            for v2 in 0..=2u32 {
                if v1 == 0 && v2 == 0 {
                    continue;
                }
                let t = path_theory(2, vec![v1, v2], vec![0, 0]);
                let roots =
                    ci_check_unframed_with(&t, DecompositionPool::PositiveRoots, &limits).unwrap();
                let vectors = ci_check_unframed_with(&t, DecompositionPool::PositiveVectors, &limits)
                    .unwrap();
                assert_eq!(roots.is_ci, vectors.is_ci, "v=({v1},{v2})");
            }
        }
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        let limits = Limits { enum_budget: 2, ..Limits::default() };
        let err = ci_check_framed_with(&path_theory(2, vec![2, 2], vec![1, 1]), &limits);
        assert!(matches!(err, Err(Error::Budget { .. })));
    }

    #[test]
    fn non_quiver_theories_are_rejected() {
        let sl2 = GaugeTheory::sl2(4);
        assert!(ci_check_unframed(&sl2).is_err());
        assert!(ci_check_framed(&sl2).is_err());
        assert!(ci_fast_path_finite(&sl2).is_err());
        assert!(ci_fast_path_affine(&sl2).is_err());
    }
}
