//! Positive roots of finite and affine symmetric Cartan matrices, with
//! real/imaginary tags, plus dominance tests.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg;
use crate::quiver::{CartanMatrix, DimVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootTag {
    Real,
    Imaginary,
}

/// A finite table of positive roots, complete below `bound`: every positive
/// root `beta <= bound` componentwise is listed. For finite type the bound is
/// the highest root and the table is the whole positive system.
#[derive(Debug, Clone)]
pub struct RootTable {
    pub roots: Vec<(DimVector, RootTag)>,
    pub delta: Option<DimVector>,
    pub bound: DimVector,
}

impl RootTable {
    /// Graded-lexicographic position-stable ordering used everywhere.
    fn sort(&mut self) {
        self.roots.sort_by_key(|(r, _)| (r.total(), r.0.clone()));
    }
}

/// Height of a root: the sum of its entries.
pub fn height(v: &DimVector) -> u64 {
    v.total()
}

/// All entries nonnegative.
pub fn is_dominant(weight: &[i64]) -> bool {
    weight.iter().all(|&x| x >= 0)
}

/// Positive roots of a positive-definite symmetric Cartan matrix, by
/// reflection closure from the simple roots.
pub fn positive_roots_finite(c: &CartanMatrix) -> Result<RootTable> {
    let n = c.n();
    let c128: Vec<Vec<i128>> = c.0.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    if !linalg::leading_principal_minors(&c128).iter().all(|&d| d > 0) {
        return Err(Error::unsupported(
            "positive_roots_finite",
            "Cartan matrix is not positive definite".to_string(),
        ));
    }
    let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        set.insert(e.clone());
        frontier.push(e);
    }
    while let Some(beta) = frontier.pop() {
        let cb = c.apply(&beta);
        for i in 0..n {
            let mut refl = beta.clone();
            refl[i] -= cb[i];
            if refl.iter().all(|&x| x >= 0) && refl.iter().any(|&x| x > 0) && set.insert(refl.clone()) {
                frontier.push(refl);
            }
        }
    }
    let roots: Vec<(DimVector, RootTag)> = set
        .into_iter()
        .map(|r| (DimVector(r.iter().map(|&x| x as u32).collect()), RootTag::Real))
        .collect();
    let mut bound = vec![0u32; n];
    for (r, _) in &roots {
        for (b, &x) in bound.iter_mut().zip(&r.0) {
            *b = (*b).max(x);
        }
    }
    let mut table = RootTable { roots, delta: None, bound: DimVector(bound) };
    table.sort();
    Ok(table)
}

/// Positive roots of an affine symmetric Cartan matrix below `bound`
/// componentwise: `n delta + alpha` (n >= 0), `n delta - alpha` (n >= 1) for
/// finite positive roots `alpha`, and the imaginary roots `n delta` (n >= 1).
pub fn positive_roots_bounded(c: &CartanMatrix, bound: &DimVector) -> Result<RootTable> {
    let n = c.n();
    if bound.len() != n {
        return Err(Error::invariant("bound-length", format!("bound must have {n} entries")));
    }
    let c128: Vec<Vec<i128>> = c.0.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let kernel = linalg::kernel_basis(&c128, n);
    if kernel.len() != 1 {
        return Err(Error::unsupported(
            "positive_roots_bounded",
            "Cartan matrix is not of affine type".to_string(),
        ));
    }
    let mut delta128 = kernel[0].clone();
    if delta128.iter().any(|&x| x < 0) {
        for x in &mut delta128 {
            *x = -*x;
        }
    }
    if delta128.iter().any(|&x| x <= 0) {
        return Err(Error::unsupported(
            "positive_roots_bounded",
            "kernel vector is not strictly positive".to_string(),
        ));
    }
    let delta: Vec<i64> = delta128.iter().map(|&x| x as i64).collect();

    // Remove one vertex with delta-mark 1; the complement carries the finite
    // subsystem. The resulting root set is independent of the choice.
    let zero_vertex = delta
        .iter()
        .position(|&d| d == 1)
        .ok_or_else(|| Error::unsupported("positive_roots_bounded", "no vertex with delta mark 1".to_string()))?;
    let rest: Vec<usize> = (0..n).filter(|&i| i != zero_vertex).collect();
    let finite_roots: Vec<Vec<i64>> = if rest.is_empty() {
        Vec::new()
    } else {
        let sub = CartanMatrix(
            rest.iter()
                .map(|&i| rest.iter().map(|&j| c.0[i][j]).collect())
                .collect(),
        );
        let table = positive_roots_finite(&sub)?;
        table
            .roots
            .into_iter()
            .map(|(r, _)| {
                let mut full = vec![0i64; n];
                for (slot, &x) in rest.iter().zip(&r.0) {
                    full[*slot] = x as i64;
                }
                full
            })
            .collect()
    };

    let bound_i: Vec<i64> = bound.as_i64();
    let fits = |v: &[i64]| v.iter().zip(&bound_i).all(|(x, b)| *x >= 0 && x <= b);
    let mut max_alpha = vec![0i64; n];
    for a in &finite_roots {
        for (m, &x) in max_alpha.iter_mut().zip(a) {
            *m = (*m).max(x);
        }
    }
    let n_cap = (0..n)
        .map(|i| (bound_i[i] + max_alpha[i]) / delta[i])
        .min()
        .unwrap_or(0);

    let mut roots: Vec<(DimVector, RootTag)> = Vec::new();
    let mut push = |v: Vec<i64>, tag: RootTag| {
        roots.push((DimVector(v.iter().map(|&x| x as u32).collect()), tag));
    };
    for k in 0..=n_cap {
        for alpha in &finite_roots {
            let plus: Vec<i64> = (0..n).map(|i| k * delta[i] + alpha[i]).collect();
            if fits(&plus) {
                push(plus, RootTag::Real);
            }
            if k >= 1 {
                let minus: Vec<i64> = (0..n).map(|i| k * delta[i] - alpha[i]).collect();
                if fits(&minus) {
                    push(minus, RootTag::Real);
                }
            }
        }
        if k >= 1 {
            let imag: Vec<i64> = delta.iter().map(|&d| k * d).collect();
            if fits(&imag) {
                push(imag, RootTag::Imaginary);
            }
        }
    }
    let delta_dim = DimVector(delta.iter().map(|&x| x as u32).collect());
    let mut table = RootTable { roots, delta: Some(delta_dim), bound: bound.clone() };
    table.sort();
    Ok(table)
}

/// Membership (with tag) of `v` in the table. Errors if `v` exceeds the
/// table's bound, where completeness is not guaranteed.
pub fn is_positive_root(v: &DimVector, table: &RootTable) -> Result<Option<RootTag>> {
    if !v.leq(&table.bound) {
        return Err(Error::unsupported(
            "is_positive_root",
            format!("vector exceeds table bound {:?}", table.bound.0),
        ));
    }
    Ok(table.roots.iter().find(|(r, _)| r == v).map(|(_, tag)| *tag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{cartan_matrix, Quiver};

    fn path(n: usize) -> CartanMatrix {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let edges: Vec<(String, String)> =
            (1..n).map(|i| (i.to_string(), (i + 1).to_string())).collect();
        cartan_matrix(&Quiver::new(vertices, &edges).unwrap())
    }

    fn d_type(n: usize) -> CartanMatrix {
        // Vertex order: leg, center, then the remaining chain/legs, matching
        // the fixtures (D4 = [1, c, 3, 4] with c adjacent to all others).
        let mut vertices: Vec<String> = vec!["1".into(), "c".into()];
        for i in 3..=n {
            vertices.push(i.to_string());
        }
        let mut edges: Vec<(String, String)> = vec![("1".into(), "c".into()), ("c".into(), "3".into())];
        if n == 4 {
            edges.push(("c".into(), "4".into()));
        } else {
            for i in 3..n {
                edges.push((i.to_string(), (i + 1).to_string()));
            }
            // Fork at the far end: replace the last chain edge (n-1, n) by
            // attaching n to n-2, alongside the existing (n-2, n-1) edge.
            edges.pop();
            edges.push(((n - 2).to_string(), n.to_string()));
        }
        cartan_matrix(&Quiver::new(vertices, &edges).unwrap())
    }

    fn doubled_edge() -> CartanMatrix {
        cartan_matrix(
            &Quiver::new(
                vec!["a".into(), "b".into()],
                &[("a".into(), "b".into()), ("a".into(), "b".into())],
            )
            .unwrap(),
        )
    }

    fn triangle() -> CartanMatrix {
        cartan_matrix(
            &Quiver::new(
                vec!["0".into(), "1".into(), "2".into()],
                &[
                    ("0".into(), "1".into()),
                    ("1".into(), "2".into()),
                    ("0".into(), "2".into()),
                ],
            )
            .unwrap(),
        )
    }

    /// Brute-force oracle: positive vectors below `bound` whose Cartan norm
    /// is 2 (real) or 0 (imaginary) and whose support is connected in the
    /// graph read off the Cartan matrix.
    fn oracle(c: &CartanMatrix, bound: &[i64]) -> Vec<(Vec<i64>, RootTag)> {
        let n = c.n();
        let mut out = Vec::new();
        let mut v = vec![0i64; n];
        loop {
            // Advance odometer.
            let mut i = 0;
            loop {
                if i == n {
                    out.sort_by_key(|(r, _): &(Vec<i64>, RootTag)| {
                        (r.iter().sum::<i64>(), r.clone())
                    });
                    return out;
                }
                v[i] += 1;
                if v[i] <= bound[i] {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
            let norm = c.pairing(&v, &v);
            if norm != 0 && norm != 2 {
                continue;
            }
            // Connected support check via off-diagonal entries of C.
            let support: Vec<usize> = (0..n).filter(|&i| v[i] > 0).collect();
            let mut seen = vec![false; n];
            let mut stack = vec![support[0]];
            seen[support[0]] = true;
            while let Some(i) = stack.pop() {
                for &j in &support {
                    if !seen[j] && c.0[i][j] < 0 {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            if !support.iter().all(|&i| seen[i]) {
                continue;
            }
            out.push((v.clone(), if norm == 2 { RootTag::Real } else { RootTag::Imaginary }));
        }
    }

    fn as_pairs(t: &RootTable) -> Vec<(Vec<i64>, RootTag)> {
        t.roots.iter().map(|(r, tag)| (r.as_i64(), *tag)).collect()
    }

    #[test]
    fn a_type_counts() {
        for n in 1..=5usize {
            let table = positive_roots_finite(&path(n)).unwrap();
            assert_eq!(table.roots.len(), n * (n + 1) / 2, "A{n}");
        }
    }

    #[test]
    fn a3_roots_graded_order() {
        let table = positive_roots_finite(&path(3)).unwrap();
        let got: Vec<Vec<u32>> = table.roots.iter().map(|(r, _)| r.0.clone()).collect();
        assert_eq!(
            got,
            vec![
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![1, 0, 0],
                vec![0, 1, 1],
                vec![1, 1, 0],
                vec![1, 1, 1],
            ]
        );
    }

    #[test]
    fn d_type_counts_and_highest_root() {
        for n in 4..=5usize {
            let table = positive_roots_finite(&d_type(n)).unwrap();
            assert_eq!(table.roots.len(), n * (n - 1), "D{n}");
        }
        let table = positive_roots_finite(&d_type(4)).unwrap();
        assert_eq!(table.bound, DimVector(vec![1, 2, 1, 1]));
        assert!(table.roots.iter().any(|(r, _)| r.0 == vec![1, 2, 1, 1]));
    }

    #[test]
    fn finite_tables_match_oracle() {
        for c in [path(3), path(4), d_type(4)] {
            let table = positive_roots_finite(&c).unwrap();
            let bound = table.bound.as_i64();
            assert_eq!(as_pairs(&table), oracle(&c, &bound));
        }
    }

    #[test]
    fn affine_a1_bounded() {
        let c = doubled_edge();
        let table = positive_roots_bounded(&c, &DimVector(vec![2, 2])).unwrap();
        let reals: Vec<Vec<u32>> = table
            .roots
            .iter()
            .filter(|(_, t)| *t == RootTag::Real)
            .map(|(r, _)| r.0.clone())
            .collect();
        let imags: Vec<Vec<u32>> = table
            .roots
            .iter()
            .filter(|(_, t)| *t == RootTag::Imaginary)
            .map(|(r, _)| r.0.clone())
            .collect();
        assert_eq!(reals, vec![vec![0, 1], vec![1, 0], vec![1, 2], vec![2, 1]]);
        assert_eq!(imags, vec![vec![1, 1], vec![2, 2]]);
        assert_eq!(table.delta, Some(DimVector(vec![1, 1])));
    }

    #[test]
    fn affine_a2_below_delta() {
        // Every 0/1 vector with connected support is a real root here, so the
        // window below delta holds six reals plus delta itself.
        let table = positive_roots_bounded(&triangle(), &DimVector(vec![1, 1, 1])).unwrap();
        let n_real = table.roots.iter().filter(|(_, t)| *t == RootTag::Real).count();
        let n_imag = table.roots.iter().filter(|(_, t)| *t == RootTag::Imaginary).count();
        assert_eq!((n_real, n_imag), (6, 1));
    }

    #[test]
    fn affine_tables_match_oracle() {
        for (c, bound) in [
            (doubled_edge(), vec![3i64, 3]),
            (triangle(), vec![2, 2, 2]),
        ] {
            let bd = DimVector(bound.iter().map(|&x| x as u32).collect());
            let table = positive_roots_bounded(&c, &bd).unwrap();
            assert_eq!(as_pairs(&table), oracle(&c, &bound));
        }
    }

    #[test]
    fn jordan_has_only_imaginary_roots() {
        let q = Quiver::new(vec!["x".into()], &[("x".into(), "x".into())]).unwrap();
        let table = positive_roots_bounded(&cartan_matrix(&q), &DimVector(vec![3])).unwrap();
        let got: Vec<(Vec<u32>, RootTag)> =
            table.roots.iter().map(|(r, t)| (r.0.clone(), *t)).collect();
        assert_eq!(
            got,
            vec![
                (vec![1], RootTag::Imaginary),
                (vec![2], RootTag::Imaginary),
                (vec![3], RootTag::Imaginary),
            ]
        );
    }

    #[test]
    fn membership_respects_bound() {
        let table = positive_roots_finite(&path(2)).unwrap();
        assert_eq!(
            is_positive_root(&DimVector(vec![1, 1]), &table).unwrap(),
            Some(RootTag::Real)
        );
        assert_eq!(is_positive_root(&DimVector(vec![1, 0]), &table).unwrap(), Some(RootTag::Real));
        assert!(is_positive_root(&DimVector(vec![2, 0]), &table).is_err());
    }

    #[test]
    fn dominance() {
        assert!(is_dominant(&[0, 2, 1]));
        assert!(!is_dominant(&[0, -1, 3]));
    }
}
