//! Exact integer double-description for polyhedral cones.
//!
//! A cone is held as a lineality basis plus extreme rays of the pointed
//! quotient, together with bitmasks recording which cutting constraints each
//! ray satisfies with equality. Both halfspace restriction steps below keep
//! the ray list exactly the set of extreme rays:
//!
//! * if the new constraint is nonzero on the lineality space, one lineality
//!   basis vector is promoted to a ray and the remaining generators are
//!   sheared onto the constraint hyperplane;
//! * otherwise the classic ray step applies, with combinatorial adjacency
//!   (no third ray's tight set contains the intersection of the pair's).

use crate::error::{Error, Result};

const MAX_RAYS: usize = 100_000;

#[derive(Debug, Clone)]
pub(crate) struct Ray {
    pub dir: Vec<i64>,
    tight: u128,
}

#[derive(Debug, Clone)]
pub(crate) struct Cone {
    pub dim: usize,
    pub lineality: Vec<Vec<i64>>,
    pub rays: Vec<Ray>,
    n_constraints: u32,
}

/// Outcome of restricting a cone by the sign of a linear form.
pub(crate) enum SignSplit {
    /// The form is nonnegative on the whole cone.
    AllNonneg,
    /// The form is nonpositive on the whole cone (and somewhere negative).
    AllNonpos,
    /// The form changes sign; both closed halves are returned.
    Split { plus: Cone, minus: Cone },
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Scale `a*x + b*y` down to a primitive integer vector.
fn combine(a: i128, x: &[i64], b: i128, y: &[i64]) -> Result<Vec<i64>> {
    let raw: Vec<i128> = x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| a * xi as i128 + b * yi as i128)
        .collect();
    let g = raw.iter().fold(0i128, |acc, &v| gcd(acc, v));
    let g = if g == 0 { 1 } else { g };
    raw.iter()
        .map(|&v| i64::try_from(v / g).map_err(|_| Error::Overflow("cone arithmetic")))
        .collect()
}

impl Cone {
    /// The full ambient space: lineality only.
    #[cfg(test)]
    pub fn whole_space(dim: usize) -> Cone {
        let lineality = (0..dim)
            .map(|i| {
                let mut e = vec![0i64; dim];
                e[i] = 1;
                e
            })
            .collect();
        Cone { dim, lineality, rays: Vec::new(), n_constraints: 0 }
    }

    /// Product of per-block order cones `x_1 >= x_2 >= ...` over the reduced
    /// coordinates. `pinned_block` marks a block whose (dropped) last
    /// coordinate was fixed to zero, adding a trailing `>= 0` wall there and
    /// removing that block's diagonal shift from the lineality.
    pub fn weyl_base(block_dims: &[usize], pinned_block: Option<usize>) -> Result<Cone> {
        let reduced: Vec<usize> = block_dims
            .iter()
            .enumerate()
            .map(|(b, &d)| if Some(b) == pinned_block { d - 1 } else { d })
            .collect();
        let dim: usize = reduced.iter().sum();
        let offsets: Vec<usize> = reduced
            .iter()
            .scan(0usize, |acc, &d| {
                let here = *acc;
                *acc += d;
                Some(here)
            })
            .collect();
        // Walls per block: m-1 consecutive differences, plus a trailing
        // nonnegativity wall for the pinned block.
        let mut n_walls_before = vec![0u32; reduced.len()];
        let mut total_walls = 0u32;
        for (b, &m) in reduced.iter().enumerate() {
            n_walls_before[b] = total_walls;
            if m == 0 {
                continue;
            }
            total_walls += (m - 1) as u32 + u32::from(Some(b) == pinned_block);
        }
        if total_walls > 128 {
            return Err(Error::DimensionLimit { dim, limit: 128 });
        }
        let mut lineality = Vec::new();
        let mut rays = Vec::new();
        let all_tight: u128 = if total_walls == 128 { !0 } else { (1u128 << total_walls) - 1 };
        for (b, &m) in reduced.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let n_block_walls = (m - 1) as u32 + u32::from(Some(b) == pinned_block);
            if Some(b) != pinned_block {
                let mut ones = vec![0i64; dim];
                for k in 0..m {
                    ones[offsets[b] + k] = 1;
                }
                lineality.push(ones);
            }
            // Prefix rays; the full prefix only when the block is pinned
            // (otherwise it is lineality).
            let n_prefix = if Some(b) == pinned_block { m } else { m - 1 };
            for k in 1..=n_prefix {
                let mut p = vec![0i64; dim];
                for i in 0..k {
                    p[offsets[b] + i] = 1;
                }
                // Tight on every wall except wall k-1 of this block.
                let mut tight = all_tight;
                if (k as u32) <= n_block_walls {
                    tight &= !(1u128 << (n_walls_before[b] + k as u32 - 1));
                }
                rays.push(Ray { dir: p, tight });
            }
        }
        Ok(Cone { dim, lineality, rays, n_constraints: total_walls })
    }

    pub fn is_trivial(&self) -> bool {
        self.lineality.is_empty() && self.rays.is_empty()
    }

    /// Restrict by the sign of `h`, returning both closed halves unless the
    /// sign is already constant on the cone.
    pub fn split(&self, h: &[i64]) -> Result<SignSplit> {
        let lin_vals: Vec<i128> = self.lineality.iter().map(|l| dot(h, l)).collect();
        if let Some(pivot) = lin_vals.iter().position(|&v| v != 0) {
            let plus = self.lineality_split(h, pivot, &lin_vals, false)?;
            let minus = self.lineality_split(h, pivot, &lin_vals, true)?;
            return Ok(SignSplit::Split { plus, minus });
        }
        let ray_vals: Vec<i128> = self.rays.iter().map(|r| dot(h, &r.dir)).collect();
        let has_pos = ray_vals.iter().any(|&v| v > 0);
        let has_neg = ray_vals.iter().any(|&v| v < 0);
        match (has_pos, has_neg) {
            (_, false) => Ok(SignSplit::AllNonneg),
            (false, true) => Ok(SignSplit::AllNonpos),
            (true, true) => {
                let plus = self.ray_step(h, &ray_vals)?;
                let neg_h: Vec<i64> = h.iter().map(|&x| -x).collect();
                let neg_vals: Vec<i128> = ray_vals.iter().map(|&v| -v).collect();
                let minus = self.ray_step(&neg_h, &neg_vals)?;
                Ok(SignSplit::Split { plus, minus })
            }
        }
    }

    /// Cut with `h >= 0` when `h` is nonzero on the lineality space: the
    /// pivot basis vector becomes a ray and everything else is sheared onto
    /// the hyperplane of `h`.
    fn lineality_split(
        &self,
        h: &[i64],
        pivot: usize,
        lin_vals: &[i128],
        negate: bool,
    ) -> Result<Cone> {
        let bit = self.fresh_bit()?;
        let sgn: i128 = if negate { -1 } else { 1 };
        // Oriented pivot with h-value a0 > 0 (after orientation).
        let a0 = sgn * lin_vals[pivot];
        let (a0, pivot_dir): (i128, Vec<i64>) = if a0 > 0 {
            (a0, self.lineality[pivot].clone())
        } else {
            (-a0, self.lineality[pivot].iter().map(|&x| -x).collect())
        };
        let mut lineality = Vec::with_capacity(self.lineality.len() - 1);
        for (i, l) in self.lineality.iter().enumerate() {
            if i == pivot {
                continue;
            }
            // a0 * l - (h.l) * pivot lies in ker h.
            lineality.push(combine(a0, l, -(sgn * lin_vals[i]), &pivot_dir)?);
        }
        let mut rays = Vec::with_capacity(self.rays.len() + 1);
        let all_old: u128 = if self.n_constraints == 0 { 0 } else { (1u128 << self.n_constraints) - 1 };
        rays.push(Ray { dir: pivot_dir.clone(), tight: all_old });
        for r in &self.rays {
            let hv = sgn * dot(h, &r.dir);
            let dir = combine(a0, &r.dir, -hv, &pivot_dir)?;
            rays.push(Ray { dir, tight: r.tight | (1u128 << bit) });
        }
        Ok(Cone { dim: self.dim, lineality, rays, n_constraints: self.n_constraints + 1 })
    }

    /// Classic double-description step for `h >= 0` with `h` vanishing on the
    /// lineality space and `ray_vals` the precomputed values on the rays.
    fn ray_step(&self, _h: &[i64], ray_vals: &[i128]) -> Result<Cone> {
        let bit = self.fresh_bit()?;
        let mut rays: Vec<Ray> = Vec::new();
        for (r, &v) in self.rays.iter().zip(ray_vals) {
            if v > 0 {
                rays.push(r.clone());
            } else if v == 0 {
                rays.push(Ray { dir: r.dir.clone(), tight: r.tight | (1u128 << bit) });
            }
        }
        for (ip, &vp) in ray_vals.iter().enumerate() {
            if vp <= 0 {
                continue;
            }
            for (ins, &vn) in ray_vals.iter().enumerate() {
                if vn >= 0 {
                    continue;
                }
                let common = self.rays[ip].tight & self.rays[ins].tight;
                let blocked = self
                    .rays
                    .iter()
                    .enumerate()
                    .any(|(k, t)| k != ip && k != ins && t.tight & common == common);
                if blocked {
                    continue;
                }
                let dir = combine(vp, &self.rays[ins].dir, -vn, &self.rays[ip].dir)?;
                rays.push(Ray { dir, tight: common | (1u128 << bit) });
                if rays.len() > MAX_RAYS {
                    return Err(Error::Budget {
                        op: "cone ray enumeration",
                        detail: format!("more than {MAX_RAYS} extreme rays"),
                    });
                }
            }
        }
        Ok(Cone {
            dim: self.dim,
            lineality: self.lineality.clone(),
            rays,
            n_constraints: self.n_constraints + 1,
        })
    }

    fn fresh_bit(&self) -> Result<u32> {
        if self.n_constraints >= 128 {
            return Err(Error::Budget {
                op: "cone constraint bookkeeping",
                detail: "more than 128 cutting constraints".to_string(),
            });
        }
        Ok(self.n_constraints)
    }

    #[cfg(test)]
    fn ray_dirs(&self) -> Vec<Vec<i64>> {
        let mut d: Vec<Vec<i64>> = self.rays.iter().map(|r| r.dir.clone()).collect();
        d.sort();
        d
    }
}
