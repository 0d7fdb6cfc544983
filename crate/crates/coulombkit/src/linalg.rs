//! Small exact integer linear algebra: fraction-free elimination for
//! definiteness tests and kernel computation.
//!
//! Everything works over i128 so that the intermediate products of the
//! Bareiss recurrence stay exact for the matrix sizes this crate meets
//! (Cartan matrices of small quivers).

/// Greatest common divisor, always nonnegative.
pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Divide a vector by the gcd of its entries, making the first nonzero entry
/// positive. Returns `None` for the zero vector.
pub fn primitive(v: &[i128]) -> Option<Vec<i128>> {
    let g = v.iter().fold(0i128, |acc, &x| gcd(acc, x));
    if g == 0 {
        return None;
    }
    let mut out: Vec<i128> = v.iter().map(|&x| x / g).collect();
    if let Some(first) = out.iter().find(|&&x| x != 0) {
        if *first < 0 {
            for x in &mut out {
                *x = -*x;
            }
        }
    }
    Some(out)
}

/// Leading principal minors det(A[..k][..k]) for k = 1..=n via fraction-free
/// (Bareiss) elimination. `a` must be square.
pub fn leading_principal_minors(a: &[Vec<i128>]) -> Vec<i128> {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let mut minors = Vec::with_capacity(n);
    let mut prev = 1i128;
    for k in 0..n {
        // Bareiss: after step k the pivot m[k][k] equals the (k+1)-st minor.
        if k > 0 {
            let pk = m[k - 1][k - 1];
            for i in k..n {
                for j in k..n {
                    let num = m[i][j] * pk - m[i][k - 1] * m[k - 1][j];
                    m[i][j] = num / prev;
                }
            }
            prev = pk;
        }
        minors.push(m[k][k]);
        if m[k][k] == 0 {
            // Pivot vanished: later leading minors are still well defined but
            // the division-free recurrence needs a nonzero pivot. Fall back to
            // direct determinants for the remaining sizes.
            for size in (k + 2)..=n {
                minors.push(determinant(&submatrix(a, size)));
            }
            break;
        }
    }
    minors
}

fn submatrix(a: &[Vec<i128>], size: usize) -> Vec<Vec<i128>> {
    a[..size].iter().map(|row| row[..size].to_vec()).collect()
}

/// Exact determinant by fraction-free elimination with row pivoting.
pub fn determinant(a: &[Vec<i128>]) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m = a.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Basis of the integer kernel of `a` (not necessarily square), as primitive
/// integer vectors. Computed by exact Gauss elimination over rationals kept in
/// cleared-denominator integer form.
pub fn kernel_basis(a: &[Vec<i128>], cols: usize) -> Vec<Vec<i128>> {
    // Row-reduce a copy, tracking pivot columns.
    let mut m: Vec<Vec<i128>> = a.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let rows = m.len();
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        // Eliminate column c from all other rows, fraction-free.
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let (num_i, num_r) = (m[i][c], m[r][c]);
                for j in 0..cols {
                    m[i][j] = m[i][j] * num_r - m[r][j] * num_i;
                }
                if let Some(p) = primitive(&m[i]) {
                    m[i] = p;
                } else {
                    m[i] = vec![0; cols];
                }
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![0i128; cols];
        // Solve for pivot variables with the free variable set to a common
        // denominator (product of pivots is overkill; use lcm-style scaling).
        let mut scale = 1i128;
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            let piv = m[row][pc];
            scale = scale / gcd(scale, piv.abs()) * piv.abs();
            let _ = row;
        }
        v[fc] = scale;
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            // pivot * x_pc + m[row][fc] * x_fc = 0
            v[pc] = -m[row][fc] * scale / m[row][pc];
        }
        if let Some(p) = primitive(&v) {
            basis.push(p);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minors_of_a2_cartan() {
        let c = vec![vec![2, -1], vec![-1, 2]];
        assert_eq!(leading_principal_minors(&c), vec![2, 3]);
    }

    #[test]
    fn kernel_of_affine_a1() {
        let c = vec![vec![2i128, -2], vec![-2, 2]];
        let k = kernel_basis(&c, 2);
        assert_eq!(k, vec![vec![1, 1]]);
    }

    #[test]
    fn kernel_of_jordan() {
        let c = vec![vec![0i128]];
        let k = kernel_basis(&c, 1);
        assert_eq!(k, vec![vec![1]]);
    }

    #[test]
    fn determinant_with_pivoting() {
        let m = vec![vec![0i128, 1], vec![1, 0]];
        assert_eq!(determinant(&m), -1);
    }

    #[test]
    fn kernel_of_triangle_affine_a2() {
        let c = vec![vec![2i128, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        let k = kernel_basis(&c, 3);
        assert_eq!(k, vec![vec![1, 1, 1]]);
    }
}
