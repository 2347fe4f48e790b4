use alloc::vec::Vec;

use super::multipoly::MultiPoly;
use super::PolyError;

/// Sylvester resultant of `p` and `q` with respect to `v`.
///
/// Convention: the matrix lists the `deg q` shifted rows of `p` first, then
/// the `deg p` rows of `q`, coefficients in descending powers of `v`. With
/// this ordering `Res_y(y^2 - x^3, y) = -x^3`.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, v: &str) -> Result<MultiPoly, PolyError> {
    if p.vars() != q.vars() {
        return Err(PolyError::VariableMismatch);
    }
    let i = p.var_index(v)?;
    let (m, n) = (p.degree_in(i) as usize, q.degree_in(i) as usize);
    if p.is_zero() || m == 0 || q.is_zero() || n == 0 {
        return Err(PolyError::Degenerate(v.into()));
    }
    let pc = p.coefficients_in(i);
    let qc = q.coefficients_in(i);
    let size = m + n;
    let zero = MultiPoly::zero(p.vars());
    let mut rows: Vec<Vec<MultiPoly>> = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = alloc::vec![zero.clone(); size];
        for (k, c) in pc.iter().enumerate() {
            row[shift + m - k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = alloc::vec![zero.clone(); size];
        for (k, c) in qc.iter().enumerate() {
            row[shift + n - k] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// Fraction-free determinant; every division is exact.
fn bareiss_det(mut a: Vec<Vec<MultiPoly>>) -> Result<MultiPoly, PolyError> {
    let n = a.len();
    let vars = a[0][0].vars().to_vec();
    let mut negate = false;
    let mut prev = MultiPoly::one(&vars);
    for k in 0..n {
        if a[k][k].is_zero() {
            // pick the sparsest nonzero pivot to keep entries small
            let piv = (k + 1..n).filter(|&r| !a[r][k].is_zero()).min_by_key(|&r| a[r][k].num_terms());
            match piv {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero(&vars)),
            }
        }
        if k + 1 == n {
            break;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let num = &(&a[k][k] * &a[r][c]) - &(&a[r][k] * &a[k][c]);
                a[r][c] = num.exact_div(&prev)?;
            }
            a[r][k] = MultiPoly::zero(&vars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}
