//! Exact Wronskians of trigonometric polynomials.

use super::trig::TrigPoly;

/// Fraction-free (Bareiss) determinant over the Laurent ring.
pub fn determinant(mut m: Vec<Vec<TrigPoly>>) -> TrigPoly {
    let n = m.len();
    if n == 0 {
        return TrigPoly::one();
    }
    let mut negate = false;
    let mut prev = TrigPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return TrigPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly in an integral domain");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// det[ d^i f_j / dφ^i ], i, j = 0..len−1.
pub fn wronskian(fs: &[TrigPoly]) -> TrigPoly {
    assert!(!fs.is_empty(), "wronskian of an empty list");
    let n = fs.len();
    let mut rows = Vec::with_capacity(n);
    let mut cur: Vec<TrigPoly> = fs.to_vec();
    for i in 0..n {
        if i > 0 {
            cur = cur.iter().map(TrigPoly::derivative).collect();
        }
        rows.push(cur.clone());
    }
    determinant(rows)
}
