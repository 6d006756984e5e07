//! Distance between arrangements up to rotation.

use super::reduce_mod_pi;
use crate::exact::BigFloat;

fn circ_dist(a: &BigFloat, b: &BigFloat, pi: &BigFloat) -> BigFloat {
    let d = reduce_mod_pi(a - b);
    let other = pi - &d;
    if d < other {
        d
    } else {
        other
    }
}

/// Smallest max-distance (mod π) between two weighted angle multisets over
/// all rotations; `None` when the multiplicity multisets differ.
///
/// Candidate rotations map the first line of `a` onto each line of `b` with
/// the same multiplicity; the best candidate is refined by centring the
/// residual offsets.
pub fn angle_distance(a: &[(u32, BigFloat)], b: &[(u32, BigFloat)]) -> Option<BigFloat> {
    if a.len() != b.len() {
        return None;
    }
    let mut ma: Vec<u32> = a.iter().map(|x| x.0).collect();
    let mut mb: Vec<u32> = b.iter().map(|x| x.0).collect();
    ma.sort_unstable();
    mb.sort_unstable();
    if ma != mb {
        return None;
    }
    if a.is_empty() {
        return Some(BigFloat::zero(64));
    }
    let prec = a[0].1.precision().max(b[0].1.precision());
    let pi = BigFloat::pi(prec);
    let mut sb: Vec<(u32, BigFloat)> = b.iter().map(|(m, x)| (*m, reduce_mod_pi(x.clone()))).collect();
    sb.sort_by(|x, y| x.1.partial_cmp(&y.1).unwrap());
    let n = a.len();

    let evaluate = |theta: &BigFloat| -> Option<(BigFloat, Vec<BigFloat>)> {
        let mut ra: Vec<(u32, BigFloat)> = a.iter().map(|(m, x)| (*m, reduce_mod_pi(x + theta))).collect();
        ra.sort_by(|x, y| x.1.partial_cmp(&y.1).unwrap());
        let mut best: Option<(BigFloat, Vec<BigFloat>)> = None;
        for shift in 0..n {
            let mut worst = BigFloat::zero(prec);
            let mut offsets = Vec::with_capacity(n);
            let mut ok = true;
            for i in 0..n {
                let (m1, x1) = &ra[i];
                let (m2, x2) = &sb[(i + shift) % n];
                if m1 != m2 {
                    ok = false;
                    break;
                }
                let d = circ_dist(x1, x2, &pi);
                // signed offset in (−π/2, π/2]
                let mut s = reduce_mod_pi(x2 - x1);
                if s > pi.ldexp(-1) {
                    s = &s - &pi;
                }
                offsets.push(s);
                if d > worst {
                    worst = d;
                }
            }
            if ok && best.as_ref().is_none_or(|(w, _)| worst < *w) {
                best = Some((worst, offsets));
            }
        }
        best
    };

    let mut best: Option<BigFloat> = None;
    for (mbj, xb) in &sb {
        if *mbj != a[0].0 {
            continue;
        }
        let theta = xb - &a[0].1;
        if let Some((d, offsets)) = evaluate(&theta) {
            let (lo, hi) = offsets.iter().fold((offsets[0].clone(), offsets[0].clone()), |(lo, hi), x| {
                (if *x < lo { x.clone() } else { lo }, if *x > hi { x.clone() } else { hi })
            });
            let centre = (&lo + &hi).ldexp(-1);
            let refined = evaluate(&(&theta + &centre)).map(|(r, _)| r);
            let d = match refined {
                Some(r) if r < d => r,
                _ => d,
            };
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
    }
    best
}

pub fn angle_distance_log2(a: &[(u32, BigFloat)], b: &[(u32, BigFloat)]) -> f64 {
    angle_distance(a, b).map_or(f64::INFINITY, |d| d.log2_abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[(u32, f64)]) -> Vec<(u32, BigFloat)> {
        v.iter().map(|(m, x)| (*m, BigFloat::from_f64(*x, 128))).collect()
    }

    #[test]
    fn rotation_invariance() {
        let a = set(&[(2, 0.0), (1, 1.0), (1, 2.0)]);
        let b = set(&[(1, 1.5), (2, 0.5), (1, 2.5)]);
        assert!(angle_distance_log2(&a, &b) < -100.0);
        let c = set(&[(1, 0.0), (2, 1.0), (1, 2.0)]);
        assert!(angle_distance_log2(&a, &c) > -10.0);
        let d = set(&[(1, 0.0), (1, 1.0), (1, 2.0)]);
        assert!(angle_distance(&a, &d).is_none());
    }
}
