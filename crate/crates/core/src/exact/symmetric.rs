//! Elementary symmetric data of the constructed arrangements and conversions
//! between the z, sin²φ and α² charts.

use num_traits::{One, Zero};

use super::poly::{DensePoly, Field, RatPoly};
use super::rational::{binom_q, pow2, sign_pow, Rational};
use crate::error::{Error, Result};

/// Σ_{i=0}^{n} (−1)^i e_i w^{n−i} with e_0 = 1 prepended.
pub fn poly_from_elementary<T: Field>(e: &[T], n: usize) -> DensePoly<T> {
    assert_eq!(e.len(), n, "expected {n} elementary symmetric values");
    let mut v = vec![T::zero(); n + 1];
    v[n] = T::one();
    for (i, ei) in e.iter().enumerate() {
        let i = i + 1;
        let c = if i % 2 == 0 { ei.clone() } else { -ei.clone() };
        v[n - i] = c;
    }
    DensePoly::new(v)
}

/// e_1..e_n of the given values, by expanding ∏(w − x).
pub fn elementary_of<T: Field>(xs: &[T]) -> Vec<T> {
    let mut e = vec![T::one()];
    for x in xs {
        let mut next = e.clone();
        next.push(T::zero());
        for k in 1..next.len() {
            next[k] = next[k].clone() + x.clone() * e[k - 1].clone();
        }
        e = next;
    }
    e.into_iter().skip(1).collect()
}

/// Elementary symmetric values e_1..e_n read off a monic polynomial.
pub fn elementary_from_poly<T: Field>(p: &DensePoly<T>) -> Vec<T> {
    let n = p.degree().unwrap_or(0);
    let p = p.monic();
    (1..=n)
        .map(|i| {
            let c = p.coeff(n - i);
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// Power sums p_1..p_count from e_1..e_n (Newton's identities).
pub fn power_sums<T: Field>(e: &[T], count: usize) -> Vec<T> {
    let n = e.len();
    let get = |i: usize| if i == 0 { T::one() } else if i <= n { e[i - 1].clone() } else { T::zero() };
    let mut p: Vec<T> = Vec::with_capacity(count);
    for k in 1..=count {
        let mut acc = T::zero();
        for i in 1..k {
            let term = get(i) * p[k - i - 1].clone();
            acc = if (i - 1) % 2 == 0 { acc + term } else { acc - term };
        }
        let mut kk = T::zero();
        for _ in 0..k {
            kk = kk + T::one();
        }
        let last = get(k) * kk;
        acc = if (k - 1) % 2 == 0 { acc + last } else { acc - last };
        p.push(acc);
    }
    p
}

/// e_1..e_n from power sums p_1..p_n (Newton's identities).
pub fn elementary_from_power_sums<T: Field>(p: &[T]) -> Vec<T> {
    let n = p.len();
    let mut e: Vec<T> = vec![T::one()];
    for k in 1..=n {
        let mut acc = T::zero();
        for i in 1..=k {
            let term = e[k - i].clone() * p[i - 1].clone();
            acc = if (i - 1) % 2 == 0 { acc + term } else { acc - term };
        }
        let mut kk = T::zero();
        for _ in 0..k {
            kk = kk + T::one();
        }
        e.push(acc / kk);
    }
    e.into_iter().skip(1).collect()
}

/// e_k = (−1)^k C(n,k) C(m+k−1,k) / C(m+n−1,k), k = 1..n.
pub fn e_am1n(m: u32, n: u32) -> Vec<Rational> {
    let (m, n) = (m as i64, n as i64);
    (1..=n)
        .map(|k| sign_pow(k) * binom_q(n, k) * binom_q(m + k - 1, k) / binom_q(m + n - 1, k))
        .collect()
}

/// f_i = C(k,i) 2^{−i} ∏_{s=1}^{i} (2m+2k−2s+1)/(m+n−s), k = [n/2], i = 1..k:
/// elementary symmetric values of sin²φ over one line from each symmetric pair.
pub fn f_am1n(m: u32, n: u32) -> Vec<Rational> {
    let (m, n) = (m as i64, n as i64);
    let k = n / 2;
    (1..=k)
        .map(|i| {
            let mut acc = binom_q(k, i) * pow2(-i);
            for s in 1..=i {
                acc *= Rational::new((2 * m + 2 * k - 2 * s + 1).into(), (m + n - s).into());
            }
            acc
        })
        .collect()
}

/// ê_r = C(k,r) ∏_{i=1}^{r} (2K−2i+1)/(2m+2i−1), k = [n/2], K = [(n+1)/2].
pub fn ehat_am1n(m: u32, n: u32) -> Vec<Rational> {
    let (m, n) = (m as i64, n as i64);
    let (k, kk) = (n / 2, (n + 1) / 2);
    (1..=k)
        .map(|r| {
            let mut acc = binom_q(k, r);
            for i in 1..=r {
                acc *= Rational::new((2 * kk - 2 * i + 1).into(), (2 * m + 2 * i - 1).into());
            }
            acc
        })
        .collect()
}

/// e_1..e_n of the z-chart from f_1..f_k (k = [n/2]); for odd n the extra
/// root z = −1 is appended.
pub fn f_to_e(f: &[Rational], n: usize) -> Vec<Rational> {
    let k = n / 2;
    assert_eq!(f.len(), k, "expected [n/2] values of f");
    let fi = |i: usize| if i == 0 { Rational::one() } else { f[i - 1].clone() };
    let even: Vec<Rational> = (0..=2 * k)
        .map(|r| {
            let mut acc = Rational::zero();
            for i in 0..=r.min(k) {
                let c = sign_pow(i as i64) * pow2(2 * i as i64) * binom_q((2 * k - 2 * i) as i64, (r - i) as i64);
                acc += c * fi(i);
            }
            acc
        })
        .collect();
    if n.is_multiple_of(2) {
        return even.into_iter().skip(1).collect();
    }
    (1..=n)
        .map(|r| {
            let cur = even.get(r).cloned().unwrap_or_else(Rational::zero);
            cur - even[r - 1].clone()
        })
        .collect()
}

/// ê_1..ê_k: elementary symmetric values of 1/u − 1 from those of u.
pub fn f_to_ehat(f: &[Rational]) -> Result<Vec<Rational>> {
    let k = f.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let fk = f[k - 1].clone();
    if fk.is_zero() {
        return Err(Error::DegenerateConfiguration("f_[n/2] = 0: some sin²φ vanishes".into()));
    }
    let fi = |i: usize| if i == 0 { Rational::one() } else { f[i - 1].clone() };
    // e_j(1/u) = f_{k−j} / f_k
    let inv: Vec<Rational> = (0..=k).map(|j| fi(k - j) / fk.clone()).collect();
    Ok((1..=k)
        .map(|r| {
            let mut acc = Rational::zero();
            for (j, ej) in inv.iter().enumerate().take(r + 1) {
                acc += ej.clone() * binom_q((k - j) as i64, (r - j) as i64) * sign_pow((r - j) as i64);
            }
            acc
        })
        .collect())
}

/// R(α) = α^{n mod 2} Σ_r (−1)^r ê_r α^{2([n/2]−r)} with ê_0 = 1.
pub fn r_poly_from_ehat(ehat: &[Rational], n: usize) -> RatPoly {
    let k = n / 2;
    assert_eq!(ehat.len(), k);
    let odd = n % 2;
    let mut v = vec![Rational::zero(); 2 * k + odd + 1];
    for r in 0..=k {
        let er = if r == 0 { Rational::one() } else { ehat[r - 1].clone() };
        v[2 * (k - r) + odd] = sign_pow(r as i64) * er;
    }
    RatPoly::new(v)
}

/// Left side of the binomial identity expressing e_r through the closed
/// f-values: (−1)^r C(n,r) C(m+r−1,r)/C(m+n−1,r).
pub fn identity_a_lhs(m: u32, n: u32, r: u32) -> Rational {
    let (m, n, r) = (m as i64, n as i64, r as i64);
    sign_pow(r) * binom_q(n, r) * binom_q(m + r - 1, r) / binom_q(m + n - 1, r)
}

/// Right side: Σ_i (−1)^i 2^i C(n−2i, r−i) C(n/2, i) ∏_{s=1}^{i} (2m+n−2s+1)/(m+n−s)
/// for even n; for odd n the same sum over the paired lines is combined with
/// the extra root z = −1.
pub fn identity_a_rhs(m: u32, n: u32, r: u32) -> Rational {
    if n % 2 == 1 {
        return f_to_e(&f_am1n(m, n), n as usize)[r as usize - 1].clone();
    }
    let (m, n, r) = (m as i64, n as i64, r as i64);
    let mut acc = Rational::zero();
    for i in 0..=r.min(n / 2) {
        let mut t = sign_pow(i) * pow2(i) * binom_q(n - 2 * i, r - i) * binom_q(n / 2, i);
        for s in 1..=i {
            t *= Rational::new((2 * m + n - 2 * s + 1).into(), (m + n - s).into());
        }
        acc += t;
    }
    acc
}

/// Σ_i (−1)^{r−i} 2^i C(k−i, r−i) C(k, i) ∏_{s=0}^{i−1} (m+K+s)/(2m+2s+1).
pub fn identity_b_lhs(m: u32, n: u32, r: u32) -> Rational {
    let (m, n, r) = (m as i64, n as i64, r as i64);
    let (k, kk) = (n / 2, (n + 1) / 2);
    let mut acc = Rational::zero();
    for i in 0..=r {
        let mut t = sign_pow(r - i) * pow2(i) * binom_q(k - i, r - i) * binom_q(k, i);
        for s in 0..i {
            t *= Rational::new((m + kk + s).into(), (2 * m + 2 * s + 1).into());
        }
        acc += t;
    }
    acc
}

/// C(k, r) ∏_{s=1}^{r} (2K−2s+1)/(2m+2s−1).
pub fn identity_b_rhs(m: u32, n: u32, r: u32) -> Rational {
    ehat_am1n(m, n)[r as usize - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn from_elementary_examples() {
        let p = poly_from_elementary(&[rat(-4, 3), int(1)], 2);
        assert_eq!(p, RatPoly::new(vec![int(1), rat(4, 3), int(1)]));
        assert_eq!(poly_from_elementary::<Rational>(&[], 0), RatPoly::one());
        let p = poly_from_elementary(&[int(-1), int(1)], 2);
        assert_eq!(p, RatPoly::new(vec![int(1), int(1), int(1)]));
    }

    #[test]
    fn am1n_small() {
        assert_eq!(e_am1n(2, 2), vec![rat(-4, 3), int(1)]);
        assert_eq!(e_am1n(1, 2), vec![int(-1), int(1)]);
        assert_eq!(e_am1n(1, 1), vec![int(-1)]);
        assert_eq!(ehat_am1n(2, 2), vec![rat(1, 5)]);
        assert_eq!(f_am1n(2, 2), vec![rat(5, 6)]);
    }

    #[test]
    fn f_conversions() {
        assert_eq!(f_to_e(&[rat(5, 6)], 2), vec![rat(-4, 3), int(1)]);
        assert_eq!(f_to_e(&[], 0), Vec::<Rational>::new());
        assert_eq!(f_to_e(&[rat(3, 4)], 2), vec![int(-1), int(1)]);
        assert_eq!(f_to_ehat(&[rat(5, 6)]).unwrap(), vec![rat(1, 5)]);
        assert_eq!(f_to_ehat(&[rat(1, 2)]).unwrap(), vec![int(1)]);
        assert!(f_to_ehat(&[int(1), int(0)]).is_err());
    }

    #[test]
    fn newton_round_trip() {
        let e = e_am1n(3, 5);
        let p = power_sums(&e, 5);
        assert_eq!(elementary_from_power_sums(&p), e);
        assert_eq!(power_sums(&[int(3), int(2)], 2), vec![int(3), int(5)]);
    }

    #[test]
    fn r_polynomial() {
        // α² − 1/5
        assert_eq!(r_poly_from_ehat(&[rat(1, 5)], 2), RatPoly::new(vec![rat(-1, 5), int(0), int(1)]));
        assert_eq!(r_poly_from_ehat(&[], 1), RatPoly::x());
    }
}
