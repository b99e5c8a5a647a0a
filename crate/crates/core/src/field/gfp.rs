//! Dense polynomials over a prime field, coefficients as `u64` residues
//! (constant term first). Only what the extension-field layer needs.

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn degree(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by nonzero `m`.
pub(crate) fn divrem(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = inv_mod(m[dm], p);
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - dm];
    for i in (dm..r.len()).rev() {
        let c = r[i] * lead_inv % p;
        if c == 0 {
            continue;
        }
        q[i - dm] = c;
        for (j, &mj) in m.iter().enumerate().take(dm + 1) {
            let idx = i - dm + j;
            r[idx] = (r[idx] + p - c * mj % p) % p;
        }
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    divrem(a, m, p).1
}

fn make_monic(mut v: Vec<u64>, p: u64) -> Vec<u64> {
    if let Some(d) = degree(&v) {
        let inv = inv_mod(v[d], p);
        for c in v.iter_mut() {
            *c = *c * inv % p;
        }
    }
    v
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(x, p)
}

/// Inverse of `a` modulo the irreducible `m`; `None` if `a` ≡ 0.
pub(crate) fn inv_poly_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    // extended Euclid tracking only the coefficient of `a`
    let mut r0 = m.to_vec();
    let mut r1 = rem(a, m, p);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    if r1.is_empty() {
        return None;
    }
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    // r0 is a nonzero constant when m is irreducible
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = inv_mod(r0[0], p);
    let mut out: Vec<u64> = s0.iter().map(|&x| x * c % p).collect();
    out = rem(&out, m, p);
    Some(out)
}

fn pow_poly_mod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        exp >>= 1;
    }
    acc
}

/// Rabin's irreducibility test for a monic `m` of degree k ≥ 1.
pub(crate) fn is_irreducible(m: &[u64], p: u64) -> bool {
    let k = match degree(m) {
        Some(0) | None => return false,
        Some(k) => k,
    };
    let x = vec![0u64, 1];
    // frob[i] = x^(p^i) mod m
    let mut frob = Vec::with_capacity(k + 1);
    frob.push(rem(&x, m, p));
    for i in 1..=k {
        let next = pow_poly_mod(&frob[i - 1], p, m, p);
        frob.push(next);
    }
    if sub(&frob[k], &rem(&x, m, p), p) != Vec::<u64>::new() {
        return false;
    }
    for q in prime_factors(k as u64) {
        let e = k / q as usize;
        let h = sub(&frob[e], &x, p);
        let g = gcd(&h, m, p);
        if g != vec![1] {
            return false;
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `k`: candidates are
/// walked by the integer whose base-`p` digits are the lower coefficients,
/// constant term least significant.
pub(crate) fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let total = p.checked_pow(k as u32).expect("field order overflow");
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut n = idx;
        for _ in 0..k {
            coeffs.push(n % p);
            n /= p;
        }
        coeffs.push(1);
        if coeffs[0] == 0 {
            continue;
        }
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: no monic factor of degree 1..=k/2 divides m.
    fn irreducible_by_trial_division(m: &[u64], p: u64) -> bool {
        let k = m.len() - 1;
        for d in 1..=k / 2 {
            for idx in 0..p.pow(d as u32) {
                let mut f = Vec::new();
                let mut n = idx;
                for _ in 0..d {
                    f.push(n % p);
                    n /= p;
                }
                f.push(1);
                if rem(m, &f, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_matches_trial_division() {
        for &(p, k) in &[(2u64, 2usize), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (3, 4)] {
            for idx in 0..p.pow(k as u32) {
                let mut m = Vec::new();
                let mut n = idx;
                for _ in 0..k {
                    m.push(n % p);
                    n /= p;
                }
                m.push(1);
                assert_eq!(
                    is_irreducible(&m, p),
                    irreducible_by_trial_division(&m, p),
                    "p={p} m={m:?}"
                );
            }
        }
    }

    #[test]
    fn least_irreducibles() {
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(least_irreducible(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn inverse_mod_irreducible() {
        let m = least_irreducible(2, 4);
        for idx in 1..16u64 {
            let a: Vec<u64> = (0..4).map(|i| (idx >> i) & 1).collect();
            let inv = inv_poly_mod(&a, &m, 2).unwrap();
            assert_eq!(rem(&mul(&a, &inv, 2), &m, 2), vec![1]);
        }
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(prime_factors(12), vec![2, 3]);
    }
}
