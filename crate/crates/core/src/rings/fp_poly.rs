//! Dense univariate polynomials over a prime field, coefficients low to high.

pub type FpPoly = Vec<u64>;

pub fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

pub fn neg(a: &[u64], p: u64) -> FpPoly {
    trim(a.iter().map(|&c| (p - c) % p).collect())
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    add(a, &neg(b, p), p)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
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
    trim(out)
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * a as u128) % m as u128) as u64;
        }
        a = ((a as u128 * a as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], p);
    let mut r = trim(a.to_vec());
    let mut q = vec![0u64; r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr] * lead_inv % p;
        let shift = dr - db;
        q[shift] = c;
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            r[shift + i] = (r[shift + i] + p - c * bc % p) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    divrem(a, b, p).1
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    make_monic(a, p)
}

pub fn make_monic(a: FpPoly, p: u64) -> FpPoly {
    match degree(&a) {
        None => a,
        Some(d) => {
            let inv = inv_mod(a[d], p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

fn powmod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> FpPoly {
    let mut result = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

/// Rabin-style test: `f` monic of degree k is irreducible over F_p iff
/// gcd(x^(p^i) - x, f) = 1 for every i <= k/2.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(k) = degree(f) else { return false };
    if k == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    let mut xp = x.clone();
    for _ in 0..k / 2 {
        xp = powmod_poly(&xp, p, f, p);
        let g = gcd(&sub(&xp, &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// First monic irreducible polynomial of degree `k` over F_p, scanning the
/// lower coefficients as base-p digits of 0, 1, 2, ...
pub fn first_irreducible(p: u64, k: u32) -> FpPoly {
    let total = p.pow(k);
    for idx in 0..total {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut t = idx;
        for _ in 0..k {
            f.push(t % p);
            t /= p;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_small_cases() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(!is_irreducible(&[0, 1, 1], 3));
        assert!(is_irreducible(&[1, 0, 1], 3));
    }

    #[test]
    fn first_irreducibles_over_f2() {
        assert_eq!(first_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(first_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(first_irreducible(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(first_irreducible(2, 5), vec![1, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn divrem_reconstructs() {
        let a = vec![3, 0, 2, 1, 4];
        let b = vec![1, 2, 1];
        let (q, r) = divrem(&a, &b, 5);
        assert_eq!(add(&mul(&q, &b, 5), &r, 5), trim(a));
        assert!(degree(&r).map_or(true, |d| d < 2));
    }
}
