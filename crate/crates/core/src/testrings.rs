//! The finite test rings on which point groups are evaluated.

use crate::rings::{factorize, Ring, RingHom};

/// Default bound on the size of a test ring.
pub const DEFAULT_CAP: u64 = 32;

fn field_tower(p: u64, k: u32, cap: u64, out: &mut Vec<Ring>) {
    let mut j = 1u32;
    while let Some(size) = p.checked_pow(k * j) {
        if size > cap {
            break;
        }
        if let Ok(f) = Ring::default_finite_field(p, k * j) {
            out.push(f);
        }
        j += 1;
    }
}

/// Finite rings T of size at most `cap` with a supported map base -> T:
/// finite fields over the base, Z/p^k quotients of Z_(p), quotients of Z/n
/// and dual numbers over residue fields. For Q the family is {Q}.
pub fn test_rings(base: &Ring, cap: u64) -> Vec<Ring> {
    let mut out = Vec::new();
    match base {
        Ring::Rational => out.push(Ring::Rational),
        Ring::PrimeField(p) => {
            field_tower(*p, 1, cap, &mut out);
            if p * p <= cap {
                out.push(Ring::dual(base.clone()).expect("field base"));
            }
        }
        Ring::FiniteField { p, k, .. } => {
            if base.size().is_some_and(|s| s <= cap) {
                out.push(base.clone());
            }
            let mut tower = Vec::new();
            field_tower(*p, *k, cap, &mut tower);
            out.extend(tower.into_iter().filter(|f| f != base));
            if base.size().is_some_and(|s| s * s <= cap) {
                out.push(Ring::dual(base.clone()).expect("field base"));
            }
        }
        Ring::LocalizedIntegers(p) => {
            let mut q = *p;
            while q <= cap {
                out.push(if q == *p { Ring::PrimeField(*p) } else { Ring::IntegersMod(q) });
                q = match q.checked_mul(*p) {
                    Some(x) => x,
                    None => break,
                };
            }
            let mut tower = Vec::new();
            field_tower(*p, 1, cap, &mut tower);
            out.extend(tower.into_iter().skip(1));
            if p * p <= cap {
                out.push(Ring::dual(Ring::PrimeField(*p)).expect("field base"));
            }
        }
        Ring::IntegersMod(n) => {
            for d in 2..=(*n).min(cap) {
                if n % d == 0 {
                    out.push(if crate::rings::is_prime(d) { Ring::PrimeField(d) } else { Ring::IntegersMod(d) });
                }
            }
            for (p, _) in factorize(*n) {
                let mut tower = Vec::new();
                field_tower(p, 1, cap, &mut tower);
                out.extend(tower.into_iter().skip(1));
            }
        }
        Ring::DualNumbers(f) => {
            if base.size().is_some_and(|s| s <= cap) {
                out.push(base.clone());
            }
            out.extend(test_rings(f, cap).into_iter().filter(|t| !matches!(t, Ring::DualNumbers(_))));
        }
    }
    out.retain(|t| RingHom::natural(base, t).is_ok());
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        let names = |r: &Ring| test_rings(r, DEFAULT_CAP).iter().map(|t| t.to_string()).collect::<Vec<_>>();
        assert_eq!(names(&Ring::Rational), vec!["Q"]);
        let z2 = names(&Ring::localized(2).unwrap());
        assert_eq!(z2[..5], ["GF(2)", "Z/4", "Z/8", "Z/16", "Z/32"]);
        assert!(z2.iter().any(|s| s.starts_with("GF(2^4")));
        assert!(z2.contains(&"Dual(GF(2))".to_string()));
        let f5 = names(&Ring::PrimeField(5));
        assert_eq!(f5.len(), 3);
        assert!(f5[0] == "GF(5)" && f5[1].starts_with("GF(5^2;") && f5[2] == "Dual(GF(5))");
        assert!(names(&Ring::IntegersMod(12)).contains(&"Z/4".to_string()));
        for base in [Ring::PrimeField(3), Ring::localized(3).unwrap(), Ring::IntegersMod(6)] {
            for t in test_rings(&base, DEFAULT_CAP) {
                assert!(t.size().unwrap() <= DEFAULT_CAP);
            }
        }
    }
}
