use num_traits::One;

use crate::Nat;

/// Cantor pairing: `a + (a+b)(a+b+1)/2`.
pub fn cpair(a: &Nat, b: &Nat) -> Nat {
    let s = a + b;
    let t = (&s * (&s + 1u32)) >> 1;
    t + a
}

/// Inverse of [`cpair`].
pub fn cpair_inv(n: &Nat) -> (Nat, Nat) {
    // s is the largest value with s(s+1)/2 <= n.
    let disc: Nat = (n << 3) + 1u32;
    let mut s = disc.sqrt();
    s = (s - 1u32) >> 1;
    let tri = (&s * (&s + 1u32)) >> 1;
    debug_assert!(tri <= *n);
    let a = n - &tri;
    let b = s - &a;
    (a, b)
}

pub fn cpair_u(a: u64, b: u64) -> Nat {
    cpair(&Nat::from(a), &Nat::from(b))
}

/// Triangular number `n(n+1)/2`.
pub fn triangle(n: &Nat) -> Nat {
    (n * (n + Nat::one())) >> 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(cpair_u(0, 0), Nat::from(0u32));
        assert_eq!(cpair_u(1, 2), Nat::from(7u32));
        assert_eq!(cpair_inv(&Nat::from(7u32)), (Nat::from(1u32), Nat::from(2u32)));
    }

    #[test]
    fn inverse_on_initial_segment() {
        for n in 0u32..5000 {
            let (a, b) = cpair_inv(&Nat::from(n));
            assert_eq!(cpair(&a, &b), Nat::from(n));
        }
    }

    #[test]
    fn huge_values_round_trip() {
        let a = Nat::from(3u32).pow(300);
        let b = Nat::from(7u32).pow(200) + 5u32;
        let c = cpair(&a, &b);
        assert_eq!(cpair_inv(&c), (a, b));
    }
}
