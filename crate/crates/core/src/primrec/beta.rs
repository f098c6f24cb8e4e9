//! The Chinese remainder solver and the β-function.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CrtError {
    #[error("{moduli} moduli but {residues} residues")]
    LengthMismatch { moduli: usize, residues: usize },
    #[error("moduli at positions {0} and {1} are not coprime")]
    NotCoprime(usize, usize),
    #[error("modulus at position {0} is zero")]
    ZeroModulus(usize),
}

/// The unique `x < Π moduli` with `x ≡ residues[i] (mod moduli[i])`.
pub fn crt(moduli: &[Nat], residues: &[Nat]) -> Result<Nat, CrtError> {
    if moduli.len() != residues.len() {
        return Err(CrtError::LengthMismatch {
            moduli: moduli.len(),
            residues: residues.len(),
        });
    }
    if let Some(i) = moduli.iter().position(Zero::is_zero) {
        return Err(CrtError::ZeroModulus(i));
    }
    for i in 0..moduli.len() {
        for j in i + 1..moduli.len() {
            if !moduli[i].gcd(&moduli[j]).is_one() {
                return Err(CrtError::NotCoprime(i, j));
            }
        }
    }
    let mut x = Nat::zero();
    let mut m = Nat::one();
    for (mi, ri) in moduli.iter().zip(residues) {
        // x + m·t ≡ ri (mod mi), so t = (ri - x)·m⁻¹ (mod mi)
        let target = (ri % mi + mi - &x % mi) % mi;
        let inv = (&m % mi).modinv(mi).unwrap_or_else(Nat::zero);
        let t = target * inv % mi;
        x += &m * t;
        m *= mi;
    }
    Ok(x)
}

/// `β(x, y, i) = x mod (1 + (i+1)·y)`.
pub fn beta(x: &Nat, y: &Nat, i: &Nat) -> Nat {
    x % beta_modulus(y, i)
}

pub(crate) fn beta_modulus(y: &Nat, i: &Nat) -> Nat {
    (i + 1u32) * y + 1u32
}

/// A pair `(x, y)` with `β(x, y, i) = values[i]` for every `i`.
///
/// `y = lcm(1, …, s)` with `s = max(len, max value) + 1`, which makes the
/// moduli pairwise coprime and larger than every value; `x` comes from
/// [`crt`]. The cost grows with the largest value.
pub fn beta_encode(values: &[Nat]) -> (Nat, Nat) {
    let top = values.iter().max().cloned().unwrap_or_default();
    let s = top.max(Nat::from(values.len())) + 1u32;
    let s = s.to_u64().expect("values small enough to encode");
    let y = (1..=s).fold(Nat::one(), |acc, k| acc.lcm(&Nat::from(k)));
    let moduli: Vec<Nat> = (0..values.len()).map(|i| beta_modulus(&y, &Nat::from(i))).collect();
    let x = crt(&moduli, values).expect("lcm moduli are pairwise coprime");
    (x, y)
}
