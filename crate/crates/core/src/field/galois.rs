//! Table-driven arithmetic in `GF(p^k)`.
//!
//! Elements are packed integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` whose
//! base-`p` digits are the coefficients of the residue polynomial modulo the
//! field's defining polynomial. Multiplication goes through discrete
//! logarithm tables, so the field size is capped at `2^20`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub(crate) const MAX_SIZE: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaloisField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic defining polynomial, low degree first, length `k + 1`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// Remainder of `f` modulo monic `g`, coefficients mod `p`.
fn small_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gi) in g.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * gi) % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn small_irreducible(modulus: &[u64], p: u64) -> bool {
    let k = modulus.len() - 1;
    if k == 1 {
        return true;
    }
    // Trial division by all monic polynomials of degree <= k/2.
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = low;
            for _ in 0..d {
                g.push(x % p);
                x /= p;
            }
            g.push(1);
            if small_rem(modulus, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    pub fn new(p: u64, k: u32, modulus: Option<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ModulusDegree { degree: 0, min: 1 });
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_SIZE)
            .ok_or(Error::FieldTooLarge { p, k })?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 {
                    return Err(Error::ModulusDegree {
                        degree: m.len().saturating_sub(1),
                        min: k as usize,
                    });
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::pre("galois field", "modulus coefficient not reduced mod p"));
                }
                if *m.last().unwrap() != 1 {
                    return Err(Error::NotMonic);
                }
                if !small_irreducible(&m, p) {
                    return Err(Error::ModulusReducible);
                }
                m
            }
            None => Self::default_modulus(p, k),
        };
        let mut field = GaloisField {
            p: p as u32,
            k,
            q: q as u32,
            modulus: modulus.iter().map(|&c| c as u32).collect(),
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    /// The lexicographically first monic irreducible polynomial of degree `k`.
    fn default_modulus(p: u64, k: u32) -> Vec<u64> {
        if k == 1 {
            return vec![0, 1];
        }
        let count = p.pow(k);
        for low in 0..count {
            let mut m = Vec::with_capacity(k as usize + 1);
            let mut x = low;
            for _ in 0..k {
                m.push(x % p);
                x /= p;
            }
            m.push(1);
            if m[0] != 0 && small_irreducible(&m, p) {
                return m;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Multiplication by polynomial arithmetic, used only to build tables.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let k = self.k as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let m: Vec<u64> = self.modulus.iter().map(|&c| c as u64).collect();
        let r = small_rem(&prod, &m, p);
        self.from_digits(&r.iter().map(|&c| c as u32).collect::<Vec<_>>())
    }

    fn build_tables(&mut self) {
        let q = self.q as u64;
        let order = q - 1;
        let factors = prime_factors(order);
        let pow = |f: &GaloisField, g: u32, mut e: u64| {
            let mut acc = 1u32;
            let mut base = g;
            while e > 0 {
                if e & 1 == 1 {
                    acc = f.slow_mul(acc, base);
                }
                base = f.slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let mut generator = 1;
        if order > 1 {
            generator = (2..self.q)
                .find(|&g| factors.iter().all(|&r| pow(self, g, order / r) != 1))
                .expect("multiplicative group of a finite field is cyclic");
        }
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order as usize {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = self.slow_mul(x, generator);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if self.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut place = 1;
            for _ in 0..self.k {
                out += ((a % self.p + b % self.p) % self.p) * place;
                a /= self.p;
                b /= self.p;
                place *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            a
        } else if self.k == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let mut a = a;
            let mut out = 0;
            let mut place = 1;
            for _ in 0..self.k {
                out += ((self.p - a % self.p) % self.p) * place;
                a /= self.p;
                place *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= order { s - order } else { s }) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let order = self.q - 1;
        let l = self.log[a as usize];
        Some(self.exp[((order - l) % order) as usize])
    }

    pub fn pow(&self, a: u32, e: u128) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u128;
        let l = self.log[a as usize] as u128;
        self.exp[((l * (e % order)) % order) as usize]
    }

    /// Discrete logarithm with respect to the table generator.
    pub fn log_of(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn exp_of(&self, e: u32) -> u32 {
        self.exp[(e % (self.q - 1)) as usize]
    }

    /// Absolute trace to the prime field, as a prime-field element.
    pub fn absolute_trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.k {
            acc = self.add(acc, x);
            x = self.pow(x, self.p as u128);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_default_modulus_is_x2_x_1() {
        let f = GaloisField::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // omega = x is packed as 2; omega^2 = omega + 1 = 3.
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(f.mul(2, 2), 2), 1);
    }

    #[test]
    fn rejects_reducible_and_non_prime() {
        assert_eq!(GaloisField::new(4, 1, None), Err(Error::NotPrime(4)));
        assert_eq!(
            GaloisField::new(2, 2, Some(vec![1, 0, 1])),
            Err(Error::ModulusReducible)
        );
        assert_eq!(GaloisField::new(2, 2, Some(vec![1, 1, 0])), Err(Error::NotMonic));
        assert!(matches!(
            GaloisField::new(2, 30, None),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn inverse_and_trace_in_gf8() {
        let f = GaloisField::new(2, 3, None).unwrap();
        for a in 1..8 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        // Exactly half of GF(8) has absolute trace zero.
        assert_eq!((0..8).filter(|&a| f.absolute_trace(a) == 0).count(), 4);
    }

    #[test]
    fn gf9_arithmetic() {
        let f = GaloisField::new(3, 2, None).unwrap();
        for a in 0..9 {
            assert_eq!(f.add(a, f.neg(a)), 0);
            for b in 0..9 {
                assert_eq!(f.mul(a, b), f.slow_mul(a, b));
            }
        }
    }
}
