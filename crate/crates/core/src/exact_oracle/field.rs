//! Arithmetic in the prime field `F_p`, elements stored as `u64 < p`.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p) && p >= 5, "{p} is not a prime >= 5");
        Fp { p }
    }

    pub fn elem(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        (x + y) % self.p
    }

    pub fn sub(&self, x: u64, y: u64) -> u64 {
        (x + self.p - y) % self.p
    }

    pub fn neg(&self, x: u64) -> u64 {
        (self.p - x) % self.p
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        ((x as u128 * y as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: u64) -> u64 {
        assert!(!x.is_multiple_of(self.p), "inverse of zero");
        self.pow(x, self.p - 2)
    }

    pub fn div(&self, x: u64, y: u64) -> u64 {
        self.mul(x, self.inv(y))
    }

    /// Signed exponent: negative powers invert.
    pub fn powi(&self, x: u64, exp: i64) -> u64 {
        let v = self.pow(x, exp.unsigned_abs());
        if exp < 0 {
            self.inv(v)
        } else {
            v
        }
    }

    /// Table `roots[v]` = some square root of `v`, if any.
    pub fn sqrt_table(&self) -> Vec<Option<u64>> {
        let mut roots = vec![None; self.p as usize];
        for y in 0..self.p {
            let sq = self.mul(y, y) as usize;
            if roots[sq].is_none() {
                roots[sq] = Some(y);
            }
        }
        roots
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn next_prime(mut n: u64) -> u64 {
    while !is_prime(n) {
        n += 1;
    }
    n
}
