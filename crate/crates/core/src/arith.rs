//! Word-size modular arithmetic: primality, modular powers and inverses,
//! primitive roots, Teichmüller lifts, and matrix rank over F_p.

use crate::error::VanlabError;

/// `a * b mod m` without overflow; `m` may use the full 64 bits.
#[inline]
pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` by square-and-multiply, `m >= 2`.
pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    debug_assert!(m >= 2);
    base %= m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` by extended Euclid.
pub fn mod_inv(a: u64, m: u64) -> Result<u64, VanlabError> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(VanlabError::NotInvertible(a, m));
    }
    Ok(s0.rem_euclid(m as i128) as u64)
}

/// Witness set that makes Miller–Rabin deterministic over the 64-bit range.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test, valid for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// True iff `p` is an odd prime, the domain of every invariant here.
pub fn is_odd_prime(p: u64) -> bool {
    p >= 3 && p % 2 == 1 && is_prime(p)
}

pub fn ensure_odd_prime(p: u64) -> Result<(), VanlabError> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(VanlabError::NotOddPrime(p))
    }
}

/// `p^m` if it fits in a word.
pub fn checked_prime_power(p: u64, m: u32) -> Option<u64> {
    p.checked_pow(m)
}

/// Prime field F_p for `p < 2^32`, multiplying by Barrett reduction: with
/// `b = floor(2^64/p)` and `x < 2^64`, `q = (x*b) >> 64` is off from
/// `floor(x/p)` by at most one, so a single conditional subtraction fixes
/// the remainder — no hardware divide in the hot path.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
    barrett: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!((2..1 << 32).contains(&p), "modulus out of range: {p}");
        Fp {
            p,
            barrett: ((1u128 << 64) / p as u128) as u64,
        }
    }

    /// Reduce any 64-bit value mod p.
    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base = self.reduce(base);
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64, VanlabError> {
        mod_inv(a, self.p)
    }
}

/// Inverses of 1..=n modulo prime p via the standard recurrence
/// `inv(i) = -(p/i) * inv(p mod i)`; entry 0 is unused.
pub fn inverse_table(fp: &Fp, n: usize) -> Vec<u64> {
    let p = fp.p;
    assert!((n as u64) < p);
    let mut inv = vec![0u64; n + 1];
    if n >= 1 {
        inv[1] = 1;
    }
    for i in 2..=n as u64 {
        inv[i as usize] = fp.mul(p - p / i, inv[(p % i) as usize]);
    }
    inv
}

/// Smallest primitive root modulo prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..)
        .find(|&g| factors.iter().all(|&q| mod_pow(g, (p - 1) / q, p) != 1))
        .unwrap()
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
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

/// Teichmüller lift ω(a) mod p^m: the unique residue with ω(a) ≡ a mod p and
/// ω(a)^{p−1} ≡ 1 mod p^m, computed as a^{p^{m−1}} mod p^m (the p-th-power
/// map stabilizes after m−1 steps).
pub fn teich_char(a: u64, p: u64, m: u32) -> u64 {
    let modulus = checked_prime_power(p, m).expect("p^m exceeds word range");
    let mut x = a % modulus;
    for _ in 1..m {
        x = mod_pow(x, p, modulus);
    }
    x
}

/// Dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        FpMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols));
        FpMatrix {
            rows: rows.len(),
            cols,
            entries: rows.concat(),
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }
}

/// Rank over F_p by Gaussian elimination; the input is left untouched.
pub fn fp_rank(m: &FpMatrix, p: u64) -> usize {
    let fp = Fp::new(p);
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.entries.clone();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if piv != rank {
            for j in col..cols {
                a.swap(rank * cols + j, piv * cols + j);
            }
        }
        let inv = fp.inv(a[rank * cols + col]).expect("pivot is nonzero");
        for j in col..cols {
            a[rank * cols + j] = fp.mul(a[rank * cols + j], inv);
        }
        for r in rank + 1..rows {
            let f = a[r * cols + col];
            if f != 0 {
                for j in col..cols {
                    let sub = fp.mul(f, a[rank * cols + j]);
                    a[r * cols + j] = fp.sub(a[r * cols + j], sub);
                }
            }
        }
        rank += 1;
    }
    rank
}
